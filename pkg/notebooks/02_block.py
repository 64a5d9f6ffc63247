# The 2x2x2x2 block: a product of 16 vertex embeddings into a 32x32 matrix.
from selfsim4d.catalog import A_EXAMPLE
from selfsim4d.decompose import block_matrix
from selfsim4d.lattice import edge_index, thick_entry, vertices_in_order, block_product
from selfsim4d.field_core import GF2, GFElement

print(vertices_in_order()[:6])
# edges parallel to axis 2 sit in positions 9..16
print([edge_index(2, c) for c in [(0, 0, 0), (0, 0, 1), (1, 1, 1)]])

B = block_matrix(A_EXAMPLE)
for row in B.bitstrings()[:8]:
    print(" ".join(row[i:i + 8] for i in range(0, 32, 8)))

# a single thick entry b_12
A = [[GFElement(GF2, v) for v in r] for r in A_EXAMPLE]
b12 = thick_entry(block_product(A), 1, 2)
print(["".join(str(int(x.value)) for x in r) for r in b12])
