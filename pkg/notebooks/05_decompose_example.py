# Searching for block spins of a concrete binary matrix.
from selfsim4d.catalog import A_EXAMPLE
from selfsim4d.decompose import decompose_matrix

dec = decompose_matrix(A_EXAMPLE)
for s in dec.summands:
    print(s.dims, s.label, "x%d" % s.multiplicity)
    print("   ", s.subspace.bitstrings())
print("remainder", dec.remainder)

# the 1-dimensional summands act by 4x4 matrices
for s in dec.summands[1:3]:
    print(s.action.full())
