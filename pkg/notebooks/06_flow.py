# Blocks of blocks: decompose the block of every new 4x4 summand matrix.
from selfsim4d.catalog import A_EXAMPLE
from selfsim4d.decompose import iterate_flow

for state in iterate_flow(A_EXAMPLE, 3):
    print("step", state.step)
    for name, dec in state.blocks:
        tag = " (from transpose)" if dec.derived_from_transpose else ""
        print("  ", name, dict(dec.label_multiset()), "remainder", dec.remainder_dim, tag)
