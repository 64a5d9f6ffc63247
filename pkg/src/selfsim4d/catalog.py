"""Named binary matrices and basis vectors of the worked 4x4 example.

Rows are given as bitstrings in edge order (first character = first edge of
the thick space).
"""

A_EXAMPLE = (
    (1, 1, 1, 1),
    (0, 1, 1, 0),
    (0, 0, 1, 1),
    (1, 0, 0, 0),
)

# action on the one-dimensional summand spanned by F_VECTORS
A1 = (
    (1, 0, 1, 1),
    (0, 1, 0, 1),
    (0, 1, 1, 1),
    (1, 0, 0, 0),
)

A2 = tuple(zip(*A1))

F_VECTORS = ("00100010", "00000101", "10001100", "00000101")
G_VECTORS = ("01010101", "00000010", "00001010", "10111011")

# two basis rows per direction
H_PAIRS = (
    ("01010000", "00010001"),
    ("01010101", "00001010"),
    ("00001000", "01000100"),
    ("10011001", "01010101"),
)

# 8x8 action on the H summand, read as a 4x4 grid of 2x2 cells
R_MATRIX = (
    (1, 0, 1, 0, 0, 0, 1, 0),
    (0, 1, 0, 0, 0, 1, 0, 1),
    (0, 0, 1, 0, 0, 0, 0, 1),
    (0, 1, 0, 1, 0, 0, 0, 0),
    (1, 0, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, 1, 1),
    (1, 0, 0, 1, 1, 0, 0, 0),
    (0, 1, 0, 0, 1, 0, 0, 0),
)


def transpose(M):
    return tuple(zip(*M))
