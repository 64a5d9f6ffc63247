# Finite fields of characteristic two and bit-packed linear algebra.
from selfsim4d.field_core import (BitMatrix, GF2k, GFElement, left_kernel, lex_least_irreducible,
                                  rank, subspace_intersect)

# the default modulus for GF(2^k) is the smallest irreducible polynomial of degree k
for k in (1, 2, 8, 16):
    print(k, hex(lex_least_irreducible(k)))

F = GF2k(8)
x = GFElement(F, 0x53)
print("x * x^-1 =", x * x.inverse())
print("x^256 == x:", x ** 256 == x)

# rows are Python ints, column 0 is the leftmost character
M = BitMatrix.from_bitstrings(["1100", "0110", "1010"])
print("rank", rank(M))
print("left kernel", left_kernel(M).bitstrings())

S1 = BitMatrix.from_bitstrings(["1000", "0100"])
S2 = BitMatrix.from_bitstrings(["1100", "0011"])
print("intersection", subspace_intersect(S1, S2).bitstrings())
