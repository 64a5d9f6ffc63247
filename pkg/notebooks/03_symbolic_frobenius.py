# Cofactor vectors of a fully symbolic matrix and the relation e^(j) b_jk = a_jk^2 e^(k).
import time

from selfsim4d.polyring import symbolic_matrix
from selfsim4d.symbolic import symbolic_evec, verify_frobenius

print("e_1^(2) =", [str(p) for p in symbolic_evec(1, 2)])

t = time.perf_counter()
rep = verify_frobenius(symbolic_matrix())
print(rep.render())
print(f"{time.perf_counter() - t:.2f}s")
