# W has an invariant complement for a generic matrix: random points over GF(2^16).
from selfsim4d.decompose import randomized_summand_check

rep = randomized_summand_check(20, 16, seed=7)
print("passes", rep.passes, "of", rep.trials, "degenerate", rep.degenerate)

# over GF(2) itself many draws are degenerate and get redrawn
rep = randomized_summand_check(20, 1, seed=7)
print("passes", rep.passes, "degenerate", rep.degenerate, dict(rep.degenerate_checks))
