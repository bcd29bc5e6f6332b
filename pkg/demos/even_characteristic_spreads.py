"""
Even characteristic: spreads from the trace component
=====================================================

For even q and n = 3 the component {tr(x) + delta x} generates a spread
exactly when delta^-1 + delta^-q^3 lands in F_q^*.  Planarity is
meaningless in characteristic 2, so the working tools are brute
permutation tests, a coordinate classification of which (L, delta) pairs
permute, and quadratic-form ranks.
"""

from spreadlab import (QPoly, build_even_n3, build_tower, even3_admissible,
                       is_permutation_brute, kernel_of_spread, q_from_pair,
                       symplectic_check)
from spreadlab.experiments import even3_perm_predicate, hermite_coefficient_check

ctx = build_tower(2, 1, 3)          # F_8 inside F_64

outside = [d for d in range(1, ctx.N) if not ctx.in_subfield(d, "qn")]
admissible = [d for d in outside if even3_admissible(ctx, d)]
print("deltas outside F_8:", len(outside), " admissible:", admissible)

# build one spread and check it is symplectic (all components totally
# isotropic for the alternating trace form)
S = build_even_n3(ctx, admissible[0])
print(S)
print("kernel:", kernel_of_spread(S))
print("symplectic:", symplectic_check(S, admissible[0]))

# the attached product polynomial permutes F_8 exactly for admissible deltas
T, I = QPoly.trace_poly(ctx), QPoly.identity(ctx)
perms = [d for d in outside if is_permutation_brute(q_from_pair(T, I, d))]
print("permutation deltas == admissible deltas:", perms == admissible)

# the classification predicate decides the same question for every monic
# L = X^(q^2) + d1 X^q + d0 X by a coordinate change, with no brute scan;
# at the trace (d0 = d1 = 1) it marks the same 8 deltas
marked = [d for d in outside if even3_perm_predicate(ctx, 1, 1, d)]
print("predicate at the trace:", marked == admissible)

# a second, independent non-permutation certificate: the coefficient of
# X^(q^3 - 1) in Q^(q^2 - 1) has a closed form, and a nonzero value there
# rules the permutation out for scalar-free L = X^q
print("closed form matches brute coefficient on 5 deltas:",
      all(hermite_coefficient_check(ctx, d) for d in outside[:5]))

# q = 4 gives a plane that is NOT a field plane: the kernel shrinks to q
c4 = build_tower(2, 2, 3)
adm4 = next(d for d in range(1, c4.N)
            if not c4.in_subfield(d, "qn") and even3_admissible(c4, d))
S4 = build_even_n3(c4, adm4)
print("q = 4:", len(S4.components), "components, kernel", kernel_of_spread(S4))
