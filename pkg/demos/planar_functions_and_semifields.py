"""
Planar functions and the semifields they coordinate
====================================================

Odd characteristic only: f is planar when every difference map
x -> f(x+a) - f(x) - f(a) is a bijection.  The difference product of a
planar Dembowski-Ostrom polynomial is a commutative presemifield, and the
sizes of its nuclei are the isotopy invariants that separate the resulting
projective planes.
"""

from spreadlab import (DOPoly, QPoly, RtcsSpec, build_tower, is_planar_2to1,
                       is_planar_direct, middle_nucleus, normalize, nucleus,
                       planar_to_presemifield, rtcs_build, rtcs_check)

ctx = build_tower(3, 1, 3)

# x^2 is planar everywhere; x^(q+1) is planar exactly when n is odd
sq = DOPoly(ctx, {(0, 0): 1})
tw = DOPoly(ctx, {(0, 1): 1})
print("x^2 planar:", is_planar_direct(sq), is_planar_2to1(sq))
print("x^(q+1) planar over F_27:", is_planar_direct(tw))

# a planar DO polynomial yields a commutative presemifield ...
S = planar_to_presemifield(tw)
print("commutative:", S.is_commutative(), " zero divisors:", S.has_zero_divisors())

# ... which normalization turns into a semifield with an identity
T = normalize(S, 1)
print("identity:", T.identity())
print("nucleus size:", nucleus(T), " middle nucleus size:", middle_nucleus(T))

# rank two commutative semifields over F_q(t): multiplication is
#   (xt + y)(ut + v) = (xv + yu + g(xu)) t + yv + f(xu)
# and the whole structure is a semifield iff g(z)^2 + 4 z f(z) is a
# nonsquare for every z != 0
c9 = build_tower(3, 2, 1)           # q = 9
t = next(int(z) for z in c9.subfield_elements("q2n")
         if not c9.in_subfield(int(z), "q"))
m = c9.least_nonsquare("q")
spec = RtcsSpec(c9, t, QPoly.zero(c9, "q", 1), QPoly(c9, {1: m}, "q", 1))
print("criterion holds:", rtcs_check(spec))
D = rtcs_build(spec)
print("Dickson semifield over F_81: nucleus", nucleus(D),
      "middle nucleus", middle_nucleus(D))
# middle nucleus 9 = q with nucleus 3 < 9: this plane is not a field plane

# the nucleus dichotomy: semifields built from the twisted-component
# polynomials L(x)^2 - w x^2 are either field isotopes (nucleus q^n) or
# have nucleus exactly q -- never anything between
for i in (1, 2):
    d = ctx.find_deltas()[0]
    w = ctx.inv(ctx.mul(d, d))
    Q = DOPoly(ctx, {(i, i): 1, (0, 0): ctx.neg(w)})
    P = normalize(planar_to_presemifield(Q), 1)
    print(f"L = X^(q^{i}): planar {is_planar_2to1(Q)}, nucleus {nucleus(P)}")
