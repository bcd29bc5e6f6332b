"""
Field towers and element encodings
==================================

Everything in this library runs inside one ambient field F_p^(2ne) holding
the whole tower F_p < F_q < F_{q^n} < F_{q^2n}.  Elements are plain ints:
the base-p digits of the encoding are the coordinates w.r.t. the power
basis of the defining polynomial, so 0 is 0, 1 is 1, and p is the root
itself.
"""

from spreadlab import build_tower

# q = 3 and n = 3: the ambient field is F_729
ctx = build_tower(3, 1, 3)
print(ctx)
print("defining polynomial coefficients:", ctx.defining_poly)
print("gamma (primitive):", ctx.gamma, " beta:", ctx.beta)

# arithmetic is table-driven and vectorizes over numpy arrays
x, y = 5, 17
print(f"{x} + {y} =", ctx.add(x, y))
print(f"{x} * {y} =", ctx.mul(x, y))
print(f"{x}^-1 =", ctx.inv(x), " check:", ctx.mul(x, ctx.inv(x)))

# the subfield chain, by tag
for tag in ("p", "q", "qn", "q2n"):
    print(f"|F ({tag})| =", ctx.subfield_size(tag))

# trace and norm down the tower
z = ctx.gamma
print("tr_{q^6 -> q}(gamma) =", ctx.trace(z, "q2n", "q"))
print("N_{q^6 -> q^3}(gamma) =", ctx.norm(z, "q2n", "qn"))

# beta generates the subgroup that will push one subspace around a spread:
# its order is (q^n + 1)(q - 1)
order = 1
t = ctx.beta
while t != 1:
    t = ctx.mul(t, ctx.beta)
    order += 1
print("order of beta:", order, "= (27 + 1) * 2")

# the delta elements square to nonsquares of F_{q^n} and sit outside it;
# they are the twisting scalars of every construction in this package
deltas = ctx.find_deltas()
print("number of deltas with delta^(q^n - 1) = -1:", len(deltas))
d = deltas[0]
print("least delta:", d, " delta^2 a square in F_27?",
      ctx.is_square(ctx.mul(d, d), "qn"))

# a tower serializes to a tiny JSON document and rebuilds identically
doc = ctx.to_json()
print("JSON keys:", sorted(doc))
