"""
Cyclic spreads from twisted components
======================================

A spread of F_{q^2n} is a family of q^n + 1 subspaces of dimension n over
F_q meeting pairwise only in 0 and covering everything.  The constructions
here start from one component W = {x + delta x^(q^i)} and push it around
with the multiplier beta; either the full beta-orbit is the spread (the
cyclic, "type C" case) or two beta^2-orbits joined by a twisted conjugation
are (the "type H" case).
"""

import json

from spreadlab import (QPoly, Spread, build_typeC, build_typeH, check_key_lemma,
                       build_tower, component_from_pair, is_spread,
                       kernel_of_spread, orbit)

ctx = build_tower(3, 1, 3)
delta = ctx.find_deltas()[0]

# one component and its orbits
W = component_from_pair(QPoly.identity(ctx), QPoly.monomial(ctx, 1), delta)
print("component dimension:", W.dim, " size:", len(W.elements))
print("beta-orbit size:", len(orbit(W, "beta")))
print("beta^2-orbit size:", len(orbit(W, "beta2")))

# the full construction verifies the partition and tags the result
S = build_typeC(ctx, 1, delta)
print(S)
print("kernel (order of the fixing field):", kernel_of_spread(S))

# the same data as a type H spread: two half-orbits glued by eta z^(q^n)
eta = ctx.find_etas(1)[0]
H = build_typeH(ctx, 1, delta, eta)
print(H)

# both travel as JSON; a reload verifies from scratch
doc = S.to_json()
T = Spread.from_json(doc)
print("round trip is a spread:", is_spread(T.components))

# the orbit <-> polynomial dictionary: the beta^2-orbit of W is a partial
# spread exactly when the attached product polynomial is planar, and the
# beta-orbit is a spread exactly when it permutes the F_q^* cosets
rep = check_key_lemma(ctx, QPoly.monomial(ctx, 1), delta)
print("equivalences hold:", rep.ok)
for name, val in rep.sides.items():
    print(f"  {name}: {val}")

# the command-line equivalent of the above:
#   spreadlab build typec --p 3 --n 3 --out typec-spread.json
#   spreadlab verify typec-spread.json
print(json.dumps({"components": len(S), "kernel": doc["kernel"]}))
