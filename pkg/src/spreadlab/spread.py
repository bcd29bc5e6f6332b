"""Spreads of 2n-dimensional spaces over F_q and their Singer-cycle orbits.

A spread is a set of q^n + 1 pairwise trivially intersecting n-dimensional
F_q-subspaces covering every nonzero vector of F_{q^{2n}} exactly once; it
coordinatizes a translation plane whose kernel is the field of F_p-linear
endomorphisms fixing every component.  Components here arise as images
{A(x) + delta B(x)} of linearized-polynomial pairs, and whole spreads as
orbits of one component under powers of beta.
"""

from __future__ import annotations

import math
import warnings
from itertools import product

import numpy as np

from .field import Elt, FieldCtx, ctx_from_json, digits_of
from .linpoly import QPoly, _rank
from .quadform import is_permutation_brute, is_permutation_via_rank, permutes_cosets
from .semifield import is_planar_2to1, q_from_component


# -- linear algebra over F_p (digit coordinates) and F_q (encoded entries) -----


def _rref_mod_p(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    M = np.array(M, dtype=np.int64) % p
    rows, cols = M.shape
    pivots = []
    lead = 0
    for col in range(cols):
        if lead >= rows:
            break
        piv = next((r for r in range(lead, rows) if M[r, col]), None)
        if piv is None:
            continue
        M[[lead, piv]] = M[[piv, lead]]
        M[lead] = (M[lead] * pow(int(M[lead, col]), p - 2, p)) % p
        hit = M[:, col] != 0
        hit[lead] = False
        M[hit] = (M[hit] - np.outer(M[hit, col], M[lead])) % p
        pivots.append(col)
        lead += 1
    return M, pivots


def _nullspace_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {v : M v = 0} over F_p."""
    R, pivots = _rref_mod_p(M, p)
    cols = R.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        out[k, fc] = 1
        for r, pc in enumerate(pivots):
            out[k, pc] = (-R[r, fc]) % p
    return out


def _rref_fq(ctx: FieldCtx, rows: list[list[Elt]]) -> list[list[Elt]]:
    """Reduced echelon form over F_q with encoded entries; zero rows dropped."""
    rows = [list(r) for r in rows]
    cols = len(rows[0]) if rows else 0
    out: list[list[Elt]] = []
    for col in range(cols):
        piv = next((r for r in rows if r[col] != 0
                    and all(r[c] == 0 for c in range(col))), None)
        if piv is None:
            continue
        rows.remove(piv)
        inv = ctx.inv(piv[col])
        piv = [ctx.mul(inv, v) for v in piv]
        for group in (rows, out):
            for i, r in enumerate(group):
                if r[col] != 0:
                    f = r[col]
                    group[i] = [ctx.sub(v, ctx.mul(f, w)) for v, w in zip(r, piv)]
        out.append(piv)
    return out


def _pdigit_rows(ctx: FieldCtx, els) -> np.ndarray:
    return np.array([digits_of(int(x), ctx.p, ctx.d) for x in els], dtype=np.int64)


# -- subspaces -------------------------------------------------------------------


class Subspace:
    """F_q-subspace of the ambient field, stored as its full element set.

    Equality and hashing use the sorted element tuple; the canonical reduced
    echelon basis (w.r.t. the fixed basis of the ambient field over F_q) is
    computed lazily for serialization.
    """

    __slots__ = ("ctx", "elements", "dim", "_basis", "_key")

    def __init__(self, ctx: FieldCtx, elements=None, basis=None, verify=True):
        self.ctx = ctx
        if (elements is None) == (basis is None):
            raise ValueError("give exactly one of elements or basis")
        if basis is not None:
            elements = ctx.span([int(b) for b in basis], "q")
            verify = False
        els = np.unique(np.asarray(elements, dtype=np.int64))
        size = len(els)
        dim = 0
        while ctx.q ** dim < size:
            dim += 1
        if ctx.q ** dim != size or (size and els[0] != 0):
            raise ValueError("element set is not an F_q-subspace")
        if verify:
            mask = np.zeros(ctx.N, dtype=bool)
            mask[els] = True
            if not mask[ctx.vadd(els[:, None], els[None, :])].all():
                raise ValueError("element set is not closed under addition")
            scal = ctx.subfield_elements("q")
            if not mask[ctx.vmul(els[:, None], scal[None, :])].all():
                raise ValueError("element set is not closed under F_q-scalars")
        els.flags.writeable = False
        self.elements = els
        self.dim = dim
        self._basis: list[Elt] | None = None
        self._key = els.tobytes()

    @property
    def basis(self) -> list[Elt]:
        """Canonical reduced-echelon F_q-basis."""
        if self._basis is None:
            d = self.ctx.d
            coords = [list(self.ctx.coords(int(x), d, "q")) for x in self.elements if x]
            rref = _rref_fq(self.ctx, coords)
            amb = self.ctx.subfield_basis(d, "q")
            out = []
            for row in rref:
                v = 0
                for c, b in zip(row, amb):
                    v = self.ctx.add(v, self.ctx.mul(c, b))
                out.append(v)
            self._basis = out
        return self._basis

    def __contains__(self, x: Elt) -> bool:
        i = int(np.searchsorted(self.elements, int(x)))
        return i < len(self.elements) and int(self.elements[i]) == int(x)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ctx == other.ctx
                and self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis={self.basis})"

    def to_json(self) -> list[int]:
        return [int(b) for b in self.basis]


def component_from_pair(A: QPoly, B: QPoly, delta: Elt) -> Subspace:
    """W = {A(x) + delta B(x) : x in F_{q^n}} as an n-dimensional subspace.

    delta must lie outside F_{q^n} and the parametrization must be injective;
    a dimension drop is an error.
    """
    A._same_shape(B)
    ctx = A.ctx
    ne = ctx.n * ctx.e
    if A.field_k != ne or A.base_k != ctx.e:
        raise ValueError("components are parametrized by q-polynomials on F_{q^n}")
    if ctx.in_subfield(delta, ne):
        raise ValueError("delta must lie outside F_{q^n}")
    vals = ctx.vadd(A.values(), ctx.vmul(delta, B.values()))
    if len(np.unique(vals)) != ctx.q ** ctx.n:
        raise ValueError("parametrization is not injective; dimension would drop")
    W = Subspace(ctx, elements=vals, verify=False)
    W.dim = ctx.n
    return W


def _scaled(W: Subspace, g: Elt) -> Subspace:
    out = Subspace(W.ctx, elements=np.sort(W.ctx.vmul(g, W.elements)), verify=False)
    out.dim = W.dim
    return out


def _psi_image(W: Subspace, eta: Elt) -> Subspace:
    """psi(z) = eta z^{q^n}, an F_q-linear bijection of the ambient field."""
    ctx = W.ctx
    els = ctx.vmul(eta, ctx.frob_table(ctx.n * ctx.e)[W.elements])
    out = Subspace(ctx, elements=np.sort(els), verify=False)
    out.dim = W.dim
    return out


def orbit(W: Subspace, kind: str, eta: Elt | None = None) -> list[Subspace]:
    """Distinct images of W under <beta>, <beta^2>, or the two-orbit union
    {beta^2-orbit of W} + {beta^2-orbit of psi(W)} for kind "typeH"."""
    ctx = W.ctx
    if kind == "typeH":
        if eta is None:
            raise ValueError("typeH orbit needs eta")
        first = orbit(W, "beta2")
        seen = set(first)
        return first + [C for C in orbit(_psi_image(W, eta), "beta2") if C not in seen]
    if kind == "beta":
        g = ctx.beta
    elif kind == "beta2":
        g = ctx.mul(ctx.beta, ctx.beta)
    else:
        raise ValueError(f"unknown orbit kind {kind!r}")
    out = [W]
    cur = _scaled(W, g)
    while cur != W:
        out.append(cur)
        cur = _scaled(cur, g)
    return out


def _coverage(components) -> np.ndarray:
    if not components:
        raise ValueError("no components")
    ctx = components[0].ctx
    dims = {C.dim for C in components}
    if len(dims) != 1:
        raise ValueError(f"components of mixed dimensions {sorted(dims)}")
    if any(C.ctx != ctx for C in components):
        raise ValueError("components from different towers")
    counts = np.zeros(ctx.N, dtype=np.int64)
    for C in components:
        counts[C.elements[1:]] += 1
    return counts


def is_partial_spread(components) -> bool:
    """Pairwise trivial intersections, by coverage counting."""
    return bool((_coverage(components) <= 1).all())


def is_spread(components) -> bool:
    """Exactly q^n + 1 components of dimension n covering each nonzero
    ambient vector exactly once."""
    ctx = components[0].ctx
    if components[0].dim != ctx.n or len(components) != ctx.q ** ctx.n + 1:
        return False
    return bool((_coverage(components)[1:] == 1).all())


# -- spreads ---------------------------------------------------------------------


_KINDS = ("typeC", "typeH", "evenC", "custom")


class Spread:
    """A verified (or candidate) spread with a provenance tag."""

    def __init__(self, ctx: FieldCtx, components, kind="custom",
                 verified=False, kernel=None):
        if kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}")
        self.ctx = ctx
        self.components = list(components)
        self.kind = kind
        self.verified = bool(verified)
        self.kernel = kernel

    def __len__(self):
        return len(self.components)

    def __repr__(self):
        return (f"Spread(kind={self.kind}, components={len(self.components)}, "
                f"verified={self.verified})")

    def to_json(self) -> dict:
        if self.kernel is None and self.verified:
            self.kernel = kernel_of_spread(self)
        return {
            "ctx": self.ctx.to_json(),
            "kind": self.kind,
            "components": [C.to_json() for C in self.components],
            "verified": self.verified,
            "kernel": self.kernel,
        }

    @classmethod
    def from_json(cls, doc: dict, ctx: FieldCtx | None = None) -> "Spread":
        if ctx is None:
            ctx = ctx_from_json(doc["ctx"])
        comps = [Subspace(ctx, basis=b) for b in doc["components"]]
        return cls(ctx, comps, doc["kind"], doc.get("verified", False),
                   doc.get("kernel"))


def kernel_of_spread(S: Spread) -> int:
    """Order of the field of F_p-linear endomorphisms fixing every component.

    Solves the combined linear system T(W_j) <= W_j over F_p and returns
    p^dim of its solution space; warns if the solution set is not a field or
    its size is not a power of q.
    """
    if not isinstance(S, Spread) or not S.verified:
        raise ValueError("kernel is defined for verified spreads")
    ctx = S.ctx
    p, d = ctx.p, ctx.d
    fq_over_fp = ctx.subfield_basis("q", 1)
    rows = []
    for C in S.components:
        fp_basis = [ctx.mul(b, m) for b in C.basis for m in fq_over_fp]
        D = _pdigit_rows(ctx, fp_basis)
        ann = _nullspace_mod_p(D, p)
        for w in D:
            for a in ann:
                rows.append(np.outer(a, w).reshape(-1) % p)
    M = np.array(rows, dtype=np.int64)
    _, pivots = _rref_mod_p(M, p)
    s = d * d - len(pivots)
    size = p ** s
    if s % ctx.e != 0:
        warnings.warn("kernel size is not a power of q", stacklevel=2)
    if size <= 4096:
        basis_mats = [v.reshape(d, d) for v in _nullspace_mod_p(M, p)]
        for coeffs in product(range(p), repeat=len(basis_mats)):
            if not any(coeffs):
                continue
            T = sum(c * B for c, B in zip(coeffs, basis_mats)) % p
            if len(_rref_mod_p(T, p)[1]) != d:
                warnings.warn("kernel endomorphisms do not form a field",
                              stacklevel=2)
                break
    return size


# -- the named constructions -------------------------------------------------------


def _check_delta(ctx: FieldCtx, delta: Elt) -> None:
    qn = ctx.q ** ctx.n
    if ctx.pow(delta, qn - 1) != ctx.neg(1):
        raise ValueError("delta must satisfy delta^(q^n - 1) = -1")


def build_typeC(ctx: FieldCtx, i: int, delta: Elt) -> Spread:
    """Orbit of {x + delta x^(q^i)} under multiplication by beta."""
    if ctx.p == 2:
        raise ValueError("this construction needs odd q")
    if not (1 <= i <= ctx.n - 1) or math.gcd(i, ctx.n) != 1:
        raise ValueError("need 1 <= i <= n-1 with gcd(i, n) = 1")
    _check_delta(ctx, delta)
    W = component_from_pair(QPoly.identity(ctx), QPoly.monomial(ctx, i, 1), delta)
    comps = orbit(W, "beta")
    if not is_spread(comps):
        raise RuntimeError("beta-orbit failed spread verification")
    return Spread(ctx, comps, "typeC", verified=True)


def build_typeH(ctx: FieldCtx, k: int, delta: Elt, eta: Elt) -> Spread:
    """Two beta^2-orbits, of {x + delta x^(q^k)} and of its psi-image."""
    if ctx.p == 2 or ctx.n % 2 == 0:
        raise ValueError("this construction needs odd q and odd n")
    if not (1 <= k <= ctx.n - 1) or math.gcd(k, ctx.n) != 1:
        raise ValueError("need 1 <= k <= n-1 with gcd(k, n) = 1")
    _check_delta(ctx, delta)
    qn = ctx.q ** ctx.n
    if ctx.pow(eta, (1 + qn) * (ctx.q ** k - 1)) != 1:
        raise ValueError("eta must satisfy eta^((1+q^n)(q^k-1)) = 1")
    if ctx.is_square(eta):
        raise ValueError("eta must be a nonsquare")
    W = component_from_pair(QPoly.identity(ctx), QPoly.monomial(ctx, k, 1), delta)
    half = (qn + 1) // 2
    first = orbit(W, "beta2")
    second = orbit(_psi_image(W, eta), "beta2")
    comps = first + second
    if len(first) != half or len(second) != half or not is_spread(comps):
        raise RuntimeError("two-orbit union failed spread verification")
    # transitivity of the group generated by beta^2 and psi on the components
    b2 = ctx.mul(ctx.beta, ctx.beta)
    comp_set = set(comps)
    reached = {W}
    frontier = [W]
    while frontier:
        C = frontier.pop()
        for img in (_scaled(C, b2), _psi_image(C, eta)):
            if img not in comp_set:
                raise RuntimeError("group action leaves the component set")
            if img not in reached:
                reached.add(img)
                frontier.append(img)
    if len(reached) != len(comps):
        raise RuntimeError("<beta^2, psi> is not transitive on components")
    return Spread(ctx, comps, "typeH", verified=True)


def even3_admissible(ctx: FieldCtx, delta: Elt) -> bool:
    """delta in F_{q^6} \\ F_{q^3} with delta^-1 + delta^-q^3 in F_q^*."""
    ne = ctx.n * ctx.e
    if delta == 0 or ctx.in_subfield(delta, ne):
        return False
    dinv = ctx.inv(delta)
    c = ctx.add(dinv, ctx.frob(dinv, ne))
    return c != 0 and ctx.in_subfield(c, "q")


def build_even_n3(ctx: FieldCtx, delta: Elt) -> Spread:
    """Orbit of W = {tr(x) + delta x : x in F_{q^3}} under beta, even q."""
    if ctx.p != 2 or ctx.n != 3:
        raise ValueError("this construction needs even q and n = 3")
    if ctx.in_subfield(delta, ctx.n * ctx.e):
        raise ValueError("delta must lie outside F_{q^3}")
    if not even3_admissible(ctx, delta):
        raise ValueError("delta^-1 + delta^-q^3 is not in F_q^*; "
                         "the component map is not a permutation")
    W = component_from_pair(QPoly.trace_poly(ctx), QPoly.identity(ctx), delta)
    comps = orbit(W, "beta")
    if not is_spread(comps):
        raise RuntimeError("beta-orbit failed spread verification")
    return Spread(ctx, comps, "evenC", verified=True)


def symplectic_check(S: Spread, delta: Elt) -> bool:
    """Total isotropy of every component for A(x, y) = tr((delta + delta^q^3)^-1
    x y^q^3), checked together with A being alternating, bi-additive and
    nondegenerate."""
    ctx = S.ctx
    ne = ctx.n * ctx.e
    c = ctx.inv(ctx.add(delta, ctx.frob(delta, ne)))
    els = ctx.subfield_elements(ctx.d)       # the whole ambient field, 0..N-1
    M = ctx.vmul(c, ctx.vmul(els[:, None], ctx.frob_table(ne)[els][None, :]))
    T = np.zeros_like(M)
    t = M
    for _ in range(ctx.d // ctx.e):
        T = ctx.vadd(T, t)
        t = ctx.frob_table(ctx.e)[t]
    if np.any(np.diagonal(T)) or not np.array_equal(T, T.T):
        return False
    if ctx.N <= 128:                          # exhaustive bi-additivity
        sums = ctx.vadd(els[:, None], els[None, :])
        if not np.array_equal(T[sums], ctx.vadd(T[:, None, :], T[None, :, :])):
            return False
    gram = [[int(T[x, y]) for y in ctx.subfield_basis(ctx.d, "q")]
            for x in ctx.subfield_basis(ctx.d, "q")]
    if _rank(ctx, gram) != 2 * ctx.n:
        return False
    for C in S.components:
        if np.any(T[np.ix_(C.elements, C.elements)]):
            return False
    return True


# -- the orbit/permutation correspondence ----------------------------------------


class KeyLemmaReport:
    """Both sides of the orbit <-> polynomial equivalences, computed
    independently; .ok means every applicable equivalence held."""

    def __init__(self, ctx, L, delta):
        self.q, self.n, self.delta = ctx.q, ctx.n, delta
        self.sides: dict[str, bool] = {}
        self.clauses: dict[str, bool] = {}
        Q = q_from_component(L, delta)
        vals = ctx.vadd(L.ctx.subfield_elements("qn"),
                        ctx.vmul(delta, L.values()))
        injective = len(np.unique(vals)) == ctx.q ** ctx.n
        self.sides["component_injective"] = injective
        if injective:
            W = Subspace(ctx, elements=vals, verify=False)
            W.dim = ctx.n
            partial = is_partial_spread(orbit(W, "beta2"))
            full = is_spread(orbit(W, "beta"))
        else:
            partial = full = False
        self.sides["beta2_partial_spread"] = partial
        self.sides["beta_spread"] = full
        if ctx.p != 2:
            planar = is_planar_2to1(Q)
            coset = permutes_cosets(Q)
            self.sides["planar"] = planar
            self.sides["coset_permutation"] = coset
            self.clauses["partial_spread<->planar"] = partial == planar
            self.clauses["spread<->coset_permutation"] = full == coset
        else:
            perm = is_permutation_brute(Q)
            self.sides["permutation"] = perm
            self.clauses["spread<->permutation"] = full == perm
            self.clauses["rank_criterion_agrees"] = is_permutation_via_rank(Q) == perm
        self.ok = all(self.clauses.values())

    def __repr__(self):
        return f"KeyLemmaReport(ok={self.ok}, sides={self.sides})"


def check_key_lemma(ctx: FieldCtx, L: QPoly, delta: Elt) -> KeyLemmaReport:
    """Verify the spread/planarity/permutation equivalences for W = {x + delta L(x)}.

    Disagreement between the independently computed sides is a correctness
    alarm, reported via .ok (and .clauses for the failing equivalence).
    """
    ne = ctx.n * ctx.e
    if L.field_k != ne or L.base_k != ctx.e:
        raise ValueError("L must be a q-polynomial on F_{q^n}")
    if ctx.in_subfield(delta, ne):
        raise ValueError("delta must lie outside F_{q^n}")
    return KeyLemmaReport(ctx, L, delta)


def gcd_condition(q: int, n: int, p: int | None = None, e: int | None = None,
                  parity: str | None = None) -> bool:
    """gcd((q^n+1)/2, ne) = 1 for odd p, gcd(q^n+1, ne) = 1 for p = 2."""
    if p is None or e is None:
        from .field import factor_prime_power
        p, e = factor_prime_power(q)
    if parity is None:
        parity = "even" if p == 2 else "odd"
    if parity == "odd":
        return math.gcd((q ** n + 1) // 2, n * e) == 1
    return math.gcd(q ** n + 1, n * e) == 1
