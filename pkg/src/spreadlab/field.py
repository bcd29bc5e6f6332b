"""Finite field towers F_p < F_q < F_q^n < F_q^2n realized in one ambient field.

Every element of the ambient field F_p^(2ne) is encoded as an integer: the
base-p digits of the encoding are the coefficients of the element written in
the power basis of the defining polynomial.  All arithmetic runs through
log/antilog tables built once at construction time.  Construction is fully
deterministic: the defining polynomial is the least monic irreducible of the
right degree (coefficients compared as a base-p integer), gamma is the least
encoding that generates the multiplicative group, and beta = gamma^((q^n-1)/(q-1)).
"""

from __future__ import annotations

import json
import math
import os

import numpy as np

# An element of the ambient field is just its integer encoding.
Elt = int

DEFAULT_TABLE_BUDGET = 1 << 24
_ADD_TABLE_LIMIT = 1024


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    f = 2
    while f * f <= m:
        if m % f == 0:
            return False
        f += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """Write q = p^e with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while q % p != 0:
        p += 1
    e, m = 0, q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1 or not _is_prime(p):
        raise ValueError(f"{q} is not a prime power")
    return p, e


def prime_factors(m: int) -> list[int]:
    out = []
    f = 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


def digits_of(x: int, p: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds, p: int) -> int:
    x = 0
    for c in reversed(ds):
        x = x * p + int(c)
    return x


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over F_p, used only during construction


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b, p):
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(max(len(a), len(b)))]
    return _poly_trim(out)


def _poly_mulmod(a, b, f, p):
    # f monic; deg a, deg b < deg f
    if not a or not b:
        return []
    d = len(f) - 1
    c = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                c[i + j] = (c[i + j] + ai * bj) % p
    for k in range(len(c) - 1, d - 1, -1):
        ck = c[k]
        if ck:
            c[k] = 0
            for j in range(d):
                c[k - d + j] = (c[k - d + j] - ck * f[j]) % p
    return _poly_trim(c)


def _poly_powmod(a, m: int, f, p):
    out = [1]
    base = list(a)
    while m:
        if m & 1:
            out = _poly_mulmod(out, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        m >>= 1
    return out


def _poly_mod(a, b, p):
    # remainder of a by nonzero b
    a = _poly_trim([c % p for c in list(a)])
    inv_lead = pow(b[-1] % p, p - 2, p)
    db = len(b) - 1
    while a and len(a) - 1 >= db:
        coef = (a[-1] * inv_lead) % p
        off = len(a) - 1 - db
        for j in range(len(b)):
            a[off + j] = (a[off + j] - coef * b[j]) % p
        _poly_trim(a)
    return a


def _poly_gcd(a, b, p):
    a = _poly_trim([c % p for c in list(a)])
    b = _poly_trim([c % p for c in list(b)])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _is_irreducible(f, p: int) -> bool:
    d = len(f) - 1
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p ** d, f, p), x, p):
        return False
    for ell in prime_factors(d):
        g = _poly_gcd(f, _poly_sub(_poly_powmod(x, p ** (d // ell), f, p), x, p), p)
        if len(g) - 1 != 0:
            return False
    return True


def _least_irreducible(p: int, d: int) -> list[int]:
    """Least monic irreducible of degree d over F_p, low coefficients compared
    as a base-p integer."""
    for k in range(p ** d):
        f = digits_of(k, p, d) + [1]
        if _is_irreducible(f, p):
            return f
    raise RuntimeError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------


class FieldCtx:
    """Tower context F_p < F_q < F_{q^n} < F_{q^2n} inside F_p^(2ne).

    Not constructed directly: use build_tower.  Immutable after construction.
    Field tags accepted by trace/norm/is_square and friends: "p", "q", "qn",
    "q2n", or an integer degree k over F_p with k | 2ne.
    """

    def __init__(self, p: int, e: int, n: int, table_budget: int | None = None):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if e < 1 or n < 1:
            raise ValueError("e and n must be >= 1")
        budget = table_budget
        if budget is None:
            budget = int(os.environ.get("SPREADLAB_TABLE_BUDGET", DEFAULT_TABLE_BUDGET))
        self.p = p
        self.e = e
        self.n = n
        self.q = p ** e
        self.d = 2 * n * e                 # degree of the ambient field over F_p
        self.N = p ** self.d               # ambient field size
        if self.N > budget:
            raise ValueError(
                f"p^(2ne) = {self.N} exceeds the table budget {budget}; "
                "set SPREADLAB_TABLE_BUDGET to override")
        self._add_table = None
        self.defining_poly = tuple(_least_irreducible(p, self.d))
        self._pvec = np.array([p ** i for i in range(self.d)], dtype=np.int64)
        self._build_reduction()
        self.gamma = self._find_gamma()
        self._build_exp_log()
        qn = self.q ** n
        self.beta = self.pow(self.gamma, (qn - 1) // (self.q - 1))
        self._frob_cache: dict[int, np.ndarray] = {}
        self._subfield_cache: dict[int, np.ndarray] = {}
        self._span_cache: dict = {}

    # -- construction helpers -------------------------------------------------

    def _build_reduction(self):
        # digits of X^(d+t) mod f for t = 0..d-2, used by the block multiply
        p, d, f = self.p, self.d, self.defining_poly
        red = np.zeros((d - 1, d), dtype=np.int64)
        cur = [(-c) % p for c in f[:d]]            # X^d mod f
        red[0] = cur
        for t in range(1, d - 1):
            nxt = [0] + cur[:-1]
            top = cur[-1]
            if top:
                for j in range(d):
                    nxt[j] = (nxt[j] - top * f[j]) % p
            cur = nxt
            red[t] = cur
        self._red = red

    def _raw_mul(self, a: int, b: int) -> int:
        """Product of two encodings via polynomial arithmetic (pre-table)."""
        p, d = self.p, self.d
        da, db = digits_of(a, p, d), digits_of(b, p, d)
        c = [0] * (2 * d - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    c[i + j] = (c[i + j] + ai * bj) % p
        for t in range(d - 1):
            hi = c[d + t]
            if hi:
                row = self._red[t]
                for j in range(d):
                    c[j] = (c[j] + hi * int(row[j])) % p
        return _undigits(c[:d], p)

    def _raw_pow(self, a: int, m: int) -> int:
        out, base = 1, a
        while m:
            if m & 1:
                out = self._raw_mul(out, base)
            base = self._raw_mul(base, base)
            m >>= 1
        return out

    def _find_gamma(self) -> int:
        order = self.N - 1
        primes = prime_factors(order)
        for g in range(2, self.N):
            if all(self._raw_pow(g, order // ell) != 1 for ell in primes):
                return g
        raise RuntimeError("no generator found")  # unreachable

    def _mul_block(self, block: np.ndarray, b_digits) -> np.ndarray:
        """Multiply a (m, d) digit array by a fixed element, vectorized."""
        p, d = self.p, self.d
        m = block.shape[0]
        conv = np.zeros((m, 2 * d - 1), dtype=np.int64)
        for j, bj in enumerate(b_digits):
            if bj:
                conv[:, j:j + d] += bj * block
        low = conv[:, :d] + conv[:, d:] @ self._red
        return low % p

    def _build_exp_log(self):
        p, d, N = self.p, self.d, self.N
        V = np.zeros((N - 1, d), dtype=np.int64)
        V[0, 0] = 1
        have = 1
        while have < N - 1:
            t = min(have, N - 1 - have)
            g_s = self._raw_pow(self.gamma, have)
            V[have:have + t] = self._mul_block(V[:t], digits_of(g_s, p, d))
            have += t
        exp = (V @ self._pvec).astype(np.int64)
        if self._raw_mul(int(exp[-1]), self.gamma) != 1:
            raise RuntimeError("exp table construction failed to cycle")
        log = np.full(N, -1, dtype=np.int64)
        log[exp] = np.arange(N - 1, dtype=np.int64)
        if np.any(log[1:] < 0):
            raise RuntimeError("exp table is not a bijection")
        exp.flags.writeable = False
        log.flags.writeable = False
        self.exp = exp
        self.log = log
        if N <= _ADD_TABLE_LIMIT:
            a = np.arange(N, dtype=np.int64)
            tbl = self.vadd(a[:, None], a[None, :])
            tbl.flags.writeable = False
            self._add_table = tbl

    # -- scalar arithmetic ------------------------------------------------------

    def add(self, a: Elt, b: Elt) -> Elt:
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return int(self._add_table[a, b])
        p = self.p
        out, shift = 0, 1
        for _ in range(self.d):
            out += ((a + b) % p) * shift
            a //= p
            b //= p
            shift *= p
        return out

    def neg(self, a: Elt) -> Elt:
        if self.p == 2:
            return a
        p = self.p
        out, shift = 0, 1
        for _ in range(self.d):
            out += ((-a) % p) * shift
            a //= p
            shift *= p
        return out

    def sub(self, a: Elt, b: Elt) -> Elt:
        return self.add(a, self.neg(b))

    def mul(self, a: Elt, b: Elt) -> Elt:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b])) % (self.N - 1)])

    def inv(self, a: Elt) -> Elt:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.exp[(-int(self.log[a])) % (self.N - 1)])

    def div(self, a: Elt, b: Elt) -> Elt:
        return self.mul(a, self.inv(b))

    def pow(self, a: Elt, m: int) -> Elt:
        if a == 0:
            if m == 0:
                return 1
            if m < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        return int(self.exp[(int(self.log[a]) * m) % (self.N - 1)])

    def frob(self, a: Elt, k: int = 1) -> Elt:
        """a^(p^k)."""
        return self.pow(a, self.p ** k)

    # -- vectorized arithmetic on numpy arrays of encodings ----------------------

    def vadd(self, A, B):
        if self.p == 2:
            return np.bitwise_xor(np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64))
        p = self.p
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        out = np.zeros(np.broadcast(A, B).shape, dtype=np.int64)
        shift = 1
        for _ in range(self.d):
            out += ((A + B) % p) * shift
            A = A // p
            B = B // p
            shift *= p
        return out

    def vneg(self, A):
        A = np.asarray(A, dtype=np.int64)
        if self.p == 2:
            return A.copy()
        p = self.p
        out = np.zeros(A.shape, dtype=np.int64)
        shift = 1
        for _ in range(self.d):
            out += ((-A) % p) * shift
            A = A // p
            shift *= p
        return out

    def vsub(self, A, B):
        B = np.asarray(B, dtype=np.int64)
        return self.vadd(A, self.vneg(B))

    def vmul(self, A, B):
        A, B = np.broadcast_arrays(np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64))
        out = np.zeros(A.shape, dtype=np.int64)
        nz = (A != 0) & (B != 0)
        out[nz] = self.exp[(self.log[A[nz]] + self.log[B[nz]]) % (self.N - 1)]
        return out

    def vinv(self, A):
        A = np.asarray(A, dtype=np.int64)
        if np.any(A == 0):
            raise ZeroDivisionError("inverse of 0")
        return self.exp[(-self.log[A]) % (self.N - 1)]

    def vpow(self, A, m: int):
        A = np.asarray(A, dtype=np.int64)
        out = np.zeros(A.shape, dtype=np.int64)
        nz = A != 0
        out[nz] = self.exp[(self.log[A[nz]] * m) % (self.N - 1)]
        if m == 0:
            out[~nz] = 1
        return out

    def frob_table(self, k: int) -> np.ndarray:
        """Lookup table x -> x^(p^k) over the whole ambient field."""
        k = k % self.d
        if k not in self._frob_cache:
            t = np.zeros(self.N, dtype=np.int64)
            idx = (np.arange(self.N - 1, dtype=np.int64) * (self.p ** k)) % (self.N - 1)
            t[self.exp] = self.exp[idx]
            t.flags.writeable = False
            self._frob_cache[k] = t
        return self._frob_cache[k]

    # -- subfields and tags --------------------------------------------------------

    def tag_degree(self, tag) -> int:
        """Degree over F_p of the tagged subfield."""
        if isinstance(tag, str):
            try:
                return {"p": 1, "q": self.e, "qn": self.n * self.e, "q2n": self.d}[tag]
            except KeyError:
                raise ValueError(f"unknown field tag {tag!r}") from None
        k = int(tag)
        if k < 1 or self.d % k != 0:
            raise ValueError(f"degree {k} does not cut out a subfield of F_p^{self.d}")
        return k

    def subfield_size(self, tag) -> int:
        return self.p ** self.tag_degree(tag)

    def in_subfield(self, x: Elt, tag) -> bool:
        return self.pow(x, self.subfield_size(tag)) == x

    def subfield_elements(self, tag) -> np.ndarray:
        """All encodings of the tagged subfield, sorted ascending."""
        k = self.tag_degree(tag)
        if k not in self._subfield_cache:
            m = self.p ** k - 1
            step = (self.N - 1) // m
            els = np.concatenate([np.zeros(1, dtype=np.int64),
                                  self.exp[np.arange(m, dtype=np.int64) * step]])
            els = np.sort(els)
            els.flags.writeable = False
            self._subfield_cache[k] = els
        return self._subfield_cache[k]

    def subfield_primitive(self, tag) -> Elt:
        """gamma^((N-1)/(p^k-1)): a generator of the tagged subfield's units."""
        k = self.tag_degree(tag)
        return self.pow(self.gamma, (self.N - 1) // (self.p ** k - 1))

    def subfield_basis(self, tag, over) -> list[Elt]:
        """Deterministic basis of one tower field over a smaller one.

        The ambient field over F_q with e = 1 uses the defining-polynomial
        power basis; every other pair uses powers of the canonical primitive
        element of the larger field.
        """
        k, ko = self.tag_degree(tag), self.tag_degree(over)
        if k % ko != 0:
            raise ValueError(f"F_p^{k} is not an extension of F_p^{ko}")
        m = k // ko
        if k == self.d and ko == 1:
            return [self.p ** i for i in range(self.d)]
        mu = self.subfield_primitive(k)
        return [self.pow(mu, i) for i in range(m)]

    def trace(self, x: Elt, frm="qn", to="q") -> Elt:
        """Relative trace from the frm field down to the to field."""
        kf, kt = self.tag_degree(frm), self.tag_degree(to)
        if kf % kt != 0:
            raise ValueError("trace target is not a subfield of the source")
        if not self.in_subfield(x, kf):
            raise ValueError(f"element {x} is not in the source field")
        s = self.p ** kt
        out, t = 0, x
        for _ in range(kf // kt):
            out = self.add(out, t)
            t = self.pow(t, s)
        return out

    def norm(self, x: Elt, frm="qn", to="q") -> Elt:
        """Relative norm from the frm field down to the to field."""
        kf, kt = self.tag_degree(frm), self.tag_degree(to)
        if kf % kt != 0:
            raise ValueError("norm target is not a subfield of the source")
        if not self.in_subfield(x, kf):
            raise ValueError(f"element {x} is not in the source field")
        if x == 0:
            return 0
        return self.pow(x, (self.p ** kf - 1) // (self.p ** kt - 1))

    def is_square(self, x: Elt, tag="q2n") -> bool:
        """Square test inside the tagged subfield.  Everything is a square in
        characteristic 2; 0 counts as a square."""
        k = self.tag_degree(tag)
        if not self.in_subfield(x, k):
            raise ValueError(f"element {x} is not in the tagged field")
        if x == 0 or self.p == 2:
            return True
        return self.pow(x, (self.p ** k - 1) // 2) == 1

    def least_nonsquare(self, tag="q2n") -> Elt:
        if self.p == 2:
            raise ValueError("no nonsquares in characteristic 2")
        for x in self.subfield_elements(tag):
            if not self.is_square(int(x), tag):
                return int(x)
        raise RuntimeError("unreachable: odd field has nonsquares")

    # -- span enumeration -------------------------------------------------------------

    def span(self, basis, over="q") -> np.ndarray:
        """All F-linear combinations of basis, in coordinate-lexicographic order
        (first basis vector's coefficient most significant)."""
        ko = self.tag_degree(over)
        key = (tuple(int(b) for b in basis), ko)
        if key in self._span_cache:
            return self._span_cache[key]
        scalars = self.subfield_elements(ko)
        out = np.zeros(1, dtype=np.int64)
        for b in basis:
            mults = self.vmul(scalars, int(b))
            out = self.vadd(out[:, None], mults[None, :]).reshape(-1)
        out.flags.writeable = False
        self._span_cache[key] = out
        return out

    def element_index(self, tag) -> np.ndarray:
        """Lookup array: encoding -> position in subfield_elements(tag), -1 outside."""
        k = self.tag_degree(tag)
        key = ("eidx", k)
        if key not in self._span_cache:
            dom = self.subfield_elements(k)
            where = np.full(self.N, -1, dtype=np.int64)
            where[dom] = np.arange(len(dom), dtype=np.int64)
            where.flags.writeable = False
            self._span_cache[key] = where
        return self._span_cache[key]

    def coord_index(self, tag, over="q") -> np.ndarray:
        """Lookup array: encoding -> position in span(subfield_basis(tag, over))."""
        k, ko = self.tag_degree(tag), self.tag_degree(over)
        key = ("idx", k, ko)
        if key not in self._span_cache:
            sp = self.span(self.subfield_basis(k, over), over)
            where = np.full(self.N, -1, dtype=np.int64)
            where[sp] = np.arange(len(sp), dtype=np.int64)
            where.flags.writeable = False
            self._span_cache[key] = where
        return self._span_cache[key]

    def coords(self, x: Elt, tag, over="q") -> tuple[Elt, ...]:
        """Coordinates of x over the smaller field w.r.t. subfield_basis."""
        k, ko = self.tag_degree(tag), self.tag_degree(over)
        idx = int(self.coord_index(tag, over)[x])
        if idx < 0:
            raise ValueError(f"element {x} is not in the tagged field")
        scalars = self.subfield_elements(ko)
        qo = len(scalars)
        m = k // ko
        return tuple(int(scalars[(idx // qo ** (m - 1 - j)) % qo]) for j in range(m))

    # -- distinguished elements ----------------------------------------------------------

    def find_deltas(self) -> list[Elt]:
        """All delta in the ambient field with delta^(q^n-1) = -1 (q odd).

        These are the gamma-powers whose exponent is (q^n+1)/2 mod (q^n+1);
        there are exactly q^n - 1 of them.  Sorted by encoding.
        """
        if self.p == 2:
            raise ValueError("delta condition delta^(q^n-1) = -1 needs odd q")
        qn = self.q ** self.n
        m0 = (qn + 1) // 2
        out = [int(self.exp[(m0 + j * (qn + 1)) % (self.N - 1)]) for j in range(qn - 1)]
        return sorted(out)

    def find_etas(self, k: int) -> list[Elt]:
        """All nonsquare eta with eta^((1+q^n)(q^k-1)) = 1, sorted by encoding.

        Used by the two-orbit spread construction; q odd.
        """
        if self.p == 2:
            raise ValueError("eta selection needs odd q")
        qn = self.q ** self.n
        a = (1 + qn) * (self.q ** k - 1)
        order = self.N - 1
        g = math.gcd(a, order)
        step = order // g
        out = []
        for j in range(g):
            m = step * j
            if m % 2 == 1:  # gamma^m is a nonsquare iff m is odd
                out.append(int(self.exp[m]))
        return sorted(out)

    # -- serialization -------------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "n": self.n,
            "defining_poly": list(self.defining_poly),
            "gamma": self.gamma,
            "beta": self.beta,
        }

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e}, n={self.n})"

    def __eq__(self, other):
        return (isinstance(other, FieldCtx)
                and (self.p, self.e, self.n) == (other.p, other.e, other.n))

    def __hash__(self):
        return hash((self.p, self.e, self.n))


_tower_cache: dict[tuple, FieldCtx] = {}


def build_tower(p: int, e: int, n: int, table_budget: int | None = None) -> FieldCtx:
    """Construct (and cache) the tower context for F_p < F_p^e < ... < F_p^(2ne)."""
    key = (p, e, n, table_budget)
    if key not in _tower_cache:
        _tower_cache[key] = FieldCtx(p, e, n, table_budget)
    return _tower_cache[key]


def ctx_from_json(doc: dict | str) -> FieldCtx:
    """Rebuild a FieldCtx from its JSON document, verifying consistency."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    ctx = build_tower(int(doc["p"]), int(doc["e"]), int(doc["n"]))
    if list(ctx.defining_poly) != [int(c) for c in doc["defining_poly"]]:
        raise ValueError("defining polynomial mismatch: not the canonical tower")
    if ctx.gamma != int(doc["gamma"]) or ctx.beta != int(doc["beta"]):
        raise ValueError("gamma/beta mismatch: not the canonical tower")
    return ctx
