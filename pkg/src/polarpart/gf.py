"""Arithmetic in GF(p^k) on integer-encoded elements.

An element with polynomial coordinates (c_0, ..., c_{k-1}) over GF(p) is
encoded as the integer sum(c_i * p**i), so equality of elements is equality
of ints and every field of order p^k is the range 0..p^k-1.  A FieldCtx
fixes the (deterministically chosen) irreducible modulus and provides all
arithmetic; small fields run on precomputed lookup tables.

Quadratic extensions GF(q^2) over GF(q) additionally get a QuadBasis: a
normal pair {beta, beta^q} and an element mu with {1, mu} a basis, plus the
coordinate decompositions the partition constructions are built on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# Full add/mul/inv tables are built only up to this order; larger fields
# fall back to per-operation polynomial arithmetic.
TABLE_MAX = 512

# Hard ceiling on p^k (well above the 3^10 the constructions need).
ORDER_CEILING = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, d) with n == p**d and p prime, or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            d = 0
            m = n
            while m % p == 0:
                m //= p
                d += 1
            return (p, d) if m == 1 else None
        p += 1
    return (n, 1)


# ---------------------------------------------------------------------------
# polynomial helpers (little-endian coefficient lists over GF(p))
# ---------------------------------------------------------------------------

def _int_to_poly(n, p, length):
    coeffs = [0] * length
    i = 0
    while n:
        coeffs[i] = n % p
        n //= p
        i += 1
    return coeffs


def _poly_to_int(coeffs, p):
    n = 0
    for c in reversed(coeffs):
        n = n * p + c
    return n


def _poly_mod(poly, divisor, p):
    """Remainder of poly by a monic divisor, both little-endian."""
    rem = list(poly)
    dd = len(divisor) - 1
    for i in range(len(rem) - 1, dd - 1, -1):
        c = rem[i]
        if c:
            rem[i] = 0
            for j in range(dd):
                rem[i - dd + j] = (rem[i - dd + j] - c * divisor[j]) % p
    return rem[:dd]


def _poly_mul_mod(a, b, modulus, p):
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _poly_mod(prod, modulus, p)


def _find_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest-by-encoding monic irreducible of degree k over GF(p).

    Candidates x^k + t are scanned by the integer encoding of the tail t;
    irreducibility is decided by trial division against every monic
    polynomial of degree 1..k//2.
    """
    if k == 1:
        return (0, 1)
    divisors = []
    for d in range(1, k // 2 + 1):
        for t in range(p ** d):
            divisors.append(_int_to_poly(t, p, d) + [1])
    for t in range(p ** k):
        cand = _int_to_poly(t, p, k) + [1]
        if all(any(_poly_mod(cand, div, p)) for div in divisors):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# field context
# ---------------------------------------------------------------------------

class FieldCtx:
    """GF(p**k) under a fixed monic irreducible modulus.

    Elements are ints in [0, order).  All operations are pure; the context
    is immutable after construction and safe to share between threads.
    Use make_field() to construct (it canonicalizes the modulus and caches
    contexts so the same (p, k) is the same object).
    """

    def __init__(self, p, k, modulus):
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.order = p ** k
        self._frob_t = {}
        if self.order <= TABLE_MAX:
            self._build_tables()
        else:
            self._mul_t = None
            self._add_t = None
            self._sub_t = None
            self._neg_t = None
            self._inv_t = None

    def __repr__(self):
        return f"FieldCtx(p={self.p}, k={self.k}, order={self.order})"

    def to_json(self):
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    # -- encoding -----------------------------------------------------------

    def decode(self, n: int) -> tuple[int, ...]:
        """Coefficient vector (little-endian) of the element encoded n."""
        if not 0 <= n < self.order:
            raise ValueError(f"encoding {n} out of range for {self!r}")
        return tuple(_int_to_poly(n, self.p, self.k))

    def encode(self, coeffs) -> int:
        """Integer encoding of a length-k coefficient vector."""
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(coeffs)}")
        if any(not 0 <= c < self.p for c in coeffs):
            raise ValueError("coefficients must be residues mod p")
        return _poly_to_int(coeffs, self.p)

    def elements(self):
        return range(self.order)

    # -- arithmetic ---------------------------------------------------------

    def _chk(self, *els):
        for u in els:
            if not 0 <= u < self.order:
                raise ValueError(f"element {u} out of range for {self!r}")

    def add(self, a: int, b: int) -> int:
        self._chk(a, b)
        if self._add_t is not None:
            return self._add_t[a][b]
        return self._add_slow(a, b)

    def sub(self, a: int, b: int) -> int:
        self._chk(a, b)
        if self._sub_t is not None:
            return self._sub_t[a][b]
        return self._add_slow(a, self._neg_slow(b))

    def neg(self, a: int) -> int:
        self._chk(a)
        if self._neg_t is not None:
            return self._neg_t[a]
        return self._neg_slow(a)

    def mul(self, a: int, b: int) -> int:
        self._chk(a, b)
        if self._mul_t is not None:
            return self._mul_t[a][b]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        self._chk(a)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self._inv_t is not None:
            return self._inv_t[a]
        return self._pow_slow(a, self.order - 2)

    def pow(self, a: int, n: int) -> int:
        """a**n by square-and-multiply; negative n inverts first."""
        self._chk(a)
        if n < 0:
            a = self.inv(a)
            n = -n
        if self._mul_t is not None:
            mul = self._mul_t
            r = 1
            while n:
                if n & 1:
                    r = mul[r][a]
                a = mul[a][a]
                n >>= 1
            return r
        return self._pow_slow(a, n)

    def frobenius(self, a: int, j: int) -> int:
        """a**(p**j)."""
        self._chk(a)
        return self.frob_table(j)[a]

    def frob_table(self, j: int):
        """Lookup vector for u -> u**(p**j) (cached per exponent)."""
        if j < 0:
            raise ValueError("frobenius exponent must be >= 0")
        t = self._frob_t.get(j)
        if t is None:
            q = self.order
            if q == 2:
                t = [0, 1]
            else:
                # reduce the exponent in the order-(q-1) multiplicative
                # group; gcd(p, q-1) = 1 keeps the residue nonzero
                e = pow(self.p, j, q - 1)
                t = [0] + [self._pow_slow(u, e) for u in range(1, q)]
            self._frob_t[j] = t
        return t

    # -- slow (table-free) paths ---------------------------------------------

    def _add_slow(self, a, b):
        p = self.p
        ca = _int_to_poly(a, p, self.k)
        cb = _int_to_poly(b, p, self.k)
        return _poly_to_int([(x + y) % p for x, y in zip(ca, cb)], p)

    def _neg_slow(self, a):
        p = self.p
        return _poly_to_int([(-c) % p for c in _int_to_poly(a, p, self.k)], p)

    def _mul_slow(self, a, b):
        if a == 0 or b == 0:
            return 0
        pa = _int_to_poly(a, self.p, self.k)
        pb = _int_to_poly(b, self.p, self.k)
        return _poly_to_int(_poly_mul_mod(pa, pb, self.modulus, self.p), self.p)

    def _pow_slow(self, a, n):
        r = 1
        while n:
            if n & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            n >>= 1
        return r

    # -- tables ---------------------------------------------------------------

    def _build_tables(self):
        q = self.order
        p = self.p
        neg = [self._neg_slow(a) for a in range(q)]
        add = [[0] * q for _ in range(q)]
        for a in range(q):
            ca = _int_to_poly(a, p, self.k)
            row = add[a]
            for b in range(q):
                cb = _int_to_poly(b, p, self.k)
                row[b] = _poly_to_int([(x + y) % p for x, y in zip(ca, cb)], p)
        sub = [[add[a][neg[b]] for b in range(q)] for a in range(q)]
        # multiplication through a discrete-log table over a generator
        g = self._find_generator()
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._mul_slow(exp[i - 1], g)
        log = [0] * q
        for i, u in enumerate(exp):
            log[u] = i
        mul = [[0] * q for _ in range(q)]
        for a in range(1, q):
            la = log[a]
            row = mul[a]
            for b in range(1, q):
                row[b] = exp[(la + log[b]) % (q - 1)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = exp[(q - 1 - log[a]) % (q - 1)]
        self._add_t = add
        self._sub_t = sub
        self._neg_t = neg
        self._mul_t = mul
        self._inv_t = inv

    def _find_generator(self):
        q = self.order
        for g in range(2, q):
            u = g
            n = 1
            while u != 1:
                u = self._mul_slow(u, g)
                n += 1
            if n == q - 1:
                return g
        return 1  # GF(2): trivial group

    # -- subfields -------------------------------------------------------------

    def subfield_elements(self, d: int) -> tuple[int, ...]:
        """Elements of the GF(p^d) subfield (fixed points of Frobenius^d)."""
        if d < 1 or self.k % d != 0:
            raise ValueError(f"degree {d} does not divide {self.k}")
        t = self.frob_table(d)
        return tuple(u for u in range(self.order) if t[u] == u)


@lru_cache(maxsize=None)
def make_field(p: int, k: int) -> FieldCtx:
    """Context for GF(p**k) with the smallest-encoding irreducible modulus.

    Deterministic across runs: the same (p, k) always yields the same
    modulus, hence byte-stable element encodings everywhere downstream.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if p ** k > ORDER_CEILING:
        raise ValueError(f"order {p}^{k} above ceiling {ORDER_CEILING}")
    return FieldCtx(p, k, _find_modulus(p, k))


# ---------------------------------------------------------------------------
# quadratic extensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadBasis:
    """Bases of GF(q^2) over its index-2 subfield GF(q).

    beta is the smallest element (by encoding) with {beta, beta^q} linearly
    independent over GF(q); mu is the smallest element outside GF(q), so
    {1, mu} is a basis.  Subfield elements are encodings in the big field.
    """

    ctx: FieldCtx
    sub_degree: int
    q: int
    subfield: tuple[int, ...]
    beta: int
    beta_q: int
    mu: int
    _dec_c1: int
    _dec_c2: int
    _inv_mu_diff: int

    def subfield_index(self, u: int) -> int:
        """Position of a subfield element in the sorted subfield tuple."""
        cache = getattr(self, "_idx", None)
        if cache is None:
            cache = {v: i for i, v in enumerate(self.subfield)}
            object.__setattr__(self, "_idx", cache)
        return cache[u]

    def conj(self, u: int) -> int:
        """u**q, the nontrivial GF(q)-automorphism of GF(q^2)."""
        return self.ctx.frob_table(self.sub_degree)[u]

    def decompose_beta(self, u: int) -> tuple[int, int]:
        """(s, t) in GF(q)^2 with u == s*beta + t*beta^q."""
        ctx = self.ctx
        uq = self.conj(u)
        s = ctx.add(ctx.mul(u, self._dec_c1), ctx.mul(uq, self._dec_c2))
        t = ctx.add(ctx.mul(uq, self._dec_c1), ctx.mul(u, self._dec_c2))
        return s, t

    def recompose_beta(self, s: int, t: int) -> int:
        ctx = self.ctx
        return ctx.add(ctx.mul(s, self.beta), ctx.mul(t, self.beta_q))

    def decompose_mu(self, u: int) -> tuple[int, int]:
        """(s, t) in GF(q)^2 with u == s + t*mu."""
        ctx = self.ctx
        t = ctx.mul(ctx.sub(u, self.conj(u)), self._inv_mu_diff)
        s = ctx.sub(u, ctx.mul(t, self.mu))
        return s, t

    def recompose_mu(self, s: int, t: int) -> int:
        ctx = self.ctx
        return ctx.add(s, ctx.mul(t, self.mu))


def find_normal_element(ctx: FieldCtx) -> QuadBasis:
    """QuadBasis for ctx = GF(q^2) viewed over GF(q).

    Scans encodings in increasing order, so the returned beta and mu are
    deterministic.  ctx.k must be even.
    """
    if ctx.k % 2 != 0:
        raise ValueError("quadratic basis needs an even-degree extension")
    d = ctx.k // 2
    sub = ctx.subfield_elements(d)
    q = ctx.p ** d
    if len(sub) != q:
        raise AssertionError("subfield enumeration inconsistent")
    frob = ctx.frob_table(d)
    beta = None
    for cand in range(1, ctx.order):
        bq = frob[cand]
        if all(ctx.mul(c, cand) != bq for c in sub):
            beta = cand
            break
    if beta is None:
        raise AssertionError("no normal element found")  # cannot happen
    beta_q = frob[beta]
    subset = set(sub)
    mu = next(u for u in range(ctx.order) if u not in subset)
    # Cramer coefficients for the beta-decomposition: with
    # det = beta^2 - (beta^q)^2, s = u*c1 + u^q*c2 and t = u^q*c1 + u*c2.
    det = ctx.sub(ctx.mul(beta, beta), ctx.mul(beta_q, beta_q))
    inv_det = ctx.inv(det)
    c1 = ctx.mul(beta, inv_det)
    c2 = ctx.neg(ctx.mul(beta_q, inv_det))
    mu_diff = ctx.sub(mu, frob[mu])
    return QuadBasis(
        ctx=ctx,
        sub_degree=d,
        q=q,
        subfield=sub,
        beta=beta,
        beta_q=beta_q,
        mu=mu,
        _dec_c1=c1,
        _dec_c2=c2,
        _inv_mu_diff=ctx.inv(mu_diff),
    )
