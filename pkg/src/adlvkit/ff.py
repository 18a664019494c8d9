"""Finite fields F_p < F_q < F_{q^n} realised as one extension of F_p.

Elements are encoded as integers 0 <= code < q^n: the base-p digits of the
code are the coordinates in the power basis 1, x, ..., x^(d-1), d = e*n.
"""

from functools import lru_cache

import numpy as np

MAX_ORDER = 2 ** 16


def _prime_factors(m):
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


def _is_prime(p):
    return p >= 2 and _prime_factors(p) == [p]


def prime_power(q):
    """Return (p, e) with q = p**e, or raise ValueError."""
    fs = _prime_factors(q) if q > 1 else []
    if len(fs) != 1:
        raise ValueError(f"{q} is not a prime power")
    p, e = fs[0], 0
    while q > 1:
        q //= p
        e += 1
    return p, e


# -- dense polynomials over F_p, lists of ints, low degree first --

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(_trim(a)) - 1 >= df:
        c = a[-1] * inv_lead % p
        s = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[s + i] = (a[s + i] - c * fi) % p
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _ppowmod(a, k, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while k:
        if k & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        k >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _trim(_pmod(a, b, p))
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def is_irreducible(f, p):
    """Rabin's test for a monic f (coefficient list, low degree first)."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    if _trim(_psub(_ppowmod(x, p ** d, f, p), x, p)):
        return False
    for r in _prime_factors(d):
        h = _psub(_ppowmod(x, p ** (d // r), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def first_irreducible(p, d):
    """Lexicographically first monic irreducible of degree d over F_p.

    Candidates x^d + a_{d-1}x^{d-1} + ... + a_0 are ordered by the integer
    a_0 + a_1 p + ... + a_{d-1} p^{d-1}.
    """
    for k in range(p ** d):
        coeffs = [(k // p ** i) % p for i in range(d)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


class FieldCtx:
    """The field F_{q^n}, q = p^e, with q-power Frobenius."""

    def __init__(self, p, e=1, n=1):
        if not _is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if e < 1 or n < 1:
            raise ValueError("e and n must be positive")
        self.p, self.e, self.n = p, e, n
        self.q = p ** e
        self.degree = e * n
        self.order = p ** self.degree
        if self.order > MAX_ORDER:
            raise ValueError(f"q^n = {self.order} exceeds {MAX_ORDER}")
        self.modulus = first_irreducible(p, self.degree)
        self._build()

    def __repr__(self):
        return f"FieldCtx(q={self.q}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.e, self.n) == (other.p, other.e, other.n)

    def __hash__(self):
        return hash((self.p, self.e, self.n))

    def __reduce__(self):
        return (field, (self.q, self.n))

    # digits <-> codes
    def to_digits(self, a):
        p = self.p
        return [(a // p ** i) % p for i in range(self.degree)]

    def from_digits(self, ds):
        p = self.p
        return sum((int(x) % p) * p ** i for i, x in enumerate(ds))

    def _slow_mul(self, a, b):
        prod = _pmod(_pmul(self.to_digits(a), self.to_digits(b), self.p), list(self.modulus), self.p)
        return self.from_digits(prod)

    def _build(self):
        Q = self.order
        p = self.p
        self._add = None
        if p != 2 and Q <= 1024:
            digits = np.array([self.to_digits(a) for a in range(Q)], dtype=np.int64)
            s = (digits[:, None, :] + digits[None, :, :]) % p
            weights = p ** np.arange(self.degree, dtype=np.int64)
            self._add = (s * weights).sum(axis=2).tolist()
        self._neg = [self.from_digits([(-x) % p for x in self.to_digits(a)]) for a in range(Q)]
        # multiplicative generator and log/exp tables
        fs = _prime_factors(Q - 1) if Q > 2 else []
        gen = None
        for g in range(2 if Q > 2 else 1, Q):
            ok = True
            for r in fs:
                if self._slow_pow(g, (Q - 1) // r) == 1:
                    ok = False
                    break
            if ok:
                gen = g
                break
        self.generator = gen
        exp = [0] * (Q - 1)
        log = [0] * Q
        x = 1
        for i in range(Q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, gen)
        self._exp, self._log = exp, log
        self._frob = [0] + [exp[(log[a] * self.q) % (Q - 1)] for a in range(1, Q)]
        self._inv = [0] + [exp[(-log[a]) % (Q - 1)] for a in range(1, Q)]
        self.subfield = tuple(a for a in range(Q) if self._frob[a] == a)
        self._np = None

    def _slow_pow(self, a, k):
        r = 1
        while k:
            if k & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            k >>= 1
        return r

    # arithmetic on codes
    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a][b]
        return self.from_digits([x + y for x, y in zip(self.to_digits(a), self.to_digits(b))])

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._inv[a]

    def pow(self, a, k):
        if a == 0:
            return 0 if k > 0 else 1
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def frob(self, a, times=1):
        for _ in range(times % self.n if self.n else 0):
            a = self._frob[a]
        return a

    def in_subfield(self, a):
        return self._frob[a] == a

    def embed_prime(self, k):
        """The image of the integer k in F_p."""
        return k % self.p

    def elem(self, a):
        return FieldElem(self, a)

    def tables(self):
        """numpy lookup tables (add, mul, neg, inv, frob, is_fq) for batch code."""
        if self._np is None:
            Q = self.order
            if Q > 1024:
                raise ValueError("batch tables need q^n <= 1024")
            dt = np.uint8 if Q <= 256 else np.uint16
            a = np.arange(Q)
            add = np.array([[self.add(x, y) for y in range(Q)] for x in range(Q)], dtype=dt)
            mul = np.array([[self.mul(x, y) for y in range(Q)] for x in range(Q)], dtype=dt)
            neg = np.array(self._neg, dtype=dt)
            inv = np.array(self._inv, dtype=dt)
            frob = np.array(self._frob, dtype=dt)
            is_fq = np.array([self.in_subfield(int(x)) for x in a], dtype=bool)
            self._np = (add, mul, neg, inv, frob, is_fq)
        return self._np


@lru_cache(maxsize=None)
def field(q, n=1):
    """Cached FieldCtx for F_{q^n}."""
    p, e = prime_power(q)
    return FieldCtx(p, e, n)


class FieldElem:
    __slots__ = ("ctx", "v")

    def __init__(self, ctx, v):
        self.ctx = ctx
        self.v = int(v)
        if not 0 <= self.v < ctx.order:
            raise ValueError(f"code {v} out of range for {ctx}")

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise TypeError("elements of different fields")
            return other.v
        if isinstance(other, int):
            return self.ctx.embed_prime(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx.add(self.v, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx.sub(self.v, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx.sub(b, self.v))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.v))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx.mul(self.v, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElem(self.ctx, self.ctx.mul(self.v, self.ctx.inv(b)))

    def __pow__(self, k):
        return FieldElem(self.ctx, self.ctx.pow(self.v, k))

    def inverse(self):
        return FieldElem(self.ctx, self.ctx.inv(self.v))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.v == other.v
        if isinstance(other, int):
            return self.v == self.ctx.embed_prime(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.v))

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"FieldElem({self.v}, q={self.ctx.q}, n={self.ctx.n})"


def frobenius(x):
    """x -> x^q."""
    return FieldElem(x.ctx, x.ctx.frob(x.v))


def enumerate_field(ctx):
    """All q^n elements, in code order."""
    return [FieldElem(ctx, a) for a in range(ctx.order)]
