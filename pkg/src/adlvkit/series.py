"""Truncated Laurent series over F_{q^n} with absolute precision.

A series stores its known coefficients from degree ``val`` upwards and an
absolute precision ``prec``: terms of degree >= prec are unknown.  ``prec``
may be ``math.inf`` for exact (finite Laurent polynomial) values.  The
exact zero is a separate state from "no nonzero coefficient known yet".
"""

import math
import re

from .errors import DivisionByZero, PrecisionExhausted

INF = math.inf

# relative precision used when inverting an exact non-monomial series
DEFAULT_RELATIVE_PREC = 32


class TruncatedSeries:
    __slots__ = ("ctx", "val", "coeffs", "prec")

    def __init__(self, ctx, coeffs=(), val=0, prec=INF):
        """coeffs[i] is the coefficient of t^(val+i); codes of ctx."""
        if prec != INF:
            prec = int(prec)
        cs = list(coeffs)
        # drop known-zero low terms
        k = 0
        while k < len(cs) and cs[k] == 0:
            k += 1
        val += k
        cs = cs[k:]
        if prec != INF:
            cs = cs[: max(0, prec - val)]
        while cs and cs[-1] == 0:
            cs.pop()
        self.ctx = ctx
        self.prec = prec
        if cs:
            self.val = val
        else:
            self.val = None
        self.coeffs = tuple(cs)

    # constructors
    @classmethod
    def zero(cls, ctx):
        return cls(ctx, (), 0, INF)

    @classmethod
    def unknown(cls, ctx, prec):
        """O(t^prec)."""
        return cls(ctx, (), 0, prec)

    @classmethod
    def one(cls, ctx):
        return cls(ctx, (1,), 0, INF)

    @classmethod
    def monomial(cls, ctx, c, k, prec=INF):
        return cls(ctx, (c,), k, prec)

    @classmethod
    def from_dict(cls, ctx, terms, prec=INF):
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            return cls(ctx, (), 0, prec)
        lo, hi = min(terms), max(terms)
        return cls(ctx, [terms.get(k, 0) for k in range(lo, hi + 1)], lo, prec)

    # inspection
    @property
    def is_exact_zero(self):
        return self.val is None and self.prec == INF

    @property
    def is_exact(self):
        return self.prec == INF

    def known_zero(self):
        """True if no nonzero coefficient is known (exact zero or O(t^N))."""
        return self.val is None

    def valuation(self):
        if self.val is not None:
            return self.val
        if self.prec == INF:
            return INF
        raise PrecisionExhausted(f"valuation of O(t^{self.prec}) is not certified")

    def lower_valuation(self):
        """A certified lower bound for the valuation."""
        return self.val if self.val is not None else self.prec

    def coefficient(self, k):
        if k >= self.prec:
            raise PrecisionExhausted(f"coefficient of t^{k} unknown at precision {self.prec}")
        if self.val is None or k < self.val or k >= self.val + len(self.coeffs):
            return 0
        return self.coeffs[k - self.val]

    def terms(self):
        """dict degree -> nonzero code."""
        if self.val is None:
            return {}
        return {self.val + i: c for i, c in enumerate(self.coeffs) if c}

    def degree(self):
        """Highest known nonzero degree (None for zero)."""
        if self.val is None:
            return None
        return self.val + len(self.coeffs) - 1

    # arithmetic
    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if other.ctx != self.ctx:
            raise TypeError("series over different fields")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        F = self.ctx
        prec = min(self.prec, other.prec)
        terms = dict(self.terms())
        for k, c in other.terms().items():
            terms[k] = F.add(terms.get(k, 0), c)
        return TruncatedSeries.from_dict(F, {k: c for k, c in terms.items() if k < prec}, prec)

    def __neg__(self):
        F = self.ctx
        return TruncatedSeries(F, [F.neg(c) for c in self.coeffs], self.val or 0, self.prec)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries(self.ctx, (self.ctx.embed_prime(other),), 0)
        if self._check(other) is NotImplemented:
            return NotImplemented
        F = self.ctx
        if self.is_exact_zero or other.is_exact_zero:
            return TruncatedSeries.zero(F)
        va, vb = self.lower_valuation(), other.lower_valuation()
        prec = min(va + other.prec, vb + self.prec)
        if self.val is None or other.val is None:
            return TruncatedSeries.unknown(F, prec)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = F.add(out[i + j], F.mul(a, b))
        return TruncatedSeries(F, out, self.val + other.val, prec)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by the field element with code c."""
        F = self.ctx
        if c == 0:
            return TruncatedSeries.zero(F)
        return TruncatedSeries(F, [F.mul(c, a) for a in self.coeffs], self.val or 0, self.prec)

    def shift(self, k):
        """Multiply by t^k."""
        prec = self.prec + k if self.prec != INF else INF
        return TruncatedSeries(self.ctx, self.coeffs, (self.val or 0) + k, prec)

    def truncate(self, prec):
        """Forget everything from degree prec on."""
        return TruncatedSeries(self.ctx, self.coeffs, self.val or 0, min(prec, self.prec))

    def invert(self, cap=None):
        F = self.ctx
        if self.is_exact_zero:
            raise DivisionByZero("inverse of exact zero")
        v = self.valuation()
        if self.prec == INF and len(self.coeffs) == 1:
            return TruncatedSeries(F, (F.inv(self.coeffs[0]),), -v, INF)
        if self.prec == INF:
            rel = cap + v if cap is not None else DEFAULT_RELATIVE_PREC
        else:
            rel = self.prec - v
        u = self.coeffs
        w0 = F.inv(u[0])
        w = [w0]
        for m in range(1, rel):
            s = 0
            for i in range(1, min(m, len(u) - 1) + 1):
                s = F.add(s, F.mul(u[i], w[m - i]))
            w.append(F.neg(F.mul(w0, s)))
        return TruncatedSeries(F, w, -v, -v + rel)

    def __truediv__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self * other.invert()

    def sigma(self):
        F = self.ctx
        return TruncatedSeries(F, [F.frob(c) for c in self.coeffs], self.val or 0, self.prec)

    # comparison
    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.ctx, self.val, self.coeffs, self.prec) == (other.ctx, other.val, other.coeffs, other.prec)

    def __hash__(self):
        return hash((self.val, self.coeffs, self.prec))

    def agrees_with(self, other, upto=None):
        """Equality of all coefficients below min precision (and below upto)."""
        N = min(self.prec, other.prec)
        if upto is not None:
            N = min(N, upto)
        d = self - other
        if d.val is None:
            return True
        return d.val >= N

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"TruncatedSeries({format_series(self)!r})"


def valuation(x):
    return x.valuation()


def sigma_series(x):
    return x.sigma()


def invert(x, cap=None):
    return x.invert(cap)


def format_series(x):
    """'t^v*(c0 + c1*t + ...) + O(t^N)'; exact values omit the O-term."""
    tail = "" if x.prec == INF else f"O(t^{x.prec})"
    if x.val is None:
        return "0" if x.prec == INF else tail
    parts = []
    for i, c in enumerate(x.coeffs):
        if not c:
            continue
        if i == 0:
            parts.append(f"{c}")
        elif i == 1:
            parts.append(f"{c}*t")
        else:
            parts.append(f"{c}*t^{i}")
    body = f"t^{x.val}*({' + '.join(parts)})"
    return body + (" + " + tail if tail else "")


_TERM = re.compile(r"^(\d+)(?:\*t(?:\^(\d+))?)?$")


def parse_series(ctx, s):
    """Inverse of format_series."""
    s = s.strip()
    if s == "0":
        return TruncatedSeries.zero(ctx)
    prec = INF
    m = re.search(r"(?:^|\+\s*)O\(t\^(-?\d+)\)\s*$", s)
    if m:
        prec = int(m.group(1))
        s = s[: m.start()].strip()
        if not s:
            return TruncatedSeries.unknown(ctx, prec)
    m = re.match(r"^t\^(-?\d+)\*\((.*)\)$", s)
    if not m:
        raise ValueError(f"cannot parse series {s!r}")
    val = int(m.group(1))
    terms = {}
    for part in m.group(2).split("+"):
        tm = _TERM.match(part.strip())
        if not tm:
            raise ValueError(f"bad term {part!r}")
        c = int(tm.group(1))
        if not 0 <= c < ctx.order:
            raise ValueError(f"coefficient {c} out of range")
        k = 0 if "t" not in part else int(tm.group(2) or 1)
        terms[val + k] = c
    return TruncatedSeries.from_dict(ctx, terms, prec)
