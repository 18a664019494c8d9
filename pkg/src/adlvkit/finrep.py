"""Characters of GL_2(F_q) and of its subgroups B (upper triangular),
T (diagonal), omegaB (lower triangular) and N (monomial), with exact
values in Q(zeta_(q-1))."""

import random
from fractions import Fraction
from functools import lru_cache

from .errors import InvalidCharacter, UnsupportedSubgroup
from .ff import field

# -- exact cyclotomic numbers --


@lru_cache(maxsize=None)
def cyclotomic_poly(N):
    """Integer coefficients of Phi_N, low degree first."""
    # x^N - 1 divided by Phi_d for all proper divisors d
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            num = _pdiv_exact(num, cyclotomic_poly(d))
    return tuple(num)


def _pdiv_exact(a, f):
    a = list(a)
    out = [0] * (len(a) - len(f) + 1)
    for s in range(len(out) - 1, -1, -1):
        c = a[s + len(f) - 1] // f[-1]
        out[s] = c
        for i, x in enumerate(f):
            a[s + i] -= c * x
    assert not any(a), "inexact cyclotomic division"
    return out


class Cyc:
    """Element of Q(zeta_N) in the power basis modulo Phi_N."""

    __slots__ = ("N", "c")

    def __init__(self, N, coeffs):
        self.N = N
        f = cyclotomic_poly(N)
        d = len(f) - 1
        a = [Fraction(x) for x in coeffs]
        for s in range(len(a) - 1, d - 1, -1):
            c = a[s]
            if c:
                for i, x in enumerate(f):
                    a[s - d + i] -= c * x
        a = a[:d] + [Fraction(0)] * (d - len(a))
        self.c = tuple(a)

    @classmethod
    def rational(cls, N, r):
        return cls(N, [r])

    @classmethod
    def zeta(cls, N, k):
        v = [0] * N
        v[k % N] = 1
        return cls(N, v)

    def __add__(self, o):
        if not isinstance(o, Cyc):
            o = Cyc.rational(self.N, o)
        return Cyc(self.N, [x + y for x, y in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.N, [-x for x in self.c])

    def __sub__(self, o):
        return self + (-o if isinstance(o, Cyc) else -Fraction(o))

    def __mul__(self, o):
        if not isinstance(o, Cyc):
            return Cyc(self.N, [x * Fraction(o) for x in self.c])
        out = [Fraction(0)] * (2 * len(self.c))
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(o.c):
                    out[i + j] += x * y
        return Cyc(self.N, out)

    __rmul__ = __mul__

    def conj(self):
        v = [Fraction(0)] * self.N
        for i, x in enumerate(self.c):
            v[(-i) % self.N] += x
        return Cyc(self.N, v)

    def is_rational(self):
        return not any(self.c[1:])

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def __eq__(self, o):
        if not isinstance(o, Cyc):
            o = Cyc.rational(self.N, o)
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return "Cyc(" + ", ".join(str(x) for x in self.c) + f"; N={self.N})"


# -- the group --

SUBGROUPS = ("G", "B", "T", "omegaB", "N")


class FiniteGroupCtx:
    """GL_2(F_q): elements are tuples (a, b, c, d) of field codes."""

    def __init__(self, q):
        self.q = q
        self.F = F = field(q)
        self.N = max(q - 1, 1)
        els = []
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    for d in range(q):
                        if F.sub(F.mul(a, d), F.mul(b, c)):
                            els.append((a, b, c, d))
        self.elements = els
        self.order = len(els)
        self._log = {x: i for i, x in enumerate(F._exp)} if q > 2 else {1: 0}
        self._classes()
        self.subgroups = {
            "G": els,
            "B": [g for g in els if g[2] == 0],
            "T": [g for g in els if g[1] == 0 and g[2] == 0],
            "omegaB": [g for g in els if g[1] == 0],
            "N": [g for g in els if (g[1] == 0 and g[2] == 0) or (g[0] == 0 and g[3] == 0)],
        }

    def mul(self, x, y):
        F = self.F
        a, b, c, d = x
        e, f, g, h = y
        return (F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h)),
                F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h)))

    def inverse(self, x):
        F = self.F
        a, b, c, d = x
        di = F.inv(F.sub(F.mul(a, d), F.mul(b, c)))
        return (F.mul(d, di), F.mul(F.neg(b), di), F.mul(F.neg(c), di), F.mul(a, di))

    def det(self, x):
        F = self.F
        return F.sub(F.mul(x[0], x[3]), F.mul(x[1], x[2]))

    def log(self, x):
        """Discrete logarithm in F_q^x for the fixed generator."""
        return self._log[x]

    def _classes(self):
        cls = {}
        reps, sizes = [], []
        invs = {g: self.inverse(g) for g in self.elements}
        for g in self.elements:
            if g in cls:
                continue
            k = len(reps)
            orbit = {self.mul(self.mul(x, g), invs[x]) for x in self.elements}
            for h in orbit:
                cls[h] = k
            reps.append(g)
            sizes.append(len(orbit))
        self.class_of = cls
        self.class_reps = reps
        self.class_sizes = sizes

    def subgroup(self, H):
        if H not in self.subgroups:
            raise UnsupportedSubgroup(f"unsupported subgroup {H!r}")
        return self.subgroups[H]

    def cyc(self, r):
        return Cyc.rational(self.N, r)

    def zeta(self, k):
        return Cyc.zeta(self.N, k)


@lru_cache(maxsize=None)
def group(q):
    return FiniteGroupCtx(q)


class ClassFunction:
    """Values on the classes of G."""

    def __init__(self, ctx, values):
        self.ctx = ctx
        self.values = tuple(v if isinstance(v, Cyc) else ctx.cyc(v) for v in values)

    @classmethod
    def from_function(cls, ctx, f):
        return cls(ctx, [f(g) for g in ctx.class_reps])

    def __call__(self, g):
        return self.values[self.ctx.class_of[g]]

    def __add__(self, o):
        return ClassFunction(self.ctx, [x + y for x, y in zip(self.values, o.values)])

    def __sub__(self, o):
        return ClassFunction(self.ctx, [x - y for x, y in zip(self.values, o.values)])

    def scale(self, c):
        return ClassFunction(self.ctx, [x * c for x in self.values])

    def __mul__(self, o):
        return ClassFunction(self.ctx, [x * y for x, y in zip(self.values, o.values)])

    def __eq__(self, o):
        return isinstance(o, ClassFunction) and self.values == o.values

    def degree(self):
        return self(IDENT)

    def restrict(self, H):
        """Values on the elements of the subgroup H (a dict)."""
        return {h: self(h) for h in self.ctx.subgroup(H)}


IDENT = (1, 0, 0, 1)


def _simplify(x):
    return x.to_rational() if x.is_rational() else x


def inner(ctx, f, g):
    """<f, g>_G = |G|^-1 sum f(x) conj(g(x))."""
    s = ctx.cyc(0)
    for v, w, n in zip(f.values, g.values, ctx.class_sizes):
        s = s + v * w.conj() * n
    return _simplify(s * Fraction(1, ctx.order))


def inner_on(ctx, H, f, g):
    """<f, g>_H for functions given as dicts on the elements of H."""
    els = ctx.subgroup(H)
    s = ctx.cyc(0)
    for h in els:
        s = s + f[h] * g[h].conj()
    return _simplify(s * Fraction(1, len(els)))


def trivial(ctx):
    return ClassFunction(ctx, [1] * len(ctx.class_reps))


def perm_character_P1(ctx):
    """Number of fixed points on P^1(F_q)."""
    F = ctx.F
    pts = [(1, x) for x in range(ctx.q)] + [(0, 1)]

    def fixed(g):
        a, b, c, d = g
        n = 0
        for u, v in pts:
            x, y = F.add(F.mul(a, u), F.mul(b, v)), F.add(F.mul(c, u), F.mul(d, v))
            if F.sub(F.mul(x, v), F.mul(y, u)) == 0:
                n += 1
        return n

    return ClassFunction.from_function(ctx, fixed)


def steinberg_character(ctx):
    return perm_character_P1(ctx) - trivial(ctx)


def det_character(ctx, c):
    """phi o det with phi(x) = zeta^(c log x)."""
    return ClassFunction.from_function(ctx, lambda g: ctx.zeta(c * ctx.log(ctx.det(g))))


def torus_character(ctx, a, b):
    """chi(diag(x, y)) = zeta^(a log x + b log y), as a function on B
    (through B -> T)."""
    return {h: ctx.zeta(a * ctx.log(h[0]) + b * ctx.log(h[3])) for h in ctx.subgroup("B")}


def induce(ctx, H, f, K="G"):
    """Ind_H^K f for f a dict on the elements of H.  Returns a ClassFunction
    when K = G and a dict on K otherwise."""
    Hs = ctx.subgroup(H)
    Ks = ctx.subgroup(K)
    hset = set(Hs)
    kset = set(Ks)
    if not hset <= kset:
        raise UnsupportedSubgroup(f"{H} is not contained in {K}")
    if set(f) != hset:
        raise ValueError("f must be defined on every element of H")
    if K == "G":
        sums = [ctx.cyc(0) for _ in ctx.class_reps]
        for h in Hs:
            k = ctx.class_of[h]
            sums[k] = sums[k] + f[h]
        vals = [s * Fraction(ctx.order, len(Hs) * n) for s, n in zip(sums, ctx.class_sizes)]
        return ClassFunction(ctx, vals)
    out = {}
    invs = {x: ctx.inverse(x) for x in Ks}
    for k in Ks:
        s = ctx.cyc(0)
        for x in Ks:
            y = ctx.mul(ctx.mul(x, k), invs[x])
            if y in hset:
                s = s + f[y]
        out[k] = s * Fraction(1, len(Hs))
    return out


def mackey_restriction_check(ctx):
    """St restricted to B equals Ind_T^B 1."""
    res = steinberg_character(ctx).restrict("B")
    ind = induce(ctx, "T", {h: ctx.cyc(1) for h in ctx.subgroup("T")}, K="B")
    return res == ind


def normal_induction_check(ctx):
    """Ind_T^N 1 restricted to T is [N:T] copies of the trivial character."""
    ind = induce(ctx, "T", {h: ctx.cyc(1) for h in ctx.subgroup("T")}, K="N")
    idx = len(ctx.subgroup("N")) // len(ctx.subgroup("T"))
    return all(ind[t] == idx for t in ctx.subgroup("T"))


def subgroup_classes(ctx, H):
    els = ctx.subgroup(H)
    invs = {x: ctx.inverse(x) for x in els}
    seen, out = set(), []
    for g in els:
        if g in seen:
            continue
        orb = {ctx.mul(ctx.mul(x, g), invs[x]) for x in els}
        seen |= orb
        out.append(sorted(orb))
    return out


def random_class_function(ctx, H, rng):
    """Random Z[zeta]-valued class function on H (dict on elements)."""
    f = {}
    for orb in subgroup_classes(ctx, H):
        v = ctx.cyc(rng.randint(-3, 3)) + ctx.zeta(rng.randrange(ctx.N)) * rng.randint(-2, 2)
        for h in orb:
            f[h] = v
    return f


def random_character(ctx, rng):
    """Random Z-combination of trivial, St, det twists and principal series."""
    out = trivial(ctx).scale(rng.randint(-2, 2)) + steinberg_character(ctx).scale(rng.randint(-2, 2))
    out = out + det_character(ctx, rng.randrange(ctx.N)).scale(rng.randint(-1, 1))
    a, b = rng.randrange(ctx.N), rng.randrange(ctx.N)
    return out + induce(ctx, "B", torus_character(ctx, a, b)).scale(rng.randint(-1, 1))


def frobenius_reciprocity(ctx, pairs=50, seed=0):
    """List of (H, lhs, rhs) for seeded pairs (f on H, chi on G)."""
    rng = random.Random(seed)
    out = []
    for _ in range(pairs):
        H = rng.choice(["B", "T", "omegaB", "N"])
        f = random_class_function(ctx, H, rng)
        chi = random_character(ctx, rng)
        lhs = inner(ctx, induce(ctx, H, f), chi)
        rhs = inner_on(ctx, H, f, chi.restrict(H))
        out.append((H, lhs, rhs))
    return out


# -- finite shadows of the Hom dimensions --

SOURCES = ("trivial", "steinberg")
TARGETS = ("principal_series", "one_dimensional", "twisted_steinberg")


def _exponent(ctx, x):
    if isinstance(x, bool) or not isinstance(x, int):
        raise InvalidCharacter(f"character exponent {x!r} is not an integer")
    return x % ctx.N


def finite_hom_shadow(ctx, source, target, char):
    """dim Hom_{GL_2(F_q)}(source, target) for depth-one data.

    char is (a, b) for the principal series Ind_B chi, chi = zeta^(a log x +
    b log y), and an exponent c for phi = zeta^(c log x) otherwise."""
    if source not in SOURCES:
        raise InvalidCharacter(f"unknown source {source!r}")
    src = trivial(ctx) if source == "trivial" else steinberg_character(ctx)
    if target == "principal_series":
        if not isinstance(char, tuple) or len(char) != 2:
            raise InvalidCharacter("a torus character needs two exponents")
        a, b = (_exponent(ctx, x) for x in char)
        tgt = induce(ctx, "B", torus_character(ctx, a, b))
    elif target == "one_dimensional":
        tgt = det_character(ctx, _exponent(ctx, char))
    elif target == "twisted_steinberg":
        tgt = det_character(ctx, _exponent(ctx, char)) * steinberg_character(ctx)
    else:
        raise InvalidCharacter(f"unknown target {target!r}")
    d = inner(ctx, src, tgt)
    if isinstance(d, Cyc) or d.denominator != 1 or d < 0:
        raise InvalidCharacter("target is not a character")
    return int(d)


def is_unramified(char):
    """At depth one: trivial on the finite torus."""
    if isinstance(char, tuple):
        return all(x == 0 for x in char)
    return char == 0


# clause -> (source, target, expected dimension when unramified, else)
SHADOW_CLAUSES = {
    "deg l+1 (i) principal series": ("trivial", "principal_series", 1, 0),
    "deg l+1 (ii) one-dimensional": ("trivial", "one_dimensional", 1, 0),
    "deg l+1 (iii) twisted Steinberg": ("trivial", "twisted_steinberg", 0, 0),
    "deg l (i) principal series": ("steinberg", "principal_series", 1, 0),
    "deg l (ii) one-dimensional": ("steinberg", "one_dimensional", 0, 0),
    "deg l (iii) twisted Steinberg": ("steinberg", "twisted_steinberg", 1, 0),
}


def shadow_report(ctx):
    """Per clause: all depth-one characters, computed vs expected dimension."""
    rows = []
    N = ctx.N
    for name, (src, tgt, yes, no) in SHADOW_CLAUSES.items():
        chars = [(a, b) for a in range(N) for b in range(N)] if tgt == "principal_series" else list(range(N))
        for ch in chars:
            got = finite_hom_shadow(ctx, src, tgt, ch)
            exp = yes if is_unramified(ch) else no
            rows.append({"clause": name, "q": ctx.q, "char": ch, "computed": got, "expected": exp, "ok": got == exp})
    return rows
