"""Affine Deligne-Lusztig sets X_w(b) in the tree, for b = 1, diag(1, t^a), b_1."""

import random
from dataclasses import dataclass

from .building import (
    C0,
    Alcove,
    Gallery,
    P,
    SubcomplexId,
    Vertex,
    WeylElt,
    act,
    alcove_ball,
    alcoves_at,
    ancestor,
    apartment_alcove,
    as_matrix,
    canonical_vertex,
    child,
    children,
    compose,
    det,
    gallery_from_vertex,
    graph_distance,
    inv,
    matmul,
    neighbors,
    parent,
    sigma_alcove,
    vertex_in,
    vertex_of_departure,
    vertex_type,
)
from .errors import CoordinateExcluded, EmptyADLV
from .series import TruncatedSeries

S = TruncatedSeries


@dataclass(frozen=True)
class BCase:
    tag: str  # "identity", "diagonal" or "supersingular"
    alpha: int = 0

    def __post_init__(self):
        if self.tag not in ("identity", "diagonal", "supersingular"):
            raise ValueError(f"unknown case {self.tag!r}")
        if self.tag == "diagonal" and self.alpha <= 0:
            raise ValueError("the diagonal case needs alpha > 0")
        if self.tag != "diagonal" and self.alpha:
            raise ValueError("alpha only applies to the diagonal case")

    @property
    def detval(self):
        return {"identity": 0, "diagonal": self.alpha, "supersingular": 1}[self.tag]

    @property
    def subcomplex(self):
        return {
            "identity": SubcomplexId.RationalBuilding,
            "diagonal": SubcomplexId.StandardApartment,
            "supersingular": SubcomplexId.BaseAlcoveClosure,
        }[self.tag]

    def matrix(self, ctx):
        if self.tag == "identity":
            return [[S.one(ctx), S.zero(ctx)], [S.zero(ctx), S.one(ctx)]]
        if self.tag == "diagonal":
            return [[S.one(ctx), S.zero(ctx)], [S.zero(ctx), S.monomial(ctx, 1, self.alpha)]]
        return [[S.zero(ctx), S.one(ctx)], [S.monomial(ctx, 1, 1), S.zero(ctx)]]

    def label(self):
        return f"diagonal(alpha={self.alpha})" if self.tag == "diagonal" else self.tag


IDENTITY = BCase("identity")
SUPERSINGULAR = BCase("supersingular")


def diagonal(alpha):
    return BCase("diagonal", alpha)


def b_sigma(D, b, ctx):
    """b * sigma(D)."""
    return act(b.matrix(ctx), sigma_alcove(D, ctx), ctx)


def relative_position_b(D, b, ctx):
    return inv(D, b_sigma(D, b, ctx))


def _w(w):
    return w if isinstance(w, WeylElt) else WeylElt(int(w))


def nonempty(b, w):
    ell = _w(w).length
    if b.tag == "identity":
        return ell == 0 or ell % 2 == 1
    if b.tag == "diagonal":
        return ell == b.alpha or (ell > b.alpha and (ell - b.alpha) % 2 == 1)
    return ell % 2 == 0


def departure_index(b, w):
    """i with l(w) = 2i-1, a+2i-1 or 2i; None for the point-like rows."""
    ell = _w(w).length
    if not nonempty(b, w):
        raise EmptyADLV(f"X_w(b) is empty for {b.label()}, index {_w(w).index}")
    if b.tag == "identity":
        return None if ell == 0 else (ell + 1) // 2
    if b.tag == "diagonal":
        return None if ell == b.alpha else (ell - b.alpha + 1) // 2
    return None if ell == 0 else ell // 2


def m_parity(i, index, flip=None):
    """Type m of the departure vertices: 1 exactly when i is odd xor the
    index is negative.  This one rule covers the three case tables.
    flip = (i, sign) swaps the answer for that one entry (fault injection)."""
    m = (i % 2) ^ (1 if index < 0 else 0)
    if flip is not None and flip == (i, 1 if index > 0 else -1):
        m ^= 1
    return m


def gamma_length(b, d):
    if b.tag == "identity":
        return 2 * d - 1
    if b.tag == "diagonal":
        return 2 * d + b.alpha - 1
    return 2 * d


def gamma_D(D, b, ctx):
    """The composed gallery from D to b sigma D built from Gamma_{D,c}."""
    sub = b.subcomplex
    Pd, g = vertex_of_departure(D, sub, ctx)
    M = b.matrix(ctx)
    back = Gallery([act(M, sigma_alcove(E, ctx), ctx) for E in g]).inverse()
    if b.tag == "identity":
        return compose(g, back)
    if b.tag == "diagonal":
        k = Pd.b
        tr = Gallery([apartment_alcove(j) for j in range(k, k + b.alpha)])
        return compose(g, tr, back)
    return compose(g, Gallery([C0]), back)


@dataclass(frozen=True)
class DepartureSet:
    P: Vertex
    i: int
    subcomplex: SubcomplexId


def delta(v):
    """Distance from a vertex to the nearer vertex of C^0."""
    return min(graph_distance(v, P(0)), graph_distance(v, P(1)))


def rational_vertices(radius, ctx, pred=None):
    """Vertices of the rational building with delta <= radius (vertex -> delta).
    If pred is a dict it receives each vertex's neighbour towards C^0."""
    seen = {P(0): 0, P(1): 0}
    frontier = [P(0), P(1)]
    for d in range(1, radius + 1):
        nxt = []
        for v in frontier:
            for w in neighbors(v, ctx):
                if w not in seen and vertex_in(SubcomplexId.RationalBuilding, w, ctx):
                    seen[w] = d
                    if pred is not None:
                        pred[w] = v
                    nxt.append(w)
        frontier = nxt
    return seen


def rational_alcoves(radius, ctx):
    """Alcoves of the rational building within distance radius of C^0."""
    pred = {}
    rational_vertices(radius, ctx, pred)
    return sorted([C0] + [Alcove.from_vertices(v, u) for v, u in pred.items()])


def subcomplex_vertices(sub, radius, ctx):
    if sub is SubcomplexId.RationalBuilding:
        return sorted(rational_vertices(radius, ctx))
    if sub is SubcomplexId.StandardApartment:
        return [P(k) for k in range(-radius, radius + 2)]
    return [P(0), P(1)]


def structural_sets(b, w, R, ctx, flip=None):
    """Predicted decomposition of X_w(b) near C^0.

    Returns DepartureSets D^i(P) for all P of the right type whose members
    lie within distance R of C^0, or a list of alcoves for the point-like
    rows (w = 1 for b = 1 and b_1, l(w) = alpha for diagonal b)."""
    w = _w(w)
    i = departure_index(b, w)
    if i is None:
        if b.tag == "identity":
            return rational_alcoves(R, ctx)
        if b.tag == "diagonal":
            par = 0 if w.index > 0 else 1
            return [apartment_alcove(j) for j in range(-R, R + 1) if j % 2 == par]
        return [C0]
    m = m_parity(i, w.index, flip)
    sub = b.subcomplex
    out = []
    for v in subcomplex_vertices(sub, max(R - i, 0), ctx):
        if vertex_type(v) == m and delta(v) + i <= R:
            out.append(DepartureSet(v, i, sub))
    return out


def _outside_neighbors(Pv, sub, ctx):
    return [y for y in neighbors(Pv, ctx) if not vertex_in(sub, y, ctx)]


def enumerate_members(s, ctx):
    """All alcoves with departure vertex s.P and departure distance s.i."""
    out = set()

    def walk(prev, cur, depth):
        if depth == 0:
            out.add(Alcove.from_vertices(prev, cur))
            return
        for nxt in neighbors(cur, ctx):
            if nxt != prev:
                walk(cur, nxt, depth - 1)

    for y in _outside_neighbors(s.P, s.subcomplex, ctx):
        walk(s.P, y, s.i - 1)
    return out


def members_count(sub, i, ctx):
    """Closed form for |D^i(P)| at the working level."""
    Q, q = ctx.order, ctx.q
    if sub is SubcomplexId.RationalBuilding:
        return Q ** (i - 1) * (Q - q)
    if sub is SubcomplexId.StandardApartment:
        return Q ** (i - 1) * (Q - 1)
    return Q ** i


def brute_force_adlv(b, w, R, ctx):
    """Alcoves within distance R of C^0 with inv(D, b sigma D) = w (scalar path)."""
    w = _w(w)
    return {D for D in alcove_ball(R, ctx) if relative_position_b(D, b, ctx).index == w.index}


def brute_force_buckets(b, R, ctx):
    """index -> set of window alcoves, scalar path."""
    out = {}
    for D in alcove_ball(R, ctx):
        out.setdefault(relative_position_b(D, b, ctx).index, set()).add(D)
    return out


# -- Schubert charts --

def _transport(Pv, V):
    """g in GL_2(F) with g P_0 = Pv and g C^0 the first alcove of V."""
    A = sorted(V)[0]
    if Pv not in A.vertices:
        raise ValueError("V must consist of alcoves at P")
    Y = A.v1 if A.v0 == Pv else A.v0
    b = Pv.b
    if Y.b > b:
        lam = Y.terms.get(b, 0)
        terms = dict(Pv.terms)
        if lam:
            terms[b] = lam
        return ("down", b, terms)
    return ("up", b, dict(Pv.terms))


def _transport_matrix(tr, ctx):
    kind, b, terms = tr
    c = S.from_dict(ctx, terms)
    if kind == "down":
        return [[S.one(ctx), S.zero(ctx)], [c, S.monomial(ctx, 1, b)]]
    return [[S.zero(ctx), S.one(ctx)], [S.monomial(ctx, 1, b), c]]


def chart_at_base(coords, ctx):
    """Alcove of the chart at [o + o] with V = {C^0}: L = <v> + t^(l+1) L0,
    L' = L + <t^l e1>, v = e2 + sum a_j t^j e1."""
    l = len(coords) - 1
    a = S.from_dict(ctx, {j: x for j, x in enumerate(coords)})
    one, zero = S.one(ctx), S.zero(ctx)
    L = canonical_vertex([[a, S.monomial(ctx, 1, l + 1)], [one, zero]], ctx)
    Lp = canonical_vertex([[a, S.monomial(ctx, 1, l)], [one, zero]], ctx)
    return Alcove.from_vertices(L, Lp)


def schubert_chart(Pv, V, l, coords, ctx):
    """The alcove of F_{P,V,l} with coordinates coords (length l+1)."""
    coords = [int(x) for x in coords]
    if len(coords) != l + 1:
        raise ValueError("need l+1 coordinates")
    g = _transport_matrix(_transport(Pv, V), ctx)
    first = act(g, chart_at_base(coords[:1], ctx), ctx)
    if first in set(V):
        raise CoordinateExcluded(f"first alcove {first} lies in V")
    return act(g, chart_at_base(coords, ctx), ctx)


def weyl_representative(l, ctx):
    """v in SL_2 with v C^0 = C^-(l+1) and v P_1 = P_-(l+1)."""
    if (l + 1) % 2 == 0:
        s = (l + 1) // 2
        return [[S.monomial(ctx, 1, s), S.zero(ctx)], [S.zero(ctx), S.monomial(ctx, 1, -s)]]
    s = l // 2
    return [[S.zero(ctx), S.monomial(ctx, 1, s)], [S.monomial(ctx, ctx.neg(1), -s), S.zero(ctx)]]


def schubert_chart_roots(coords, l, ctx):
    """(prod of root subgroup elements x_n(c_n), n = 0..l) * v * C^0."""
    coords = [int(x) for x in coords]
    if len(coords) != l + 1:
        raise ValueError("need l+1 coordinates")
    f = S.from_dict(ctx, {j: x for j, x in enumerate(coords)})
    u = [[S.one(ctx), f], [S.zero(ctx), S.one(ctx)]]
    return act(matmul(u, weyl_representative(l, ctx)), C0, ctx)


def chart_domain(Pv, V, l, ctx):
    """F_{P,V,l} by its defining property: alcoves at distance l from P whose
    minimal gallery from P avoids V."""
    V = set(V)
    out = set()

    def collect(prev, cur, depth):
        if depth == 0:
            out.add(Alcove.from_vertices(prev, cur))
            return
        for nxt in neighbors(cur, ctx):
            if nxt != prev:
                collect(cur, nxt, depth - 1)

    for A in alcoves_at(Pv, ctx):
        if A not in V:
            collect(Pv, A.v1 if A.v0 == Pv else A.v0, l)
    return out


def chart_first_alcove(Pv, D):
    """The first alcove of the gallery stretched from Pv to D."""
    return gallery_from_vertex(Pv, D)[0]


# -- J_b data --

def is_in_Jb(g, b, ctx):
    """g^-1 b sigma(g) = b, checked as b sigma(g) = g b."""
    G = as_matrix(ctx, g)
    Bm = b.matrix(ctx)
    sg = [[x.sigma() for x in r] for r in G]
    lhs, rhs = matmul(Bm, sg), matmul(G, Bm)
    return all(lhs[i][j].agrees_with(rhs[i][j]) for i in range(2) for j in range(2))


def surjectivity_representative(b, v, ctx):
    """r_v in J_b with v_L(det r_v) = v."""
    if b.tag in ("identity", "diagonal"):
        return [[S.one(ctx), S.zero(ctx)], [S.zero(ctx), S.monomial(ctx, 1, v)]]
    b1 = b.matrix(ctx)
    if v >= 0:
        out = [[S.one(ctx), S.zero(ctx)], [S.zero(ctx), S.one(ctx)]]
        for _ in range(v):
            out = matmul(out, b1)
        return out
    # b1^-1 = (0 t^-1; 1 0)
    b1inv = [[S.zero(ctx), S.monomial(ctx, 1, -1)], [S.one(ctx), S.zero(ctx)]]
    out = [[S.one(ctx), S.zero(ctx)], [S.zero(ctx), S.one(ctx)]]
    for _ in range(-v):
        out = matmul(out, b1inv)
    return out


def component_decomposition(b, vrange=range(-3, 4), ctx=None):
    """Component-group label and det-valuation representatives."""
    label = {
        "identity": "J_1 / K_1^(m) cosets (Z at the GL_2/SL_2 interface)",
        "diagonal": "Z^2",
        "supersingular": "Z",
    }[b.tag]
    reps = {}
    if ctx is not None:
        for v in vrange:
            reps[v] = surjectivity_representative(b, v, ctx)
    return {"case": b.label(), "components": label, "representatives": reps}


def in_iwahori(g):
    """Entry valuations (o^x, o; p, o^x)."""
    a, bb, c, d = g[0][0], g[0][1], g[1][0], g[1][1]
    return (a.valuation() == 0 and d.valuation() == 0
            and bb.lower_valuation() >= 0 and c.lower_valuation() >= 1)


def random_series(ctx, rng, lo, hi, prec, values=None):
    vals = values if values is not None else range(ctx.order)
    terms = {k: rng.choice(list(vals)) for k in range(lo, hi)}
    return S.from_dict(ctx, terms, prec)


def supersingular_J_element(a, c):
    """(a sigma(c); t c sigma(a))."""
    ctx = a.ctx
    return [[a, c.sigma()], [c * S.monomial(ctx, 1, 1), a.sigma()]]


def transitivity_element(v, ctx, b=IDENTITY):
    """Determinant-one x with x P_m = v, m = type of v (rational v for b = 1,
    apartment v for diagonal b)."""
    m = vertex_type(v)
    if b.tag == "identity":
        # basis (1, c), (0, t^b) rescaled to determinant t^m, then divide
        # the second column by t^m
        h = (v.b - m) // 2
        c = v.c_series(ctx)
        return [[S.monomial(ctx, 1, -h), S.zero(ctx)],
                [c.shift(-h), S.monomial(ctx, 1, v.b - h - m)]]
    if v.c:
        raise ValueError("not an apartment vertex")
    i = (v.b - m) // 2
    return [[S.monomial(ctx, 1, -i), S.zero(ctx)], [S.zero(ctx), S.monomial(ctx, 1, i)]]


def stabilizer_checks(b, samples, ctx, seed=0):
    """Report on transitivity (b = 1, diagonal) or Iwahori membership (b_1)."""
    rng = random.Random(seed)
    report = {"case": b.label(), "samples": samples, "checked": 0, "counterexamples": []}
    if b.tag == "supersingular":
        # coefficients from F_{q^2}: needs an even working level
        if ctx.n % 2:
            raise ValueError("supersingular checks need an even level n")
        E = [x for x in range(ctx.order) if ctx.frob(x, 2) == x]
        while report["checked"] < samples:
            a = random_series(ctx, rng, rng.randint(-1, 1), 4, 8, E)
            c = random_series(ctx, rng, rng.randint(-2, 1), 4, 8, E)
            if a.known_zero() or c.known_zero():
                continue
            g = supersingular_J_element(a, c)
            dv = det(g)
            if dv.known_zero() or dv.valuation() != 0:
                continue
            report["checked"] += 1
            ok = in_iwahori(g) and is_in_Jb(g, b, ctx)
            if not ok:
                report["counterexamples"].append([[str(x) for x in r] for r in g])
        return report
    if b.tag == "identity":
        pool = sorted(rational_vertices(3, ctx))
    else:
        pool = [P(k) for k in range(-6, 7)]
    for _ in range(samples):
        v = rng.choice(pool)
        m = vertex_type(v)
        x = transitivity_element(v, ctx, b)
        report["checked"] += 1
        ok = (det(x).agrees_with(S.one(ctx)) and act(x, P(m), ctx) == v and is_in_Jb(x, b, ctx))
        if not ok:
            report["counterexamples"].append(str(v))
    return report
