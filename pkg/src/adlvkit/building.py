"""The Bruhat-Tits tree of SL_2 over F_{q^n}((t)).

A vertex is the homothety class of the lattice spanned by e1 + c*e2 and
t^b*e2, where c is a Laurent polynomial whose terms all have degree < b.
Every lattice class has exactly one such representative.  The type of the
vertex is b mod 2 (the determinant of that basis is t^b).

In these coordinates the tree is "hung" from one end: (b, c) has the parent
(b-1, c mod t^(b-1)) and the q^n children (b+1, c + a*t^b).  An alcove is an
edge, and it is determined by its child endpoint.
"""

import enum
import re
from dataclasses import dataclass

from .errors import AlcoveInsideSubcomplex, PrecisionExhausted, SingularBasis
from .series import INF, TruncatedSeries, parse_series


@dataclass(frozen=True, order=True)
class Vertex:
    b: int
    c: tuple = ()  # sorted ((degree, code), ...) with code != 0 and degree < b

    @staticmethod
    def make(b, terms):
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        return Vertex(b, tuple(sorted((k, v) for k, v in items if v and k < b)))

    @property
    def terms(self):
        return dict(self.c)

    def c_series(self, ctx):
        return TruncatedSeries.from_dict(ctx, self.terms)

    def low(self):
        """Lowest degree present in c (None if c = 0)."""
        return self.c[0][0] if self.c else None

    def __str__(self):
        if not self.c:
            return f"V({self.b} | 0)"
        lo = self.c[0][0]
        hi = self.c[-1][0]
        t = dict(self.c)
        parts = []
        for k in range(lo, hi + 1):
            if t.get(k):
                i = k - lo
                parts.append(f"{t[k]}" if i == 0 else (f"{t[k]}*t" if i == 1 else f"{t[k]}*t^{i}"))
        return f"V({self.b} | t^{lo}*({' + '.join(parts)}))"


def P(m):
    """The apartment vertex [o + t^m o]."""
    return Vertex(m, ())


def vertex_type(v):
    return v.b % 2


def ancestor(v, level):
    if level > v.b:
        raise ValueError("ancestor level above the vertex")
    return Vertex(level, tuple((k, a) for k, a in v.c if k < level))


def parent(v):
    return ancestor(v, v.b - 1)


def child(v, a):
    """The child (b+1, c + a t^b)."""
    return Vertex(v.b + 1, v.c + ((v.b, a),) if a else v.c)


def children(v, ctx):
    return [child(v, a) for a in range(ctx.order)]


def neighbors(v, ctx):
    """All q^n + 1 adjacent vertices: the parent first, then the children."""
    return [parent(v)] + children(v, ctx)


def _diff_val(c1, c2):
    """Valuation of c1 - c2 for two sparse coefficient tuples."""
    d1, d2 = dict(c1), dict(c2)
    ks = [k for k in set(d1) | set(d2) if d1.get(k, 0) != d2.get(k, 0)]
    return min(ks) if ks else INF


def meet_level(v, w):
    return min(v.b, w.b, _diff_val(v.c, w.c))


def graph_distance(v, w):
    """Number of edges on the tree path between two vertices."""
    j = meet_level(v, w)
    return (v.b - j) + (w.b - j)


def path(v, w):
    """Vertices on the tree path from v to w (both included)."""
    j = meet_level(v, w)
    up = [ancestor(v, k) for k in range(v.b, j - 1, -1)]
    down = [ancestor(w, k) for k in range(j + 1, w.b + 1)]
    return up + down


# -- alcoves --

@dataclass(frozen=True, order=True)
class Alcove:
    v0: Vertex  # the type-0 vertex
    v1: Vertex  # the type-1 vertex

    @staticmethod
    def from_vertices(x, y):
        if abs(x.b - y.b) != 1:
            raise ValueError(f"{x} and {y} are not adjacent")
        lo, hi = (x, y) if x.b < y.b else (y, x)
        if parent(hi) != lo:
            raise ValueError(f"{x} and {y} are not adjacent")
        return Alcove(x, y) if vertex_type(x) == 0 else Alcove(y, x)

    @staticmethod
    def from_child(u):
        return Alcove.from_vertices(parent(u), u)

    @property
    def child(self):
        return self.v0 if self.v0.b > self.v1.b else self.v1

    @property
    def parent(self):
        return self.v1 if self.v0.b > self.v1.b else self.v0

    @property
    def vertices(self):
        return (self.v0, self.v1)

    def __str__(self):
        return f"A[{self.v0}, {self.v1}]"


def apartment_alcove(i, budget=None):
    """C^i: the alcove with vertices [o + t^i o] and [o + t^(i+1) o]."""
    if budget is not None and abs(i) > budget:
        raise PrecisionExhausted(f"apartment index {i} beyond budget {budget}")
    return Alcove.from_vertices(P(i), P(i + 1))


C0 = Alcove(P(0), P(1))


def alcoves_at(v, ctx):
    return [Alcove.from_vertices(v, w) for w in neighbors(v, ctx)]


def adjacent(D, E):
    return D != E and bool(set(D.vertices) & set(E.vertices))


def alcove_distance(D, E):
    """Length of the minimal gallery from D to E."""
    if D == E:
        return 0
    return min(graph_distance(x, y) for x in D.vertices for y in E.vertices) + 1


# -- galleries --

class Gallery(tuple):
    """A nonempty sequence of alcoves, consecutive ones adjacent."""

    def __new__(cls, alcoves):
        g = super().__new__(cls, alcoves)
        if not g:
            raise ValueError("a gallery needs at least one alcove")
        return g

    @property
    def length(self):
        return len(self) - 1

    def inverse(self):
        return Gallery(reversed(self))

    def first_vertices(self):
        if len(self) == 1 or self[0] == self[1]:
            return set(self[0].vertices)
        return set(self[0].vertices) - set(self[1].vertices)

    def last_vertices(self):
        return self.inverse().first_vertices()

    def is_valid(self):
        return all(adjacent(a, b) or a == b for a, b in zip(self, self[1:]))


def compose(*gs):
    """Concatenate galleries; the joins must be adjacent alcoves."""
    out = []
    for g in gs:
        if out and not adjacent(out[-1], g[0]):
            raise ValueError("galleries are not composable")
        out.extend(g)
    return Gallery(out)


def is_minimal(g):
    """Conditions (a) no repeated alcove and (b) no back-tracking through a vertex."""
    g = Gallery(g)
    if not g.is_valid():
        return False
    if len(set(g)) != len(g):
        return False
    for i in range(1, len(g) - 1):
        prev, cur, nxt = g[i - 1], g[i], g[i + 1]
        for p_ in cur.vertices:
            if p_ in prev.vertices:
                other = cur.v1 if p_ == cur.v0 else cur.v0
                if other not in nxt.vertices:
                    return False
    return True


def _edges(vs):
    return [Alcove.from_vertices(a, b) for a, b in zip(vs, vs[1:])]


def minimal_gallery(D, E):
    if D == E:
        return Gallery([D])
    u1, u2 = D.child, E.child
    es = _edges(path(u1, u2))
    if not es or es[0] != D:
        es.insert(0, D)
    if es[-1] != E:
        es.append(E)
    return Gallery(es)


def gallery_from_vertex(Pv, D):
    """The gallery stretched from the vertex Pv to the alcove D."""
    if Pv in D.vertices:
        return Gallery([D])
    far = max(D.vertices, key=lambda x: graph_distance(Pv, x))
    return Gallery(_edges(path(Pv, far)))


@dataclass(frozen=True)
class WeylElt:
    """w in W_a with w C^0 = C^index; v is the extended (b_1-power) part."""
    index: int
    v: int = 0

    @property
    def length(self):
        return abs(self.index)


def inv(D, E):
    """Relative position of two alcoves as an apartment index."""
    u1, u2 = D.child, E.child
    if u1 == u2:
        return WeylElt(0)
    j = meet_level(u1, u2)
    if u1.b > j and u2.b > j:
        ell = u1.b + u2.b - 2 * j - 1
        first = u1
    elif u1.b == j:
        ell = u2.b - u1.b
        first = parent(u1)
    else:
        ell = u1.b - u2.b
        first = u1
    return WeylElt(ell if vertex_type(first) == 0 else -ell)


def inv_from_gallery(D, E):
    """inv computed literally from the first vertex of the minimal gallery."""
    g = minimal_gallery(D, E)
    if g.length == 0:
        return WeylElt(0)
    (fv,) = g.first_vertices()
    return WeylElt(g.length if vertex_type(fv) == 0 else -g.length)


# -- lattices and the group action --

def _series(ctx, x):
    if isinstance(x, TruncatedSeries):
        return x
    return TruncatedSeries(ctx, (ctx.embed_prime(int(x)),), 0)


def as_matrix(ctx, g):
    return [[_series(ctx, x) for x in row] for row in g]


def basis_matrix(v, ctx):
    """Columns (1, c) and (0, t^b)."""
    S = TruncatedSeries
    return [[S.one(ctx), S.zero(ctx)], [v.c_series(ctx), S.monomial(ctx, 1, v.b)]]


def matmul(A, B):
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)] for i in range(2)]


def det(A):
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


def canonical_vertex(basis, ctx=None):
    """Canonical vertex of the lattice spanned by the columns of basis."""
    basis = [list(r) for r in basis]
    if ctx is None:
        ctx = next(x.ctx for r in basis for x in r if isinstance(x, TruncatedSeries))
    M = as_matrix(ctx, basis)
    d = det(M)
    if d.is_exact_zero:
        raise SingularBasis("basis matrix is singular")
    vd = d.valuation()
    top = [M[0][0], M[0][1]]
    known = [i for i in range(2) if not top[i].known_zero()]
    if not known:
        raise PrecisionExhausted("first row has no certified nonzero entry")
    piv = min(known, key=lambda i: top[i].val)
    k = top[piv].val
    if top[1 - piv].lower_valuation() < k:
        raise PrecisionExhausted("cannot certify the pivot valuation")
    B = vd - 2 * k
    x1, x2 = M[0][piv], M[1][piv]
    if x2.is_exact_zero:
        return Vertex(B, ())
    cap = B - x2.lower_valuation()
    quo = x2 * x1.invert(cap=max(cap, 1))
    if quo.prec < B:
        raise PrecisionExhausted(f"quotient known to t^{quo.prec}, need t^{B}")
    return Vertex.make(B, {k_: a for k_, a in quo.terms().items() if k_ < B})


def act(g, x, ctx):
    """Image of a Vertex or Alcove under the 2x2 matrix g."""
    G = as_matrix(ctx, g)
    if det(G).is_exact_zero:
        raise SingularBasis("group element is singular")
    if isinstance(x, Alcove):
        return Alcove.from_vertices(act(G, x.v0, ctx), act(G, x.v1, ctx))
    return canonical_vertex(matmul(G, basis_matrix(x, ctx)), ctx)


def sigma_vertex(v, ctx):
    return Vertex.make(v.b, {k: ctx.frob(a) for k, a in v.c})


def sigma_alcove(x, ctx):
    if isinstance(x, Alcove):
        return Alcove.from_vertices(sigma_vertex(x.v0, ctx), sigma_vertex(x.v1, ctx))
    return sigma_vertex(x, ctx)


def vertex_distance(v, w, ctx):
    """Gallery length between two vertices via elementary divisors.

    With M_v = (1 0; c_v t^b_v) the canonical basis of v, the matrix
    M_v^-1 M_w = (1 0; (c_w - c_v) t^-b_v, t^(b_w - b_v)) has elementary
    divisors t^a1, t^a2 with a1 the least entry valuation and a1 + a2 the
    valuation of its determinant."""
    diff = w.c_series(ctx) - v.c_series(ctx)
    low = diff.valuation() - v.b if not diff.is_exact_zero else INF
    a1 = min(0, low, w.b - v.b)
    a2 = (w.b - v.b) - a1
    return max(a2 - a1 - 1, 0)


# -- subcomplexes --

class SubcomplexId(enum.Enum):
    RationalBuilding = "rational"
    StandardApartment = "apartment"
    BaseAlcoveClosure = "base"


def vertex_in(sub, v, ctx):
    if sub is SubcomplexId.RationalBuilding:
        return all(ctx.in_subfield(a) for _, a in v.c)
    if sub is SubcomplexId.StandardApartment:
        return not v.c
    return v in (P(0), P(1))


def alcove_in(sub, D, ctx):
    return vertex_in(sub, D.v0, ctx) and vertex_in(sub, D.v1, ctx)


def gate(sub, v, ctx):
    """Nearest vertex of the subcomplex to v."""
    if sub is SubcomplexId.BaseAlcoveClosure:
        return min((P(0), P(1)), key=lambda x: graph_distance(v, x))
    if sub is SubcomplexId.RationalBuilding:
        bad = [k for k, a in v.c if not ctx.in_subfield(a)]
    else:
        bad = [k for k, a in v.c]
    if not bad:
        return v
    return ancestor(v, min(bad))


def vertex_of_departure(D, sub, ctx):
    """(P_D, Gamma_{D,sub}) for an alcove D outside the subcomplex."""
    if alcove_in(sub, D, ctx):
        raise AlcoveInsideSubcomplex(f"{D} lies in {sub.name}")
    cands = [gate(sub, x, ctx) for x in D.vertices]
    Pd = min(cands, key=lambda p_: min(graph_distance(p_, x) for x in D.vertices))
    return Pd, gallery_from_vertex(Pd, D).inverse()


def departure_distance(D, sub, ctx):
    """d(D) = 1 + length of Gamma_{D,sub}."""
    return vertex_of_departure(D, sub, ctx)[1].length + 1


# -- enumeration and export --

def vertex_ball(center, radius, ctx):
    """Vertices within graph distance radius of center, BFS order."""
    seen = {center: 0}
    frontier = [center]
    for d in range(1, radius + 1):
        nxt = []
        for v in frontier:
            for w in neighbors(v, ctx):
                if w not in seen:
                    seen[w] = d
                    nxt.append(w)
        frontier = nxt
    return seen


def bfs_distance(v, w, ctx, limit=64):
    """Tree distance by breadth-first search (oracle for graph_distance)."""
    if v == w:
        return 0
    seen = {v}
    frontier = [v]
    for d in range(1, limit + 1):
        nxt = []
        for x in frontier:
            for y in neighbors(x, ctx):
                if y == w:
                    return d
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    raise ValueError("vertices farther apart than the search limit")


def alcove_ball(radius, ctx, center=C0):
    """Alcoves within alcove distance radius of center."""
    out = {center: 0}
    frontier = [center]
    for d in range(1, radius + 1):
        nxt = []
        for D in frontier:
            for x in D.vertices:
                for E in alcoves_at(x, ctx):
                    if E not in out:
                        out[E] = d
                        nxt.append(E)
        frontier = nxt
    return out


def to_dot(radius, ctx, highlight=(), name="tree"):
    """DOT text for the vertex ball of the given radius around [o + o]."""
    ball = vertex_ball(P(0), radius, ctx)
    ids = {v: f"v{i}" for i, v in enumerate(sorted(ball))}
    hl = set(highlight)
    lines = [f"graph {name} {{"]
    for v in sorted(ball):
        shape = "circle" if vertex_type(v) == 0 else "box"
        lines.append(f'  {ids[v]} [label="{v}", type={vertex_type(v)}, shape={shape}];')
    for v in sorted(ball):
        for w in children(v, ctx):
            if w in ball:
                attrs = ' [color=red, penwidth=2]' if Alcove.from_vertices(v, w) in hl else ""
                lines.append(f"  {ids[v]} -- {ids[w]}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_VERTEX = re.compile(r"^V\((-?\d+) \| (.*)\)$")


def parse_vertex(s, ctx):
    """Inverse of str(Vertex)."""
    m = _VERTEX.match(s.strip())
    if not m:
        raise ValueError(f"cannot parse vertex {s!r}")
    c = parse_series(ctx, m.group(2))
    return Vertex.make(int(m.group(1)), c.terms())


def parse_alcove(s, ctx):
    """Inverse of str(Alcove)."""
    s = s.strip()
    if not (s.startswith("A[") and s.endswith("]")):
        raise ValueError(f"cannot parse alcove {s!r}")
    a, b = s[2:-1].split("), V(")
    return Alcove.from_vertices(parse_vertex(a + ")", ctx), parse_vertex("V(" + b, ctx))
