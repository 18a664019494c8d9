"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns a list of check dicts {suite, name, ok, detail}."""

import itertools

from . import counting, finrep
from .adlv import (
    IDENTITY,
    SUPERSINGULAR,
    chart_domain,
    departure_index,
    diagonal,
    is_in_Jb,
    members_count,
    nonempty,
    schubert_chart,
    schubert_chart_roots,
    stabilizer_checks,
    surjectivity_representative,
)
from .building import (
    C0,
    P,
    Vertex,
    alcove_ball,
    alcoves_at,
    det,
    graph_distance,
    inv,
    inv_from_gallery,
    is_minimal,
    minimal_gallery,
    neighbors,
    vertex_ball,
    vertex_distance,
)
from .census import DEFAULT_CASES, census_grid
from .errors import CoordinateExcluded
from .ff import field

SUITES = ("building", "adlv", "charts", "counting", "finrep", "stabilizer")


def _check(suite, name, ok, **detail):
    return {"suite": suite, "name": name, "ok": bool(ok), "detail": detail}


# -- building --

def distance_check(q, n, radius=5):
    """Elementary-divisor distance against BFS for all vertex pairs in the ball.

    A ball in a tree is convex, so BFS inside the ball gives tree distances."""
    ctx = field(q, n)
    ball = sorted(vertex_ball(P(0), radius, ctx))
    pos = {v: i for i, v in enumerate(ball)}
    adj = [[pos[w] for w in neighbors(v, ctx) if w in pos] for v in ball]
    bad = 0
    pairs = 0
    for i, v in enumerate(ball):
        dist = [-1] * len(ball)
        dist[i] = 0
        frontier = [i]
        while frontier:
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if dist[y] < 0:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        for j in range(i, len(ball)):
            w = ball[j]
            pairs += 1
            if vertex_distance(v, w, ctx) != max(dist[j] - 1, 0) or graph_distance(v, w) != dist[j]:
                bad += 1
    return pairs, bad


def suite_building(q=2, ns=(1, 2), radius=5, seed=0):
    out = []
    for n in ns:
        pairs, bad = distance_check(q, n, radius)
        out.append(_check("building", f"distance q={q} n={n} radius={radius}", bad == 0, pairs=pairs, failures=bad))
    ctx = field(q, 1)
    ball = sorted(alcove_ball(4, ctx))
    bad = 0
    for D in ball:
        for E in ball:
            g = minimal_gallery(D, E)
            if not is_minimal(g) or g[0] != D or g[-1] != E or inv(D, E) != inv_from_gallery(D, E):
                bad += 1
    out.append(_check("building", f"galleries q={q} n=1 radius=4", bad == 0, pairs=len(ball) ** 2, failures=bad))
    v = P(0)
    out.append(_check("building", "regularity", all(len(alcoves_at(x, field(q, n))) == q ** n + 1
                                                   for n in ns for x in (v, P(1), Vertex(2, ((0, 1),)))),
                      ns=list(ns)))
    return out


# -- adlv census --

def suite_adlv(qs=(2, 3), ns=(1, 2), R=6, w_min=-7, w_max=7, flip=None, cases=DEFAULT_CASES, records=None):
    recs = records if records is not None else census_grid(qs, ns, R, cases, w_min, w_max, flip)
    out = []
    for r in recs:
        name = f"{r['b']}{'(' + str(r['alpha']) + ')' if r['alpha'] else ''} q={r['q']} n={r['n']} R={r['R']} w={r['index']}"
        out.append(_check("adlv", name, r["match"], bucket=r["bucket_size"]))
    return out


# -- charts --

def chart_check(q, m, l, Pv, V):
    """(agree, injective, image == domain, |image|, expected size) for one chart."""
    ctx = field(q, m)
    Q = ctx.order
    image = {}
    agree = True
    for co in itertools.product(range(Q), repeat=l + 1):
        try:
            D = schubert_chart(Pv, V, l, co, ctx)
        except CoordinateExcluded:
            continue
        image.setdefault(D, []).append(co)
        if Pv == P(0) and list(V) == [C0] and D != schubert_chart_roots(co, l, ctx):
            agree = False
    injective = all(len(v) == 1 for v in image.values())
    dom = chart_domain(Pv, V, l, ctx)
    expected = Q ** l * (Q + 1 - len(V))
    return agree, injective, set(image) == dom, len(image), expected


def chart_cases():
    """(P, V) pairs: the base chart and restricted charts, also at a vertex
    off the apartment."""
    u = Vertex(2, ((1, 1),))
    return [
        (P(0), [C0]),
        (P(0), sorted([C0, alcoves_at(P(0), field(2))[0]])),
        (u, sorted(alcoves_at(u, field(2)))[:2]),
    ]


def suite_charts(qs=(2, 3), ms=(1, 2), lmax=3):
    out = []
    for q in qs:
        for m in ms:
            for l in range(lmax + 1):
                for Pv, V in chart_cases():
                    V = sorted(set(V))
                    agree, inj, onto, size, expected = chart_check(q, m, l, Pv, V)
                    ok = agree and inj and onto and size == expected
                    out.append(_check("charts", f"q={q} m={m} l={l} P={Pv} |V|={len(V)}", ok,
                                      agree=agree, injective=inj, onto=onto, size=size, expected=expected))
    return out


# -- counting --

def suite_counting(qs=(2, 3), ms=(1, 2), wmax=7):
    out = []
    bad = []
    for q in qs:
        for m in ms:
            ctx = field(q, m)
            for b in DEFAULT_CASES:
                for w in range(-wmax, wmax + 1):
                    if not nonempty(b, w):
                        continue
                    c = counting.component_point_count(b, w, q, m)
                    i = departure_index(b, w)
                    if i is not None and members_count(b.subcomplex, i, ctx) != c:
                        bad.append(("members", q, m, b.label(), w))
                    if abs(counting.lefschetz_sum(b, w, q, m)) != c:
                        bad.append(("lefschetz", q, m, b.label(), w))
                    # ramified targets never contribute
                    for tgt, r in counting.hom_clauses(b, w):
                        d, tw = counting.hom_dim_table(b, w, tgt, r)
                        if (not tgt.unramified and d != 0) or (d == 0) != (tw is None):
                            bad.append(("hom", b.label(), w, tgt.kind, tgt.unramified, r))
    out.append(_check("counting", "point counts, Lefschetz sums, Hom table", not bad, failures=bad[:10]))
    return out


# -- finrep --

def suite_finrep(qs=(2, 3, 5), pairs=50, seed=0):
    out = []
    for q in qs:
        G = finrep.group(q)
        St = finrep.steinberg_character(G)
        one = finrep.trivial(G)
        perm = finrep.perm_character_P1(G)
        ind1 = finrep.induce(G, "B", {h: G.cyc(1) for h in G.subgroup("B")})
        out.append(_check("finrep", f"q={q} dim St = q", St.degree() == q))
        out.append(_check("finrep", f"q={q} <St, St> = 1", finrep.inner(G, St, St) == 1))
        out.append(_check("finrep", f"q={q} <St, 1> = 0", finrep.inner(G, St, one) == 0))
        out.append(_check("finrep", f"q={q} 1 + St = Ind_B 1", one + St == ind1 and perm == ind1))
        out.append(_check("finrep", f"q={q} <perm, perm> = 2", finrep.inner(G, perm, perm) == 2))
        out.append(_check("finrep", f"q={q} Mackey restriction", finrep.mackey_restriction_check(G)))
        out.append(_check("finrep", f"q={q} normal induction", finrep.normal_induction_check(G)))
        fr = finrep.frobenius_reciprocity(G, pairs, seed)
        out.append(_check("finrep", f"q={q} Frobenius reciprocity", all(lhs == rhs for _, lhs, rhs in fr),
                          pairs=len(fr), seed=seed))
        rep = finrep.shadow_report(G)
        out.append(_check("finrep", f"q={q} Hom shadows", all(r["ok"] for r in rep),
                          rows=len(rep), failures=[r for r in rep if not r["ok"]][:5]))
    return out


# -- stabilizers and surjectivity --

def suite_stabilizer(q=2, samples=500, seed=0):
    out = []
    ctx = field(q, 2)
    rep = stabilizer_checks(SUPERSINGULAR, samples, ctx, seed)
    out.append(_check("stabilizer", f"supersingular Iwahori membership q={q}",
                      rep["checked"] == samples and not rep["counterexamples"],
                      checked=rep["checked"], seed=seed))
    for b in (IDENTITY, diagonal(2)):
        rep = stabilizer_checks(b, 20, ctx, seed)
        out.append(_check("stabilizer", f"transitivity {b.label()}", not rep["counterexamples"], checked=rep["checked"]))
    for b in (IDENTITY, diagonal(1), diagonal(2), diagonal(3), SUPERSINGULAR):
        ok = True
        for v in range(-3, 4):
            r = surjectivity_representative(b, v, ctx)
            ok &= det(r).valuation() == v and is_in_Jb(r, b, ctx)
        out.append(_check("stabilizer", f"surjectivity {b.label()}", ok))
    return out


def run(suites, q=None, n=None, R=6, seed=0, flip=None):
    qs = (q,) if q else None
    ns = (n,) if n else None
    out = []
    for s in suites:
        if s == "building":
            out += suite_building(q or 2, ns or (1, 2), seed=seed)
        elif s == "adlv":
            out += suite_adlv(qs or (2, 3), ns or (1, 2), R, flip=flip)
        elif s == "charts":
            out += suite_charts(qs or (2, 3), ns or (1, 2))
        elif s == "counting":
            out += suite_counting(qs or (2, 3), ns or (1, 2))
        elif s == "finrep":
            out += suite_finrep(qs or (2, 3, 5), seed=seed)
        elif s == "stabilizer":
            out += suite_stabilizer(q or 2, seed=seed)
        else:
            raise ValueError(f"unknown suite {s!r}")
    return out
