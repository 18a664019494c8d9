import random

import pytest
from hypothesis import given, settings, strategies as st

from adlvkit import TruncatedSeries as S, field
from adlvkit.building import (
    C0,
    Alcove,
    Gallery,
    P,
    SubcomplexId,
    Vertex,
    act,
    alcove_ball,
    alcove_in,
    alcoves_at,
    apartment_alcove,
    canonical_vertex,
    departure_distance,
    graph_distance,
    inv,
    inv_from_gallery,
    is_minimal,
    minimal_gallery,
    neighbors,
    parse_alcove,
    parse_vertex,
    sigma_alcove,
    to_dot,
    vertex_distance,
    vertex_of_departure,
    vertex_type,
)
from adlvkit.errors import AlcoveInsideSubcomplex, SingularBasis

F2 = field(2)


def t(ctx, k):
    return S.monomial(ctx, 1, k)


def test_canonical_vertex_examples():
    assert canonical_vertex([[1, 0], [0, 1]], F2) == P(0)
    assert canonical_vertex([[1, 0], [0, t(F2, 1)]], F2) == P(1)
    assert canonical_vertex([[t(F2, 1), 0], [0, t(F2, 1)]], F2) == P(0)
    with pytest.raises(SingularBasis):
        canonical_vertex([[1, 1], [1, 1]], F2)


def test_vertex_type():
    assert vertex_type(P(0)) == 0
    assert vertex_type(P(1)) == 1
    assert vertex_type(P(2)) == 0


def test_regularity():
    assert len(neighbors(P(0), F2)) == 3
    for q, n in [(2, 2), (3, 1), (3, 2)]:
        ctx = field(q, n)
        for v in (P(0), P(-3), Vertex(2, ((1, 1),))):
            assert len(alcoves_at(v, ctx)) == q ** n + 1


def test_apartment_alcoves():
    assert set(apartment_alcove(0).vertices) == {P(0), P(1)}
    assert set(apartment_alcove(2).vertices) == {P(2), P(3)}


def test_sigma_fixes_rational_and_apartment():
    F4 = field(2, 2)
    for D in alcove_ball(3, F2):
        assert sigma_alcove(D, F4) == D
    for i in range(-4, 5):
        assert sigma_alcove(apartment_alcove(i), F4) == apartment_alcove(i)
    moved = [D for D in alcove_ball(2, F4) if sigma_alcove(D, F4) != D]
    assert moved


def test_vertex_distance_examples():
    assert vertex_distance(P(0), P(0), F2) == 0
    for l in range(5):
        assert vertex_distance(P(0), P(l + 1), F2) == l
    v = canonical_vertex([[t(F2, 1), 0], [0, t(F2, 2)]], F2)
    assert vertex_distance(P(0), v, F2) == 0


def test_minimal_gallery_examples():
    assert minimal_gallery(C0, C0) == Gallery([C0])
    g = minimal_gallery(C0, apartment_alcove(3))
    assert list(g) == [apartment_alcove(i) for i in range(4)]
    assert g.length == 3


def test_is_minimal_examples():
    C1, C2 = apartment_alcove(1), apartment_alcove(2)
    assert not is_minimal([C0, C1, C0])
    assert is_minimal([C0, C1, C2])
    assert is_minimal([C0])
    # two alcoves at P_1 and then back through the same vertex
    other = [A for A in alcoves_at(P(1), F2) if A not in (C0, C1)][0]
    assert not is_minimal([C0, C1, other])


def test_inv_examples():
    assert inv(C0, C0).index == 0
    assert inv(C0, apartment_alcove(3)).index == 3
    assert inv(C0, apartment_alcove(-3)).index == -3
    # odd-length positions are involutions, so reversing keeps the index
    assert inv(apartment_alcove(-3), C0).index == -3


def test_vertex_of_departure():
    D = [A for A in alcoves_at(P(1), F2) if A != C0 and A != apartment_alcove(1)][0]
    Pd, g = vertex_of_departure(D, SubcomplexId.StandardApartment, F2)
    assert Pd == P(1) and g == Gallery([D])
    assert departure_distance(D, SubcomplexId.StandardApartment, F2) == 1
    with pytest.raises(AlcoveInsideSubcomplex):
        vertex_of_departure(C0, SubcomplexId.BaseAlcoveClosure, F2)


def test_departure_gallery_ends_at_alcove():
    ctx = field(2, 2)
    for D in alcove_ball(3, ctx):
        for sub in SubcomplexId:
            if alcove_in(sub, D, ctx):
                continue
            Pd, g = vertex_of_departure(D, sub, ctx)
            assert g[0] == D and Pd in g[-1].vertices and is_minimal(g)


def test_galleries_in_ball():
    ball = sorted(alcove_ball(3, field(3)))
    for D in ball[:20]:
        for E in ball:
            g = minimal_gallery(D, E)
            assert g[0] == D and g[-1] == E and is_minimal(g)
            assert inv(D, E) == inv_from_gallery(D, E)
            assert inv(E, D).index == (-1) ** (g.length + 1) * inv(D, E).index or g.length == 0


def test_parse_round_trip():
    ctx = field(3, 2)
    for D in alcove_ball(2, ctx):
        assert parse_alcove(str(D), ctx) == D
        assert parse_vertex(str(D.v0), ctx) == D.v0


def test_dot_export():
    out = to_dot(1, F2, [C0])
    assert out.startswith("graph")
    assert out.count("--") == 3
    assert out.count("color=red") == 1


def _iwahori(ctx, rng):
    """A random element of the Iwahori subgroup."""
    def unit():
        return S.from_dict(ctx, {0: rng.randrange(1, ctx.order), 1: rng.randrange(ctx.order), 2: rng.randrange(ctx.order)})

    def any_(lo):
        return S.from_dict(ctx, {lo: rng.randrange(ctx.order), lo + 1: rng.randrange(ctx.order)})
    return [[unit(), any_(0)], [any_(1), unit()]]


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_inv_invariant_under_iwahori(seed):
    ctx = field(2, 2)
    rng = random.Random(seed)
    ball = sorted(alcove_ball(2, ctx))
    D, E = rng.choice(ball), rng.choice(ball)
    x = _iwahori(ctx, rng)
    assert act(x, C0, ctx) == C0
    assert inv(act(x, D, ctx), act(x, E, ctx)) == inv(D, E)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10 ** 6), k=st.integers(-3, 3))
def test_canonical_vertex_basis_invariance(seed, k):
    ctx = field(3)
    rng = random.Random(seed)
    v = sorted(alcove_ball(3, ctx))[rng.randrange(40)].v0
    B = [[S.one(ctx), S.zero(ctx)], [v.c_series(ctx), t(ctx, v.b)]]
    # right multiplication by GL_2(o) and scaling by t^k keep the lattice class
    u = S.from_dict(ctx, {0: rng.randrange(1, 3), 1: rng.randrange(3)})
    y = S.from_dict(ctx, {0: rng.randrange(3), 2: rng.randrange(3)})
    g = [[u, y], [S.zero(ctx), S.one(ctx)]]
    B2 = [[(B[i][0] * g[0][j] + B[i][1] * g[1][j]).shift(k) for j in range(2)] for i in range(2)]
    assert canonical_vertex(B2, ctx) == v


def test_graph_distance_symmetric():
    ball = sorted({x for D in alcove_ball(3, F2) for x in D.vertices})
    for v in ball:
        for w in ball:
            assert graph_distance(v, w) == graph_distance(w, v)
            assert graph_distance(v, w) == 0 or v != w


def test_alcove_requires_adjacent_vertices():
    with pytest.raises(ValueError):
        Alcove.from_vertices(P(0), P(2))
