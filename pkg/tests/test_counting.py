import random

import pytest

from adlvkit import EmptyADLV, InvalidTarget, TruncatedSeries as S, field
from adlvkit.adlv import IDENTITY, SUPERSINGULAR, departure_index, diagonal, members_count, nonempty
from adlvkit.census import census
from adlvkit.counting import (
    H_B1,
    K_STEINBERG,
    K_TRIVIAL,
    T_INT,
    CohomEntry,
    RegularRep,
    Target,
    cohom_profile,
    component_point_count,
    component_shape,
    coset_of,
    hom_clauses,
    hom_dim_table,
    lefschetz_sum,
    regular_rep_descriptor,
    table_csv,
    table_rows,
)

CASES = [IDENTITY, diagonal(1), diagonal(2), diagonal(3), SUPERSINGULAR]


def test_profile_examples():
    assert cohom_profile(IDENTITY, 3).entries == [
        CohomEntry(3, "q", 1, K_STEINBERG),
        CohomEntry(4, 1, 0, K_TRIVIAL),
    ]
    assert cohom_profile(IDENTITY, 3, q=5).entries[0].dim == 5
    for a in (1, 2, 3):
        assert cohom_profile(diagonal(a), a).entries == [CohomEntry(0, 1, 0, T_INT)]
    assert cohom_profile(SUPERSINGULAR, 0).entries == [CohomEntry(0, 1, 0, H_B1)]
    assert cohom_profile(SUPERSINGULAR, -4).entries == [CohomEntry(4, 1, 2, H_B1)]


def test_profile_empty():
    with pytest.raises(EmptyADLV):
        cohom_profile(IDENTITY, 2)
    with pytest.raises(EmptyADLV):
        component_point_count(SUPERSINGULAR, 1, 2, 1)


def test_point_count_examples():
    assert component_point_count(IDENTITY, 3, 2, 2) == 8
    for w in (1, 3, -5):
        assert component_point_count(IDENTITY, w, 3, 1) == 0
    assert component_point_count(SUPERSINGULAR, 2, 3, 1) == 3
    assert component_shape(IDENTITY, 5).affine_dim == 2
    assert component_shape(diagonal(2), 2).curve == "point"


@pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_point_counts_match_closed_form(q, m):
    ctx = field(q, m)
    for b in CASES:
        for w in range(-7, 8):
            if not nonempty(b, w):
                continue
            i = departure_index(b, w)
            c = component_point_count(b, w, q, m)
            assert abs(lefschetz_sum(b, w, q, m)) == c
            if i is not None:
                assert members_count(b.subcomplex, i, ctx) == c


@pytest.mark.parametrize("b", CASES, ids=lambda b: b.label())
def test_point_counts_match_buckets(b):
    """Inside the window every departure set holds exactly the point count."""
    q, m, R = 2, 2, 5
    recs, _ = census(b, q, m, R, -5, 5)
    for r in recs:
        if r.get("kind") != "departure_sets":
            continue
        c = component_point_count(b, r["index"], q, m)
        assert r["per_set"] == c and r["per_set_counts_ok"]
        assert r["inner_size"] == r["sets"] * c


def test_hom_examples():
    ps = Target("principal_series")
    assert hom_dim_table(IDENTITY, 3, ps, 4) == (1, 0)
    assert hom_dim_table(IDENTITY, 3, Target("twisted_steinberg"), 4) == (0, None)
    assert hom_dim_table(IDENTITY, 3, Target("twisted_steinberg", False), 4) == (0, None)
    assert hom_dim_table(SUPERSINGULAR, 2, Target("d_character"), 2) == (1, -1)
    assert hom_dim_table(SUPERSINGULAR, 2, Target("d_character", False), 2) == (0, None)
    assert hom_dim_table(SUPERSINGULAR, 2, Target("high_dim_d"), 2) == (0, None)
    assert hom_dim_table(IDENTITY, 3, ps, 7) == (0, None)
    assert hom_dim_table(IDENTITY, 0, ps, 0) == (2, 0)


def test_hom_invalid_target():
    with pytest.raises(InvalidTarget):
        Target("spherical")
    with pytest.raises(InvalidTarget):
        hom_dim_table(IDENTITY, 3, Target("d_character"), 3)
    with pytest.raises(InvalidTarget):
        hom_dim_table(diagonal(1), 1, Target("principal_series"), 0)
    with pytest.raises(EmptyADLV):
        hom_dim_table(IDENTITY, 2, Target("principal_series"), 2)


def test_hom_clauses_ramified_vanish():
    for b in CASES:
        for w in range(-5, 6):
            if not nonempty(b, w):
                continue
            for tgt, r in hom_clauses(b, w):
                d, tw = hom_dim_table(b, w, tgt, r)
                if not tgt.unramified:
                    assert d == 0
                assert (d == 0) == (tw is None)


def test_regular_rep():
    assert regular_rep_descriptor(diagonal(2)) == RegularRep("Z^2", 2)
    assert regular_rep_descriptor(SUPERSINGULAR) == RegularRep("Z", 1)
    with pytest.raises(InvalidTarget):
        regular_rep_descriptor(IDENTITY)


def test_regular_rep_cosets():
    """Translation by g on e_x matches the coset of g times x."""
    ctx = field(3)
    rng = random.Random(7)
    rep = regular_rep_descriptor(diagonal(1))
    for _ in range(10):
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        g = [[S.monomial(ctx, 1, a), S.zero(ctx)], [S.zero(ctx), S.monomial(ctx, 2, b)]]
        h = [[S.monomial(ctx, 2, c), S.zero(ctx)], [S.zero(ctx), S.monomial(ctx, 1, d)]]
        gh = [[g[0][0] * h[0][0], S.zero(ctx)], [S.zero(ctx), g[1][1] * h[1][1]]]
        assert rep.translate(coset_of(diagonal(1), g), coset_of(diagonal(1), h)) == coset_of(diagonal(1), gh)
    rep = regular_rep_descriptor(SUPERSINGULAR)
    from adlvkit.adlv import surjectivity_representative
    from adlvkit.building import matmul

    for _ in range(10):
        u, v = rng.randint(-3, 3), rng.randint(-3, 3)
        g = surjectivity_representative(SUPERSINGULAR, u, ctx)
        h = surjectivity_representative(SUPERSINGULAR, v, ctx)
        assert rep.translate(coset_of(SUPERSINGULAR, g), coset_of(SUPERSINGULAR, h)) == coset_of(SUPERSINGULAR, matmul(g, h))
    with pytest.raises(InvalidTarget):
        coset_of(IDENTITY, g)


def test_table_rows():
    rows = table_rows()
    assert rows[0][4] == "A^((l(w)-1)/2) x (P^1 - P^1(k))"
    assert rows[2][4] == "A^(l(w)/2)"
    assert rows[1][1] == "l(w) - alpha > 0 odd"
    assert table_csv().splitlines()[0] == "b,nonempty_if,J_b,K_b,S"
