import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from adlvkit.errors import InvalidCharacter, UnsupportedSubgroup
from adlvkit.finrep import (
    IDENT,
    SHADOW_CLAUSES,
    ClassFunction,
    Cyc,
    cyclotomic_poly,
    det_character,
    finite_hom_shadow,
    frobenius_reciprocity,
    group,
    induce,
    inner,
    inner_on,
    is_unramified,
    mackey_restriction_check,
    normal_induction_check,
    perm_character_P1,
    random_class_function,
    shadow_report,
    steinberg_character,
    torus_character,
    trivial,
)

QS = [2, 3, 4, 5]


def test_cyclotomic():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    z = Cyc.zeta(4, 1)
    assert z * z == Cyc.rational(4, -1)
    assert z * z.conj() == Cyc.rational(4, 1)
    w = Cyc.zeta(3, 1)
    assert w + w * w + Cyc.rational(3, 1) == Cyc.rational(3, 0)
    assert (w * w * w).to_rational() == 1


@pytest.mark.parametrize("q", QS)
def test_group_orders(q):
    G = group(q)
    assert G.order == (q * q - 1) * (q * q - q)
    assert len(G.subgroup("B")) == (q - 1) ** 2 * q
    assert len(G.subgroup("T")) == (q - 1) ** 2
    assert len(G.subgroup("N")) == 2 * (q - 1) ** 2
    assert sum(G.class_sizes) == G.order
    with pytest.raises(UnsupportedSubgroup):
        G.subgroup("K")


@pytest.mark.parametrize("q", QS)
def test_steinberg(q):
    G = group(q)
    St = steinberg_character(G)
    one = trivial(G)
    perm = perm_character_P1(G)
    assert perm(IDENT) == q + 1
    assert St.degree() == q
    assert inner(G, St, St) == 1
    assert inner(G, St, one) == 0
    assert one + St == perm
    assert induce(G, "B", {h: G.cyc(1) for h in G.subgroup("B")}) == perm


@pytest.mark.parametrize("q", QS)
def test_mackey_and_normal_induction(q):
    G = group(q)
    assert mackey_restriction_check(G)
    assert normal_induction_check(G)


def test_induce_torus_to_borel_dimension():
    for q in (2, 3, 5):
        G = group(q)
        ind = induce(G, "T", {h: G.cyc(1) for h in G.subgroup("T")}, K="B")
        assert ind[IDENT] == q


def test_induce_rejects_bad_input():
    G = group(3)
    with pytest.raises(UnsupportedSubgroup):
        induce(G, "N", {h: G.cyc(1) for h in G.subgroup("N")}, K="B")
    with pytest.raises(ValueError):
        induce(G, "T", {IDENT: G.cyc(1)})


@pytest.mark.parametrize("q", [2, 3, 5])
def test_frobenius_reciprocity(q):
    rows = frobenius_reciprocity(group(q), 50, seed=0)
    assert len(rows) == 50
    assert all(lhs == rhs for _, lhs, rhs in rows)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10 ** 6), H=st.sampled_from(["B", "T", "omegaB", "N"]))
def test_reciprocity_property(seed, H):
    G = group(3)
    rng = random.Random(seed)
    f = random_class_function(G, H, rng)
    chi = det_character(G, rng.randrange(2)) + steinberg_character(G)
    assert inner(G, induce(G, H, f), chi) == inner_on(G, H, f, chi.restrict(H))


def test_principal_series_irreducible_when_regular():
    G = group(5)
    ps = induce(G, "B", torus_character(G, 1, 2))
    assert ps.degree() == 6
    assert inner(G, ps, ps) == 1
    ps0 = induce(G, "B", torus_character(G, 1, 1))
    assert inner(G, ps0, ps0) == 2


def test_inner_returns_fraction():
    G = group(3)
    assert isinstance(inner(G, trivial(G), trivial(G)), Fraction)


def test_class_function_arithmetic():
    G = group(3)
    St = steinberg_character(G)
    assert (St - St) == trivial(G).scale(0)
    assert St.scale(2) == St + St
    assert ClassFunction.from_function(G, lambda g: G.cyc(1)) == trivial(G)


def test_hom_shadow_examples():
    G = group(3)
    assert finite_hom_shadow(G, "trivial", "principal_series", (0, 0)) == 1
    assert finite_hom_shadow(G, "steinberg", "one_dimensional", 0) == 0
    assert finite_hom_shadow(G, "steinberg", "twisted_steinberg", 0) == 1
    assert finite_hom_shadow(G, "trivial", "one_dimensional", 1) == 0


def test_hom_shadow_invalid():
    G = group(3)
    with pytest.raises(InvalidCharacter):
        finite_hom_shadow(G, "cuspidal", "one_dimensional", 0)
    with pytest.raises(InvalidCharacter):
        finite_hom_shadow(G, "trivial", "principal_series", 1)
    with pytest.raises(InvalidCharacter):
        finite_hom_shadow(G, "trivial", "one_dimensional", 0.5)
    with pytest.raises(InvalidCharacter):
        finite_hom_shadow(G, "trivial", "nothing", 0)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_shadow_report(q):
    rep = shadow_report(group(q))
    assert {r["clause"] for r in rep} == set(SHADOW_CLAUSES)
    assert all(r["ok"] for r in rep)


def test_is_unramified():
    assert is_unramified(0) and is_unramified((0, 0))
    assert not is_unramified(1) and not is_unramified((0, 2))
