import math

import pytest
from hypothesis import given, settings, strategies as st

from adlvkit import (
    DivisionByZero,
    FieldElem,
    PrecisionExhausted,
    TruncatedSeries as S,
    field,
    format_series,
    frobenius,
    invert,
    parse_series,
    sigma_series,
    valuation,
)


def test_valuation_examples():
    ctx = field(2)
    assert valuation(S.from_dict(ctx, {3: 1, 5: 1})) == 3
    assert valuation(S.zero(ctx)) == math.inf
    one_plus = S.from_dict(ctx, {0: 1, 1: 1})
    one_minus = S.from_dict(ctx, {0: 1, 1: ctx.neg(1)})
    prod = one_plus * one_minus
    assert valuation(prod) == 0 and prod.coefficient(0) == 1


def test_sigma_examples():
    F4 = field(2, 2)
    a = F4.generator
    x = sigma_series(S.monomial(F4, a, 1))
    assert x.terms() == {1: int(frobenius(FieldElem(F4, a)))}
    assert sigma_series(S.zero(F4)).is_exact_zero
    y = S.from_dict(F4, {0: 1, 2: 1})
    assert sigma_series(y) == y


def test_invert_examples():
    ctx = field(3)
    assert invert(S.one(ctx)) == S.one(ctx)
    assert invert(S.monomial(ctx, 1, 1)) == S.monomial(ctx, 1, -1)
    x = S.from_dict(ctx, {0: 1, 1: 1})
    y = invert(x, cap=8)
    assert [y.coefficient(k) for k in range(5)] == [1, 2, 1, 2, 1]
    assert (x * y).agrees_with(S.one(ctx), 8)
    with pytest.raises(DivisionByZero):
        invert(S.zero(ctx))


def test_unknown_coefficient_raises():
    ctx = field(2)
    x = S.from_dict(ctx, {0: 1}, prec=3)
    with pytest.raises(PrecisionExhausted):
        x.coefficient(5)


def test_format_examples():
    ctx = field(2)
    assert format_series(S.zero(ctx)) == "0"
    assert format_series(S.from_dict(ctx, {-1: 1, 1: 1})) == "t^-1*(1 + 1*t^2)"
    assert format_series(S.from_dict(ctx, {0: 1}, prec=4)) == "t^0*(1) + O(t^4)"


def _series(ctx, lo=-3, hi=5, exact=True):
    terms = st.dictionaries(st.integers(lo, hi), st.integers(0, ctx.order - 1), max_size=6)
    if exact:
        return terms.map(lambda t: S.from_dict(ctx, t))
    return st.tuples(terms, st.integers(hi + 1, hi + 6)).map(lambda tp: S.from_dict(ctx, tp[0], tp[1]))


CTXS = [field(2), field(2, 2), field(3, 2), field(5)]


@pytest.mark.parametrize("ctx", CTXS, ids=repr)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_valuation_properties(ctx, data):
    x = data.draw(_series(ctx))
    y = data.draw(_series(ctx))
    if not x.is_exact_zero and not y.is_exact_zero:
        assert valuation(x * y) == valuation(x) + valuation(y)
    s = x + y
    if not s.is_exact_zero:
        assert valuation(s) >= min(valuation(x), valuation(y))
    assert valuation(sigma_series(x)) == valuation(x)


@pytest.mark.parametrize("ctx", CTXS, ids=repr)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_invert_property(ctx, data):
    x = data.draw(_series(ctx))
    if x.is_exact_zero:
        return
    y = invert(x, cap=12 - valuation(x))
    assert (x * y).agrees_with(S.one(ctx), 10)


@pytest.mark.parametrize("ctx", CTXS, ids=repr)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_format_parse_round_trip(ctx, data):
    x = data.draw(_series(ctx, exact=data.draw(st.booleans())))
    y = parse_series(ctx, format_series(x))
    assert format_series(y) == format_series(x)
    assert y.prec == x.prec


@pytest.mark.parametrize("ctx", CTXS, ids=repr)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_ring_laws(ctx, data):
    x, y, z = (data.draw(_series(ctx)) for _ in range(3))
    assert x * (y + z) == x * y + x * z
    assert (x - y) + y == x
    assert sigma_series(x * y) == sigma_series(x) * sigma_series(y)


def test_invert_thousand_random():
    import random

    rng = random.Random(0)
    for k in range(1000):
        ctx = CTXS[k % len(CTXS)]
        terms = {d: rng.randrange(ctx.order) for d in range(rng.randint(-3, 2), rng.randint(3, 7))}
        x = S.from_dict(ctx, terms)
        if x.is_exact_zero:
            continue
        y = invert(x, cap=16 - valuation(x))
        assert (x * y).agrees_with(S.one(ctx), 14)
        assert (y * x).agrees_with(S.one(ctx), 14)
