import json

import numpy as np
import pytest

from adlvkit import field
from adlvkit.adlv import IDENTITY, SUPERSINGULAR, BCase, brute_force_buckets, diagonal
from adlvkit.batch import Grid
from adlvkit.building import alcove_ball
from adlvkit.census import DEFAULT_CASES, buckets, census, census_grid, dumps


@pytest.mark.parametrize("b", DEFAULT_CASES, ids=BCase.label)
@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (3, 1)])
def test_batch_buckets_match_scalar(b, q, n):
    ctx = field(q, n)
    R = 3
    scalar = brute_force_buckets(b, R, ctx)
    got = buckets(b, ctx, R, members=True)
    assert got["sizes"] == {w: len(s) for w, s in sorted(scalar.items())}
    for w, members in got["members"].items():
        assert set(members) == scalar[w]


def test_window_size():
    ctx = field(2, 2)
    g = Grid.for_window(ctx, 3)
    total = sum(len(B) for _, B, _ in g.window(3))
    assert total == len(alcove_ball(3, ctx))


def test_identity_image_keeps_level():
    ctx = field(3, 2)
    g = Grid.for_window(ctx, 2)
    for _, B, C in g.window(2):
        B2, _ = g.alcove_image(IDENTITY, B, C)
        assert np.array_equal(B2, B)


def test_census_small_all_match():
    for b in DEFAULT_CASES:
        recs, info = census(b, 2, 2, 4, -5, 5)
        assert all(r["match"] for r in recs), [r for r in recs if not r["match"]]
        assert info["window"] == len(alcove_ball(4, field(2, 2)))


def test_census_identity_level_one_empty():
    recs, _ = census(IDENTITY, 3, 1, 4, -4, 4)
    by = {r["index"]: r for r in recs}
    for w in (-3, -1, 1, 3):
        assert by[w]["nonempty"] and by[w]["bucket_size"] == 0 and by[w]["per_set"] == 0
        assert by[w]["match"]


def test_fault_injection_detected():
    recs = census_grid((2,), (2,), 4, flip=(1, 1), workers=1)
    bad = {(r["b"], r["alpha"], r["index"]) for r in recs if not r["match"]}
    assert ("identity", 0, 1) in bad
    assert ("supersingular", 0, 2) in bad
    clean = census_grid((2,), (2,), 4, workers=1)
    assert all(r["match"] for r in clean)


def test_census_deterministic_json():
    a = census_grid((2,), (1,), 3, cases=(diagonal(2), SUPERSINGULAR), workers=1)
    b = census_grid((2,), (1,), 3, cases=(diagonal(2), SUPERSINGULAR), workers=2)
    assert dumps(a) == dumps(b)
    assert json.loads(dumps(a)) == a
