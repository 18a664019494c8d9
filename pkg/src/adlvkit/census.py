"""Window census: brute-force buckets of X_w(b) against the structural
description, computed with the batch engine.

Every alcove of the radius-R window gets its index inv(D, b sigma D) and
its departure data (d, P).  For a row w with departure distance i and
vertex type m the structural side is the set of alcoves with d = i and
type(P) = m; both sides are compared alcove by alcove on the part of the
window where whole departure sets fit (delta(P) + i <= R).
"""

import json
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .adlv import (
    IDENTITY,
    SUPERSINGULAR,
    BCase,
    departure_index,
    diagonal,
    gamma_length,
    m_parity,
    members_count,
    nonempty,
    structural_sets,
)
from .batch import Grid
from .building import Alcove, SubcomplexId, Vertex
from .ff import field

SUBCOMPLEX_TAG = {
    SubcomplexId.RationalBuilding: "rational",
    SubcomplexId.StandardApartment: "apartment",
    SubcomplexId.BaseAlcoveClosure: "base",
}

DEFAULT_CASES = (IDENTITY, diagonal(1), diagonal(2), diagonal(3), SUPERSINGULAR)


def threads():
    try:
        return max(1, int(os.environ.get("ADLV_THREADS", "1")))
    except ValueError:
        return 1


def _delta(PB, PC, g):
    """Distance from (PB, PC) to the nearer of P_0, P_1."""
    v = g.valuation(PC)
    out = None
    for m in (0, 1):
        j = np.minimum(np.minimum(PB, m), v)
        dist = (PB - j) + (m - j)
        out = dist if out is None else np.minimum(out, dist)
    return out


def _vertex_key_layout(g, R):
    return g.key_layout(-R - 1, R + 1, -R - 2, R + 2)


class _Row:
    __slots__ = ("index", "ne", "i", "m", "bucket", "inner", "struct", "mismatch", "outer_bad", "gamma_bad", "pkeys")

    def __init__(self, index, ne, i, m):
        self.index, self.ne, self.i, self.m = index, ne, i, m
        self.bucket = self.inner = self.struct = 0
        self.mismatch = self.outer_bad = self.gamma_bad = 0
        self.pkeys = []


def census(b, q, n, R, w_min=-7, w_max=7, flip=None, chunk=1 << 18):
    """Census records for every index in [w_min, w_max]."""
    ctx = field(q, n)
    g = Grid.for_window(ctx, R, b.alpha)
    sub = SUBCOMPLEX_TAG[b.subcomplex]
    lay = _vertex_key_layout(g, R)
    rows = {}
    for w in range(w_min, w_max + 1):
        ne = nonempty(b, w)
        i = departure_index(b, w) if ne else None
        m = m_parity(i, w, flip) if i is not None else None
        rows[w] = _Row(w, ne, i, m)
    total = 0
    others = 0
    for _, B, C in g.window(R, chunk):
        total += len(B)
        B2, C2 = g.alcove_image(b, B, C)
        idx = g.inv_index(B, C, B2, C2)
        d, PB, PC = g.departure(sub, B, C)
        delta = np.where(d > 0, _delta(PB, PC, g), 0)
        tP = PB % 2
        # every member of a nondegenerate row has |index| = length of Gamma_D
        live = d > 0
        gl = gamma_length(b, d)
        gamma_ok = ~live | (np.abs(idx) == gl)
        others += int(np.sum((idx < w_min) | (idx > w_max)))
        for w, r in rows.items():
            in_b = idx == w
            nb = int(in_b.sum())
            r.bucket += nb
            r.gamma_bad += int(np.sum(in_b & ~gamma_ok))
            if not r.ne:
                continue
            if r.i is None:
                pred = _degenerate_mask(b, w, d, B, C)
                r.inner += nb
                r.struct += int(pred.sum())
                r.mismatch += int(np.sum(pred != in_b))
                continue
            fits = delta + r.i <= R
            pred = (d == r.i) & (tP == r.m)
            r.outer_bad += int(np.sum(in_b & ~pred))
            bi = in_b & fits
            ps = pred & fits
            r.inner += int(bi.sum())
            r.struct += int(ps.sum())
            r.mismatch += int(np.sum(bi != ps))
            if ps.any():
                r.pkeys.append(g.pack(lay, PB[ps], PC[ps]))
    return [_record(b, ctx, R, r, flip) for r in rows.values()], {"window": total, "outside_range": others}


def _degenerate_mask(b, w, d, B, C):
    if b.tag == "identity":
        return d == 0
    if b.tag == "diagonal":
        # C^j has child vertex P_(j+1)
        par = 0 if w > 0 else 1
        return (d == 0) & ((B - 1) % 2 == par)
    return (B == 1) & ~C.any(axis=1)


def _record(b, ctx, R, r, flip):
    rec = {
        "b": b.tag,
        "alpha": b.alpha,
        "index": r.index,
        "q": ctx.q,
        "n": ctx.n,
        "R": R,
        "nonempty": r.ne,
        "bucket_size": r.bucket,
        "gamma_violations": r.gamma_bad,
    }
    if not r.ne:
        rec["match"] = r.bucket == 0 and r.gamma_bad == 0
        return rec
    if r.i is None:
        expected = len(structural_sets(b, r.index, R, ctx))
        rec.update(kind="points", predicted=expected, structural_in_window=r.struct, mismatches=r.mismatch)
        rec["match"] = r.mismatch == 0 and r.struct == expected and r.gamma_bad == 0
        return rec
    sets = structural_sets(b, r.index, R, ctx, flip)
    per = members_count(b.subcomplex, r.i, ctx)
    keys = np.concatenate(r.pkeys) if r.pkeys else np.zeros(0, dtype=np.int64)
    uk, counts = np.unique(keys, return_counts=True)
    g = Grid.for_window(ctx, R, b.alpha)
    lay = _vertex_key_layout(g, R)
    pred_keys = set()
    for s in sets:
        Cv = g.zeros(1)
        for k, a in s.P.c:
            Cv[0, k - g.lo] = a
        pred_keys.add(int(g.pack(lay, np.array([s.P.b]), Cv)[0]))
    # sets of size zero never show up among the observed keys
    observed = set(int(k) for k in uk)
    p_ok = observed == pred_keys if per else not observed
    rec.update(
        kind="departure_sets",
        i=r.i,
        m=r.m,
        sets=len(sets),
        per_set=per,
        predicted_inner=len(sets) * per,
        inner_size=r.inner,
        structural_inner=r.struct,
        mismatches=r.mismatch,
        outer_violations=r.outer_bad,
        per_set_counts_ok=bool(np.all(counts == per)),
        vertices_ok=p_ok,
    )
    rec["match"] = (
        r.mismatch == 0
        and r.outer_bad == 0
        and r.gamma_bad == 0
        and rec["per_set_counts_ok"]
        and p_ok
        and r.inner == len(sets) * per
    )
    return rec


def _job(args):
    tag, alpha, q, n, R, w_min, w_max, flip = args
    b = BCase(tag, alpha)
    return census(b, q, n, R, w_min, w_max, flip)


def census_grid(qs=(2, 3), ns=(1, 2), R=7, cases=DEFAULT_CASES, w_min=-7, w_max=7, flip=None, workers=None):
    """Census records for the whole grid, in a fixed order."""
    jobs = [(b.tag, b.alpha, q, n, R, w_min, w_max, flip) for q in qs for n in ns for b in cases]
    workers = workers or threads()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_job, jobs))
    else:
        results = [_job(j) for j in jobs]
    records = []
    for recs, _ in results:
        records.extend(recs)
    return records


def dumps(records):
    return json.dumps(records, sort_keys=True, indent=1)


def buckets(b, ctx, R, indices=None, members=False, chunk=1 << 18):
    """Brute-force buckets of the radius-R window: index -> size, and
    index -> sorted member alcoves when members is set (for the given
    indices only)."""
    g = Grid.for_window(ctx, R, b.alpha)
    sizes = {}
    found = {}
    for _, B, C in g.window(R, chunk):
        B2, C2 = g.alcove_image(b, B, C)
        idx = g.inv_index(B, C, B2, C2)
        vals, cnt = np.unique(idx, return_counts=True)
        for v, c in zip(vals.tolist(), cnt.tolist()):
            sizes[v] = sizes.get(v, 0) + c
        if members:
            for w in indices if indices is not None else vals.tolist():
                rows = np.nonzero(idx == w)[0]
                for r in rows:
                    terms = {g.lo + j: int(x) for j, x in enumerate(C[r]) if x}
                    found.setdefault(w, []).append(Alcove.from_child(Vertex.make(int(B[r]), terms)))
    if indices is not None:
        sizes = {w: sizes.get(w, 0) for w in indices}
    out = {"sizes": dict(sorted(sizes.items()))}
    if members:
        out["members"] = {w: sorted(found.get(w, [])) for w in sorted(sizes)}
    return out
