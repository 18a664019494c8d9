"""Vectorised tree arithmetic for window-scale enumeration.

Vertices are stored in bulk as (B, C): B an int array of levels and C an
(N, W) array of coefficient codes, column j holding the coefficient of
t^(lo + j).  This is the same normal form as building.Vertex, just dense.
Everything here is exact; there is no truncation beyond the fixed grid,
and any step that would fall off the grid raises.
"""

import numpy as np

from .errors import PrecisionExhausted

BIG = 1 << 20


class Grid:
    def __init__(self, ctx, lo, hi):
        self.ctx = ctx
        self.lo, self.hi = lo, hi
        self.W = hi - lo
        self.Q = ctx.order
        add, mul, neg, inv, frob, is_fq = ctx.tables()
        self.add, self.mul, self.neg, self.inv, self.frob, self.is_fq = add, mul, neg, inv, frob, is_fq
        self.dtype = add.dtype
        self.degs = np.arange(lo, hi)

    @classmethod
    def for_window(cls, ctx, R, alpha=0):
        # window alcoves have coefficients in degrees [1-R, R]; the images
        # under diag(1, t^alpha) shift up by alpha; the slack covers parents
        # and the upward BFS from [o + o]
        return cls(ctx, -R - 2, R + alpha + 3)

    def zeros(self, n):
        return np.zeros((n, self.W), dtype=self.dtype)

    def col(self, deg):
        c = np.asarray(deg) - self.lo
        if np.any(c < 0) or np.any(c >= self.W):
            raise PrecisionExhausted("degree outside the coefficient grid")
        return c

    def canon(self, B, C):
        """Zero every coefficient of degree >= B (in place)."""
        C[self.degs[None, :] >= B[:, None]] = 0
        return C

    def valuation(self, C):
        nz = C != 0
        has = nz.any(axis=1)
        return np.where(has, self.lo + nz.argmax(axis=1), BIG)

    def sigma(self, C):
        return self.frob[C]

    def shift(self, C, k):
        """Multiply by t^k (k >= 0)."""
        if k == 0:
            return C.copy()
        if np.any(C[:, self.W - k:]):
            raise PrecisionExhausted("shift falls off the coefficient grid")
        out = np.zeros_like(C)
        out[:, k:] = C[:, : self.W - k]
        return out

    def parent(self, B, C):
        C2 = C.copy()
        rows = np.arange(len(B))
        C2[rows, self.col(B - 1)] = 0
        return B - 1, C2

    def meet(self, B1, C1, B2, C2):
        diff = C1 != C2
        has = diff.any(axis=1)
        v = np.where(has, self.lo + diff.argmax(axis=1), BIG)
        return np.minimum(np.minimum(B1, B2), v)

    def graph_distance(self, B1, C1, B2, C2):
        j = self.meet(B1, C1, B2, C2)
        return (B1 - j) + (B2 - j)

    def inv_index(self, B1, C1, B2, C2):
        """Apartment index of inv(D, D') for alcoves given by child vertices."""
        j = self.meet(B1, C1, B2, C2)
        same = (B1 == j) & (B2 == j)
        both = (B1 > j) & (B2 > j)
        up1 = B1 == j
        ell = np.where(both, B1 + B2 - 2 * j - 1, np.where(up1, B2 - B1, B1 - B2))
        first_type = np.where(up1 & ~same, (B1 - 1) % 2, B1 % 2)
        idx = np.where(first_type == 0, ell, -ell)
        return np.where(same, 0, idx)

    def series_inverse(self, U, M):
        """First M coefficients of 1/u for unit power series u (columns 0..)."""
        N = U.shape[0]
        mul, add, neg = self.mul, self.add, self.neg
        out = np.zeros((N, M), dtype=self.dtype)
        w0 = self.inv[U[:, 0]]
        out[:, 0] = w0
        for m in range(1, M):
            s = np.zeros(N, dtype=self.dtype)
            for i in range(1, m + 1):
                if i < U.shape[1]:
                    s = add[s, mul[U[:, i], out[:, m - i]]]
            out[:, m] = neg[mul[w0, s]]
        return out

    def b1_vertex(self, B, C):
        """Action of (0 1; t 0) on vertices: (b, c) -> (b+1-2k, t/c mod t^(b+1-2k))."""
        N = len(B)
        v = self.valuation(C)
        k = np.minimum(v, B)
        B2 = B + 1 - 2 * k
        out = self.zeros(N)
        live = k < B
        if live.any():
            rows = np.nonzero(live)[0]
            kk, bb = k[rows], B[rows]
            M = int((bb - kk).max())
            j = np.arange(M)
            src = (kk - self.lo)[:, None] + j[None, :]
            ok = (j[None, :] < (bb - kk)[:, None]) & (src < self.W)
            U = np.where(ok, C[rows[:, None], np.clip(src, 0, self.W - 1)], 0).astype(self.dtype)
            Winv = self.series_inverse(U, M)
            dst = (1 - kk - self.lo)[:, None] + j[None, :]
            keep = j[None, :] < (bb - kk)[:, None]
            if np.any(keep & ((dst < 0) | (dst >= self.W))):
                raise PrecisionExhausted("b1 image falls off the coefficient grid")
            r_idx = np.broadcast_to(rows[:, None], dst.shape)[keep]
            out[r_idx, dst[keep]] = Winv[keep]
        return B2, out

    def alcove_image(self, case, B, C):
        """Child vertex of b*sigma(D) for alcoves D with child (B, C)."""
        S = self.sigma(C)
        if case.tag == "identity":
            return B.copy(), S
        if case.tag == "diagonal":
            return B + case.alpha, self.shift(S, case.alpha)
        Bp, Cp = self.parent(B, S)
        B1, C1 = self.b1_vertex(B, S)
        B2, C2 = self.b1_vertex(Bp, Cp)
        pick = B1 > B2
        return np.where(pick, B1, B2), np.where(pick[:, None], C1, C2)

    # -- departure data --

    def departure(self, sub, B, C):
        """(d, P_B, P_C) for alcoves with child (B, C); d = 0 inside sub."""
        if sub == "rational":
            bad = ~self.is_fq[C]
            has = bad.any(axis=1)
            k0 = np.where(has, self.lo + bad.argmax(axis=1), B)
        elif sub == "apartment":
            k0 = np.minimum(self.valuation(C), B)
        else:
            return self._departure_base(B, C)
        d = B - k0
        PC = C.copy()
        self.canon(k0, PC)
        return d, k0, PC

    def _departure_base(self, B, C):
        Bp, Cp = self.parent(B, C)
        vc = self.valuation(C)
        vp = self.valuation(Cp)

        def dist(Bx, vx, m):
            j = np.minimum(np.minimum(Bx, m), vx)
            return (Bx - j) + (m - j)

        d0 = np.maximum(dist(B, vc, 0), dist(Bp, vp, 0))
        d1 = np.maximum(dist(B, vc, 1), dist(Bp, vp, 1))
        inside = (B == 1) & (vc >= BIG)
        m = np.where(d0 < d1, 0, 1)
        d = np.where(inside, 0, np.minimum(d0, d1))
        return d, m, self.zeros(len(B))

    # -- keys --

    def key_layout(self, klo, khi, bmin, bmax):
        K = khi - klo
        if self.Q ** K * (bmax - bmin + 1) >= 2 ** 62:
            raise PrecisionExhausted("alcove keys do not fit in 64 bits")
        return (klo, khi, bmin, bmax)

    def pack(self, layout, B, C):
        klo, khi, bmin, bmax = layout
        if np.any(B < bmin) or np.any(B > bmax):
            raise PrecisionExhausted("level outside key layout")
        cols = C[:, klo - self.lo: khi - self.lo].astype(np.int64)
        outside = np.concatenate([C[:, : klo - self.lo], C[:, khi - self.lo:]], axis=1)
        if outside.size and outside.any():
            raise PrecisionExhausted("coefficients outside key layout")
        key = (B.astype(np.int64) - bmin)
        for j in range(cols.shape[1]):
            key = key * self.Q + cols[:, j]
        return key

    def unpack(self, layout, key):
        klo, khi, bmin, bmax = layout
        K = khi - klo
        key = np.asarray(key, dtype=np.int64).copy()
        C = self.zeros(len(key))
        for j in range(K - 1, -1, -1):
            C[:, klo - self.lo + j] = key % self.Q
            key //= self.Q
        return key + bmin, C

    # -- directed-edge search --

    def start_edges(self, B, C, allowed, with_parent=None):
        """Edges P -> Y for the children Y = (b+1, c + a t^b) with allowed[a],
        plus P -> parent(P) where with_parent is True."""
        Q = self.Q
        lam = np.nonzero(allowed)[0]
        n = len(B)
        Bc = np.repeat(B, len(lam)) + 1
        Cc = np.repeat(C, len(lam), axis=0)
        Cc[np.arange(len(Bc)), self.col(np.repeat(B, len(lam)))] = np.tile(lam, n).astype(self.dtype)
        Fc = np.full(len(Bc), -1, dtype=np.int32)
        parts = [(Bc, Cc, Fc)]
        if with_parent is not None and np.any(with_parent):
            rows = np.nonzero(with_parent)[0]
            Bp, Cp = self.parent(B[rows], C[rows])
            Fp = C[rows, self.col(B[rows] - 1)].astype(np.int32)
            parts.append((Bp, Cp, Fp))
        return tuple(np.concatenate(x) for x in zip(*parts)) if len(parts) > 1 else parts[0]

    def expand(self, B, C, F, allowed=None):
        """Step every directed edge X -> Y to all Y -> Z with Z != X.

        F = -1 means X is the parent of Y; F = a >= 0 means X is the child
        of Y with coefficient a.  allowed restricts new child coefficients.
        """
        Q = self.Q
        if allowed is None:
            allowed = np.ones(Q, dtype=bool)
        lam = np.nonzero(allowed)[0]
        L = len(lam)
        n = len(B)
        Bc = np.repeat(B, L) + 1
        Cc = np.repeat(C, L, axis=0)
        lam_t = np.tile(lam, n)
        Cc[np.arange(n * L), self.col(Bc - 1)] = lam_t.astype(self.dtype)
        keep = lam_t != np.repeat(F, L)
        Bc, Cc = Bc[keep], Cc[keep]
        Fc = np.full(len(Bc), -1, dtype=np.int32)
        up = F >= 0
        if up.any():
            rows = np.nonzero(up)[0]
            Bp, Cp = self.parent(B[rows], C[rows])
            Fp = C[rows, self.col(B[rows] - 1)].astype(np.int32)
            return (np.concatenate([Bc, Bp]), np.concatenate([Cc, Cp]), np.concatenate([Fc, Fp]))
        return Bc, Cc, Fc

    def edge_alcoves(self, B, C, F):
        """Child vertices of the alcoves {X, Y} for directed edges X -> Y."""
        up = F >= 0
        B2 = np.where(up, B + 1, B)
        C2 = C.copy()
        if up.any():
            rows = np.nonzero(up)[0]
            C2[rows, self.col(B[rows])] = F[rows].astype(self.dtype)
        return B2, C2

    def base_edges(self):
        """The two directed edges through C^0: P0 -> P1 and P1 -> P0."""
        B = np.array([1, 0])
        C = self.zeros(2)
        F = np.array([-1, 0], dtype=np.int32)
        return B, C, F

    def window(self, R, chunk=1 << 20, allowed=None):
        """Yield (d, B, C) blocks of alcove child vertices at distance d <= R
        from C^0 (each alcove once).  allowed restricts to a subtree, e.g.
        the rational building."""
        B, C, F = self.base_edges()
        yield 0, np.array([1]), self.zeros(1)
        yield from self._walk(B, C, F, 1, R, chunk, allowed)

    def _walk(self, B, C, F, d, R, chunk, allowed):
        if d > R:
            return
        step = max(1, chunk // self.Q)
        for s in range(0, len(B), step):
            nB, nC, nF = self.expand(B[s: s + step], C[s: s + step], F[s: s + step], allowed)
            ab, ac = self.edge_alcoves(nB, nC, nF)
            yield d, ab, ac
            yield from self._walk(nB, nC, nF, d + 1, R, chunk, allowed)
