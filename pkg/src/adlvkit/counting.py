"""Closed-form cohomology profiles, component point counts and Hom
dimensions for the three cases.  Point counts come from the shape of the
component variety; the twist labels are carried along as data only."""

import csv
import io
from dataclasses import dataclass, field as dc_field

from .adlv import _w, nonempty
from .errors import EmptyADLV, InvalidTarget

# inducing-subgroup tags
I0 = "I^(0)"
K_STEINBERG = "K_1^(m) Steinberg"
K_TRIVIAL = "K_1^(m) trivial"
T_INT = "T(o_F)"
H_B1 = "H_b1"


@dataclass(frozen=True)
class CohomEntry:
    degree: int
    dim: object  # int, or "q" when no q was given
    twist: int
    tag: str


@dataclass
class CohomProfile:
    case: object
    w: object
    entries: list = dc_field(default_factory=list)

    def degrees(self):
        return [e.degree for e in self.entries]


def _check(b, w):
    w = _w(w)
    if not nonempty(b, w):
        raise EmptyADLV(f"X_w(b) is empty for {b.label()}, index {w.index}")
    return w


def cohom_profile(b, w, q=None):
    """Degrees, per-component dimensions, twist labels and inducing data."""
    w = _check(b, w)
    ell = w.length
    qd = q if q is not None else "q"
    if b.tag == "identity":
        if ell == 0:
            es = [CohomEntry(0, 1, 0, I0)]
        else:
            es = [CohomEntry(ell, qd, (ell - 1) // 2, K_STEINBERG),
                  CohomEntry(ell + 1, 1, (ell - 3) // 2, K_TRIVIAL)]
    elif b.tag == "diagonal":
        a = b.alpha
        if ell == a:
            es = [CohomEntry(0, 1, 0, T_INT)]
        else:
            es = [CohomEntry(ell - a, 1, (ell - a - 1) // 2, T_INT),
                  CohomEntry(ell - a + 1, 1, (ell - a - 3) // 2, T_INT)]
    else:
        es = [CohomEntry(ell, 1, ell // 2, H_B1)]
    return CohomProfile(b, w, es)


# -- component shapes: A^k x (P^1 - Z), or a point --

@dataclass(frozen=True)
class Shape:
    affine_dim: int
    curve: str  # "P1-P1(k)", "P1-{0,inf}", "" for none, "point"

    def points(self, q, m):
        """|S(F_{q^m})|."""
        if self.curve == "point":
            return 1
        base = q ** (m * self.affine_dim)
        if self.curve == "P1-P1(k)":
            return base * (q ** m + 1 - (q + 1))
        if self.curve == "P1-{0,inf}":
            return base * (q ** m + 1 - 2)
        return base


def component_shape(b, w):
    w = _check(b, w)
    ell = w.length
    if b.tag == "identity":
        return Shape(0, "point") if ell == 0 else Shape((ell - 1) // 2, "P1-P1(k)")
    if b.tag == "diagonal":
        return Shape(0, "point") if ell == b.alpha else Shape((ell - b.alpha - 1) // 2, "P1-{0,inf}")
    return Shape(ell // 2, "")


def component_point_count(b, w, q, m):
    return component_shape(b, w).points(q, m)


def lefschetz_sum(b, w, q, m):
    """sum_r (-1)^r dim H^r_c * q^(m*floor(r/2)).

    The eigenvalue on H^r_c of A^k x (P^1 - Z) is q^(m*floor(r/2)); this
    follows from the shape, not from the twist labels."""
    prof = cohom_profile(b, w, q)
    return sum((-1) ** e.degree * e.dim * q ** (m * (e.degree // 2)) for e in prof.entries)


# -- Hom dimensions --

TARGET_KINDS = (
    "principal_series",   # Ind_B^G chi, chi a character of T(F)
    "one_dimensional",    # phi o det
    "twisted_steinberg",  # phi . St_G
    "cuspidal",
    "t_character",        # chi, a character of T(F) (diagonal case)
    "d_character",        # chi o Nrd on D^x
    "high_dim_d",         # irreducible of D^x of dimension >= 2
)

VALID = {
    "identity": {"principal_series", "one_dimensional", "twisted_steinberg", "cuspidal"},
    "diagonal": {"t_character"},
    "supersingular": {"d_character", "high_dim_d"},
}


@dataclass(frozen=True)
class Target:
    kind: str
    unramified: bool = True

    def __post_init__(self):
        if self.kind not in TARGET_KINDS:
            raise InvalidTarget(f"unknown target {self.kind!r}")


def hom_dim_table(b, w, target, degree):
    """(dim Hom(H^degree_c, target), twist label or None)."""
    w = _check(b, w)
    if target.kind not in VALID[b.tag]:
        raise InvalidTarget(f"{target.kind} does not apply to {b.label()}")
    ell = w.length
    prof = cohom_profile(b, w)
    if degree not in prof.degrees():
        return 0, None
    k, u = target.kind, target.unramified
    if k in ("cuspidal", "high_dim_d"):
        return 0, None
    if b.tag == "identity":
        if ell == 0:
            # cInd_{K_1^(0)} 1 + cInd_{K_1^(0)} St
            dim = {"principal_series": 2, "one_dimensional": 1, "twisted_steinberg": 1}[k]
            return (dim, 0) if u else (0, None)
        if degree == ell + 1:
            if k == "twisted_steinberg":
                return 0, None
            return (1, (3 - ell) // 2) if u else (0, None)
        if k == "one_dimensional":
            return 0, None
        return (1, (1 - ell) // 2) if u else (0, None)
    if b.tag == "diagonal":
        if not u:
            return 0, None
        if ell == b.alpha:
            return 1, 0
        if degree == ell - b.alpha:
            return 1, (b.alpha + 1 - ell) // 2
        return 1, (b.alpha + 3 - ell) // 2
    return (1, -ell // 2) if u else (0, None)


def hom_clauses(b, w):
    """Every (target, degree) combination valid for (b, w)."""
    prof = cohom_profile(b, w)
    out = []
    for k in sorted(VALID[b.tag]):
        for u in (True, False):
            for r in prof.degrees():
                out.append((Target(k, u), r))
    return out


# -- regular representations of the component groups --

@dataclass(frozen=True)
class RegularRep:
    group: str  # "Z^2" or "Z"
    rank: int

    def translate(self, g, e):
        """Action of g in the group on the basis vector e_e."""
        return tuple(x + y for x, y in zip(e, g))


def regular_rep_descriptor(b):
    if b.tag == "diagonal":
        return RegularRep("Z^2", 2)
    if b.tag == "supersingular":
        return RegularRep("Z", 1)
    raise InvalidTarget("the b = 1 cohomology is not a regular representation")


def coset_of(b, g):
    """Coset of g in J_b modulo its maximal compact subgroup: the entry
    valuations of a diagonal g, or v_L(det g) for the b_1 case."""
    if b.tag == "diagonal":
        return (g[0][0].valuation(), g[1][1].valuation())
    if b.tag == "supersingular":
        return (g[0][0] * g[1][1] - g[0][1] * g[1][0]).valuation(),
    raise InvalidTarget("no coset description for b = 1")


# -- table reproduction --

TABLE_HEADER = ("b", "nonempty_if", "J_b", "K_b", "S")


def _shape_label(b):
    if b.tag == "identity":
        return "A^((l(w)-1)/2) x (P^1 - P^1(k))"
    if b.tag == "diagonal":
        return "A^((l(w)-alpha-1)/2) x (P^1 - {0,inf})"
    return "A^(l(w)/2)"


def table_rows():
    from .adlv import IDENTITY, SUPERSINGULAR, diagonal

    rows = []
    for b, name, cond, J, K in (
        (IDENTITY, "1", "l(w) > 0 odd", "GL_2(F)", "g_m GL_2(o_F) g_m^-1"),
        (diagonal(1), "diag(1, t^alpha), alpha > 0", "l(w) - alpha > 0 odd", "T(F)", "T(o_F)"),
        (SUPERSINGULAR, "b_1", "l(w) even", "D^x", "U_D"),
    ):
        rows.append((name, cond, J, K, _shape_label(b)))
    return rows


def table_csv():
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(TABLE_HEADER)
    wr.writerows(table_rows())
    return buf.getvalue()
