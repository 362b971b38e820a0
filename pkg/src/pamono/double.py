"""Sets with two partial monoid structures: double categories in table form.

Orientation used throughout (and by the generators): ``x ∘_h z`` puts ``z``
to the left of ``x``; ``x ∘_v w`` puts ``w`` above ``x``.  For a 2x2 grid with
``y x`` on the bottom row and ``z w`` on the top row, the exchange law reads::

    (x ∘_v w) ∘_h (y ∘_v z) = (x ∘_h y) ∘_v (w ∘_h z)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .core import (
    UNDEFINED,
    AxiomViolation,
    InvalidStructureError,
    Kind,
    PartialMonoidStructure,
    StructureError,
    ValidationReport,
    fixed_points,
    image,
    validate_structure,
)


@dataclass(frozen=True)
class DoubleStructure:
    h: PartialMonoidStructure
    v: PartialMonoidStructure

    def __post_init__(self):
        if self.h.n != self.v.n:
            raise StructureError(f"carrier sizes differ: {self.h.n} vs {self.v.n}")
        if self.h.names != self.v.names:
            raise StructureError("both structures must use the same element names")

    @property
    def n(self) -> int:
        return self.h.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.h.names

    def key(self) -> tuple[int, ...]:
        return self.h.key() + self.v.key()


# --- pairwise checks shared with the n-fold module ---------------------------

# (outer, inner) pairs; ``("s", "a")`` is the map s of the first structure
_COMMUTATIONS = (
    ((("s", "a"), ("s", "b")), (("s", "b"), ("s", "a"))),
    ((("t", "a"), ("t", "b")), (("t", "b"), ("t", "a"))),
    ((("t", "a"), ("s", "b")), (("s", "b"), ("t", "a"))),
    ((("s", "a"), ("t", "b")), (("t", "b"), ("s", "a"))),
)


def _maps(a: PartialMonoidStructure, b: PartialMonoidStructure):
    sa, ta, _ = a.arrays
    sb, tb, _ = b.arrays
    return {("s", "a"): sa, ("t", "a"): ta, ("s", "b"): sb, ("t", "b"): tb}


def _composite(maps, outer, inner) -> np.ndarray:
    # outer(inner(x))
    return maps[outer][maps[inner]]


def _label(m, na: str, nb: str) -> str:
    return f"{m[0]}_{na if m[1] == 'a' else nb}"


def commutation_report(a, b, na: str, nb: str) -> ValidationReport:
    maps = _maps(a, b)
    out = []
    for lhs_pair, rhs_pair in _COMMUTATIONS:
        lhs = _composite(maps, *lhs_pair)
        rhs = _composite(maps, *rhs_pair)
        rule = (
            f"{_label(lhs_pair[0], na, nb)} {_label(lhs_pair[1], na, nb)} = "
            f"{_label(rhs_pair[0], na, nb)} {_label(rhs_pair[1], na, nb)}"
        )
        for x in np.nonzero(lhs != rhs)[0]:
            out.append(AxiomViolation(Kind.ID_COMMUTE, (int(x),), (int(lhs[x]), int(rhs[x])), rule))
    return ValidationReport(tuple(out))


def _compat_one(comp: PartialMonoidStructure, fmap: np.ndarray, fname: str, cname: str):
    """``f(x) ∘ f(z) = f(x ∘ z)`` whenever ``x ∘ z`` is defined."""
    _, _, op = comp.arrays
    xs, zs = np.nonzero(op >= 0)
    lhs = op[fmap[xs], fmap[zs]]
    rhs = fmap[op[xs, zs]]
    out = []
    rule = f"{fname}(x) ∘_{cname} {fname}(z) = {fname}(x ∘_{cname} z)"
    for i in np.nonzero(lhs != rhs)[0]:
        out.append(
            AxiomViolation(Kind.COMPAT, (int(xs[i]), int(zs[i])), (int(lhs[i]), int(rhs[i])), rule)
        )
    return out


def compat_report(a, b, na: str, nb: str) -> ValidationReport:
    sa, ta, _ = a.arrays
    sb, tb, _ = b.arrays
    out: list[AxiomViolation] = []
    out += _compat_one(a, sb, f"s_{nb}", na)
    out += _compat_one(a, tb, f"t_{nb}", na)
    out += _compat_one(b, sa, f"s_{na}", nb)
    out += _compat_one(b, ta, f"t_{na}", nb)
    return ValidationReport(tuple(out))


def _exchange_blocks(a: PartialMonoidStructure, b: PartialMonoidStructure):
    """Per ``x``, arrays ``(y, w, z, lhs, rhs)`` over all quadruples whose four
    binary composites ``x∘_a y, w∘_a z, x∘_b w, y∘_b z`` are defined, sorted
    lexicographically; ``lhs = (x∘_b w)∘_a(y∘_b z)``,
    ``rhs = (x∘_a y)∘_b(w∘_a z)``, with ``n`` marking undefined.
    """
    n = a.n
    pa, pb = a.padded, b.padded
    def_a = a.arrays[2] >= 0
    def_b = b.arrays[2] >= 0
    for x in range(n):
        ys = np.nonzero(def_a[x])[0]
        ws = np.nonzero(def_b[x])[0]
        if not len(ys) or not len(ws):
            continue
        # mask[i, j, z]: y_i ∘_b z and w_j ∘_a z both defined
        mask = def_b[ys][:, None, :] & def_a[ws][None, :, :]
        ii, jj, zs = np.nonzero(mask)
        if not len(zs):
            continue
        y = ys[ii]
        w = ws[jj]
        lhs = pa[pb[x, w], pb[y, zs]]
        rhs = pb[pa[x, y], pa[w, zs]]
        yield x, y, w, zs, lhs, rhs


def exchange_scan(a: PartialMonoidStructure, b: PartialMonoidStructure) -> Iterator[tuple[int, ...]]:
    """Yield ``(x, y, w, z, lhs, rhs)`` for every quadruple with all four
    binary composites defined; ``lhs``/``rhs`` may be :data:`UNDEFINED`.
    """
    n = a.n
    for x, y, w, z, lhs, rhs in _exchange_blocks(a, b):
        for k in range(len(z)):
            l, r = int(lhs[k]), int(rhs[k])
            yield (
                x, int(y[k]), int(w[k]), int(z[k]),
                UNDEFINED if l >= n else l, UNDEFINED if r >= n else r,
            )


def _exchange_mismatches(a, b):
    n = a.n
    out = []
    for x, y, w, z, lhs, rhs in _exchange_blocks(a, b):
        # undefined on either side is a failure too
        bad = (lhs != rhs) | (lhs >= n)
        for k in np.nonzero(bad)[0]:
            l, r = int(lhs[k]), int(rhs[k])
            out.append(
                (x, int(y[k]), int(w[k]), int(z[k]), UNDEFINED if l >= n else l, UNDEFINED if r >= n else r)
            )
    return out


def exchange_report(a, b, na: str, nb: str) -> ValidationReport:
    rule = f"(x ∘_{nb} w) ∘_{na} (y ∘_{nb} z) = (x ∘_{na} y) ∘_{nb} (w ∘_{na} z)"
    return ValidationReport(
        tuple(
            AxiomViolation(Kind.EXCHANGE, (x, y, w, z), (lhs, rhs), rule)
            for x, y, w, z, lhs, rhs in _exchange_mismatches(a, b)
        )
    )


def pair_report(a, b, na: str, nb: str) -> ValidationReport:
    """Identity commutation, compatibility and exchange between two structures."""
    where = f"{na},{nb}"
    return (
        commutation_report(a, b, na, nb)
        .merged(compat_report(a, b, na, nb), exchange_report(a, b, na, nb))
        .tagged(where)
    )


# --- public operations -------------------------------------------------------


def validate_double(d: DoubleStructure) -> ValidationReport:
    """Empty iff ``d`` is a double category in table form.

    Both structures must be partial monoids; s_h, t_h commute with s_v, t_v in
    the four class-one identities; each structure's s and t are compatible with
    the other's composition; and the exchange law holds on every quadruple with
    all four binary composites defined (both sides must then be defined).
    """
    return (
        validate_structure(d.h)
        .tagged("h")
        .merged(validate_structure(d.v).tagged("v"), pair_report(d.h, d.v, "h", "v"))
    )


def require_double(d: DoubleStructure) -> None:
    report = validate_double(d)
    if report:
        raise InvalidStructureError("not a valid double structure", report, d.names)


def exchange_witnesses(d: DoubleStructure) -> list[tuple[int, int, int, int, int, int]]:
    """Every quadruple at which both sides of the exchange law are defined."""
    _require_each(d)
    return [q for q in exchange_scan(d.h, d.v) if q[4] != UNDEFINED and q[5] != UNDEFINED]


def _require_each(d: DoubleStructure) -> None:
    report = validate_structure(d.h).tagged("h").merged(validate_structure(d.v).tagged("v"))
    if report:
        raise InvalidStructureError("h and v must each be partial monoids", report, d.names)


CLASSES = ("ONE", "TWO", "THREE", "FOUR")

# (outer, inner) = (outer, inner) with the map names used in the class lists
CUBICAL_IDENTITIES: dict[str, tuple[tuple[tuple[str, str], tuple[str, str]], ...]] = {
    "ONE": (
        (("s_h", "s_v"), ("s_v", "s_h")),
        (("t_h", "t_v"), ("t_v", "t_h")),
        (("t_h", "s_v"), ("s_v", "t_h")),
        (("s_h", "t_v"), ("t_v", "s_h")),
    ),
    "TWO": (
        (("s_h", "s_v"), ("t_v", "s_h")),
        (("t_h", "t_v"), ("s_v", "t_h")),
        (("t_h", "s_v"), ("t_v", "t_h")),
        (("s_v", "s_h"), ("s_h", "t_v")),
    ),
    "THREE": (
        (("s_h", "s_v"), ("s_v", "t_h")),
        (("t_h", "t_v"), ("t_v", "s_h")),
        (("t_h", "s_v"), ("s_v", "s_h")),
        (("t_v", "t_h"), ("s_h", "t_v")),
    ),
    # second identity duplicates one of class ONE's; kept verbatim
    "FOUR": (
        (("s_h", "s_v"), ("t_v", "t_h")),
        (("t_h", "t_v"), ("t_v", "t_h")),
        (("t_h", "s_v"), ("t_v", "s_h")),
        (("s_v", "t_h"), ("s_h", "t_v")),
    ),
}


@dataclass(frozen=True)
class CubicalClassification:
    """Which of the four cubical-set classes hold pointwise.

    ``failures`` maps each unsatisfied class to ``(identity, x)``: the first
    identity that fails and the least element at which it fails.
    """

    satisfied: frozenset[str]
    failures: dict[str, tuple[str, int]] = field(default_factory=dict, compare=False)

    def __contains__(self, item: str) -> bool:
        return item in self.satisfied


def _named_maps(d: DoubleStructure) -> dict[str, np.ndarray]:
    sh, th, _ = d.h.arrays
    sv, tv, _ = d.v.arrays
    return {"s_h": sh, "t_h": th, "s_v": sv, "t_v": tv}


def classify_cubical(d: DoubleStructure) -> CubicalClassification:
    _require_each(d)
    maps = _named_maps(d)
    satisfied = set()
    failures = {}
    for cls in CLASSES:
        for (o1, i1), (o2, i2) in CUBICAL_IDENTITIES[cls]:
            lhs = maps[o1][maps[i1]]
            rhs = maps[o2][maps[i2]]
            bad = np.nonzero(lhs != rhs)[0]
            if len(bad):
                failures[cls] = (f"{o1}({i1}) = {o2}({i2})", int(bad[0]))
                break
        else:
            satisfied.add(cls)
    return CubicalClassification(frozenset(satisfied), failures)


@dataclass(frozen=True)
class CellDecomposition:
    """Vertical 1-cells (fixed by s_h), horizontal 1-cells (fixed by s_v) and
    objects (fixed by all four partial identities).

    ``report`` collects any failed consistency check; it is empty for every
    valid double structure.
    """

    d1v: frozenset[int]
    d1h: frozenset[int]
    d0: frozenset[int]
    report: ValidationReport = field(default_factory=ValidationReport, compare=False)


def _closure(p: PartialMonoidStructure, cell: frozenset[int], label: str) -> list[AxiomViolation]:
    out = []
    members = sorted(cell)
    for x in members:
        for y in members:
            z = p.op[x][y]
            if z != UNDEFINED and z not in cell:
                out.append(AxiomViolation(Kind.CELL_CLOSURE, (x, y), (z, "OUTSIDE"), f"{label} closed under ∘"))
    for x in members:
        for m, nm in ((p.s, "s"), (p.t, "t")):
            if m[x] not in cell:
                out.append(AxiomViolation(Kind.CELL_CLOSURE, (x,), (m[x], "OUTSIDE"), f"{label} closed under {nm}"))
    return out


def _fixed_image_checks(p: PartialMonoidStructure, label: str) -> list[AxiomViolation]:
    base = fixed_points(p.s)
    others = (
        (f"Fix(t_{label})", fixed_points(p.t)),
        (f"im(s_{label})", image(p.s)),
        (f"im(t_{label})", image(p.t)),
    )
    out = []
    for name, other in others:
        for x in sorted(base ^ other):
            out.append(AxiomViolation(Kind.CELL_FIXED, (x,), (), f"Fix(s_{label}) = {name}"))
    return out


def derive_cells(d: DoubleStructure) -> CellDecomposition:
    """Compute the emergent cell sets of a valid double structure.

    The object set is the common fixed-point set of all four partial
    identities, which coincides with the image of ``s_h ∘ s_v``.  The literal
    condition ``s_h(x) = t_h(x) = s_v(x) = t_v(x)`` without ``= x`` is not used:
    on a one-object structure it would return the whole carrier.
    """
    require_double(d)
    sh, th, sv, tv = d.h.s, d.h.t, d.v.s, d.v.t
    d1v = fixed_points(sh)
    d1h = fixed_points(sv)
    d0 = d1v & fixed_points(th) & d1h & fixed_points(tv)

    out = _fixed_image_checks(d.h, "h") + _fixed_image_checks(d.v, "v")
    out += _closure(d.v, d1v, "D1v")
    out += _closure(d.h, d1h, "D1h")
    out += _closure(d.h, d0, "D0")
    out += _closure(d.v, d0, "D0")

    im_hv = frozenset(sh[sv[x]] for x in range(d.n))
    for x in sorted(d0 ^ im_hv):
        out.append(AxiomViolation(Kind.CELL_OBJECTS, (x,), (), "D0 = im(s_h s_v)"))
    for x in sorted(d0 ^ (d1v & d1h)):
        out.append(AxiomViolation(Kind.CELL_OBJECTS, (x,), (), "D0 = D1v ∩ D1h"))
    for u in sorted(d0):
        if d.h.op[u][u] != u or d.v.op[u][u] != u:
            out.append(AxiomViolation(Kind.CELL_OBJECTS, (u,), (d.h.op[u][u], d.v.op[u][u]), "u ∘ u = u"))
    return CellDecomposition(d1v, d1h, d0, ValidationReport(tuple(out)))


ORDERINGS = (("h", "v"), ("v", "h"))


def detect_two_category(d: DoubleStructure, ordering: tuple[str, str] = ("h", "v")) -> ValidationReport:
    """Empty iff ``d`` is a 2-category with ``ordering[0]`` as the structure
    whose partial identities land in the objects: ``s1 = s1 s2 = s1 t2``,
    ``t1 = t1 t2 = t1 s2`` and ``im(s1) = im(t1) = D0``.
    """
    if tuple(ordering) not in ORDERINGS:
        raise ValueError(f"ordering must be one of {ORDERINGS}")
    require_double(d)
    first, second = ordering
    maps = _named_maps(d)
    s1, t1 = maps[f"s_{first}"], maps[f"t_{first}"]
    s2, t2 = maps[f"s_{second}"], maps[f"t_{second}"]
    out = []
    checks = (
        (s1, s1[s2], f"s_{first} = s_{first} s_{second}"),
        (s1, s1[t2], f"s_{first} = s_{first} t_{second}"),
        (t1, t1[t2], f"t_{first} = t_{first} t_{second}"),
        (t1, t1[s2], f"t_{first} = t_{first} s_{second}"),
    )
    for lhs, rhs, rule in checks:
        for x in np.nonzero(lhs != rhs)[0]:
            out.append(AxiomViolation(Kind.TWO_CATEGORY, (int(x),), (int(lhs[x]), int(rhs[x])), rule))
    d0 = derive_cells(d).d0
    for nm, m in ((f"im(s_{first})", s1), (f"im(t_{first})", t1)):
        for x in sorted(d0 ^ image(m.tolist())):
            out.append(AxiomViolation(Kind.TWO_CATEGORY, (x,), (), f"{nm} = D0"))
    return ValidationReport(tuple(out)).tagged(f"{first},{second}")


_EIGHT = (
    ("s_h", "s_v"), ("s_v", "s_h"), ("t_h", "t_v"), ("t_v", "t_h"),
    ("t_h", "s_v"), ("s_v", "t_h"), ("s_h", "t_v"), ("t_v", "s_h"),
)


def detect_one_object(d: DoubleStructure) -> ValidationReport:
    """Empty iff all eight two-fold composites of partial identities are the
    same constant map; cross-checked against ``|D0| = 1``.
    """
    require_double(d)
    maps = _named_maps(d)
    target = int(maps["s_h"][maps["s_v"]][0])
    out = []
    for outer, inner in _EIGHT:
        comp = maps[outer][maps[inner]]
        for x in np.nonzero(comp != target)[0]:
            out.append(AxiomViolation(Kind.ONE_OBJECT, (int(x),), (int(comp[x]), target), f"{outer}({inner}) constant"))
    d0 = derive_cells(d).d0
    constant = not out
    if constant != (len(d0) == 1):
        raise AssertionError(f"one-object characterisations disagree: constant={constant}, |D0|={len(d0)}")
    if len(d0) != 1:
        out.append(AxiomViolation(Kind.ONE_OBJECT, tuple(sorted(d0))[:4], (len(d0), 1), "|D0| = 1"))
    return ValidationReport(tuple(out))
