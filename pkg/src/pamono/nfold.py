"""Carriers with ``k`` pairwise-commuting partial monoid structures."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .core import (
    InvalidStructureError,
    PartialMonoidStructure,
    StructureError,
    ValidationReport,
    AxiomViolation,
    Kind,
    fixed_points,
    validate_structure,
)
from .double import pair_report

MAX_AXES = 6


@dataclass(frozen=True)
class MultiStructure:
    structures: tuple[PartialMonoidStructure, ...]
    axes: tuple[str, ...] = ()

    def __post_init__(self):
        structures = tuple(self.structures)
        if not structures:
            raise StructureError("need at least one structure")
        n = structures[0].n
        for p in structures:
            if p.n != n:
                raise StructureError("all structures must share the carrier")
            if p.names != structures[0].names:
                raise StructureError("all structures must use the same element names")
        axes = tuple(self.axes) if self.axes else tuple(str(i + 1) for i in range(len(structures)))
        if len(axes) != len(structures) or len(set(axes)) != len(axes):
            raise StructureError("need one distinct axis name per structure")
        object.__setattr__(self, "structures", structures)
        object.__setattr__(self, "axes", axes)

    @property
    def n(self) -> int:
        return self.structures[0].n

    @property
    def k(self) -> int:
        return len(self.structures)

    @property
    def names(self) -> tuple[str, ...]:
        return self.structures[0].names

    def permuted(self, order) -> "MultiStructure":
        return MultiStructure(tuple(self.structures[i] for i in order), tuple(self.axes[i] for i in order))


def validate_nfold(m: MultiStructure) -> ValidationReport:
    """Each structure is a partial monoid and every pair satisfies the double
    conditions.

    The pairwise conditions are symmetric in the two structures (swapping
    roles permutes the identities and renames exchange witnesses), so each
    unordered pair is checked once, which covers both orderings.
    """
    report = ValidationReport()
    for axis, p in zip(m.axes, m.structures):
        report = report.merged(validate_structure(p).tagged(axis))
    for i, j in combinations(range(m.k), 2):
        report = report.merged(pair_report(m.structures[i], m.structures[j], m.axes[i], m.axes[j]))
    return report


@dataclass(frozen=True)
class CellLattice:
    """``cells[S]`` is the set of elements fixed by ``s_i`` and ``t_i`` for all
    axis indices ``i`` in ``S``."""

    axes: tuple[str, ...]
    cells: dict[frozenset[int], frozenset[int]]
    report: ValidationReport = field(default_factory=ValidationReport, compare=False)

    def sizes(self) -> dict[frozenset[int], int]:
        return {s: len(c) for s, c in self.cells.items()}

    def cell(self, *axes: str) -> frozenset[int]:
        return self.cells[frozenset(self.axes.index(a) for a in axes)]


def _subsets(k: int):
    # by size, then lexicographically
    for r in range(k + 1):
        for c in combinations(range(k), r):
            yield frozenset(c)


def cell_lattice(m: MultiStructure, max_axes: int = MAX_AXES) -> CellLattice:
    if m.k > max_axes:
        raise ValueError(f"{m.k} axes exceeds the cap of {max_axes}")
    report = validate_nfold(m)
    if report:
        raise InvalidStructureError("not a valid n-fold structure", report, m.names)
    fixed = [fixed_points(p.s) & fixed_points(p.t) for p in m.structures]
    carrier = frozenset(range(m.n))
    cells = {}
    for subset in _subsets(m.k):
        cell = carrier
        for i in subset:
            cell = cell & fixed[i]
        cells[subset] = cell

    out = []
    for a in cells:
        for b in cells:
            if a < b and not cells[b] <= cells[a]:
                for x in sorted(cells[b] - cells[a]):
                    out.append(AxiomViolation(Kind.LATTICE, (x,), (), "monotone"))
    top = frozenset(range(m.k))
    every = frozenset(
        x for x in range(m.n) if all(p.s[x] == x and p.t[x] == x for p in m.structures)
    )
    for x in sorted(cells[top] ^ every):
        out.append(AxiomViolation(Kind.LATTICE, (x,), (), "top cell = common fixed points"))
    return CellLattice(m.axes, cells, ValidationReport(tuple(out)))
