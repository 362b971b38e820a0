"""Finite partial monoids stored as composition tables.

Elements of a carrier of size ``n`` are the integers ``0..n-1``; display names
are carried alongside and never affect the algebra.  An undefined composite is
stored as :data:`UNDEFINED` (``-1``), which also makes it sort below every
element in canonical orderings.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

UNDEFINED = -1

Detail = Union[int, str]


class Kind(str, Enum):
    """Violation kinds, declared in report order."""

    S_NOT_IDEMPOTENT = "S_NOT_IDEMPOTENT"
    T_NOT_IDEMPOTENT = "T_NOT_IDEMPOTENT"
    DEFINEDNESS = "DEFINEDNESS"
    RIGHT_UNIT = "RIGHT_UNIT"
    LEFT_UNIT = "LEFT_UNIT"
    ASSOCIATIVITY = "ASSOCIATIVITY"
    # consequences of the axioms
    DERIVED_ST = "DERIVED_ST"
    DERIVED_COMP = "DERIVED_COMP"
    DERIVED_UNITS = "DERIVED_UNITS"
    DERIVED_IDEMPOTENT = "DERIVED_IDEMPOTENT"
    NO_INVERSE = "NO_INVERSE"
    UNIQUENESS = "UNIQUENESS"
    HOM_COMP = "HOM_COMP"
    HOM_S = "HOM_S"
    HOM_T = "HOM_T"
    ID_COMMUTE = "ID_COMMUTE"
    COMPAT = "COMPAT"
    EXCHANGE = "EXCHANGE"
    CELL_FIXED = "CELL_FIXED"
    CELL_CLOSURE = "CELL_CLOSURE"
    CELL_OBJECTS = "CELL_OBJECTS"
    TWO_CATEGORY = "TWO_CATEGORY"
    ONE_OBJECT = "ONE_OBJECT"
    LATTICE = "LATTICE"
    CAT_SHAPE = "CAT_SHAPE"
    CAT_UNIT = "CAT_UNIT"
    CAT_ASSOCIATIVITY = "CAT_ASSOCIATIVITY"

    def __str__(self) -> str:
        return self.value


_KIND_RANK = {k: i for i, k in enumerate(Kind)}


@dataclass(frozen=True)
class AxiomViolation:
    """One failed instance of an axiom.

    ``witnesses`` are element indices that reproduce the failure by hand;
    ``detail`` holds the two values that disagree (element indices,
    :data:`UNDEFINED`, or the markers ``"DEFINED"``/``"UNDEFINED"``).
    ``rule`` names the identity that failed when a kind covers several, and
    ``where`` names the structure(s) involved in multi-structure reports.
    """

    kind: Kind
    witnesses: tuple[int, ...]
    detail: tuple[Detail, ...] = ()
    rule: str = ""
    where: str = ""

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.where, self.witnesses, self.rule)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[AxiomViolation, ...] = ()

    def __post_init__(self):
        ordered = tuple(sorted(self.violations, key=AxiomViolation.sort_key))
        object.__setattr__(self, "violations", ordered)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        # truthy when there is something to report
        return bool(self.violations)

    def __len__(self) -> int:
        return len(self.violations)

    def __iter__(self):
        return iter(self.violations)

    def kinds(self) -> set[Kind]:
        return {v.kind for v in self.violations}

    def merged(self, *others: "ValidationReport") -> "ValidationReport":
        vs = list(self.violations)
        for o in others:
            vs.extend(o.violations)
        return ValidationReport(tuple(vs))

    def tagged(self, where: str) -> "ValidationReport":
        return ValidationReport(
            tuple(
                AxiomViolation(v.kind, v.witnesses, v.detail, v.rule, where)
                for v in self.violations
            )
        )


class StructureError(ValueError):
    """Raised for ill-formed data (bad sizes, indices out of range)."""


class InvalidStructureError(ValueError):
    """Raised when an operation needs a valid structure and gets an invalid one."""

    def __init__(self, message: str, report: ValidationReport, names: Sequence[str] = ()):
        super().__init__(message)
        self.report = report
        self.names = tuple(names)


def default_names(n: int) -> tuple[str, ...]:
    return tuple(f"e{i}" for i in range(n))


def _check_map(name: str, values: Sequence[int], n: int) -> tuple[int, ...]:
    values = tuple(int(v) for v in values)
    if len(values) != n:
        raise StructureError(f"{name} has {len(values)} entries, expected {n}")
    for v in values:
        if not 0 <= v < n:
            raise StructureError(f"{name} value {v} out of range for carrier {n}")
    return values


@dataclass(frozen=True)
class PartialMonoidStructure:
    """A carrier ``0..n-1`` with total maps ``s``, ``t`` and a partial table ``op``.

    ``op[x][y]`` is the composite ``x ∘ y`` or :data:`UNDEFINED`.  The object
    is only required to be well-formed; whether it satisfies the partial
    monoid axioms is answered by :func:`validate_structure`.
    """

    n: int
    s: tuple[int, ...]
    t: tuple[int, ...]
    op: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = int(self.n)
        if n < 1:
            raise StructureError("carrier must be non-empty")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "s", _check_map("s", self.s, n))
        object.__setattr__(self, "t", _check_map("t", self.t, n))
        if len(self.op) != n:
            raise StructureError(f"op has {len(self.op)} rows, expected {n}")
        rows = []
        for row in self.op:
            row = tuple(int(v) for v in row)
            if len(row) != n:
                raise StructureError(f"op row has {len(row)} entries, expected {n}")
            for v in row:
                if not (v == UNDEFINED or 0 <= v < n):
                    raise StructureError(f"op value {v} out of range for carrier {n}")
            rows.append(row)
        object.__setattr__(self, "op", tuple(rows))
        names = tuple(self.names) if self.names else default_names(n)
        if len(names) != n:
            raise StructureError(f"{len(names)} names for carrier {n}")
        if len(set(names)) != n:
            raise StructureError("element names must be unique")
        for nm in names:
            if not nm or any(c.isspace() for c in nm) or "#" in nm:
                raise StructureError(f"bad element name {nm!r}")
        object.__setattr__(self, "names", names)

    @classmethod
    def from_function(cls, n, s, t, mul, names=()) -> "PartialMonoidStructure":
        """Build from callables; ``mul(x, y)`` returns an index or ``None``."""
        op = []
        for x in range(n):
            row = []
            for y in range(n):
                z = mul(x, y)
                row.append(UNDEFINED if z is None else z)
            op.append(row)
        return cls(n, [s(x) for x in range(n)], [t(x) for x in range(n)], op, names)

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        s = np.asarray(self.s, dtype=np.int32)
        t = np.asarray(self.t, dtype=np.int32)
        op = np.asarray(self.op, dtype=np.int32).reshape(self.n, self.n)
        for a in (s, t, op):
            a.flags.writeable = False
        return s, t, op

    @cached_property
    def padded(self) -> np.ndarray:
        """``(n+1) x (n+1)`` table where index ``n`` stands for undefined."""
        n = self.n
        _, _, op = self.arrays
        p = np.full((n + 1, n + 1), n, dtype=np.int32)
        p[:n, :n] = np.where(op < 0, n, op)
        p.flags.writeable = False
        return p

    def key(self) -> tuple[int, ...]:
        """Canonical ordering key: s row, t row, then op row-major."""
        flat = tuple(v for row in self.op for v in row)
        return self.s + self.t + flat

    def with_names(self, names) -> "PartialMonoidStructure":
        return PartialMonoidStructure(self.n, self.s, self.t, self.op, tuple(names))

    def __repr__(self) -> str:
        return f"PartialMonoidStructure(n={self.n}, s={self.s}, t={self.t}, op={self.op})"


def relabel(p: PartialMonoidStructure, perm: Sequence[int]) -> PartialMonoidStructure:
    """Transport ``p`` along the bijection ``x -> perm[x]`` (names reset)."""
    n = p.n
    s = [0] * n
    t = [0] * n
    op = [[UNDEFINED] * n for _ in range(n)]
    for x in range(n):
        px = perm[x]
        s[px] = perm[p.s[x]]
        t[px] = perm[p.t[x]]
        row = p.op[x]
        out = op[px]
        for y in range(n):
            z = row[y]
            out[perm[y]] = UNDEFINED if z < 0 else perm[z]
    return PartialMonoidStructure(n, s, t, op)


def compose(p: PartialMonoidStructure, x: int, y: int) -> int:
    """``x ∘ y`` straight from the table, or :data:`UNDEFINED`."""
    return p.op[x][y]


def fixed_points(f: Sequence[int]) -> frozenset[int]:
    return frozenset(x for x, fx in enumerate(f) if fx == x)


def image(f: Sequence[int]) -> frozenset[int]:
    return frozenset(f)


def _undef(v: int, n: int) -> int:
    return UNDEFINED if v >= n else int(v)


def _def_marker(b) -> str:
    return "DEFINED" if b else "UNDEFINED"


def validate_structure(p: PartialMonoidStructure) -> ValidationReport:
    """Report every failure of the partial monoid axioms.

    Checked: idempotency of ``s`` and ``t``; ``x∘y`` defined exactly when
    ``s(x) = t(y)``; ``x∘s(x) = x`` and ``t(x)∘x = x``; and associativity in
    the strong form where, for each triple ``(z, x, y)``, if either of
    ``z∘(x∘y)`` and ``(z∘x)∘y`` exists then both exist and agree.
    """
    n = p.n
    s, t, op = p.arrays
    out: list[AxiomViolation] = []

    for x in np.nonzero(s[s] != s)[0]:
        out.append(AxiomViolation(Kind.S_NOT_IDEMPOTENT, (int(x),), (int(s[s[x]]), int(s[x]))))
    for x in np.nonzero(t[t] != t)[0]:
        out.append(AxiomViolation(Kind.T_NOT_IDEMPOTENT, (int(x),), (int(t[t[x]]), int(t[x]))))

    defined = op >= 0
    should = s[:, None] == t[None, :]
    for x, y in zip(*np.nonzero(defined != should)):
        out.append(
            AxiomViolation(
                Kind.DEFINEDNESS,
                (int(x), int(y)),
                (_def_marker(defined[x, y]), _def_marker(should[x, y])),
            )
        )

    idx = np.arange(n)
    right = op[idx, s]
    for x in np.nonzero(right != idx)[0]:
        out.append(AxiomViolation(Kind.RIGHT_UNIT, (int(x),), (int(right[x]), int(x))))
    left = op[t, idx]
    for x in np.nonzero(left != idx)[0]:
        out.append(AxiomViolation(Kind.LEFT_UNIT, (int(x),), (int(left[x]), int(x))))

    pad = p.padded
    inner = pad[:n, :n]  # x∘y
    for z in range(n):
        lhs = pad[z][inner]  # z∘(x∘y)
        rhs = pad[pad[z, :n]][:, :n]  # (z∘x)∘y
        bad = lhs != rhs
        if bad.any():
            for x, y in zip(*np.nonzero(bad)):
                out.append(
                    AxiomViolation(
                        Kind.ASSOCIATIVITY,
                        (z, int(x), int(y)),
                        (_undef(lhs[x, y], n), _undef(rhs[x, y], n)),
                    )
                )
    return ValidationReport(tuple(out))


def require_valid(p: PartialMonoidStructure, what: str = "structure") -> None:
    report = validate_structure(p)
    if report:
        raise InvalidStructureError(f"{what} is not a partial monoid", report, p.names)


def units(p: PartialMonoidStructure) -> frozenset[int]:
    """The fixed points of ``s``; on a valid structure also those of ``t``."""
    require_valid(p)
    return fixed_points(p.s)


def check_derived_properties(p: PartialMonoidStructure) -> ValidationReport:
    """Check facts that follow from the axioms.

    Any violation on a structure that passes :func:`validate_structure` means
    a bug, so this doubles as a self-test of the validator.
    """
    n = p.n
    s, t, op = p.arrays
    out: list[AxiomViolation] = []
    for x in np.nonzero(t[s] != s)[0]:
        out.append(AxiomViolation(Kind.DERIVED_ST, (int(x),), (int(t[s[x]]), int(s[x])), "t s = s"))
    for x in np.nonzero(s[t] != t)[0]:
        out.append(AxiomViolation(Kind.DERIVED_ST, (int(x),), (int(s[t[x]]), int(t[x])), "s t = t"))

    xs, ys = np.nonzero(op >= 0)
    zs = op[xs, ys]
    for x, y, z in zip(xs, ys, zs):
        if s[z] != s[y]:
            out.append(AxiomViolation(Kind.DERIVED_COMP, (int(x), int(y)), (int(s[z]), int(s[y])), "s(x∘y) = s(y)"))
        if t[z] != t[x]:
            out.append(AxiomViolation(Kind.DERIVED_COMP, (int(x), int(y)), (int(t[z]), int(t[x])), "t(x∘y) = t(x)"))

    sets = {
        "Fix(s)": fixed_points(p.s),
        "Fix(t)": fixed_points(p.t),
        "im(s)": image(p.s),
        "im(t)": image(p.t),
    }
    base = sets["Fix(s)"]
    for label, other in sets.items():
        for x in sorted(base ^ other):
            out.append(
                AxiomViolation(
                    Kind.DERIVED_UNITS, (x,), (_def_marker(x in base), _def_marker(x in other)), f"Fix(s) = {label}"
                )
            )
    for u in sorted(base):
        if op[u, u] != u:
            out.append(AxiomViolation(Kind.DERIVED_IDEMPOTENT, (u,), (int(op[u, u]), u)))
    return ValidationReport(tuple(out))


def inverses(p: PartialMonoidStructure, x: int) -> list[int]:
    """All ``y`` with ``x∘y = t(x)`` and ``y∘x = s(x)``."""
    s, t, op = p.arrays
    mask = (op[x, :] == t[x]) & (op[:, x] == s[x])
    return [int(y) for y in np.nonzero(mask)[0]]


def detect_groupoid(p: PartialMonoidStructure) -> ValidationReport:
    """Empty iff every element has an inverse.

    Also flags any element with two distinct inverses, which cannot happen on
    a valid structure.
    """
    require_valid(p)
    out = []
    for x in range(p.n):
        inv = inverses(p, x)
        if not inv:
            out.append(AxiomViolation(Kind.NO_INVERSE, (x,)))
        elif len(inv) > 1:
            out.append(AxiomViolation(Kind.UNIQUENESS, (x, inv[0], inv[1])))
    return ValidationReport(tuple(out))


def from_rows(s: Iterable[int], t: Iterable[int], op: Sequence[Sequence[int | None]], names=()) -> PartialMonoidStructure:
    """Convenience constructor accepting ``None`` for undefined entries."""
    s = tuple(s)
    rows = [[UNDEFINED if v is None else v for v in row] for row in op]
    return PartialMonoidStructure(len(s), s, tuple(t), rows, names)
