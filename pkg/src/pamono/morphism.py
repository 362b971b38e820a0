"""Homomorphisms between partial monoids and isomorphism search."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    UNDEFINED,
    AxiomViolation,
    Kind,
    PartialMonoidStructure,
    StructureError,
    ValidationReport,
    require_valid,
)


@dataclass(frozen=True)
class CarrierMap:
    """A total map from a carrier of ``source_size`` into one of ``target_size``."""

    source_size: int
    target_size: int
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(v) for v in self.image)
        if len(image) != self.source_size:
            raise StructureError(f"map has {len(image)} images, expected {self.source_size}")
        for v in image:
            if not 0 <= v < self.target_size:
                raise StructureError(f"image {v} out of range for target size {self.target_size}")
        object.__setattr__(self, "image", image)

    @classmethod
    def of(cls, image: Sequence[int], target_size: Optional[int] = None) -> "CarrierMap":
        image = tuple(image)
        if target_size is None:
            target_size = max(image) + 1 if image else 0
        return cls(len(image), target_size, image)

    @classmethod
    def identity(cls, n: int) -> "CarrierMap":
        return cls(n, n, tuple(range(n)))

    def __call__(self, x: int) -> int:
        return self.image[x]

    def is_bijection(self) -> bool:
        return self.source_size == self.target_size and len(set(self.image)) == self.source_size

    def inverse(self) -> "CarrierMap":
        if not self.is_bijection():
            raise StructureError("map is not a bijection")
        inv = [0] * self.source_size
        for x, y in enumerate(self.image):
            inv[y] = x
        return CarrierMap(self.target_size, self.source_size, tuple(inv))


def compose_maps(f: CarrierMap, g: CarrierMap) -> CarrierMap:
    """Pointwise ``g ∘ f`` (apply ``f`` first)."""
    if f.target_size != g.source_size:
        raise StructureError(f"cannot compose: target {f.target_size} != source {g.source_size}")
    return CarrierMap(f.source_size, g.target_size, tuple(g.image[y] for y in f.image))


def check_homomorphism(
    p1: PartialMonoidStructure, p2: PartialMonoidStructure, f: CarrierMap, *, validate: bool = True
) -> ValidationReport:
    """Check ``f`` against the three homomorphism conditions.

    HOM_COMP: whenever ``x ∘₁ y`` is defined, ``f(x) ∘₂ f(y)`` is defined and
    equals ``f(x ∘₁ y)``.  HOM_S / HOM_T: ``f`` commutes with ``s`` / ``t``.
    Definedness is not required to be reflected.
    """
    if validate:
        require_valid(p1, "source")
        require_valid(p2, "target")
    if f.source_size != p1.n or f.target_size != p2.n:
        raise StructureError(
            f"map {f.source_size}->{f.target_size} does not fit carriers {p1.n}->{p2.n}"
        )
    s1, t1, op1 = p1.arrays
    s2, t2, op2 = p2.arrays
    fa = np.asarray(f.image, dtype=np.int32)
    out = []

    xs, ys = np.nonzero(op1 >= 0)
    lhs = fa[op1[xs, ys]]
    rhs = op2[fa[xs], fa[ys]]
    for i in np.nonzero(lhs != rhs)[0]:
        out.append(
            AxiomViolation(Kind.HOM_COMP, (int(xs[i]), int(ys[i])), (int(lhs[i]), int(rhs[i])))
        )
    for kind, m1, m2 in ((Kind.HOM_S, s1, s2), (Kind.HOM_T, t1, t2)):
        lhs = fa[m1]
        rhs = m2[fa]
        for x in np.nonzero(lhs != rhs)[0]:
            out.append(AxiomViolation(kind, (int(x),), (int(lhs[x]), int(rhs[x]))))
    return ValidationReport(tuple(out))


def _profiles(p: PartialMonoidStructure) -> list[tuple]:
    """Per-element invariants preserved by any isomorphism."""
    s, t, op = p.arrays
    fix_s = s == np.arange(p.n)
    rows = (op >= 0).sum(axis=1)
    cols = (op >= 0).sum(axis=0)
    idem = np.array([op[x, x] == x for x in range(p.n)])
    s_fibre = np.bincount(s, minlength=p.n)
    t_fibre = np.bincount(t, minlength=p.n)
    return [
        (bool(fix_s[x]), int(rows[x]), int(cols[x]), bool(idem[x]), int(s_fibre[x]), int(t_fibre[x]))
        for x in range(p.n)
    ]


def are_isomorphic(
    p1: PartialMonoidStructure, p2: PartialMonoidStructure
) -> tuple[bool, Optional[CarrierMap]]:
    """Decide isomorphism by backtracking over bijections.

    Returns the lexicographically least isomorphism as witness.
    """
    require_valid(p1, "first structure")
    require_valid(p2, "second structure")
    n = p1.n
    if n != p2.n:
        return False, None
    prof1, prof2 = _profiles(p1), _profiles(p2)
    if sorted(prof1) != sorted(prof2):
        return False, None
    candidates = [[y for y in range(n) if prof2[y] == prof1[x]] for x in range(n)]

    f = [-1] * n
    used = [False] * n
    s1, t1, op1 = p1.s, p1.t, p1.op
    s2, t2, op2 = p2.s, p2.t, p2.op
    preimages = [[] for _ in range(n)]
    for u in range(n):
        for v in range(n):
            if op1[u][v] != UNDEFINED:
                preimages[op1[u][v]].append((u, v))

    def pair_ok(u: int, v: int) -> bool:
        z = op1[u][v]
        w = op2[f[u]][f[v]]
        if z == UNDEFINED or w == UNDEFINED:
            return z == w
        return f[z] < 0 or f[z] == w

    # elements are assigned in index order, so "assigned" means index <= x;
    # every constraint is checked when its last element gets assigned
    def consistent(x: int) -> bool:
        fx = f[x]
        for m1, m2 in ((s1, s2), (t1, t2)):
            if m1[x] <= x and f[m1[x]] != m2[fx]:
                return False
        for a in range(x):
            if s1[a] == x and s2[f[a]] != fx:
                return False
            if t1[a] == x and t2[f[a]] != fx:
                return False
        for a in range(x + 1):
            if not (pair_ok(a, x) and pair_ok(x, a)):
                return False
        for u, v in preimages[x]:
            if u <= x and v <= x and not pair_ok(u, v):
                return False
        return True

    def extend(x: int) -> bool:
        if x == n:
            return True
        for y in candidates[x]:
            if used[y]:
                continue
            f[x] = y
            used[y] = True
            if consistent(x) and extend(x + 1):
                return True
            used[y] = False
            f[x] = -1
        return False

    if not extend(0):
        return False, None
    witness = CarrierMap(n, n, tuple(f))
    assert not check_homomorphism(p1, p2, witness, validate=False)
    assert not check_homomorphism(p2, p1, witness.inverse(), validate=False)
    return True, witness
