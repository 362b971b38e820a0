"""Canonical instances and the bridge to ordinary category presentations."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .core import (
    UNDEFINED,
    AxiomViolation,
    InvalidStructureError,
    Kind,
    PartialMonoidStructure,
    StructureError,
    ValidationReport,
    units,
)
from .double import DoubleStructure
from .nfold import MultiStructure

MAX_GENERATED_CARRIER = 4096


def _tuple_name(xs: Sequence[int], m: int) -> str:
    return ("" if m <= 10 else "_").join(str(v) for v in xs)


def pair_double_groupoid(m: int) -> DoubleStructure:
    """Squares ``(A, B, C, D)`` over ``m`` points.

    Corners are read as::

        A --> B
        |     |
        C --> D

    ``s_v``/``t_v`` copy the top/bottom edge onto both horizontal edges and
    ``s_h``/``t_h`` copy the left/right edge onto both vertical edges.
    ``x ∘_v y`` stacks ``y`` on top of ``x``; ``x ∘_h z`` puts ``z`` to the left.
    """
    if m < 1:
        raise ValueError("need at least one point")
    if m**4 > MAX_GENERATED_CARRIER:
        raise ValueError(f"carrier {m**4} exceeds cap {MAX_GENERATED_CARRIER}")
    squares = list(product(range(m), repeat=4))
    index = {q: i for i, q in enumerate(squares)}
    n = len(squares)

    def sv(q):
        a, b, _, _ = q
        return (a, b, a, b)

    def tv(q):
        _, _, c, d = q
        return (c, d, c, d)

    def sh(q):
        a, _, c, _ = q
        return (a, a, c, c)

    def th(q):
        _, b, _, d = q
        return (b, b, d, d)

    h_op = [[UNDEFINED] * n for _ in range(n)]
    v_op = [[UNDEFINED] * n for _ in range(n)]
    for i, x in enumerate(squares):
        for j, y in enumerate(squares):
            if sv(x) == tv(y):
                v_op[i][j] = index[(y[0], y[1], x[2], x[3])]
            if sh(x) == th(y):
                h_op[i][j] = index[(y[0], x[1], y[2], x[3])]
    names = tuple(_tuple_name(q, m) for q in squares)
    h = PartialMonoidStructure(
        n, [index[sh(q)] for q in squares], [index[th(q)] for q in squares], h_op, names
    )
    v = PartialMonoidStructure(
        n, [index[sv(q)] for q in squares], [index[tv(q)] for q in squares], v_op, names
    )
    return DoubleStructure(h, v)


def pair_groupoid(m: int) -> PartialMonoidStructure:
    """Pairs ``(A, B)`` with ``(A, B) ∘ (B, C) = (A, C)``."""
    pairs = list(product(range(m), repeat=2))
    index = {q: i for i, q in enumerate(pairs)}

    def mul(i, j):
        (a, b), (c, d) = pairs[i], pairs[j]
        return index[(a, d)] if b == c else None

    return PartialMonoidStructure.from_function(
        len(pairs),
        lambda i: index[(pairs[i][1], pairs[i][1])],
        lambda i: index[(pairs[i][0], pairs[i][0])],
        mul,
        tuple(_tuple_name(q, m) for q in pairs),
    )


def find_unit(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    found = [e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))]
    if not found:
        raise ValueError("table has no two-sided unit")
    if len(found) > 1:
        raise ValueError(f"table has several units: {found}")
    return found[0]


def _check_total(table) -> int:
    n = len(table)
    if n < 1:
        raise ValueError("empty table")
    for row in table:
        if len(row) != n:
            raise ValueError("table is not square")
        for v in row:
            if not 0 <= v < n:
                raise ValueError(f"table entry {v} is undefined or out of range")
    return n


def monoid_to_pm(table: Sequence[Sequence[int]], names=()) -> PartialMonoidStructure:
    """A monoid as a partial monoid whose partial identities are constant at the unit."""
    n = _check_total(table)
    e = find_unit(table)
    for a, b, c in product(range(n), repeat=3):
        if table[a][table[b][c]] != table[table[a][b]][c]:
            raise ValueError(f"table is not associative at ({a}, {b}, {c})")
    return PartialMonoidStructure(n, [e] * n, [e] * n, table, names)


def commutative_monoid_double(table: Sequence[Sequence[int]], names=()) -> DoubleStructure:
    """The same monoid used as both structures.

    This is a valid double structure exactly when the monoid is commutative;
    nothing here checks that, it is left to the exchange check.
    """
    n = _check_total(table)
    e = find_unit(table)
    p = PartialMonoidStructure(n, [e] * n, [e] * n, table, names)
    return DoubleStructure(p, p)


def cyclic_table(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def klein_table() -> list[list[int]]:
    return [[a ^ b for b in range(4)] for a in range(4)]


def symmetric_group_table(k: int = 3) -> list[list[int]]:
    """Multiplication of permutations of ``k`` points, ``(p*q)(i) = p(q(i))``.

    Element 0 is the identity (permutations in lexicographic order).
    """
    from itertools import permutations

    perms = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]


def ncube_pair_groupoid(m: int, k: int, max_carrier: int = MAX_GENERATED_CARRIER) -> MultiStructure:
    """``k``-dimensional cubes labelled by points at their ``2**k`` vertices.

    Vertex ``v`` has bit ``i`` set when it lies on the 1-face of axis ``i``.
    ``s_i`` / ``t_i`` copy the 0-face / 1-face of axis ``i`` over the whole
    cube; ``x ∘_i y`` is defined when the 0-face of ``x`` equals the 1-face of
    ``y`` and keeps the 0-face of ``y`` and the 1-face of ``x``.  For ``k = 2``
    with axes ``(h, v)`` this is :func:`pair_double_groupoid`.
    """
    if m < 1:
        raise ValueError("need at least one point")
    if not 1 <= k <= 4:
        raise ValueError("dimension must be between 1 and 4")
    nv = 2**k
    n = m**nv
    if n > max_carrier:
        raise ValueError(f"carrier {n} exceeds cap {max_carrier}")
    cubes = list(product(range(m), repeat=nv))
    index = {c: i for i, c in enumerate(cubes)}
    structures = []
    for axis in range(k):
        bit = 1 << axis
        s, t = [], []
        for c in cubes:
            s.append(index[tuple(c[v & ~bit] for v in range(nv))])
            t.append(index[tuple(c[v | bit] for v in range(nv))])
        op = [[UNDEFINED] * n for _ in range(n)]
        for i in range(n):
            si = s[i]
            row = op[i]
            x = cubes[i]
            for j in range(n):
                if t[j] == si:
                    y = cubes[j]
                    row[j] = index[tuple(x[v] if v & bit else y[v] for v in range(nv))]
        structures.append(PartialMonoidStructure(n, s, t, op, tuple(_tuple_name(c, m) for c in cubes)))
    axes = ("h", "v") if k == 2 else tuple(f"x{i}" for i in range(k))
    return MultiStructure(tuple(structures), axes)


# --- categories --------------------------------------------------------------


@dataclass(frozen=True)
class CategoryPresentation:
    """A finite category given by objects, morphisms and a partial composition.

    ``comp[(g, f)]`` is ``g ∘ f`` (``f`` first) and exists exactly when
    ``tgt[f] == src[g]``.  Morphisms and objects are indices; names are
    presentation only.
    """

    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    identity: tuple[int, ...]
    comp: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        no, nm = len(self.objects), len(self.morphisms)
        if len(set(self.objects)) != no or len(set(self.morphisms)) != nm:
            raise StructureError("object and morphism names must be unique")
        if len(self.src) != nm or len(self.tgt) != nm or len(self.identity) != no:
            raise StructureError("src/tgt need one entry per morphism, identity one per object")
        for v in (*self.src, *self.tgt):
            if not 0 <= v < no:
                raise StructureError(f"object index {v} out of range")
        for v in self.identity:
            if not 0 <= v < nm:
                raise StructureError(f"morphism index {v} out of range")
        for (g, f), h in self.comp.items():
            for v in (g, f, h):
                if not 0 <= v < nm:
                    raise StructureError(f"morphism index {v} out of range")


def validate_category(cat: CategoryPresentation) -> ValidationReport:
    out = []
    nm = len(cat.morphisms)
    for a, i in enumerate(cat.identity):
        if cat.src[i] != a or cat.tgt[i] != a:
            out.append(AxiomViolation(Kind.CAT_SHAPE, (i,), (cat.src[i], cat.tgt[i]), "identity is an endomorphism"))
    if len(set(cat.identity)) != len(cat.identity):
        out.append(AxiomViolation(Kind.CAT_SHAPE, tuple(sorted(cat.identity))[:4], (), "identities distinct"))
    for g in range(nm):
        for f in range(nm):
            composable = cat.tgt[f] == cat.src[g]
            h = cat.comp.get((g, f))
            if composable != (h is not None):
                out.append(
                    AxiomViolation(
                        Kind.CAT_SHAPE, (g, f), ("DEFINED" if h is not None else "UNDEFINED",), "comp domain"
                    )
                )
            elif h is not None and (cat.src[h] != cat.src[f] or cat.tgt[h] != cat.tgt[g]):
                out.append(AxiomViolation(Kind.CAT_SHAPE, (g, f), (h,), "comp endpoints"))
    if out:
        return ValidationReport(tuple(out))
    for f in range(nm):
        if cat.comp[(f, cat.identity[cat.src[f]])] != f:
            out.append(AxiomViolation(Kind.CAT_UNIT, (f,), (), "f ∘ id = f"))
        if cat.comp[(cat.identity[cat.tgt[f]], f)] != f:
            out.append(AxiomViolation(Kind.CAT_UNIT, (f,), (), "id ∘ f = f"))
    for (h, g), hg in cat.comp.items():
        for f in range(nm):
            if cat.tgt[f] == cat.src[g]:
                lhs = cat.comp[(hg, f)]
                rhs = cat.comp[(h, cat.comp[(g, f)])]
                if lhs != rhs:
                    out.append(AxiomViolation(Kind.CAT_ASSOCIATIVITY, (h, g, f), (lhs, rhs)))
    return ValidationReport(tuple(out))


def category_to_pm(cat: CategoryPresentation) -> PartialMonoidStructure:
    """Forget the objects: ``s``/``t`` send a morphism to the identity on its
    source/target."""
    report = validate_category(cat)
    if report:
        raise InvalidStructureError("not a category", report, cat.morphisms)
    n = len(cat.morphisms)
    op = [[UNDEFINED] * n for _ in range(n)]
    for (g, f), h in cat.comp.items():
        op[g][f] = h
    return PartialMonoidStructure(
        n,
        [cat.identity[cat.src[x]] for x in range(n)],
        [cat.identity[cat.tgt[x]] for x in range(n)],
        op,
        cat.morphisms,
    )


def pm_to_category(p: PartialMonoidStructure) -> CategoryPresentation:
    """Read units as objects.

    Objects take the names of their identity morphisms; the names of any
    category ``p`` came from are not recoverable.
    """
    objs = sorted(units(p))
    obj_of = {u: i for i, u in enumerate(objs)}
    comp = {}
    for g in range(p.n):
        for f in range(p.n):
            if p.op[g][f] != UNDEFINED:
                comp[(g, f)] = p.op[g][f]
    return CategoryPresentation(
        objects=tuple(p.names[u] for u in objs),
        morphisms=p.names,
        src=tuple(obj_of[p.s[x]] for x in range(p.n)),
        tgt=tuple(obj_of[p.t[x]] for x in range(p.n)),
        identity=tuple(objs),
        comp=comp,
    )


def category(objects, arrows, comp_rules=()) -> CategoryPresentation:
    """Small helper: ``arrows`` maps name -> (src, tgt); identities ``id_A`` are
    added and ``comp_rules`` lists ``(g, f, h)`` meaning ``g ∘ f = h`` for
    non-identity composites.
    """
    objects = tuple(objects)
    names = [f"id_{a}" for a in objects] + list(arrows)
    idx = {nm: i for i, nm in enumerate(names)}
    oidx = {a: i for i, a in enumerate(objects)}
    src = [oidx[a] for a in objects] + [oidx[arrows[f][0]] for f in arrows]
    tgt = [oidx[a] for a in objects] + [oidx[arrows[f][1]] for f in arrows]
    identity = tuple(range(len(objects)))
    comp = {}
    for x in range(len(names)):
        comp[(x, identity[src[x]])] = x
        comp[(identity[tgt[x]], x)] = x
    for g, f, h in comp_rules:
        comp[(idx[g], idx[f])] = idx[h]
    return CategoryPresentation(objects, tuple(names), tuple(src), tuple(tgt), identity, comp)


def interval_category() -> CategoryPresentation:
    return category(("A", "B"), {"f": ("A", "B")})
