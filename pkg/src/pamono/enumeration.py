"""Exhaustive enumeration of partial monoids and double structures on small carriers.

The search picks the idempotent maps ``s`` and ``t`` first.  Definedness is
then fixed (``x∘y`` exists iff ``s(x) = t(y)``), so only the cells of that
support are filled, in row-major order with increasing values.  Both loops
run in lexicographic order, which makes the output canonical without a sort.

Pruning (on by default, off for debugging):

* ``(s, t)`` roots must satisfy ``t∘s = s`` and ``s∘t = t``;
* the unit laws force ``x∘s(x) = x`` and ``t(x)∘x = x`` before the search;
* a cell ``(x, y)`` only takes values ``z`` with ``s(z) = s(y)``, ``t(z) = t(x)``;
* associativity is checked incrementally on the triples a new entry touches.

All four are consequences of the axioms, so they never change the output.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations, product
from typing import Optional, Union

from .core import UNDEFINED, PartialMonoidStructure
from .double import DoubleStructure

_UNKNOWN = -2

Raw = tuple  # (s, t, op) with op a tuple of row tuples


class Mode(str, Enum):
    PM = "pm"
    DOUBLE = "double"


class Dedup(str, Enum):
    LABELLED = "labelled"
    UP_TO_ISO = "up-to-iso"


class Emit(str, Enum):
    COUNT_ONLY = "count-only"
    STREAM = "stream"


DEFAULT_CAPS = {Mode.PM: 5, Mode.DOUBLE: 3}
CAP_ENV = "PAMONO_MAX_CARRIER"


def carrier_cap(mode: Mode) -> int:
    cap = DEFAULT_CAPS[mode]
    env = os.environ.get(CAP_ENV)
    if env:
        cap = max(cap, int(env))
    return cap


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationRequest:
    k: int
    mode: Mode = Mode.PM
    dedup: Dedup = Dedup.LABELLED
    emit: Emit = Emit.STREAM
    workers: int = 1
    prune: bool = True

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("carrier size must be at least 1")
        cap = carrier_cap(self.mode)
        if self.k > cap:
            raise CapExceeded(
                f"carrier size {self.k} exceeds the {self.mode.value} cap of {cap} (set {CAP_ENV} to raise it)"
            )


@dataclass
class EnumerationResult:
    count: int
    structures: Optional[list[Union[PartialMonoidStructure, DoubleStructure]]]
    elapsed: float
    nodes: int = field(default=0, compare=False)


# --- partial monoid search ---------------------------------------------------


def idempotent_maps(k: int) -> list[tuple[int, ...]]:
    return [f for f in product(range(k), repeat=k) if all(f[f[x]] == f[x] for x in range(k))]


def st_roots(k: int, prune: bool = True) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    maps = idempotent_maps(k)
    roots = []
    for s in maps:
        for t in maps:
            if prune and any(t[s[x]] != s[x] or s[t[x]] != t[x] for x in range(k)):
                continue
            roots.append((s, t))
    return roots


def _triple_ok(op, a: int, b: int, c: int) -> bool:
    u = op[b][c]
    lhs = u if u < 0 else op[a][u]
    w = op[a][b]
    rhs = w if w < 0 else op[w][c]
    return lhs == _UNKNOWN or rhs == _UNKNOWN or lhs == rhs


def _touching_ok(op, n: int, x: int, y: int) -> bool:
    """Triples whose evaluation reads the entry ``(x, y)``."""
    for c in range(n):
        if not _triple_ok(op, x, y, c):
            return False
    for a in range(n):
        if not _triple_ok(op, a, x, y):
            return False
    for b in range(n):
        row = op[b]
        for c in range(n):
            if row[c] == y and not _triple_ok(op, x, b, c):
                return False
    for a in range(n):
        row = op[a]
        for b in range(n):
            if row[b] == x and not _triple_ok(op, a, b, y):
                return False
    return True


def _full_ok(op, n: int, s, t) -> bool:
    for x in range(n):
        if op[x][s[x]] != x or op[t[x]][x] != x:
            return False
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if not _triple_ok(op, a, b, c):
                    return False
    return True


def fill_tables(k: int, s, t, prune: bool = True) -> tuple[list[Raw], int]:
    """All valid composition tables for fixed ``(s, t)``, in lexicographic
    order, plus the number of search nodes visited."""
    n = k
    op = [[UNDEFINED] * n for _ in range(n)]
    cells = []
    for x in range(n):
        for y in range(n):
            if s[x] == t[y]:
                op[x][y] = _UNKNOWN
                cells.append((x, y))
    if prune:
        for x in range(n):
            for a, b in ((x, s[x]), (t[x], x)):
                cur = op[a][b]
                if cur == _UNKNOWN:
                    op[a][b] = x
                elif cur != x:
                    return [], 1
        free = [(x, y) for x, y in cells if op[x][y] == _UNKNOWN]
        choices = [[z for z in range(n) if s[z] == s[y] and t[z] == t[x]] for x, y in free]
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if not _triple_ok(op, a, b, c):
                        return [], 1
    else:
        free = cells
        choices = [list(range(n))] * len(free)

    out: list[Raw] = []
    nodes = 0
    depth = len(free)

    def rec(i: int) -> None:
        nonlocal nodes
        nodes += 1
        if i == depth:
            if prune or _full_ok(op, n, s, t):
                out.append((tuple(s), tuple(t), tuple(tuple(r) for r in op)))
            return
        x, y = free[i]
        for z in choices[i]:
            op[x][y] = z
            if not prune or _touching_ok(op, n, x, y):
                rec(i + 1)
        op[x][y] = _UNKNOWN

    rec(0)
    return out, nodes


def _fill_root(args):
    k, s, t, prune = args
    return fill_tables(k, s, t, prune)


def _run(func, jobs, workers: int):
    if workers <= 1 or len(jobs) <= 1:
        return [func(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def pm_tables(k: int, prune: bool = True, workers: int = 1) -> tuple[list[Raw], int]:
    """All labelled partial monoids on ``k`` elements as raw tuples."""
    jobs = [(k, s, t, prune) for s, t in st_roots(k, prune)]
    results = _run(_fill_root, jobs, workers)
    tables = [r for rs, _ in results for r in rs]
    nodes = sum(nd for _, nd in results)
    return tables, nodes


def monoid_tables(k: int) -> list[tuple[tuple[int, ...], ...]]:
    """All labelled monoids of order ``k`` (total tables with a unit)."""
    out = []
    for e in range(k):
        const = (e,) * k
        tables, _ = fill_tables(k, const, const, True)
        out.extend(op for _, _, op in tables)
    return out


def raw_key(raw: Raw) -> tuple[int, ...]:
    s, t, op = raw
    return s + t + tuple(v for row in op for v in row)


def relabel_raw(raw: Raw, perm) -> Raw:
    s, t, op = raw
    n = len(s)
    ns = [0] * n
    nt = [0] * n
    nop = [[UNDEFINED] * n for _ in range(n)]
    for x in range(n):
        px = perm[x]
        ns[px] = perm[s[x]]
        nt[px] = perm[t[x]]
        row = op[x]
        out = nop[px]
        for y in range(n):
            z = row[y]
            out[perm[y]] = UNDEFINED if z < 0 else perm[z]
    return tuple(ns), tuple(nt), tuple(tuple(r) for r in nop)


def canonical_raw(raw: Raw) -> Raw:
    """Representative with the least key among all relabellings."""
    n = len(raw[0])
    return min((relabel_raw(raw, p) for p in permutations(range(n))), key=raw_key)


def canonical_pair(h: Raw, v: Raw) -> tuple[Raw, Raw]:
    n = len(h[0])
    best = None
    best_key = None
    for p in permutations(range(n)):
        hh, vv = relabel_raw(h, p), relabel_raw(v, p)
        key = raw_key(hh) + raw_key(vv)
        if best_key is None or key < best_key:
            best, best_key = (hh, vv), key
    return best


def to_structure(raw: Raw) -> PartialMonoidStructure:
    s, t, op = raw
    return PartialMonoidStructure(len(s), s, t, op)


# --- double structures -------------------------------------------------------


def _commutes(sh, th, sv, tv) -> bool:
    return all(
        sh[sv[x]] == sv[sh[x]]
        and th[tv[x]] == tv[th[x]]
        and th[sv[x]] == sv[th[x]]
        and sh[tv[x]] == tv[sh[x]]
        for x in range(len(sh))
    )


def _compatible(a: Raw, b: Raw) -> bool:
    """s and t of each structure respect the other's composition."""
    for (_, _, op), (fs, ft, _) in ((a, b), (b, a)):
        n = len(op)
        for x in range(n):
            row = op[x]
            for z in range(n):
                xz = row[z]
                if xz < 0:
                    continue
                if op[fs[x]][fs[z]] != fs[xz] or op[ft[x]][ft[z]] != ft[xz]:
                    return False
    return True


def _exchanges(h: Raw, v: Raw) -> bool:
    oh, ov = h[2], v[2]
    n = len(oh)
    for x in range(n):
        for y in range(n):
            xy = oh[x][y]
            if xy < 0:
                continue
            for w in range(n):
                xw = ov[x][w]
                if xw < 0:
                    continue
                for z in range(n):
                    wz = oh[w][z]
                    yz = ov[y][z]
                    if wz < 0 or yz < 0:
                        continue
                    lhs = oh[xw][yz]
                    if lhs < 0 or lhs != ov[xy][wz]:
                        return False
    return True


def is_double(h: Raw, v: Raw) -> bool:
    """Double conditions for two structures already known to be partial monoids."""
    return _commutes(h[0], h[1], v[0], v[1]) and _compatible(h, v) and _exchanges(h, v)


def _double_chunk(args):
    hs, vgroups, prune = args
    out = []
    for h in hs:
        for (sv, tv), vs in vgroups:
            if prune and not _commutes(h[0], h[1], sv, tv):
                continue
            for v in vs:
                if is_double(h, v):
                    out.append((h, v))
    return out


def double_tables(k: int, prune: bool = True, workers: int = 1) -> tuple[list[tuple[Raw, Raw]], int]:
    pms, nodes = pm_tables(k, prune, workers)
    groups: dict = {}
    for p in pms:
        groups.setdefault((p[0], p[1]), []).append(p)
    vgroups = list(groups.items())
    jobs = [([h], vgroups, prune) for h in pms]
    pairs = [pair for chunk in _run(_double_chunk, jobs, workers) for pair in chunk]
    pairs.sort(key=lambda hv: raw_key(hv[0]) + raw_key(hv[1]))
    return pairs, nodes


# --- public entry points -----------------------------------------------------


def enumerate_pm(req: EnumerationRequest) -> EnumerationResult:
    if req.mode is not Mode.PM:
        raise ValueError("request mode must be PM")
    start = time.perf_counter()
    tables, nodes = pm_tables(req.k, req.prune, req.workers)
    if req.dedup is Dedup.UP_TO_ISO:
        tables = sorted(set(canonical_raw(r) for r in tables), key=raw_key)
    structures = None
    if req.emit is Emit.STREAM:
        structures = [to_structure(r) for r in tables]
    return EnumerationResult(len(tables), structures, time.perf_counter() - start, nodes)


def enumerate_double(req: EnumerationRequest) -> EnumerationResult:
    if req.mode is not Mode.DOUBLE:
        raise ValueError("request mode must be DOUBLE")
    start = time.perf_counter()
    pairs, nodes = double_tables(req.k, req.prune, req.workers)
    if req.dedup is Dedup.UP_TO_ISO:
        pairs = sorted(
            set(canonical_pair(h, v) for h, v in pairs), key=lambda hv: raw_key(hv[0]) + raw_key(hv[1])
        )
    structures = None
    if req.emit is Emit.STREAM:
        structures = [DoubleStructure(to_structure(h), to_structure(v)) for h, v in pairs]
    return EnumerationResult(len(pairs), structures, time.perf_counter() - start, nodes)


def run(req: EnumerationRequest) -> EnumerationResult:
    return enumerate_pm(req) if req.mode is Mode.PM else enumerate_double(req)
