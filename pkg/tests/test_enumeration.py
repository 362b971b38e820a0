import json
from itertools import permutations
from pathlib import Path

import pytest

from oracle import naive
from pamono.core import validate_structure
from pamono.double import derive_cells, validate_double
from pamono.enumeration import (
    CAP_ENV,
    CapExceeded,
    Dedup,
    Emit,
    EnumerationRequest,
    Mode,
    enumerate_double,
    enumerate_pm,
    monoid_tables,
    pm_tables,
    raw_key,
    run,
    to_structure,
)
from pamono.morphism import are_isomorphic
from pamono.textio import serialize_many

RESULTS = Path(__file__).parent.parent / "results" / "enumeration_counts.json"


def flat(p):
    return tuple(p.s), tuple(p.t), tuple(v for row in p.op for v in row)


def test_single_element():
    assert enumerate_pm(EnumerationRequest(1)).count == 1
    assert enumerate_double(EnumerationRequest(1, mode=Mode.DOUBLE)).count == 1


def test_pm_matches_oracle():
    for k in (1, 2):
        ours = {flat(p) for p in enumerate_pm(EnumerationRequest(k)).structures}
        theirs = {naive.canonical(x) for x in naive.all_partial_monoids(k)}
        assert ours == theirs


def test_double_matches_oracle():
    for k in (1, 2):
        ours = {(flat(d.h), flat(d.v)) for d in enumerate_double(EnumerationRequest(k, mode=Mode.DOUBLE)).structures}
        theirs = {(naive.canonical(h), naive.canonical(v)) for h, v in naive.all_double_structures(k)}
        assert ours == theirs


def relabel(p, perm):
    s, t, op = flat(p)
    n = len(s)
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    new_op = []
    for x in range(n):
        for y in range(n):
            v = op[inv[x] * n + inv[y]]
            new_op.append(-1 if v < 0 else perm[v])
    return tuple(perm[s[inv[x]]] for x in range(n)), tuple(perm[t[inv[x]]] for x in range(n)), tuple(new_op)


@pytest.mark.parametrize("k", [2, 3])
def test_up_to_iso_counts_orbits(k):
    labelled = [flat(p) for p in enumerate_pm(EnumerationRequest(k)).structures]
    remaining = set(labelled)
    orbits = 0
    while remaining:
        first = next(iter(remaining))
        op = tuple(tuple(first[2][i * k:(i + 1) * k]) for i in range(k))
        p = to_structure((first[0], first[1], op))
        remaining -= {relabel(p, perm) for perm in permutations(range(k))}
        orbits += 1
    assert enumerate_pm(EnumerationRequest(k, dedup=Dedup.UP_TO_ISO)).count == orbits


def test_up_to_iso_representatives_are_pairwise_distinct():
    reps = enumerate_pm(EnumerationRequest(3, dedup=Dedup.UP_TO_ISO)).structures
    for i, a in enumerate(reps):
        for b in reps[i + 1:]:
            assert not are_isomorphic(a, b)[0]


def test_streams_are_in_canonical_order():
    for k in (1, 2, 3):
        stream = enumerate_pm(EnumerationRequest(k)).structures
        keys = [raw_key((p.s, p.t, p.op)) for p in stream]
        assert keys == sorted(keys) and len(set(keys)) == len(keys)


# unpruned search at k = 4 fills 4**16 tables for constant (s, t); too slow
@pytest.mark.parametrize("k", [1, 2, 3])
def test_pruning_never_changes_output(k):
    pruned, pruned_nodes = pm_tables(k, prune=True)
    plain, plain_nodes = pm_tables(k, prune=False)
    assert pruned == plain
    assert pruned_nodes <= plain_nodes


def test_double_pruning_never_changes_output():
    for k in (1, 2, 3):
        a = enumerate_double(EnumerationRequest(k, mode=Mode.DOUBLE, prune=True))
        b = enumerate_double(EnumerationRequest(k, mode=Mode.DOUBLE, prune=False))
        assert a.structures == b.structures


def test_worker_count_does_not_change_stream():
    for mode, k in ((Mode.PM, 4), (Mode.DOUBLE, 3)):
        one = run(EnumerationRequest(k, mode=mode, workers=1)).structures
        two = run(EnumerationRequest(k, mode=mode, workers=2)).structures
        assert serialize_many(one) == serialize_many(two)


def test_count_only_skips_structures():
    res = enumerate_pm(EnumerationRequest(3, emit=Emit.COUNT_ONLY))
    assert res.structures is None and res.count == len(enumerate_pm(EnumerationRequest(3)).structures)


def test_every_emitted_structure_validates(pms_by_size, doubles_by_size):
    for population in pms_by_size.values():
        assert all(validate_structure(p).valid for p in population)
    for population in doubles_by_size.values():
        for d in population:
            assert validate_double(d).valid and derive_cells(d).report.valid


def test_monoid_tables_are_monoids():
    for k in (1, 2, 3):
        for table in monoid_tables(k):
            units = [e for e in range(k) if all(table[e][x] == x == table[x][e] for x in range(k))]
            assert len(units) == 1
            assert all(
                table[a][table[b][c]] == table[table[a][b]][c]
                for a in range(k) for b in range(k) for c in range(k)
            )


def test_counts_match_committed_results():
    recorded = json.loads(RESULTS.read_text())
    for k, count in recorded["pm_labelled"].items():
        assert enumerate_pm(EnumerationRequest(int(k), emit=Emit.COUNT_ONLY)).count == count
    for k, count in recorded["pm_up_to_iso"].items():
        req = EnumerationRequest(int(k), dedup=Dedup.UP_TO_ISO, emit=Emit.COUNT_ONLY)
        assert enumerate_pm(req).count == count
    for k, count in recorded["double_labelled"].items():
        assert enumerate_double(EnumerationRequest(int(k), mode=Mode.DOUBLE, emit=Emit.COUNT_ONLY)).count == count


def test_caps(monkeypatch):
    with pytest.raises(CapExceeded):
        EnumerationRequest(6)
    with pytest.raises(CapExceeded):
        EnumerationRequest(4, mode=Mode.DOUBLE)
    monkeypatch.setenv(CAP_ENV, "4")
    EnumerationRequest(4, mode=Mode.DOUBLE)
    with pytest.raises(ValueError):
        EnumerationRequest(0)


def test_mode_mismatch():
    with pytest.raises(ValueError):
        enumerate_pm(EnumerationRequest(1, mode=Mode.DOUBLE))
    with pytest.raises(ValueError):
        enumerate_double(EnumerationRequest(1))


def test_double_iso_count_matches_oracle_orbits():
    pairs = {(naive.canonical(h), naive.canonical(v)) for h, v in naive.all_double_structures(2)}
    swap = (1, 0)

    def moved(raw):
        s, t, op = raw
        return (
            tuple(swap[s[swap[x]]] for x in range(2)),
            tuple(swap[t[swap[x]]] for x in range(2)),
            tuple(-1 if op[swap[x] * 2 + swap[y]] < 0 else swap[op[swap[x] * 2 + swap[y]]] for x in range(2) for y in range(2)),
        )

    orbits = {frozenset({(h, v), (moved(h), moved(v))}) for h, v in pairs}
    req = EnumerationRequest(2, mode=Mode.DOUBLE, dedup=Dedup.UP_TO_ISO)
    assert enumerate_double(req).count == len(orbits)
    recorded = json.loads(RESULTS.read_text())
    for k, count in recorded["double_up_to_iso"].items():
        req = EnumerationRequest(int(k), mode=Mode.DOUBLE, dedup=Dedup.UP_TO_ISO, emit=Emit.COUNT_ONLY)
        assert enumerate_double(req).count == count
