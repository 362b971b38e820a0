from itertools import product

import pytest

from pamono.core import UNDEFINED, InvalidStructureError, Kind, PartialMonoidStructure, validate_structure
from pamono.double import (
    CLASSES,
    DoubleStructure,
    classify_cubical,
    commutation_report,
    compat_report,
    derive_cells,
    detect_one_object,
    detect_two_category,
    exchange_report,
    exchange_witnesses,
    validate_double,
)
from pamono.generators import (
    commutative_monoid_double,
    cyclic_table,
    klein_table,
    pair_double_groupoid,
    symmetric_group_table,
)
from pamono.morphism import CarrierMap, check_homomorphism


@pytest.fixture(scope="module")
def pd2():
    return pair_double_groupoid(2)


@pytest.fixture(scope="module")
def pd3():
    return pair_double_groupoid(3)


@pytest.fixture
def z2_double():
    return commutative_monoid_double(cyclic_table(2))


@pytest.fixture
def point():
    p = PartialMonoidStructure(1, (0,), (0,), ((0,),))
    return DoubleStructure(p, p)


def test_pair_double_groupoid_is_valid(pd2):
    assert pd2.n == 16
    assert validate_double(pd2).valid


def test_commutative_monoids_double(z2_double):
    assert validate_double(z2_double).valid
    assert validate_double(commutative_monoid_double(klein_table())).valid


def brute_exchange_failures(table):
    n = len(table)
    return [
        (x, y, w, z)
        for x, y, w, z in product(range(n), repeat=4)
        if table[table[x][w]][table[y][z]] != table[table[x][y]][table[w][z]]
    ]


def test_s3_double_fails_exchange():
    table = symmetric_group_table(3)
    report = validate_double(commutative_monoid_double(table))
    assert report.kinds() == {Kind.EXCHANGE}
    found = [v.witnesses for v in report]
    assert found == brute_exchange_failures(table)
    x, y, w, z = found[0]
    assert table[y][w] != table[w][y]


@pytest.fixture
def noncommuting():
    # h: Z2 on {0, 1} plus an isolated point 2; v: {1, 2} is a monoid with unit 2
    h = PartialMonoidStructure(3, (0, 0, 2), (0, 0, 2), ((0, 1, -1), (1, 0, -1), (-1, -1, 2)))
    v = PartialMonoidStructure(3, (0, 2, 2), (0, 2, 2), ((0, -1, -1), (-1, 1, 1), (-1, 1, 2)))
    return DoubleStructure(h, v)


def test_identity_commutation_failure_is_reported(noncommuting):
    report = validate_double(noncommuting)
    hits = [v for v in report if v.kind is Kind.ID_COMMUTE and v.rule == "s_h s_v = s_v s_h"]
    assert [v.witnesses for v in hits] == [(1,)]
    assert hits[0].detail == (2, 0)
    assert hits[0].where == "h,v"


def test_classify_examples(pd3, z2_double):
    assert "ONE" in classify_cubical(pd3)
    assert classify_cubical(z2_double).satisfied == frozenset(CLASSES)


def test_classify_reports_first_failure(noncommuting):
    d = noncommuting
    assert validate_structure(d.h).valid and validate_structure(d.v).valid
    cls = classify_cubical(d)
    assert "ONE" not in cls
    rule, x = cls.failures["ONE"]
    assert x == 1 and rule.startswith("s_h(s_v)")


def test_classify_requires_partial_monoids():
    bad = PartialMonoidStructure(2, (1, 0), (0, 1), ((-1, -1), (-1, -1)))
    ok = PartialMonoidStructure(2, (0, 1), (0, 1), ((0, -1), (-1, 1)))
    with pytest.raises(InvalidStructureError):
        classify_cubical(DoubleStructure(bad, ok))


def fixed(m):
    return {x for x, y in enumerate(m) if x == y}


@pytest.mark.parametrize("m", [1, 2, 3])
def test_cells_of_pair_double_groupoid(m):
    d = pair_double_groupoid(m)
    cells = derive_cells(d)
    assert cells.report.valid
    assert (d.n, len(cells.d1v), len(cells.d1h), len(cells.d0)) == (m**4, m**2, m**2, m)
    # direct fixed-point counts
    assert cells.d1v == fixed(d.h.s) and cells.d1h == fixed(d.v.s)
    assert cells.d0 == fixed(d.h.s) & fixed(d.h.t) & fixed(d.v.s) & fixed(d.v.t)
    # vertical 1-cells have degenerate horizontal edges; objects are constant squares
    for x in cells.d1v:
        a, b, c, dd = d.names[x]
        assert (a, c) == (b, dd)
    for x in cells.d1h:
        a, b, c, dd = d.names[x]
        assert (a, b) == (c, dd)
    for x in cells.d0:
        assert len(set(d.names[x])) == 1


def test_cells_of_degenerate_structures(z2_double, point):
    cells = derive_cells(z2_double)
    assert cells.d1v == cells.d1h == cells.d0 == {0}
    cells = derive_cells(point)
    assert cells.d1v == cells.d1h == cells.d0 == {0}


def test_exchange_witnesses_examples(point, z2_double):
    assert exchange_witnesses(point) == [(0, 0, 0, 0, 0, 0)]
    quads = exchange_witnesses(z2_double)
    assert len(quads) == 16
    assert all(q[4] == q[5] for q in quads)
    assert [q[:4] for q in quads] == list(product(range(2), repeat=4))


def test_two_category_detection(pd2, z2_double, point):
    for ordering in (("h", "v"), ("v", "h")):
        assert detect_two_category(z2_double, ordering).valid
        assert detect_two_category(point, ordering).valid
    report = detect_two_category(pd2, ("v", "h"))
    assert Kind.TWO_CATEGORY in report.kinds()
    # a square with four distinct... corners: s_v keeps the top edge, s_v s_h collapses it
    x = pd2.names.index("0101")
    hit = {v.witnesses[0] for v in report if v.rule == "s_v = s_v s_h"}
    assert x in hit
    with pytest.raises(ValueError):
        detect_two_category(pd2, ("h", "h"))


def test_one_object_detection(pd2, z2_double, point):
    assert detect_one_object(z2_double).valid
    assert detect_one_object(point).valid
    report = detect_one_object(pd2)
    (count,) = [v for v in report if v.rule == "|D0| = 1"]
    assert count.detail == (2, 1)
    assert {pd2.names[x] for x in count.witnesses} == {"0000", "1111"}


# --- properties over the enumerated population ----------------------------


def test_population_round_trip(doubles_by_size):
    for population in doubles_by_size.values():
        for d in population:
            assert validate_double(d).valid
            assert "ONE" in classify_cubical(d)
            assert derive_cells(d).report.valid


def test_definedness_propagation(doubles_by_size):
    for population in doubles_by_size.values():
        for d in population:
            h, v = d.h.op, d.v.op
            expected = [
                (x, y, w, z)
                for x, y, w, z in product(range(d.n), repeat=4)
                if UNDEFINED not in (h[x][y], h[w][z], v[x][w], v[y][z])
            ]
            got = exchange_witnesses(d)
            assert [q[:4] for q in got] == expected
            assert all(q[4] == q[5] != UNDEFINED for q in got)


def test_eckmann_hilton(doubles_by_size):
    seen = 0
    for population in doubles_by_size.values():
        for d in population:
            maps = {d.h.s, d.h.t, d.v.s, d.v.t}
            if len(maps) == 1 and len(set(next(iter(maps)))) == 1:
                seen += 1
                n = d.n
                assert d.h.op == d.v.op
                assert all(d.h.op[x][y] != UNDEFINED for x in range(n) for y in range(n))
                assert all(d.h.op[x][y] == d.h.op[y][x] for x in range(n) for y in range(n))
    assert seen > 0


def pairs_structure(a, b):
    """``b``-structure on the ``a``-composable pairs ``(x, z)``, componentwise."""
    pairs = [(x, z) for x in range(a.n) for z in range(a.n) if a.op[x][z] != UNDEFINED]
    index = {q: i for i, q in enumerate(pairs)}

    def pick(m):
        return lambda i: index.get((m[pairs[i][0]], m[pairs[i][1]]))

    def mul(i, j):
        (x, z), (w, y) = pairs[i], pairs[j]
        p, q = b.op[x][w], b.op[z][y]
        if UNDEFINED in (p, q):
            return None
        return index.get((p, q), -2)

    s = [pick(b.s)(i) for i in range(len(pairs))]
    t = [pick(b.t)(i) for i in range(len(pairs))]
    op = [[mul(i, j) for j in range(len(pairs))] for i in range(len(pairs))]
    return pairs, s, t, op


def test_composition_as_homomorphism_adds_nothing(pms_by_size):
    """On pairs satisfying the identity and compatibility conditions, checking
    "composition is a homomorphism" literally on the composable-pairs
    structure finds exactly the exchange failures and nothing else."""
    population = pms_by_size[1] + pms_by_size[2] + pms_by_size[3]
    checked = exchange_failures = 0
    for a in population:
        for b in population:
            if a.n != b.n:
                continue
            if commutation_report(a, b, "a", "b") or compat_report(a, b, "a", "b"):
                continue
            pairs, s, t, op = pairs_structure(a, b)
            # identities and composites stay inside the pairs set
            assert None not in s and None not in t
            assert all(c != -2 for row in op for c in row)
            op = [[UNDEFINED if c is None else c for c in row] for row in op]
            domain = PartialMonoidStructure(len(pairs), s, t, op)
            assert validate_structure(domain).valid
            f = CarrierMap(len(pairs), a.n, tuple(a.op[x][z] for x, z in pairs))
            literal = check_homomorphism(domain, b, f)
            assert literal.kinds() <= {Kind.HOM_COMP}
            flat = exchange_report(a, b, "a", "b")
            assert bool(literal) == bool(flat)
            checked += 1
            exchange_failures += bool(flat)
    assert checked > 100 and exchange_failures > 0


def test_validator_agrees_with_oracle_on_all_small_pairs(pms_by_size):
    from oracle import naive

    def raw(p):
        return p.s, p.t, tuple(None if v < 0 else v for row in p.op for v in row)

    agree = valid = 0
    for population in pms_by_size.values():
        for h in population:
            for v in population:
                ours = validate_double(DoubleStructure(h, v)).valid
                assert ours == naive.is_double(raw(h), raw(v))
                agree += 1
                valid += ours
    assert agree == 1 + 25 + 52 * 52 and valid == 1 + 13 + 310
