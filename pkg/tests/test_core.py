import pytest
from hypothesis import given, settings, strategies as st

from pamono.core import (
    UNDEFINED,
    InvalidStructureError,
    Kind,
    PartialMonoidStructure,
    StructureError,
    check_derived_properties,
    compose,
    detect_groupoid,
    from_rows,
    inverses,
    units,
    validate_structure,
)
from pamono.generators import pair_groupoid


def test_trivial_monoid_is_valid(trivial):
    assert validate_structure(trivial).valid
    assert compose(trivial, 0, 0) == 0
    assert units(trivial) == {0}


def test_z2_with_constant_unit_maps(z2):
    assert validate_structure(z2).valid
    assert compose(z2, 0, 1) == 1
    assert units(z2) == {0}


def test_transposition_s_is_not_idempotent():
    p = from_rows([1, 0], [0, 1], [[None, None], [None, None]], names=("a", "b"))
    report = validate_structure(p)
    hits = [v for v in report if v.kind is Kind.S_NOT_IDEMPOTENT]
    assert [v.witnesses for v in hits][0] == (0,)
    assert not report.valid


def test_composite_defined_off_support():
    p = from_rows([0, 1], [0, 1], [[0, 0], [None, 1]], names=("a", "b"))
    report = validate_structure(p)
    assert [v.witnesses for v in report if v.kind is Kind.DEFINEDNESS] == [(0, 1)]
    (v,) = [v for v in report if v.kind is Kind.DEFINEDNESS]
    assert v.detail == ("DEFINED", "UNDEFINED")


def test_interval_category(interval):
    # morphisms: id_A, id_B, f
    assert interval.names == ("id_A", "id_B", "f")
    assert validate_structure(interval).valid
    assert compose(interval, 0, 2) == UNDEFINED
    assert compose(interval, 1, 2) == 2
    assert units(interval) == {0, 1}
    assert check_derived_properties(interval).valid


def test_unit_and_associativity_violations():
    # s = t = const 0, but 1∘1 = 0 and 0 is not a left unit for 1
    p = from_rows([0, 0], [0, 0], [[0, 0], [1, 0]])
    kinds = validate_structure(p).kinds()
    assert Kind.LEFT_UNIT in kinds
    assert Kind.RIGHT_UNIT not in kinds


def test_non_associative_magma():
    # unit 0; 1∘1 = 2, 2∘1 = 1, 1∘2 = 2, 2∘2 = 2
    op = [[0, 1, 2], [1, 2, 2], [2, 1, 2]]
    p = from_rows([0] * 3, [0] * 3, op)
    report = validate_structure(p)
    assert report.kinds() == {Kind.ASSOCIATIVITY}
    v = report.violations[0]
    z, x, y = v.witnesses
    lhs = op[z][op[x][y]]
    rhs = op[op[z][x]][y]
    assert lhs != rhs and v.detail == (lhs, rhs)


def test_malformed_structures_rejected():
    with pytest.raises(StructureError):
        PartialMonoidStructure(2, (0, 2), (0, 1), ((0, -1), (-1, 1)))
    with pytest.raises(StructureError):
        PartialMonoidStructure(2, (0, 1), (0, 1), ((0, -1),))
    with pytest.raises(StructureError):
        PartialMonoidStructure(2, (0, 1), (0, 1), ((0, -1), (-1, 1)), ("a", "a"))


def test_units_rejects_invalid():
    p = from_rows([1, 0], [0, 1], [[None, None], [None, None]])
    with pytest.raises(InvalidStructureError) as info:
        units(p)
    assert info.value.report.kinds() >= {Kind.S_NOT_IDEMPOTENT}


def test_groupoid_detection(z2, idempotent_monoid):
    assert detect_groupoid(z2).valid
    report = detect_groupoid(idempotent_monoid)
    assert [(v.kind, v.witnesses) for v in report] == [(Kind.NO_INVERSE, (1,))]


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_pair_groupoid_inverses_by_search(m):
    p = pair_groupoid(m)
    assert validate_structure(p).valid
    assert detect_groupoid(p).valid
    # (A, B)^-1 = (B, A), found by exhaustive search over the carrier
    pairs = [(a, b) for a in range(m) for b in range(m)]
    for i, (a, b) in enumerate(pairs):
        assert inverses(p, i) == [pairs.index((b, a))]


def test_derived_properties_flag_broken_structures():
    p = from_rows([1, 0], [0, 1], [[None, None], [None, None]])
    assert check_derived_properties(p).kinds() & {Kind.DERIVED_ST, Kind.DERIVED_UNITS}


def test_derived_properties_on_enumerated(pms_by_size):
    for k, population in pms_by_size.items():
        for p in population:
            assert check_derived_properties(p).valid, p


def test_inverse_uniqueness_on_enumerated(pms_by_size):
    for population in pms_by_size.values():
        for p in population:
            assert Kind.UNIQUENESS not in detect_groupoid(p).kinds()


def test_definedness_matches_support(pms_by_size):
    for population in pms_by_size.values():
        for p in population:
            for x in range(p.n):
                for y in range(p.n):
                    assert (compose(p, x, y) == UNDEFINED) == (p.s[x] != p.t[y])


# --- random tables ---------------------------------------------------------


@st.composite
def raw_structures(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    elem = st.integers(0, n - 1)
    s = draw(st.lists(elem, min_size=n, max_size=n))
    t = draw(st.lists(elem, min_size=n, max_size=n))
    op = draw(
        st.lists(st.lists(st.integers(-1, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)
    )
    return PartialMonoidStructure(n, s, t, op)


def _slow_report(p):
    """Direct transcription of the axioms, one loop per condition."""
    n, s, t, op = p.n, p.s, p.t, p.op
    found = set()
    for x in range(n):
        if s[s[x]] != s[x]:
            found.add((Kind.S_NOT_IDEMPOTENT, (x,)))
        if t[t[x]] != t[x]:
            found.add((Kind.T_NOT_IDEMPOTENT, (x,)))
        if op[x][s[x]] != x:
            found.add((Kind.RIGHT_UNIT, (x,)))
        if op[t[x]][x] != x:
            found.add((Kind.LEFT_UNIT, (x,)))
    for x in range(n):
        for y in range(n):
            if (op[x][y] != UNDEFINED) != (s[x] == t[y]):
                found.add((Kind.DEFINEDNESS, (x, y)))
    get = lambda a, b: UNDEFINED if UNDEFINED in (a, b) else op[a][b]
    for z in range(n):
        for x in range(n):
            for y in range(n):
                if get(z, get(x, y)) != get(get(z, x), y):
                    found.add((Kind.ASSOCIATIVITY, (z, x, y)))
    return found


@settings(max_examples=300, deadline=None)
@given(raw_structures())
def test_validator_matches_direct_transcription(p):
    report = validate_structure(p)
    assert {(v.kind, v.witnesses) for v in report} == _slow_report(p)


@settings(max_examples=100, deadline=None)
@given(raw_structures())
def test_validation_is_deterministic(p):
    again = PartialMonoidStructure(p.n, p.s, p.t, p.op)
    assert validate_structure(p) == validate_structure(again)
    keys = [v.sort_key() for v in validate_structure(p)]
    assert keys == sorted(keys)


@settings(max_examples=200, deadline=None)
@given(raw_structures())
def test_valid_implies_derived(p):
    if validate_structure(p).valid:
        assert check_derived_properties(p).valid
