"""Regenerate the structure documents under tests/fixtures."""
from pathlib import Path

from pamono.core import from_rows
from pamono.generators import (
    category,
    category_to_pm,
    commutative_monoid_double,
    cyclic_table,
    interval_category,
    klein_table,
    ncube_pair_groupoid,
    pair_double_groupoid,
    pair_groupoid,
    symmetric_group_table,
)
from pamono.textio import serialize, serialize_category

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def monoid_table_doc(table, names):
    lines = ["pamono 1", f"carrier: {len(table)}", "names: " + " ".join(names), "op:"]
    for x, row in enumerate(table):
        for y, z in enumerate(row):
            lines.append(f"{names[x]} {names[y]} = {names[z]}")
    return "\n".join(lines) + "\n"


def main():
    docs = {
        "z2.pm": serialize(from_rows([0, 0], [0, 0], [[0, 1], [1, 0]], names=("a", "b"))),
        "idempotent_monoid.pm": serialize(from_rows([0, 0], [0, 0], [[0, 1], [1, 1]], names=("e", "a"))),
        "interval.pm": serialize(category_to_pm(interval_category())),
        "pair_groupoid_3.pm": serialize(pair_groupoid(3)),
        "not_idempotent.pm": serialize(from_rows([1, 0], [0, 1], [[None, None], [None, None]], names=("a", "b"))),
        "pair_double_2.pm": serialize(pair_double_groupoid(2)),
        "z2_double.pm": serialize(commutative_monoid_double(cyclic_table(2))),
        "klein_double.pm": serialize(commutative_monoid_double(klein_table())),
        "s3_double.pm": serialize(commutative_monoid_double(symmetric_group_table(3))),
        "cube_1_3.pm": serialize(ncube_pair_groupoid(1, 3)),
        "cube_2_3.pm": serialize(ncube_pair_groupoid(2, 3)),
        "s3.table": monoid_table_doc(symmetric_group_table(3), [f"p{i}" for i in range(6)]),
        "z3.table": monoid_table_doc(cyclic_table(3), ["0", "1", "2"]),
        "interval.cat": serialize_category(interval_category()),
        "parallel.cat": serialize_category(category(("A", "B"), {"f": ("A", "B"), "g": ("A", "B")})),
    }
    OUT.mkdir(parents=True, exist_ok=True)
    for name, text in docs.items():
        (OUT / name).write_text(text)
        print(f"wrote {name} ({len(text.splitlines())} lines)")


if __name__ == "__main__":
    main()
