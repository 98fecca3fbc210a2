"""Relational tables and database-level statistics.

Tables hold fixed-width tuples of finite 64-bit floats. Duplicate rows are
kept (bag semantics); the joined design matrix is a bag join. Tables and
databases are immutable after construction and safe for concurrent reads.
"""

import csv
import io
import math
from dataclasses import dataclass, field

from .errors import TableError


@dataclass(frozen=True)
class Table:
    name: str
    schema: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if len(set(self.schema)) != len(self.schema):
            raise TableError(f"table {self.name!r}: duplicate feature name")
        width = len(self.schema)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise TableError(
                    f"table {self.name!r}: row {i} has {len(row)} cells, expected {width}"
                )
            for col, cell in zip(self.schema, row):
                if not math.isfinite(cell):
                    raise TableError(
                        f"table {self.name!r}: non-finite value at row {i} column {col!r}"
                    )

    def __len__(self):
        return len(self.rows)

    def column(self, feature):
        """Values of one feature, in row order."""
        j = self.schema.index(feature)
        return [row[j] for row in self.rows]


def load_table(source, name, header=True):
    """Parse a CSV text stream into a Table.

    With `header`, the first record names the features; otherwise features
    are auto-named c0, c1, ... from the first data row's width.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    reader = csv.reader(source)
    records = [rec for rec in reader if rec]
    if header:
        if not records:
            raise TableError(f"table {name!r}: missing header row")
        schema = tuple(cell.strip() for cell in records[0])
        data = records[1:]
    else:
        if not records:
            raise TableError(f"table {name!r}: empty source without header")
        schema = tuple(f"c{j}" for j in range(len(records[0])))
        data = records
    rows = []
    for i, rec in enumerate(data):
        if len(rec) != len(schema):
            raise TableError(
                f"table {name!r}: ragged row {i} ({len(rec)} cells, expected {len(schema)})"
            )
        parsed = []
        for col, cell in zip(schema, rec):
            try:
                parsed.append(float(cell))
            except ValueError:
                raise TableError(
                    f"table {name!r}: non-numeric cell at row {i} column {col!r}: {cell!r}"
                ) from None
        rows.append(tuple(parsed))
    return Table(name=name, schema=schema, rows=tuple(rows))


def dump_table(table):
    """Serialize a Table back to CSV text. Round-trips through load_table."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(table.schema)
    for row in table.rows:
        writer.writerow([repr(v) for v in row])
    return out.getvalue()


@dataclass(frozen=True)
class Database:
    tables: tuple[Table, ...]
    feature_tables: dict[str, tuple[int, ...]] = field(init=False, compare=False)

    def __post_init__(self):
        if not self.tables:
            raise TableError("a database needs at least one table")
        index: dict[str, list[int]] = {}
        for i, table in enumerate(self.tables, start=1):
            for feature in table.schema:
                index.setdefault(feature, []).append(i)
        frozen = {f: tuple(ts) for f, ts in index.items()}
        object.__setattr__(self, "feature_tables", frozen)

    @property
    def m(self):
        return len(self.tables)

    @property
    def n(self):
        return max(len(t) for t in self.tables)

    @property
    def d(self):
        return len(self.feature_tables)

    @property
    def features(self):
        """All feature names, sorted."""
        return sorted(self.feature_tables)

    def table(self, i):
        """Table by 1-based index."""
        return self.tables[i - 1]


def stats(db):
    """(m, n, d): table count, max rows per table, distinct feature count."""
    return (db.m, db.n, db.d)


def active_domain(db, feature):
    """Sorted distinct values of a feature across all tables containing it."""
    if feature not in db.feature_tables:
        raise TableError(f"unknown feature {feature!r}")
    values = set()
    for i in db.feature_tables[feature]:
        values.update(db.table(i).column(feature))
    return sorted(values)
