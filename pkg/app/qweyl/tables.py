"""
Scalar-valued functions tabulated on a full integer box, and the q-Weyl action

    (M^beta L^alpha f)(a) = q^{beta . a} f(a + alpha)

on discrete directions. Continuous directions are not tabulated: their
variables stay symbolic in the values, M multiplies by x_var and L applies
``shift``.
"""

import csv
import io
import itertools
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, Tuple

from app.scalars import Scalar, parse_scalar, shift
from app.scalars.laurent import Q, x_gen
from app.qweyl.operators import QWeylOp

Point = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class FunctionTable:
    lo: Point
    hi: Point
    values: Dict[Point, Scalar]
    continuous: Tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise ValueError("window corners have different ranks")
        if any(l > h for l, h in zip(self.lo, self.hi)):
            raise ValueError(f"empty window {self.lo}..{self.hi}")
        missing = [p for p in self.points() if p not in self.values]
        if missing:
            raise ValueError(f"table has holes, e.g. at {missing[0]}")

    @property
    def rank(self) -> int:
        return len(self.lo)

    @property
    def total_rank(self) -> int:
        return self.rank + len(self.continuous)

    def points(self) -> Iterator[Point]:
        return itertools.product(*(range(l, h + 1) for l, h in zip(self.lo, self.hi)))

    def __getitem__(self, point: Point) -> Scalar:
        return self.values[tuple(point)]

    def length(self, direction: int) -> int:
        return self.hi[direction] - self.lo[direction] + 1

    @classmethod
    def tabulate(
        cls,
        fn: Callable[..., object],
        lo: Point,
        hi: Point,
        continuous: Tuple[int, ...] = (),
    ) -> "FunctionTable":
        lo, hi = tuple(lo), tuple(hi)
        values = {}
        for point in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
            values[point] = Scalar.coerce(fn(*point))
        return cls(lo, hi, values, tuple(continuous))

    def restrict(self, lo: Point, hi: Point) -> "FunctionTable":
        lo, hi = tuple(lo), tuple(hi)
        if any(l < sl or h > sh for l, h, sl, sh in zip(lo, hi, self.lo, self.hi)):
            raise ValueError("restriction window leaves the table")
        values = {p: self.values[p] for p in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi)))}
        return FunctionTable(lo, hi, values, self.continuous)

    def contains(self, other: "FunctionTable") -> bool:
        return all(sl <= ol and oh <= sh for sl, sh, ol, oh in zip(self.lo, self.hi, other.lo, other.hi))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())


def _check_compatible(op: QWeylOp, table: FunctionTable) -> None:
    if op.rank != table.total_rank or op.continuous != table.continuous:
        raise ValueError(
            f"operator of rank {op.rank} (continuous {op.continuous}) cannot act on a table "
            f"of rank {table.rank} with continuous {table.continuous}"
        )


def apply(op: QWeylOp, table: FunctionTable) -> FunctionTable:
    """Apply op; the output window shrinks so every shift stays inside the table."""
    _check_compatible(op, table)
    d = table.rank
    reach = [max((alpha[j] for alpha in op.l_support()), default=0) for j in range(d)]
    hi = tuple(h - r for h, r in zip(table.hi, reach))
    if any(h < l for h, l in zip(hi, table.lo)):
        raise ValueError(f"window {table.lo}..{table.hi} too small for an operator of reach {reach}")

    values = {}
    for point in itertools.product(*(range(l, h + 1) for l, h in zip(table.lo, hi))):
        total = Scalar(0)
        for (alpha, beta), coeff in op.terms.items():
            value = table[tuple(p + a for p, a in zip(point, alpha[:d]))]
            for offset, var in enumerate(table.continuous):
                for _ in range(alpha[d + offset]):
                    value = shift(var, value)
            pairs = [(Q, sum(b * p for b, p in zip(beta[:d], point)))]
            pairs += [(x_gen(var), beta[d + k]) for k, var in enumerate(table.continuous)]
            total = total + coeff * Scalar.monomial(pairs) * value
        values[point] = total
    return FunctionTable(table.lo, hi, values, table.continuous)


def annihilates(op: QWeylOp, table: FunctionTable) -> bool:
    return apply(op, table).is_zero()


# ------------------------------------------------------------------
# CSV
# ------------------------------------------------------------------

def table_to_csv(table: FunctionTable) -> str:
    if table.continuous:
        raise ValueError("tables with continuous directions are not written as CSV")
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([f"n{j + 1}" for j in range(table.rank)] + ["value"])
    for point in table.points():
        writer.writerow(list(point) + [table[point].to_text()])
    return buffer.getvalue()


def read_table_csv(text: str) -> FunctionTable:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ValueError("empty table CSV")
    # "#" lines mark a partial sweep
    header, body = rows[0], [r for r in rows[1:] if r and not r[0].startswith("#")]
    if not header or header[-1] != "value":
        raise ValueError("table CSV needs a trailing 'value' column")
    rank = len(header) - 1
    if not body:
        raise ValueError("table CSV has no rows")
    values = {}
    for row in body:
        values[tuple(int(c) for c in row[:rank])] = parse_scalar(row[rank])
    lo = tuple(min(p[j] for p in values) for j in range(rank))
    hi = tuple(max(p[j] for p in values) for j in range(rank))
    return FunctionTable(lo, hi, values)
