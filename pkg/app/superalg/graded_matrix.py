"""
Sparse Z2-graded matrices of Scalars.

Storage is column-major: ``columns[j][i]`` is the nonzero entry in row i of
column j. Empty columns and zero entries are never stored.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple

from app.scalars import ONE, ZERO, Scalar, specialize

Columns = Dict[int, Dict[int, Scalar]]


def _clean(columns: Mapping[int, Mapping[int, Scalar]]) -> Columns:
    out: Columns = {}
    for j, col in columns.items():
        kept = {i: v for i, v in col.items() if not v.is_zero()}
        if kept:
            out[j] = kept
    return out


@dataclass(frozen=True, eq=False)
class GradedMatrix:
    row_parity: Tuple[int, ...]
    col_parity: Tuple[int, ...]
    columns: Columns

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_entries(
        cls,
        row_parity: Iterable[int],
        col_parity: Iterable[int],
        entries: Iterable[Tuple[int, int, object]],
    ) -> "GradedMatrix":
        row_parity, col_parity = tuple(row_parity), tuple(col_parity)
        columns: Columns = {}
        for i, j, value in entries:
            if not (0 <= i < len(row_parity) and 0 <= j < len(col_parity)):
                raise IndexError(f"entry ({i},{j}) outside {len(row_parity)}x{len(col_parity)}")
            value = Scalar.coerce(value)
            col = columns.setdefault(j, {})
            col[i] = col[i] + value if i in col else value
        return cls(row_parity, col_parity, _clean(columns))

    @classmethod
    def identity(cls, parity: Iterable[int]) -> "GradedMatrix":
        parity = tuple(parity)
        return cls(parity, parity, {j: {j: ONE} for j in range(len(parity))})

    @classmethod
    def zero(cls, row_parity: Iterable[int], col_parity: Iterable[int]) -> "GradedMatrix":
        return cls(tuple(row_parity), tuple(col_parity), {})

    @classmethod
    def diagonal(cls, parity: Iterable[int], values: Iterable[object]) -> "GradedMatrix":
        parity = tuple(parity)
        return cls.from_entries(parity, parity, ((j, j, v) for j, v in enumerate(values)))

    # ------------------------------------------------------------------
    # Shape and access
    # ------------------------------------------------------------------

    @property
    def rows(self) -> int:
        return len(self.row_parity)

    @property
    def cols(self) -> int:
        return len(self.col_parity)

    def entry(self, i: int, j: int) -> Scalar:
        return self.columns.get(j, {}).get(i, ZERO)

    def column(self, j: int) -> Dict[int, Scalar]:
        return self.columns.get(j, {})

    def entries(self) -> Iterator[Tuple[int, int, Scalar]]:
        for j in sorted(self.columns):
            col = self.columns[j]
            for i in sorted(col):
                yield i, j, col[i]

    def nnz(self) -> int:
        return sum(len(col) for col in self.columns.values())

    def is_zero(self) -> bool:
        return not self.columns

    # ------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out: Columns = {}
        for j, col in other.columns.items():
            acc: Dict[int, Scalar] = {}
            for k, v in col.items():
                left = self.columns.get(k)
                if not left:
                    continue
                for i, w in left.items():
                    term = w * v
                    acc[i] = acc[i] + term if i in acc else term
            kept = {i: s for i, s in acc.items() if not s.is_zero()}
            if kept:
                out[j] = kept
        return GradedMatrix(self.row_parity, other.col_parity, out)

    def _check_same_shape(self, other: "GradedMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        self._check_same_shape(other)
        out: Columns = {j: dict(col) for j, col in self.columns.items()}
        for j, col in other.columns.items():
            target = out.setdefault(j, {})
            for i, v in col.items():
                target[i] = target[i] + v if i in target else v
        return GradedMatrix(self.row_parity, self.col_parity, _clean(out))

    def __neg__(self) -> "GradedMatrix":
        return self.map_entries(lambda v: -v)

    def __sub__(self, other: "GradedMatrix") -> "GradedMatrix":
        return self + (-other)

    def scale(self, factor) -> "GradedMatrix":
        factor = Scalar.coerce(factor)
        if factor.is_zero():
            return GradedMatrix.zero(self.row_parity, self.col_parity)
        return self.map_entries(lambda v: v * factor)

    def power(self, n: int) -> "GradedMatrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        result = GradedMatrix.identity(self.col_parity)
        for _ in range(n):
            result = result @ self
        return result

    def transpose(self) -> "GradedMatrix":
        out: Columns = {}
        for i, j, v in self.entries():
            out.setdefault(i, {})[j] = v
        return GradedMatrix(self.col_parity, self.row_parity, out)

    def map_entries(self, fn: Callable[[Scalar], Scalar]) -> "GradedMatrix":
        out = {j: {i: fn(v) for i, v in col.items()} for j, col in self.columns.items()}
        return GradedMatrix(self.row_parity, self.col_parity, _clean(out))

    def specialize(self, assignment: Mapping) -> "GradedMatrix":
        return self.map_entries(lambda v: specialize(v, assignment))

    def gens(self) -> set:
        found = set()
        for _, _, v in self.entries():
            found |= v.gens()
        return found

    # ------------------------------------------------------------------
    # Grading
    # ------------------------------------------------------------------

    def degree(self) -> Optional[int]:
        """Parity of a homogeneous map; None when inhomogeneous. Zero is even."""
        found = None
        for i, j, _ in self.entries():
            p = (self.row_parity[i] - self.col_parity[j]) % 2
            if found is None:
                found = p
            elif found != p:
                return None
        return 0 if found is None else found

    # ------------------------------------------------------------------
    # Comparison
    # ------------------------------------------------------------------

    def first_difference(self, other: "GradedMatrix") -> Optional[Tuple[int, int]]:
        self._check_same_shape(other)
        for j in sorted(set(self.columns) | set(other.columns)):
            a, b = self.columns.get(j, {}), other.columns.get(j, {})
            for i in sorted(set(a) | set(b)):
                if not a.get(i, ZERO) == b.get(i, ZERO):
                    return i, j
        return None

    def equals(self, other: "GradedMatrix") -> bool:
        return self.first_difference(other) is None

    __eq__ = equals
    __hash__ = None

    # ------------------------------------------------------------------
    # Text
    # ------------------------------------------------------------------

    def dump(self) -> str:
        """Row-major dump, one `(<row>,<col>) = <scalar>` line per nonzero entry."""
        rows: Dict[int, list] = {}
        for i, j, v in self.entries():
            rows.setdefault(i, []).append((j, v))
        lines = []
        for i in sorted(rows):
            for j, v in sorted(rows[i], key=lambda item: item[0]):
                lines.append(f"({i},{j}) = {v.to_text()}")
        return "\n".join(lines)


def supercommutator(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    """[a, b] = ab - (-1)^{|a||b|} ba for homogeneous a, b."""
    pa, pb = a.degree(), b.degree()
    if pa is None or pb is None:
        raise ValueError("supercommutator needs homogeneous matrices")
    if pa and pb:
        return a @ b + b @ a
    return a @ b - b @ a
