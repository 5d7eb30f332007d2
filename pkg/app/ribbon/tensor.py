"""Super tensor products: Koszul-signed Kronecker product and the super flip."""

from dataclasses import dataclass
from typing import Tuple

from app.superalg.graded_matrix import GradedMatrix
from app.superalg.typical_module import TypicalColor, parity_vector


@dataclass(frozen=True)
class TensorFactor:
    color: TypicalColor
    up: bool = True

    @property
    def dim(self) -> int:
        return self.color.dim

    @property
    def parity(self) -> Tuple[int, ...]:
        # the dual basis inherits the parities of V
        return parity_vector(self.color)

    def dual(self) -> "TensorFactor":
        return TensorFactor(self.color, not self.up)

    def __str__(self) -> str:
        return f"{self.color}{'' if self.up else '*'}"


@dataclass(frozen=True)
class TensorSpace:
    factors: Tuple[TensorFactor, ...]

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    @property
    def dim(self) -> int:
        total = 1
        for d in self.dims:
            total *= d
        return total

    def flat_index(self, multi: Tuple[int, ...]) -> int:
        if len(multi) != len(self.factors):
            raise ValueError("multi-index length does not match the number of factors")
        flat = 0
        for idx, d in zip(multi, self.dims):
            if not 0 <= idx < d:
                raise IndexError(f"index {idx} outside factor of dimension {d}")
            flat = flat * d + idx
        return flat

    def multi_index(self, flat: int) -> Tuple[int, ...]:
        if not 0 <= flat < self.dim:
            raise IndexError(f"flat index {flat} outside space of dimension {self.dim}")
        out = []
        for d in reversed(self.dims):
            flat, idx = divmod(flat, d)
            out.append(idx)
        return tuple(reversed(out))

    def parity(self) -> Tuple[int, ...]:
        vector = (0,)
        for factor in self.factors:
            vector = tuple((p + r) % 2 for p in vector for r in factor.parity)
        return vector


def tensor_parity(left: Tuple[int, ...], right: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple((p + r) % 2 for p in left for r in right)


def super_kron(a: GradedMatrix, b: GradedMatrix) -> GradedMatrix:
    """(a (x) b)(v (x) w) = (-1)^{|b||v|} av (x) bw, as a matrix."""
    p_b = b.degree()
    if p_b is None:
        raise ValueError("super_kron needs a parity-homogeneous right factor")
    rows_b, cols_b = b.rows, b.cols
    columns = {}
    for j1, col_a in a.columns.items():
        negate = bool(p_b and a.col_parity[j1])
        for j2, col_b in b.columns.items():
            col = {}
            for i1, x in col_a.items():
                for i2, y in col_b.items():
                    value = x * y
                    col[i1 * rows_b + i2] = -value if negate else value
            columns[j1 * cols_b + j2] = col
    return GradedMatrix(
        tensor_parity(a.row_parity, b.row_parity),
        tensor_parity(a.col_parity, b.col_parity),
        columns,
    )


def flip(parity_a: Tuple[int, ...], parity_b: Tuple[int, ...]) -> GradedMatrix:
    """tau: V (x) W -> W (x) V, v (x) w -> (-1)^{|v||w|} w (x) v."""
    da, db = len(parity_a), len(parity_b)
    entries = []
    for j1 in range(da):
        for j2 in range(db):
            sign = -1 if parity_a[j1] and parity_b[j2] else 1
            entries.append((j2 * da + j1, j1 * db + j2, sign))
    return GradedMatrix.from_entries(
        tensor_parity(parity_b, parity_a), tensor_parity(parity_a, parity_b), entries
    )
