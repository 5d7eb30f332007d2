"""Per-color and per-color-pair ribbon data, built lazily and shared."""

import threading
from typing import Dict, List, Tuple

from app.scalars import Scalar
from app.superalg.graded_matrix import GradedMatrix
from app.superalg.typical_module import TypicalColor
from app.ribbon.pivotal import DualityMaps, duality_maps, modified_dim, twist_scalar
from app.ribbon.r_matrix import braiding, braiding_inverse, r_inverse, r_matrix
from app.utils.logger import get_logger

logger = get_logger(__name__)

PairTable = Dict[Tuple[int, int], List[Tuple[Tuple[int, int], Scalar]]]


def _pair_table(matrix: GradedMatrix, in_right: int, out_right: int) -> PairTable:
    """Column (j1, j2) -> [((i1, i2), value)] for a map between two-factor spaces."""
    table: PairTable = {}
    for j, col in matrix.columns.items():
        key = divmod(j, in_right)
        table[key] = [(divmod(i, out_right), v) for i, v in sorted(col.items())]
    return table


class RibbonData:
    """
    Cache of R, R^-1, braidings, duality maps, twists and modified dimensions.

    Entries are immutable once built; the lock only guards cache insertion.
    """

    def __init__(self):
        self._lock = threading.RLock()
        self._crossings: Dict[Tuple[TypicalColor, TypicalColor, int], PairTable] = {}
        self._cups: Dict[Tuple[TypicalColor, str], List[Tuple[Tuple[int, int], Scalar]]] = {}
        self._caps: Dict[Tuple[TypicalColor, str], Dict[Tuple[int, int], Scalar]] = {}

    # ---- matrices ----

    def r_matrix(self, a: TypicalColor, b: TypicalColor) -> GradedMatrix:
        return r_matrix(a, b)

    def r_inverse(self, a: TypicalColor, b: TypicalColor) -> GradedMatrix:
        return r_inverse(a, b)

    def braiding(self, a: TypicalColor, b: TypicalColor) -> GradedMatrix:
        return braiding(a, b)

    def braiding_inverse(self, a: TypicalColor, b: TypicalColor) -> GradedMatrix:
        return braiding_inverse(a, b)

    def duality(self, color: TypicalColor) -> DualityMaps:
        return duality_maps(color)

    def twist(self, color: TypicalColor) -> Scalar:
        return twist_scalar(color)

    def modified_dim(self, color: TypicalColor) -> Scalar:
        return modified_dim(color)

    # ---- sparse tables for slice evaluation ----

    def crossing_table(self, left: TypicalColor, right: TypicalColor, sign: int) -> PairTable:
        """Map V_left (x) V_right -> V_right (x) V_left for a crossing of the given sign."""
        key = (left, right, sign)
        with self._lock:
            if key not in self._crossings:
                if sign > 0:
                    matrix = self.braiding(left, right)
                else:
                    matrix = self.braiding_inverse(right, left)
                self._crossings[key] = _pair_table(matrix, right.dim, left.dim)
                logger.debug(
                    "Crossing table cached",
                    extra={"left_a1": left.a1, "right_a1": right.a1, "sign": sign},
                )
            return self._crossings[key]

    def cup_vector(self, color: TypicalColor, kind: str) -> List[Tuple[Tuple[int, int], Scalar]]:
        key = (color, kind)
        with self._lock:
            if key not in self._cups:
                maps = self.duality(color)
                matrix = maps.coev_right if kind == "right" else maps.coev_left
                self._cups[key] = [(divmod(i, color.dim), v) for i, v in sorted(matrix.column(0).items())]
            return self._cups[key]

    def cap_covector(self, color: TypicalColor, kind: str) -> Dict[Tuple[int, int], Scalar]:
        key = (color, kind)
        with self._lock:
            if key not in self._caps:
                maps = self.duality(color)
                matrix = maps.ev_right if kind == "right" else maps.ev_left
                self._caps[key] = {divmod(j, color.dim): col[0] for j, col in matrix.columns.items()}
            return self._caps[key]
