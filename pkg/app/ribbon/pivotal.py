"""
Pivotal structure, twist and dimensions of typical modules.

    coev_right: 1 -> V (x) V*,  1 |-> sum v_i (x) v_i*
    ev_right:   V* (x) V -> 1,  f (x) x |-> f(x)
    coev_left:  1 -> V* (x) V,  1 |-> sum (-1)^{|v_i|} v_i* (x) q^{2 h2} v_i
    ev_left:    V (x) V* -> 1,  x (x) f |-> (-1)^{|x||f|} f(q^{-2 h2} x)
"""

from dataclasses import dataclass
from functools import lru_cache

from app.scalars import Scalar, qbracket
from app.scalars.laurent import Q, x_gen, z_gen
from app.scalars.qnumbers import a2
from app.superalg.graded_matrix import GradedMatrix
from app.superalg.typical_module import TypicalColor, parity_vector, specialize_a2, weight_table
from app.ribbon.r_matrix import braiding
from app.ribbon.tensor import super_kron, tensor_parity

UNIT_PARITY = (0,)


@dataclass(frozen=True, eq=False)
class DualityMaps:
    coev_right: GradedMatrix
    ev_right: GradedMatrix
    coev_left: GradedMatrix
    ev_left: GradedMatrix


def _pivot(color: TypicalColor, index: int, sign: int) -> Scalar:
    """Eigenvalue of q^{2 sign h2} on w_index."""
    offset = weight_table(color).h2_offset[index]
    pivot = Scalar.monomial([(Q, 2 * sign * offset), (x_gen(color.var), 2 * sign)])
    return specialize_a2(pivot, color)


@lru_cache(maxsize=None)
def duality_maps(color: TypicalColor) -> DualityMaps:
    p = parity_vector(color)
    n = len(p)
    pair = tensor_parity(p, p)
    diagonal = [i * n + i for i in range(n)]

    coev_right = GradedMatrix.from_entries(pair, UNIT_PARITY, ((d, 0, 1) for d in diagonal))
    ev_right = GradedMatrix.from_entries(UNIT_PARITY, pair, ((0, d, 1) for d in diagonal))

    coev_left_entries = []
    ev_left_entries = []
    for i, d in enumerate(diagonal):
        sign = -1 if p[i] else 1
        coev_left_entries.append((d, 0, _pivot(color, i, 1) * sign))
        ev_left_entries.append((0, d, _pivot(color, i, -1) * sign))
    coev_left = GradedMatrix.from_entries(pair, UNIT_PARITY, coev_left_entries)
    ev_left = GradedMatrix.from_entries(UNIT_PARITY, pair, ev_left_entries)
    return DualityMaps(coev_right, ev_right, coev_left, ev_left)


def qdim(color: TypicalColor) -> Scalar:
    """ev_left o coev_right, the quantum dimension (zero for typical modules)."""
    maps = duality_maps(color)
    return (maps.ev_left @ maps.coev_right).entry(0, 0)


def twist_scalar(color: TypicalColor) -> Scalar:
    """theta = q^{-2 a2 (a1 + a2 + 1)} = z^-2 x^{-2(a1+1)}."""
    theta = Scalar.monomial(
        [(z_gen(color.var, color.var), -2), (x_gen(color.var), -2 * (color.a1 + 1))]
    )
    return specialize_a2(theta, color)


def dual_twist_scalar(color: TypicalColor) -> Scalar:
    """theta on V*; the dual has highest weight (a1, -a1-a2-1) and the same twist."""
    return twist_scalar(color)


def twist_matrix(color: TypicalColor) -> GradedMatrix:
    """(Id (x) ev_left)(c_{V,V} (x) Id)(Id (x) coev_right) on V."""
    maps = duality_maps(color)
    identity = GradedMatrix.identity(parity_vector(color))
    grow = super_kron(identity, maps.coev_right)
    cross = super_kron(braiding(color, color), identity)
    close = super_kron(identity, maps.ev_left)
    return close @ cross @ grow


def modified_dim(color: TypicalColor) -> Scalar:
    """d = {a1+1} / ({1} {a2} {a2+a1+1})."""
    numerator = qbracket(color.a1 + 1)
    denominator = qbracket(1) * qbracket(a2(color.var)) * qbracket(a2(color.var, color.a1 + 1))
    return specialize_a2(numerator / denominator, color)
