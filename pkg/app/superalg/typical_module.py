"""
The typical U_h(sl(2|1))-module V(a1, a2).

Basis: F1^k v_{e1,e2} for the blocks (0,0), (-1,1), (1,0), (0,1), flat
order block by block with offsets 0, a1+1, 2a1+1, 3a1+3. a2 is formal:
q^{a2} is the generator x_var.

h2 is never stored with its a2 part; ``act_h(color, 2)`` is h2 - a2*Id,
which has the same commutators. ``q_power_h`` materializes q^{c h_i}.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from app.scalars import ONE, Scalar, a2, qint, specialize
from app.scalars.laurent import Q, x_gen
from app.superalg.graded_matrix import GradedMatrix
from app.utils.logger import get_logger

logger = get_logger(__name__)

Block = Tuple[int, int]

BLOCKS: Tuple[Block, ...] = ((0, 0), (-1, 1), (1, 0), (0, 1))

# sl(2) highest weight of each block is a1 + shift
_SL2_SHIFT: Dict[Block, int] = {(0, 0): 0, (-1, 1): -1, (1, 0): 1, (0, 1): 0}
# h2 eigenvalue of F1^k v_block is a2 + k + offset
_H2_SHIFT: Dict[Block, int] = {(0, 0): 0, (-1, 1): 1, (1, 0): 0, (0, 1): 1}
_PARITY: Dict[Block, int] = {(0, 0): 0, (-1, 1): 1, (1, 0): 1, (0, 1): 0}

GENERATOR_PARITY: Dict[str, int] = {"h1": 0, "h2": 0, "E1": 0, "F1": 0, "E2": 1, "F2": 1}


# ------------------------------------------------------------------
# Colors and basis
# ------------------------------------------------------------------

@dataclass(frozen=True)
class TypicalColor:
    """V(a1, a2). With x_value set, q^{a2} is that rational in every matrix built for the color."""

    a1: int
    var: int = 1
    x_value: Optional[Fraction] = None

    def __post_init__(self):
        if self.a1 < 0:
            raise ValueError(f"a1 must be nonnegative, got {self.a1}")
        x_gen(self.var)
        if self.x_value is not None:
            value = Fraction(self.x_value)
            if value in (0, 1, -1):
                raise ValueError(f"q^a2 = {value} makes the module non-typical")
            object.__setattr__(self, "x_value", value)

    @property
    def dim(self) -> int:
        return 4 * self.a1 + 4

    def block_length(self, block: Block) -> int:
        return self.a1 + 1 + _SL2_SHIFT[block]

    def offset(self, block: Block) -> int:
        total = 0
        for b in BLOCKS:
            if b == block:
                return total
            total += self.block_length(b)
        raise ValueError(f"unknown block {block}")

    def __str__(self) -> str:
        if self.x_value is not None:
            return f"V(a1={self.a1}, q^a2={self.x_value})"
        return f"V(a1={self.a1}, a2=a2_{self.var})"


def specialize_a2(value, *colors: TypicalColor) -> Scalar:
    """Substitute x_var = x_value for every color that carries one."""
    values = {x_gen(c.var): c.x_value for c in colors if c.x_value is not None}
    return specialize(value, values) if values else Scalar.coerce(value)


@dataclass(frozen=True)
class BasisIndex:
    block: Block
    k: int

    def __post_init__(self):
        if self.block not in _PARITY:
            raise ValueError(f"unknown block {self.block}")
        if self.k < 0:
            raise ValueError("k must be nonnegative")

    def flat(self, color: TypicalColor) -> int:
        if self.k >= color.block_length(self.block):
            raise IndexError(f"F1^{self.k} v{self.block} is zero in {color}")
        return color.offset(self.block) + self.k

    @classmethod
    def from_flat(cls, color: TypicalColor, index: int) -> "BasisIndex":
        for block in BLOCKS:
            length = color.block_length(block)
            if index < length:
                return cls(block, index)
            index -= length
        raise IndexError("flat index outside the module")


def basis(color: TypicalColor) -> List[BasisIndex]:
    return [BasisIndex(block, k) for block in BLOCKS for k in range(color.block_length(block))]


def parity(index: BasisIndex) -> int:
    return _PARITY[index.block]


@lru_cache(maxsize=None)
def parity_vector(color: TypicalColor) -> Tuple[int, ...]:
    return tuple(parity(b) for b in basis(color))


@dataclass(frozen=True)
class WeightTable:
    """h1 eigenvalues and h2 eigenvalues minus a2 (dual modules: negated)."""

    var: int
    h1: Tuple[int, ...]
    h2_offset: Tuple[int, ...]
    dual: bool = False

    def h2_sign(self) -> int:
        return -1 if self.dual else 1


@lru_cache(maxsize=None)
def weight_table(color: TypicalColor, dual: bool = False) -> WeightTable:
    sign = -1 if dual else 1
    h1, h2 = [], []
    for b in basis(color):
        h1.append(sign * (color.a1 + _SL2_SHIFT[b.block] - 2 * b.k))
        h2.append(sign * (b.k + _H2_SHIFT[b.block]))
    return WeightTable(color.var, tuple(h1), tuple(h2), dual)


# ------------------------------------------------------------------
# Coefficients
# ------------------------------------------------------------------

@lru_cache(maxsize=None)
def chebyshev_P(n: int) -> Scalar:
    """P_{-1} = 0, P_0 = 1, P_n = (q + 1/q) P_{n-1} - P_{n-2}."""
    if n < -1:
        raise ValueError("chebyshev_P is defined for n >= -1")
    if n == -1:
        return Scalar(0)
    if n == 0:
        return ONE
    return (Scalar.q() + Scalar.q(-1)) * chebyshev_P(n - 1) - chebyshev_P(n - 2)


def _ratio(color: TypicalColor) -> Scalar:
    """[a1]/[a1+1]."""
    return qint(color.a1) / qint(color.a1 + 1)


def _beta(color: TypicalColor) -> Scalar:
    """[a2+1] - [a2][a1]/[a1+1]."""
    return specialize_a2(qint(a2(color.var, 1)) - qint(a2(color.var)) * _ratio(color), color)


# ------------------------------------------------------------------
# Generator matrices
# ------------------------------------------------------------------

def _matrix(color: TypicalColor, entries) -> GradedMatrix:
    p = parity_vector(color)
    return GradedMatrix.from_entries(p, p, entries)


def _idx(color: TypicalColor, block: Block, k: int) -> int:
    return color.offset(block) + k


@lru_cache(maxsize=None)
def act_h(color: TypicalColor, which: int) -> GradedMatrix:
    table = weight_table(color)
    if which == 1:
        return GradedMatrix.diagonal(parity_vector(color), table.h1)
    if which == 2:
        return GradedMatrix.diagonal(parity_vector(color), table.h2_offset)
    raise ValueError(f"no Cartan generator h{which}")


@lru_cache(maxsize=None)
def q_power_h(color: TypicalColor, which: int, c: int, dual: bool = False) -> GradedMatrix:
    """The diagonal q^{c h_which} on V (or on V* when dual)."""
    table = weight_table(color, dual)
    values = []
    for idx in range(color.dim):
        if which == 1:
            values.append(Scalar.monomial([(Q, c * table.h1[idx])]))
        elif which == 2:
            pairs = [(Q, c * table.h2_offset[idx]), (x_gen(color.var), c * table.h2_sign())]
            values.append(specialize_a2(Scalar.monomial(pairs), color))
        else:
            raise ValueError(f"no Cartan generator h{which}")
    return GradedMatrix.diagonal(parity_vector(color), values)


@lru_cache(maxsize=None)
def act_E1(color: TypicalColor) -> GradedMatrix:
    entries = []
    for block in BLOCKS:
        top = color.a1 + _SL2_SHIFT[block]
        for k in range(1, color.block_length(block)):
            value = qint(k) * qint(top + 1 - k)
            entries.append((_idx(color, block, k - 1), _idx(color, block, k), value))
    return _matrix(color, entries)


@lru_cache(maxsize=None)
def act_F1(color: TypicalColor) -> GradedMatrix:
    entries = []
    for block in BLOCKS:
        for k in range(color.block_length(block) - 1):
            entries.append((_idx(color, block, k + 1), _idx(color, block, k), ONE))
    return _matrix(color, entries)


@lru_cache(maxsize=None)
def act_E2(color: TypicalColor) -> GradedMatrix:
    n = color.a1
    bracket_a2 = specialize_a2(qint(a2(color.var)), color)
    beta = _beta(color)
    entries = []
    for k in range(n):
        entries.append((_idx(color, (0, 0), k + 1), _idx(color, (-1, 1), k), beta))
    for k in range(n + 1):
        entries.append((_idx(color, (0, 0), k), _idx(color, (1, 0), k), bracket_a2))
    for k in range(n + 1):
        col = _idx(color, (0, 1), k)
        if k < n:
            entries.append((_idx(color, (-1, 1), k), col, -bracket_a2))
        entries.append((_idx(color, (1, 0), k + 1), col, beta))
    return _matrix(color, entries)


@lru_cache(maxsize=None)
def act_F2(color: TypicalColor) -> GradedMatrix:
    n = color.a1
    c = _ratio(color)
    entries = [(_idx(color, (1, 0), 0), _idx(color, (0, 0), 0), ONE)]
    for k in range(1, n + 1):
        col = _idx(color, (0, 0), k)
        entries.append((_idx(color, (-1, 1), k - 1), col, chebyshev_P(k - 1)))
        entries.append((_idx(color, (1, 0), k), col, c * chebyshev_P(k - 1) - chebyshev_P(k - 2)))
    for k in range(n):
        value = chebyshev_P(k - 1) - c * chebyshev_P(k)
        entries.append((_idx(color, (0, 1), k), _idx(color, (-1, 1), k), value))
    for k in range(1, n + 2):
        entries.append((_idx(color, (0, 1), k - 1), _idx(color, (1, 0), k), chebyshev_P(k - 1)))
    return _matrix(color, entries)


_ACTIONS = {"E1": act_E1, "E2": act_E2, "F1": act_F1, "F2": act_F2}


def generator(color: TypicalColor, name: str) -> GradedMatrix:
    """Matrix of a named generator: h1, h2 (shifted), E1, E2, F1, F2, K1, K2 and inverses Ki^-1."""
    if name in _ACTIONS:
        return _ACTIONS[name](color)
    if name in ("h1", "h2"):
        return act_h(color, int(name[1]))
    if name in ("K1", "K2"):
        return q_power_h(color, int(name[1]), 1)
    if name in ("K1^-1", "K2^-1"):
        return q_power_h(color, int(name[1]), -1)
    raise ValueError(f"unknown generator {name!r}")


def dump_generators(color: TypicalColor) -> str:
    sections = []
    for name in ("h1", "h2", "E1", "E2", "F1", "F2"):
        sections.append(f"# {name} on {color}\n{generator(color, name).dump()}")
    logger.debug("Dumped generator matrices", extra={"a1": color.a1, "var": color.var})
    return "\n".join(sections)
