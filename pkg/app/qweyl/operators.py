"""
Operators of the q-Weyl algebra in normal form sum c * M^beta L^alpha.

L_i M_j = q^{delta_ij} M_j L_i. Trailing directions may be continuous: there
M_j multiplies by x_var and L_j acts on coefficients through ``shift``, so
passing L_j across a coefficient shifts it.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, Tuple

from app.scalars import ONE, Scalar, shift

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]


def _add_vec(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True, eq=False)
class QWeylOp:
    rank: int
    terms: Dict[Key, Scalar] = field(default_factory=dict)
    continuous: Tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.continuous) > self.rank:
            raise ValueError("more continuous directions than the rank")
        for (alpha, beta), coeff in self.terms.items():
            if len(alpha) != self.rank or len(beta) != self.rank:
                raise ValueError("term multidegree does not match the rank")
            if any(a < 0 for a in alpha):
                raise ValueError("L exponents must be nonnegative")

    # ------------------------------------------------------------------
    # Builders
    # ------------------------------------------------------------------

    @property
    def discrete_rank(self) -> int:
        return self.rank - len(self.continuous)

    @classmethod
    def const(cls, value, rank: int, continuous: Tuple[int, ...] = ()) -> "QWeylOp":
        value = Scalar.coerce(value)
        zero = (0,) * rank
        return cls(rank, {} if value.is_zero() else {(zero, zero): value}, tuple(continuous))

    @classmethod
    def M(cls, index: int, rank: int, exp: int = 1, continuous: Tuple[int, ...] = ()) -> "QWeylOp":
        beta = tuple(exp if k == index else 0 for k in range(rank))
        return cls(rank, {((0,) * rank, beta): ONE}, tuple(continuous))

    @classmethod
    def L(cls, index: int, rank: int, exp: int = 1, continuous: Tuple[int, ...] = ()) -> "QWeylOp":
        alpha = tuple(exp if k == index else 0 for k in range(rank))
        return cls(rank, {(alpha, (0,) * rank): ONE}, tuple(continuous))

    # ------------------------------------------------------------------
    # Ring operations
    # ------------------------------------------------------------------

    def _check(self, other: "QWeylOp") -> None:
        if self.rank != other.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
        if self.continuous != other.continuous:
            raise ValueError("operators disagree on their continuous directions")

    def _coerce(self, other) -> "QWeylOp":
        if isinstance(other, QWeylOp):
            self._check(other)
            return other
        return QWeylOp.const(other, self.rank, self.continuous)

    def __add__(self, other) -> "QWeylOp":
        other = self._coerce(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms[key] + coeff if key in terms else coeff
        return QWeylOp(self.rank, {k: v for k, v in terms.items() if not v.is_zero()}, self.continuous)

    __radd__ = __add__

    def __neg__(self) -> "QWeylOp":
        return QWeylOp(self.rank, {k: -v for k, v in self.terms.items()}, self.continuous)

    def __sub__(self, other) -> "QWeylOp":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QWeylOp":
        return self._coerce(other) - self

    def scale(self, factor) -> "QWeylOp":
        """Left multiplication by a field element."""
        factor = Scalar.coerce(factor)
        terms = {k: v * factor for k, v in self.terms.items()}
        return QWeylOp(self.rank, {k: v for k, v in terms.items() if not v.is_zero()}, self.continuous)

    def _shift_coeff(self, coeff: Scalar, alpha: Tuple[int, ...]) -> Scalar:
        for offset, var in enumerate(self.continuous):
            for _ in range(alpha[self.discrete_rank + offset]):
                coeff = shift(var, coeff)
        return coeff

    def __mul__(self, other) -> "QWeylOp":
        other = self._coerce(other)
        terms: Dict[Key, Scalar] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                exchange = sum(x * y for x, y in zip(a1, b2))
                coeff = c1 * self._shift_coeff(c2, a1) * Scalar.q(exchange)
                key = (_add_vec(a1, a2), _add_vec(b1, b2))
                terms[key] = terms[key] + coeff if key in terms else coeff
        return QWeylOp(self.rank, {k: v for k, v in terms.items() if not v.is_zero()}, self.continuous)

    def __rmul__(self, other) -> "QWeylOp":
        return self.scale(other)

    def __pow__(self, n: int) -> "QWeylOp":
        result = QWeylOp.const(1, self.rank, self.continuous)
        for _ in range(n):
            result = result * self
        return result

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def equals(self, other: "QWeylOp") -> bool:
        return (self - other).is_zero()

    __eq__ = equals
    __hash__ = None

    def l_support(self) -> set:
        return {alpha for alpha, _ in self.terms}

    def order(self, direction: int) -> int:
        return max((alpha[direction] for alpha in self.l_support()), default=0)

    def part(self, alpha: Tuple[int, ...]) -> "QWeylOp":
        """The M-polynomial multiplying L^alpha (as an operator without L's)."""
        zero = (0,) * self.rank
        terms = {(zero, b): c for (a, b), c in self.terms.items() if a == alpha}
        return QWeylOp(self.rank, terms, self.continuous)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (alpha, beta) in sorted(self.terms, reverse=True):
            coeff = self.terms[(alpha, beta)]
            factors = [f"({coeff.to_text()})"]
            factors += [f"M{k + 1}^{e}" for k, e in enumerate(beta) if e]
            factors += [f"L{k + 1}^{e}" for k, e in enumerate(alpha) if e]
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"QWeylOp({self.to_text()})"


def op_mul(a: QWeylOp, b: QWeylOp) -> QWeylOp:
    return a * b


def op_add(a: QWeylOp, b: QWeylOp) -> QWeylOp:
    return a + b


def op_scale(a: QWeylOp, factor) -> QWeylOp:
    return a.scale(factor)


def op_to_text(op: QWeylOp) -> str:
    return op.to_text()


def poly_in_m(coeffs: Iterable[Tuple[int, object]], index: int, rank: int, continuous=()) -> QWeylOp:
    """sum c_t M_index^t from (t, c_t) pairs."""
    result = QWeylOp.const(0, rank, continuous)
    for t, c in coeffs:
        result = result + QWeylOp.M(index, rank, t, continuous).scale(c)
    return result


__all__ = ["QWeylOp", "op_add", "op_mul", "op_scale", "op_to_text", "poly_in_m"]
