"""Quantum numbers, brackets and q-Pochhammer products as Scalars."""

from dataclasses import dataclass
from typing import Optional, Union

from app.scalars.laurent import Q, x_gen
from app.scalars.scalar import ONE, Scalar


@dataclass(frozen=True)
class Exponent:
    """Affine exponent const + coeff * a2_var (q-power q^{a2_var} is x_var)."""

    const: int = 0
    var: Optional[int] = None
    coeff: int = 0

    def __post_init__(self):
        if self.coeff and self.var is None:
            raise ValueError("a nonzero a2 coefficient needs a variable index")

    def __add__(self, other: int) -> "Exponent":
        return Exponent(self.const + other, self.var, self.coeff)

    def __neg__(self) -> "Exponent":
        return Exponent(-self.const, self.var, -self.coeff)

    def monomial(self, sign: int = 1) -> Scalar:
        """q^{sign * e} as a Scalar."""
        pairs = [(Q, sign * self.const)]
        if self.coeff:
            pairs.append((x_gen(self.var), sign * self.coeff))
        return Scalar.monomial(pairs)


def a2(var: int, const: int = 0) -> Exponent:
    """The exponent a2_var + const."""
    return Exponent(const, var, 1)


ExponentLike = Union[int, Exponent]


def _as_exponent(e: ExponentLike) -> Exponent:
    if isinstance(e, Exponent):
        return e
    if isinstance(e, int) and not isinstance(e, bool):
        return Exponent(e)
    raise TypeError(f"exponent must be an int or Exponent, got {type(e).__name__}")


def qbracket(e: ExponentLike) -> Scalar:
    """{e} = q^e - q^{-e}."""
    e = _as_exponent(e)
    return e.monomial(1) - e.monomial(-1)


_BRACKET_ONE = qbracket(1)


def qint(e: ExponentLike) -> Scalar:
    """[e] = {e}/{1}."""
    return qbracket(e) / _BRACKET_ONE


def qpochhammer(x, k: int, base: Optional[Scalar] = None) -> Scalar:
    """(x; base)_k = prod_{j<k} (1 - x base^j); base defaults to q."""
    if k < 0:
        raise ValueError("q-Pochhammer length must be nonnegative")
    x = Scalar.coerce(x)
    base = Scalar.q() if base is None else Scalar.coerce(base)
    result, power = ONE, ONE
    for _ in range(k):
        result = result * (ONE - x * power)
        power = power * base
    return result


def qfactorial_paren(k: int, base: Optional[Scalar] = None) -> Scalar:
    """(k)_b! with (j)_b = (1 - b^j)/(1 - b); base defaults to q."""
    if k < 0:
        raise ValueError("factorial argument must be nonnegative")
    base = Scalar.q() if base is None else Scalar.coerce(base)
    result = ONE
    for j in range(1, k + 1):
        result = result * (ONE - base ** j) / (ONE - base)
    return result


def q_power(exp: int) -> Scalar:
    return Scalar.monomial([(Q, exp)]) if exp else ONE


__all__ = [
    "Exponent",
    "a2",
    "qbracket",
    "qint",
    "qpochhammer",
    "qfactorial_paren",
    "q_power",
]
