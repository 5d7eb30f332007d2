"""
Elements of the coefficient field: fractions num/den of Laurent polynomials
in q, x_i (= q^{a2_i}) and z_ij (= q^{a2_i * a2_j}).

Normal form:
  * den has no monomial content (it is moved into num),
  * q-only denominators are reduced against num by a univariate gcd,
  * the leading coefficient of den is 1.

Equality never depends on the normal form: a/b == c/d iff a*d - c*b == 0.
"""

import random
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Union

from app.scalars.laurent import (
    Q,
    LaurentPoly,
    Monomial,
    ONE_POLY,
    ZERO_POLY,
    dense_gcd,
    is_x,
    is_z,
    parse_gen_name,
    parse_poly,
    x_gen,
    z_gen,
    z_indices,
)
from app.utils.errors import ResampleError

Number = Union[int, Fraction]


# ------------------------------------------------------------------
# Normalization
# ------------------------------------------------------------------

def _q_gcd_against(den: LaurentPoly, num: LaurentPoly) -> LaurentPoly:
    """gcd of a content-free q-only den with the q-parts of num."""
    _, dense = den.q_dense()
    g = dense
    for part in num.q_parts().values():
        low = min(part)
        coeffs = [part.get(e, Fraction(0)) for e in range(low, max(part) + 1)]
        g = dense_gcd(g, coeffs)
        if len(g) == 1:
            return ONE_POLY
    return LaurentPoly.from_q_dense(0, g)


def q_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd of two q-only Laurent polynomials, without monomial content."""
    _, da = a.q_dense()
    _, db = b.q_dense()
    return LaurentPoly.from_q_dense(0, dense_gcd(da, db))


def _normalize(num: LaurentPoly, den: LaurentPoly):
    if den.is_zero():
        raise ZeroDivisionError("Scalar with zero denominator")
    if num.is_zero():
        return ZERO_POLY, ONE_POLY

    content = den.monomial_content()
    if content:
        inv = content.inverse()
        den = den.mul_monomial(inv)
        num = num.mul_monomial(inv)

    if len(den) > 1:
        if den.is_q_only():
            g = _q_gcd_against(den, num)
            if not g.is_constant():
                den = den.exact_div(g)
                num = num.exact_div(g)
        else:
            try:
                return num.exact_div(den), ONE_POLY
            except ArithmeticError:
                pass

    _, lead = den.lead_term()
    if lead != 1:
        den = den.scale(1 / lead)
        num = num.scale(1 / lead)
    return num, den


# ------------------------------------------------------------------
# Scalar
# ------------------------------------------------------------------

class Scalar:
    """Immutable element of the fraction field."""

    __slots__ = ("num", "den")

    def __init__(self, num: Union[LaurentPoly, Number] = 0, den: Union[LaurentPoly, Number] = 1):
        num = num if isinstance(num, LaurentPoly) else LaurentPoly.constant(num)
        den = den if isinstance(den, LaurentPoly) else LaurentPoly.constant(den)
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _trusted(cls, num: LaurentPoly, den: LaurentPoly) -> "Scalar":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    # ---- constructors ----

    @classmethod
    def monomial(cls, pairs: Iterable = (), coeff: Number = 1) -> "Scalar":
        return cls._trusted(LaurentPoly.monomial(Monomial(pairs), coeff), ONE_POLY) if coeff else ZERO

    @classmethod
    def q(cls, exp: int = 1) -> "Scalar":
        return cls.monomial([(Q, exp)])

    @classmethod
    def x(cls, i: int, exp: int = 1) -> "Scalar":
        return cls.monomial([(x_gen(i), exp)])

    @classmethod
    def z(cls, i: int, j: int, exp: int = 1) -> "Scalar":
        return cls.monomial([(z_gen(i, j), exp)])

    @staticmethod
    def coerce(value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar._trusted(LaurentPoly.constant(value), ONE_POLY) if value else ZERO
        if isinstance(value, LaurentPoly):
            return Scalar._trusted(value, ONE_POLY)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    # ---- predicates ----

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def gens(self) -> set:
        return self.num.gens() | self.den.gens()

    # ---- field operations ----

    def __add__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            if self.den.is_constant():
                return Scalar._trusted(self.num + other.num, self.den)
            return Scalar(self.num + other.num, self.den)
        if self.den.is_q_only() and other.den.is_q_only():
            g = q_gcd(self.den, other.den)
            left = other.den.exact_div(g)
            right = self.den.exact_div(g)
            return Scalar(self.num * left + other.num * right, self.den * left)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._trusted(-self.num, self.den)

    def __sub__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return (-self) + other

    def __mul__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        if self.den.is_constant() and other.den.is_constant():
            return Scalar._trusted(self.num * other.num, ONE_POLY)
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero Scalar")
        return Scalar(self.den, self.num)

    def __truediv__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        if self.num.is_monomial() and self.den.is_constant():
            return Scalar._trusted(self.num ** n, ONE_POLY)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ---- equality ----

    def __eq__(self, other) -> bool:
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    __hash__ = None

    # ---- text ----

    def to_text(self) -> str:
        return f"{self.num.to_text()} ; {self.den.to_text()}"

    def __repr__(self) -> str:
        return f"Scalar({self.to_text()})"

    __str__ = to_text


ZERO = Scalar._trusted(ZERO_POLY, ONE_POLY)
ONE = Scalar._trusted(ONE_POLY, ONE_POLY)


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical `num ; den` text (den optional)."""
    num_text, sep, den_text = text.partition(";")
    num = parse_poly(num_text)
    den = parse_poly(den_text) if sep else ONE_POLY
    return Scalar(num, den)


# ------------------------------------------------------------------
# Substitutions
# ------------------------------------------------------------------

def _shift_image(i: int):
    """Monomial image under L_i: x_i -> q x_i, z_jk -> q^{d_ij d_ik} x_j^{d_ik} x_k^{d_ij} z_jk."""
    xi = x_gen(i)

    def image(mono: Monomial) -> LaurentPoly:
        extra = []
        for gen, exp in mono:
            if gen == xi:
                extra.append((Q, exp))
            elif is_z(gen):
                j, k = z_indices(gen)
                if j == i and k == i:
                    extra.extend([(Q, exp), (xi, 2 * exp)])
                elif j == i:
                    extra.append((x_gen(k), exp))
                elif k == i:
                    extra.append((x_gen(j), exp))
        return LaurentPoly.monomial(mono * Monomial(extra))

    return image


def shift(i: int, s) -> Scalar:
    """Ring endomorphism realizing L_i on a continuous variable a2_i."""
    s = Scalar.coerce(s)
    image = _shift_image(i)
    return Scalar(s.num.map_monomials(image), s.den.map_monomials(image))


def rename_variables(s, mapping: Mapping[int, int]) -> Scalar:
    """Ring map x_i -> x_{m(i)}, z_ij -> z_{m(i) m(j)}; unmapped indices stay."""
    s = Scalar.coerce(s)

    def image(mono: Monomial) -> LaurentPoly:
        pairs = []
        for gen, exp in mono:
            if is_x(gen):
                pairs.append((x_gen(mapping.get(gen, gen)), exp))
            elif is_z(gen):
                j, k = z_indices(gen)
                pairs.append((z_gen(mapping.get(j, j), mapping.get(k, k)), exp))
            else:
                pairs.append((gen, exp))
        return LaurentPoly.monomial(Monomial(pairs))

    return Scalar(s.num.map_monomials(image), s.den.map_monomials(image))


def _codes(assignment: Mapping) -> Dict[int, Fraction]:
    return {parse_gen_name(k): Fraction(v) for k, v in assignment.items()}


def eval_at_point(s, assignment: Mapping) -> Fraction:
    """Exact value at a rational point; raises ResampleError if den vanishes."""
    s = Scalar.coerce(s)
    values = _codes(assignment)
    missing = s.gens() - set(values)
    if missing:
        raise KeyError(f"no value for generators {sorted(missing)}")
    if any(v == 0 for v in values.values()):
        raise ValueError("point coordinates must be nonzero")
    den = s.den.evaluate(values)
    if den == 0:
        raise ResampleError("denominator vanishes at the sample point")
    return s.num.evaluate(values) / den


def specialize(s, assignment: Mapping) -> Scalar:
    """Partial substitution of rationals for some generators."""
    s = Scalar.coerce(s)
    values = _codes(assignment)
    den = s.den.partial_evaluate(values)
    if den.is_zero():
        raise ResampleError("denominator vanishes under specialization")
    return Scalar(s.num.partial_evaluate(values), den)


def random_point(gens: Iterable, rng: random.Random) -> Dict[int, Fraction]:
    """Nonzero rational coordinates away from +-1 for the given generators."""
    point = {}
    for gen in gens:
        value = Fraction(1)
        while abs(value) == 1:
            value = Fraction(rng.randint(2, 97) * rng.choice((1, -1)), rng.randint(1, 13))
        point[parse_gen_name(gen)] = value
    return point
