"""
Exact multivariate Laurent polynomials over the rationals.

Generators are encoded as integers so monomials hash and compare fast:

    q      -> 0
    x_i    -> i                      (i >= 1)
    z_ij   -> Z_BASE + 1000*i + j    (i <= j)

The code order realizes q < x1 < x2 < ... < z11 < z12 < ... .
"""

import re
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, Mapping, Tuple, Union

Q = 0
Z_BASE = 1_000_000

Number = Union[int, Fraction]

_GEN_RE = re.compile(r"^(?:(q)|x(\d+)|z(\d+)_(\d+)|z(\d)(\d))$")


# ------------------------------------------------------------------
# Generators
# ------------------------------------------------------------------

def x_gen(i: int) -> int:
    if i < 1 or i >= 1000:
        raise ValueError(f"x-variable index out of range: {i}")
    return i


def z_gen(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    if i < 1 or j >= 1000:
        raise ValueError(f"z-variable index out of range: ({i}, {j})")
    return Z_BASE + 1000 * i + j


def is_x(code: int) -> bool:
    return 0 < code < Z_BASE


def is_z(code: int) -> bool:
    return code >= Z_BASE


def z_indices(code: int) -> Tuple[int, int]:
    rest = code - Z_BASE
    return rest // 1000, rest % 1000


def gen_name(code: int) -> str:
    if code == Q:
        return "q"
    if is_x(code):
        return f"x{code}"
    i, j = z_indices(code)
    if i < 10 and j < 10:
        return f"z{i}{j}"
    return f"z{i}_{j}"


def parse_gen_name(name: Union[str, int]) -> int:
    if isinstance(name, int):
        return name
    match = _GEN_RE.match(name.strip())
    if not match:
        raise ValueError(f"unknown generator: {name!r}")
    if match.group(1):
        return Q
    if match.group(2):
        return x_gen(int(match.group(2)))
    if match.group(3):
        return z_gen(int(match.group(3)), int(match.group(4)))
    return z_gen(int(match.group(5)), int(match.group(6)))


# ------------------------------------------------------------------
# Monomials
# ------------------------------------------------------------------

class Monomial(tuple):
    """Sorted tuple of (generator code, nonzero exponent) pairs."""

    __slots__ = ()

    def __new__(cls, pairs: Iterable[Tuple[int, int]] = ()):
        acc: Dict[int, int] = {}
        for gen, exp in pairs:
            acc[gen] = acc.get(gen, 0) + exp
        return tuple.__new__(cls, sorted((g, e) for g, e in acc.items() if e))

    @classmethod
    def _raw(cls, items) -> "Monomial":
        return tuple.__new__(cls, items)

    @classmethod
    def gen(cls, code: int, exp: int = 1) -> "Monomial":
        return cls._raw(((code, exp),) if exp else ())

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not self:
            return other
        if not other:
            return self
        acc = dict(self)
        for gen, exp in other:
            value = acc.get(gen, 0) + exp
            if value:
                acc[gen] = value
            else:
                del acc[gen]
        return Monomial._raw(tuple(sorted(acc.items())))

    __rmul__ = __mul__

    def inverse(self) -> "Monomial":
        return Monomial._raw(tuple((g, -e) for g, e in self))

    def __pow__(self, n: int) -> "Monomial":
        if n == 0:
            return ONE_MONO
        return Monomial._raw(tuple((g, e * n) for g, e in self))

    def degree(self) -> int:
        return sum(e for _, e in self)

    def exponent(self, code: int) -> int:
        for gen, exp in self:
            if gen == code:
                return exp
        return 0

    def without(self, code: int) -> "Monomial":
        return Monomial._raw(tuple((g, e) for g, e in self if g != code))

    def gens(self) -> Iterator[int]:
        return (g for g, _ in self)

    def __repr__(self) -> str:
        return " * ".join(f"{gen_name(g)}^{e}" for g, e in self) or "1"


ONE_MONO = Monomial()


def order_key(gens: Iterable[int]) -> Callable[[Monomial], tuple]:
    """Graded lex key; the largest generator code is most significant."""
    ordered = sorted(set(gens), reverse=True)

    def key(mono: Monomial) -> tuple:
        exps = dict(mono)
        return (sum(exps.values()), tuple(exps.get(g, 0) for g in ordered))

    return key


# ------------------------------------------------------------------
# Univariate helpers in q (dense, lowest degree first)
# ------------------------------------------------------------------

def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _dense_rem(a: list, b: list) -> list:
    a = list(a)
    lead = b[-1]
    while len(a) >= len(b) and a:
        factor = a[-1] / lead
        shift = len(a) - len(b)
        for idx, coeff in enumerate(b):
            a[shift + idx] -= factor * coeff
        _trim(a)
    return a


def dense_gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _dense_rem(a, b)
    if not a:
        return [Fraction(1)]
    lead = a[-1]
    return [c / lead for c in a]


# ------------------------------------------------------------------
# Laurent polynomials
# ------------------------------------------------------------------

class LaurentPoly:
    """Immutable map Monomial -> Fraction with no zero coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[mono] = Fraction(coeff)
        self.terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, Fraction]) -> "LaurentPoly":
        poly = cls.__new__(cls)
        poly.terms = terms
        poly._hash = None
        return poly

    @classmethod
    def constant(cls, value: Number) -> "LaurentPoly":
        return cls({ONE_MONO: value})

    @classmethod
    def monomial(cls, mono: Monomial, coeff: Number = 1) -> "LaurentPoly":
        return cls({mono: coeff})

    @classmethod
    def gen(cls, code: int, exp: int = 1) -> "LaurentPoly":
        return cls({Monomial.gen(code, exp): 1})

    # ---- predicates ----

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONO in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(ONE_MONO, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def gens(self) -> set:
        return {g for mono in self.terms for g, _ in mono}

    def is_q_only(self) -> bool:
        return all(g == Q for mono in self.terms for g, _ in mono)

    def __len__(self) -> int:
        return len(self.terms)

    # ---- arithmetic ----

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            value = out.get(mono, 0) + coeff
            if value:
                out[mono] = value
            else:
                out.pop(mono, None)
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return ZERO_POLY
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = m1 * m2
                value = out.get(mono, 0) + c1 * c2
                if value:
                    out[mono] = value
                else:
                    out.pop(mono, None)
        return LaurentPoly._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (mono, coeff), = self.terms.items()
            return LaurentPoly.monomial(mono ** n, Fraction(coeff) ** n)
        result, base = ONE_POLY, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, factor: Number) -> "LaurentPoly":
        if not factor:
            return ZERO_POLY
        factor = Fraction(factor)
        return LaurentPoly._wrap({m: c * factor for m, c in self.terms.items()})

    def mul_monomial(self, mono: Monomial, coeff: Number = 1) -> "LaurentPoly":
        coeff = Fraction(coeff)
        return LaurentPoly._wrap({m * mono: c * coeff for m, c in self.terms.items()})

    # ---- order and content ----

    def lead_term(self) -> Tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order_key(self.gens())
        mono = max(self.terms, key=key)
        return mono, self.terms[mono]

    def min_exp(self, code: int) -> int:
        return min(m.exponent(code) for m in self.terms)

    def max_exp(self, code: int) -> int:
        return max(m.exponent(code) for m in self.terms)

    def monomial_content(self) -> Monomial:
        """Componentwise minimum exponent over all terms."""
        if not self.terms:
            return ONE_MONO
        return Monomial((g, self.min_exp(g)) for g in self.gens())

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient self/other; raises ArithmeticError when not exact."""
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return ZERO_POLY
        if other.is_monomial():
            (mono, coeff), = other.terms.items()
            return self.mul_monomial(mono.inverse(), 1 / coeff)

        gens = self.gens() | other.gens()
        low = {g: self.min_exp(g) - other.min_exp(g) for g in gens}
        high = {g: self.max_exp(g) - other.max_exp(g) for g in gens}
        if any(low[g] > high[g] for g in gens):
            raise ArithmeticError("inexact Laurent division")

        key = order_key(gens)
        lead_mono, lead_coeff = other.lead_term()
        lead_inv = lead_mono.inverse()
        remainder = dict(self.terms)
        quotient: Dict[Monomial, Fraction] = {}
        while remainder:
            mono = max(remainder, key=key)
            term = mono * lead_inv
            exps = dict(term)
            if any(not low[g] <= exps.get(g, 0) <= high[g] for g in gens):
                raise ArithmeticError("inexact Laurent division")
            coeff = remainder[mono] / lead_coeff
            quotient[term] = coeff
            for om, oc in other.terms.items():
                target = om * term
                value = remainder.get(target, 0) - oc * coeff
                if value:
                    remainder[target] = value
                else:
                    remainder.pop(target, None)
        return LaurentPoly._wrap(quotient)

    # ---- univariate q structure ----

    def q_dense(self) -> Tuple[int, list]:
        """(lowest q exponent, dense coefficients) of a q-only polynomial."""
        if not self.is_q_only():
            raise ValueError("polynomial involves generators other than q")
        if not self.terms:
            return 0, []
        exps = {m.exponent(Q): c for m, c in self.terms.items()}
        low, high = min(exps), max(exps)
        return low, [exps.get(e, Fraction(0)) for e in range(low, high + 1)]

    @classmethod
    def from_q_dense(cls, low: int, coeffs: list) -> "LaurentPoly":
        return cls({Monomial.gen(Q, low + idx): c for idx, c in enumerate(coeffs) if c})

    def q_parts(self) -> Dict[Monomial, Dict[int, Fraction]]:
        """Group terms by their q-free part: {rest: {q exponent: coeff}}."""
        groups: Dict[Monomial, Dict[int, Fraction]] = {}
        for mono, coeff in self.terms.items():
            groups.setdefault(mono.without(Q), {})[mono.exponent(Q)] = coeff
        return groups

    # ---- substitution ----

    def map_monomials(self, image: Callable[[Monomial], "LaurentPoly"]) -> "LaurentPoly":
        result = ZERO_POLY
        for mono, coeff in self.terms.items():
            result = result + image(mono).scale(coeff)
        return result

    def evaluate(self, values: Mapping[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            term = coeff
            for gen, exp in mono:
                term *= Fraction(values[gen]) ** exp
            total += term
        return total

    def partial_evaluate(self, values: Mapping[int, Fraction]) -> "LaurentPoly":
        out: Dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms.items():
            kept = []
            for gen, exp in mono:
                if gen in values:
                    coeff = coeff * Fraction(values[gen]) ** exp
                else:
                    kept.append((gen, exp))
            key = Monomial._raw(tuple(kept))
            value = out.get(key, 0) + coeff
            if value:
                out[key] = value
            else:
                out.pop(key, None)
        return LaurentPoly._wrap(out)

    # ---- equality / text ----

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self) -> list:
        key = order_key(self.gens())
        return sorted(self.terms.items(), key=lambda item: key(item[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = [str(coeff)] + [f"{gen_name(g)}^{e}" for g, e in mono]
            parts.append(" * ".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()})"


ZERO_POLY = LaurentPoly()
ONE_POLY = LaurentPoly.constant(1)


def parse_poly(text: str) -> LaurentPoly:
    """Inverse of LaurentPoly.to_text (whitespace-insensitive)."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise ValueError("empty polynomial text")
    if compact == "0":
        return ZERO_POLY
    terms: Dict[Monomial, Fraction] = {}
    for raw in compact.split("+"):
        if not raw:
            raise ValueError(f"malformed polynomial text: {text!r}")
        factors = raw.split("*")
        coeff = Fraction(1)
        pairs = []
        for idx, factor in enumerate(factors):
            if idx == 0 and re.fullmatch(r"-?\d+(/\d+)?", factor):
                coeff = Fraction(factor)
                continue
            if idx == 0 and factor.startswith("-"):
                factor = factor[1:]
                coeff = -coeff
            name, _, exp = factor.partition("^")
            pairs.append((parse_gen_name(name), int(exp) if exp else 1))
        mono = Monomial(pairs)
        terms[mono] = terms.get(mono, 0) + coeff
    return LaurentPoly(terms)
