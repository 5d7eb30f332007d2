"""
Universal R-matrix of U_h(sl(2|1)) evaluated on V_A (x) V_B.

    R = exp({1} E1 (x) F1) exp(-{1} E' (x) F') exp(-{1} E2 (x) F2) K

with E' = E1 E2 - q^-1 E2 E1, F' = F2 F1 - q F1 F2 and K = q^{-(l1 m2 + l2 m1 + 2 l2 m2)}
on weight vectors of weights l, m. The q-exponentials use (n)_b! with
b = q^-2; the inverse uses b = q^2, from exp_b(x) exp_{1/b}(-x) = 1.
"""

from functools import lru_cache
from typing import Tuple

from app.config import settings
from app.scalars import Scalar, qbracket, qfactorial_paren
from app.scalars.laurent import Q, x_gen, z_gen
from app.superalg.graded_matrix import GradedMatrix
from app.superalg.typical_module import (
    TypicalColor,
    generator,
    parity_vector,
    q_power_h,
    specialize_a2,
    weight_table,
)
from app.ribbon.tensor import flip, super_kron, tensor_parity
from app.utils.errors import VerificationError
from app.utils.logger import get_logger

logger = get_logger(__name__)

R_BASE_EXP = -2


@lru_cache(maxsize=None)
def eprime_fprime(color: TypicalColor) -> Tuple[GradedMatrix, GradedMatrix]:
    e1, e2 = generator(color, "E1"), generator(color, "E2")
    f1, f2 = generator(color, "F1"), generator(color, "F2")
    e_prime = e1 @ e2 - (e2 @ e1).scale(Scalar.q(-1))
    f_prime = f2 @ f1 - (f1 @ f2).scale(Scalar.q())
    return e_prime, f_prime


def k_entry(color_a: TypicalColor, color_b: TypicalColor, i: int, j: int, sign: int = 1) -> Scalar:
    """Diagonal entry of K^{sign} at the basis pair (w_i, w_j)."""
    wa, wb = weight_table(color_a), weight_table(color_b)
    l1, s = wa.h1[i], wa.h2_offset[i]
    m1, t = wb.h1[j], wb.h2_offset[j]
    pairs = [
        (Q, -sign * (l1 * t + s * m1 + 2 * s * t)),
        (x_gen(color_a.var), -sign * (m1 + 2 * t)),
        (x_gen(color_b.var), -sign * (l1 + 2 * s)),
        (z_gen(color_a.var, color_b.var), -2 * sign),
    ]
    return specialize_a2(Scalar.monomial(pairs), color_a, color_b)


def k_matrix(color_a: TypicalColor, color_b: TypicalColor, sign: int = 1) -> GradedMatrix:
    pa, pb = parity_vector(color_a), parity_vector(color_b)
    values = [k_entry(color_a, color_b, i, j, sign) for i in range(len(pa)) for j in range(len(pb))]
    return GradedMatrix.diagonal(tensor_parity(pa, pb), values)


def qexp_factor(
    x: GradedMatrix,
    y: GradedMatrix,
    base: Scalar,
    coeff: Scalar,
    cap: int | None = None,
) -> GradedMatrix:
    """sum_n coeff^n (x (x) y)^n / (n)_base!, summed until the power vanishes."""
    t = super_kron(x, y).scale(coeff)
    if cap is None:
        cap = settings.EXP_SERIES_CAP_FACTOR * (max(len(x.row_parity), len(y.row_parity)) // 4 + 1)
    identity = GradedMatrix.identity(t.col_parity)
    result, power = identity, identity
    n = 0
    while True:
        n += 1
        if n > cap:
            raise VerificationError(f"q-exponential did not terminate within {cap} terms")
        power = power @ t
        if power.is_zero():
            break
        result = result + power.scale(qfactorial_paren(n, base).inverse())
    logger.debug("q-exponential summed", extra={"terms": n, "dim": t.rows})
    return result


def _base_and_sign(inverse: bool) -> Tuple[Scalar, int]:
    return Scalar.q(-R_BASE_EXP if inverse else R_BASE_EXP), (1 if inverse else -1)


def e1f1_factor(color_a: TypicalColor, color_b: TypicalColor, inverse: bool = False) -> GradedMatrix:
    """The exp(E1 (x) F1) factor of R (of R^-1 when ``inverse``)."""
    base, sign = _base_and_sign(inverse)
    return qexp_factor(generator(color_a, "E1"), generator(color_b, "F1"), base, -sign * qbracket(1))


def _factors(color_a: TypicalColor, color_b: TypicalColor, inverse: bool):
    bracket = qbracket(1)
    base, sign = _base_and_sign(inverse)
    ep_a, _ = eprime_fprime(color_a)
    _, fp_b = eprime_fprime(color_b)
    exp_1 = e1f1_factor(color_a, color_b, inverse)
    exp_prime = qexp_factor(ep_a, fp_b, base, sign * bracket)
    exp_2 = qexp_factor(generator(color_a, "E2"), generator(color_b, "F2"), base, sign * bracket)
    return exp_1, exp_prime, exp_2


@lru_cache(maxsize=None)
def r_matrix(color_a: TypicalColor, color_b: TypicalColor) -> GradedMatrix:
    exp_1, exp_prime, exp_2 = _factors(color_a, color_b, inverse=False)
    r = exp_1 @ exp_prime @ exp_2 @ k_matrix(color_a, color_b)
    logger.info("Built R-matrix", extra={"a1": color_a.a1, "b1": color_b.a1, "nnz": r.nnz()})
    return r


@lru_cache(maxsize=None)
def r_inverse(color_a: TypicalColor, color_b: TypicalColor) -> GradedMatrix:
    exp_1, exp_prime, exp_2 = _factors(color_a, color_b, inverse=True)
    return k_matrix(color_a, color_b, sign=-1) @ exp_2 @ exp_prime @ exp_1


def flip_colors(color_a: TypicalColor, color_b: TypicalColor) -> GradedMatrix:
    return flip(parity_vector(color_a), parity_vector(color_b))


@lru_cache(maxsize=None)
def braiding(color_a: TypicalColor, color_b: TypicalColor) -> GradedMatrix:
    """c_{A,B} = tau o R: V_A (x) V_B -> V_B (x) V_A."""
    return flip_colors(color_a, color_b) @ r_matrix(color_a, color_b)


@lru_cache(maxsize=None)
def braiding_inverse(color_a: TypicalColor, color_b: TypicalColor) -> GradedMatrix:
    """(c_{A,B})^-1 = R^-1 o tau: V_B (x) V_A -> V_A (x) V_B."""
    return r_inverse(color_a, color_b) @ flip_colors(color_b, color_a)


# ------------------------------------------------------------------
# Coproduct
# ------------------------------------------------------------------

def coproduct(name: str, color_a: TypicalColor, color_b: TypicalColor) -> GradedMatrix:
    """
    Delta(g) on V_A (x) V_B:
      E_i -> E_i (x) 1 + K_i^-1 (x) E_i
      F_i -> F_i (x) K_i + 1 (x) F_i
      h_i -> h_i (x) 1 + 1 (x) h_i,   K_i -> K_i (x) K_i
    """
    id_a = GradedMatrix.identity(parity_vector(color_a))
    id_b = GradedMatrix.identity(parity_vector(color_b))
    if name in ("E1", "E2"):
        i = int(name[1])
        return super_kron(generator(color_a, name), id_b) + super_kron(
            q_power_h(color_a, i, -1), generator(color_b, name)
        )
    if name in ("F1", "F2"):
        i = int(name[1])
        return super_kron(generator(color_a, name), q_power_h(color_b, i, 1)) + super_kron(
            id_a, generator(color_b, name)
        )
    if name in ("h1", "h2"):
        return super_kron(generator(color_a, name), id_b) + super_kron(id_a, generator(color_b, name))
    if name in ("K1", "K2"):
        i = int(name[1])
        return super_kron(q_power_h(color_a, i, 1), q_power_h(color_b, i, 1))
    raise ValueError(f"no coproduct rule for {name!r}")


def coproduct_op(name: str, color_a: TypicalColor, color_b: TypicalColor) -> GradedMatrix:
    """Delta^op(g) on V_A (x) V_B, i.e. tau o Delta_{B,A}(g) o tau."""
    return flip_colors(color_b, color_a) @ coproduct(name, color_b, color_a) @ flip_colors(color_a, color_b)


def dump_r_matrix(color_a: TypicalColor, color_b: TypicalColor) -> str:
    return r_matrix(color_a, color_b).dump()


__all__ = [
    "braiding",
    "braiding_inverse",
    "coproduct",
    "coproduct_op",
    "dump_r_matrix",
    "eprime_fprime",
    "flip_colors",
    "k_matrix",
    "qexp_factor",
    "r_inverse",
    "r_matrix",
]
