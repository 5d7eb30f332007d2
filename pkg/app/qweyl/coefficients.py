"""
Tables of building-block data as functions of the discrete colors, with
their known annihilators. The invariant is assembled from these blocks,
so their recurrences are the raw material of its own.
"""

from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from app.scalars import Scalar
from app.scalars.laurent import Q, x_gen
from app.superalg.typical_module import Block, TypicalColor, act_E1, chebyshev_P
from app.ribbon.pivotal import duality_maps, modified_dim
from app.ribbon.r_matrix import e1f1_factor, k_entry
from app.qweyl.certificate import HolonomyCertificate, certify
from app.qweyl.operators import QWeylOp
from app.qweyl.tables import FunctionTable, Point
from app.utils.errors import CertificationRefused


def bracket_op(
    rank: int,
    const: int,
    m_powers: Dict[int, int],
    x_powers: Optional[Dict[int, int]] = None,
    continuous: Tuple[int, ...] = (),
) -> QWeylOp:
    """{const + sum p_i a_i + sum e_v a2_v} written in the M's (and x's)."""
    zero = (0,) * rank
    beta = tuple(m_powers.get(i, 0) for i in range(rank))
    pairs = [(Q, const)] + [(x_gen(v), e) for v, e in (x_powers or {}).items()]
    coeff = Scalar.monomial(pairs)
    up = QWeylOp(rank, {(zero, beta): coeff}, continuous)
    down = QWeylOp(rank, {(zero, tuple(-b for b in beta)): coeff.inverse()}, continuous)
    return up - down


# ------------------------------------------------------------------
# Chebyshev coefficients P_k of F2
# ------------------------------------------------------------------

def chebyshev_table(lo: int = 0, hi: int = 8) -> FunctionTable:
    return FunctionTable.tabulate(chebyshev_P, (lo,), (hi,))


def chebyshev_annihilator() -> QWeylOp:
    """{k+1} L - {k+2}, since P_k = [k+1]."""
    L = QWeylOp.L(0, 1)
    return bracket_op(1, 1, {0: 1}) * L - bracket_op(1, 2, {0: 1})


# ------------------------------------------------------------------
# E1 coefficients
# ------------------------------------------------------------------

def e1_coefficient(a1: int, k: int) -> Scalar:
    """Entry of E1 taking F1^k v00 to F1^{k-1} v00 in V(a1), read off the matrix."""
    color = TypicalColor(a1)
    return act_E1(color).entry(k - 1, k)


def e1_coefficient_table(k: int, lo: Optional[int] = None, hi: int = 10) -> FunctionTable:
    """Rank-1 table in a1 for a fixed k >= 1 (a1 >= k so the entry exists)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    lo = k if lo is None else lo
    if lo < k:
        raise ValueError(f"the entry needs a1 >= {k}")
    return FunctionTable.tabulate(lambda a1: e1_coefficient(a1, k), (lo,), (hi,))


def e1_coefficient_annihilator(k: int) -> QWeylOp:
    """{a1-k+1} L - {a1-k+2}, since the entry is [k][a1-k+1]."""
    L = QWeylOp.L(0, 1)
    return bracket_op(1, 1 - k, {0: 1}) * L - bracket_op(1, 2 - k, {0: 1})


# ------------------------------------------------------------------
# K entries on highest weight vectors
# ------------------------------------------------------------------

def k_entry_value(a1: int, b1: int) -> Scalar:
    return k_entry(TypicalColor(a1, 1), TypicalColor(b1, 2), 0, 0)


def k_entry_table(lo: Point = (0, 0), hi: Point = (6, 6)) -> FunctionTable:
    return FunctionTable.tabulate(k_entry_value, lo, hi)


def k_entry_annihilators() -> List[QWeylOp]:
    """x2 L1 - 1 and x1 L2 - 1."""
    return [
        QWeylOp.L(0, 2).scale(Scalar.x(2)) - 1,
        QWeylOp.L(1, 2).scale(Scalar.x(1)) - 1,
    ]


def k_block_value(a1: int, k: int, b1: int, l: int, sign: int = 1) -> Scalar:
    """K^{sign} on F1^k v00 (x) F1^l v00 of V(a1, a2_1) (x) V(b1, a2_2)."""
    return k_entry(TypicalColor(a1, 1), TypicalColor(b1, 2), k, l, sign)


def k_block_table(sign: int = 1, lo: Point = (2, 0, 2, 0), hi: Point = (4, 2, 4, 2)) -> FunctionTable:
    """Rank-4 table over (a1, k, b1, l); needs k <= a1 and l <= b1 on the whole window."""
    if hi[1] > lo[0] or hi[3] > lo[2]:
        raise ValueError("the window leaves the (0,0) block")
    return FunctionTable.tabulate(lambda a1, k, b1, l: k_block_value(a1, k, b1, l, sign), lo, hi)


def k_block_annihilators(sign: int = 1) -> List[QWeylOp]:
    """
    K^{sign} = q^{-sign (a1 l + b1 k - 2 k l)} x1^{-sign b1} x2^{-sign a1} z12^{-2 sign},
    so every direction has a first-order witness L_j - c_j(M).
    """
    s = sign

    def m(index: int, exp: int) -> QWeylOp:
        return QWeylOp.M(index, 4, exp)

    return [
        QWeylOp.L(0, 4) - m(3, -s).scale(Scalar.x(2, -s)),
        QWeylOp.L(1, 4) - m(2, -s) * m(3, 2 * s),
        QWeylOp.L(2, 4) - m(1, -s).scale(Scalar.x(1, -s)),
        QWeylOp.L(3, 4) - m(0, -s) * m(1, 2 * s),
    ]


# ------------------------------------------------------------------
# The exp(E1 (x) F1) factor of R and R^-1
# ------------------------------------------------------------------

@lru_cache(maxsize=None)
def _e1f1(a1: int, n: int, inverse: bool):
    return e1f1_factor(TypicalColor(a1, 1), TypicalColor(n, 2), inverse)


def e1f1_entry(a1: int, k: int, n: int, inverse: bool = False) -> Scalar:
    """
    Entry of the factor taking F1^k v00 (x) v00 to F1^{k-n} v00 (x) F1^n v00,
    with b1 = n. Up to a constant it is prod_{i<n} [k-i][a1-k+1+i].
    """
    if not n <= k <= a1:
        raise ValueError(f"need n <= k <= a1, got n={n} k={k} a1={a1}")
    dim_b = 4 * n + 4
    return _e1f1(a1, n, inverse).entry((k - n) * dim_b + n, k * dim_b)


def e1f1_table(
    n: int,
    inverse: bool = False,
    lo: Optional[Point] = None,
    hi: Point = (5, 3),
) -> FunctionTable:
    """Rank-2 table over (a1, k)."""
    lo = (hi[1], n) if lo is None else lo
    if lo[1] < n or hi[1] > lo[0]:
        raise ValueError(f"the window must keep {n} <= k <= a1")
    return FunctionTable.tabulate(lambda a1, k: e1f1_entry(a1, k, n, inverse), lo, hi)


def e1f1_annihilators(n: int) -> List[QWeylOp]:
    """
    {a1-k+1} L1 - {a1-k+n+1} and {k+1-n}{a1-k+n} L2 - {k+1}{a1-k}; the
    same for R^-1, whose factor differs by a constant in each entry.
    """
    L1, L2 = QWeylOp.L(0, 2), QWeylOp.L(1, 2)
    diff = {0: 1, 1: -1}
    first = bracket_op(2, 1, diff) * L1 - bracket_op(2, n + 1, diff)
    second = (
        bracket_op(2, 1 - n, {1: 1}) * bracket_op(2, n, diff) * L2
        - bracket_op(2, 1, {1: 1}) * bracket_op(2, 0, diff)
    )
    return [first, second]


# ------------------------------------------------------------------
# Duality maps
# ------------------------------------------------------------------

DUALITY_MAPS: Tuple[str, ...] = ("coev_right", "ev_right", "coev_left", "ev_left")

# exponent sign of the pivot q^{2 h2} carried by each map
_PIVOT_SIGN: Dict[str, int] = {"coev_right": 0, "ev_right": 0, "coev_left": 1, "ev_left": -1}


def duality_entry(which: str, block: Block, a1: int, k: int, l: int) -> Scalar:
    """
    Coefficient of F1^k v_block (x) (F1^l v_block)* in the map; it is
    (-1)^{|block|} q^{2 s (k + h2 shift)} x^{2 s} delta_{k,l} with s the pivot sign.
    """
    if which not in _PIVOT_SIGN:
        raise ValueError(f"unknown duality map {which!r}; expected one of {DUALITY_MAPS}")
    color = TypicalColor(a1, 1)
    i, j = color.offset(block) + k, color.offset(block) + l
    d = i * color.dim + j
    matrix = getattr(duality_maps(color), which)
    return matrix.entry(d, 0) if which.startswith("coev") else matrix.entry(0, d)


def duality_table(
    which: str,
    block: Block = (0, 0),
    lo: Point = (2, 0, 0),
    hi: Point = (5, 2, 2),
) -> FunctionTable:
    """Rank-3 table over (a1, k, l) inside one block."""
    top = TypicalColor(lo[0]).block_length(block) - 1
    if max(hi[1], hi[2]) > top:
        raise ValueError(f"block {block} of V(a1={lo[0]}) stops at k={top}")
    return FunctionTable.tabulate(lambda a1, k, l: duality_entry(which, block, a1, k, l), lo, hi)


def duality_annihilators() -> List[QWeylOp]:
    """
    L1 - 1, (M3 - q M2) L2 + (M2 - M3) and (M2 - q M3) L3 + (M3 - M2): the
    entry does not move with a1 and the last two kill any function
    supported on k = l.
    """
    L1, L2, L3 = (QWeylOp.L(i, 3) for i in range(3))
    Mk, Ml = QWeylOp.M(1, 3), QWeylOp.M(2, 3)
    q = Scalar.q()
    return [
        L1 - 1,
        (Ml - Mk.scale(q)) * L2 + (Mk - Ml),
        (Mk - Ml.scale(q)) * L3 + (Ml - Mk),
    ]


def duality_diagonal_step(which: str) -> QWeylOp:
    """L2 L3 - q^{2 s}: one step along the diagonal picks up the pivot ratio."""
    s = _PIVOT_SIGN[which]
    return QWeylOp.L(1, 3) * QWeylOp.L(2, 3) - Scalar.q(2 * s)


# ------------------------------------------------------------------
# Modified dimension (the unknot invariant)
# ------------------------------------------------------------------

def modified_dim_table(lo: int = 0, hi: int = 10, continuous: bool = False) -> FunctionTable:
    """d(V(a1, a2_1)) over a1; with ``continuous`` a2 is a declared direction."""
    return FunctionTable.tabulate(
        lambda a1: modified_dim(TypicalColor(a1, 1)), (lo,), (hi,), (1,) if continuous else ()
    )


def modified_dim_annihilators(continuous: bool = False) -> List[QWeylOp]:
    """
    {a1+1}{a1+a2+2} L1 - {a1+2}{a1+a2+1}, and with a2 continuous also
    {a2+1}{a1+a2+2} L2 - {a2}{a1+a2+1}.
    """
    if not continuous:
        L = QWeylOp.L(0, 1)
        lead = bracket_op(1, 1, {0: 1}) * bracket_op(1, 2, {0: 1}, {1: 1})
        tail = bracket_op(1, 2, {0: 1}) * bracket_op(1, 1, {0: 1}, {1: 1})
        return [lead * L - tail]

    cont = (1,)
    L1, L2 = QWeylOp.L(0, 2, continuous=cont), QWeylOp.L(1, 2, continuous=cont)
    both_1 = bracket_op(2, 1, {0: 1, 1: 1}, continuous=cont)
    both_2 = bracket_op(2, 2, {0: 1, 1: 1}, continuous=cont)
    first = bracket_op(2, 1, {0: 1}, continuous=cont) * both_2 * L1 - bracket_op(2, 2, {0: 1}, continuous=cont) * both_1
    second = bracket_op(2, 1, {1: 1}, continuous=cont) * both_2 * L2 - bracket_op(2, 0, {1: 1}, continuous=cont) * both_1
    return [first, second]


# ------------------------------------------------------------------
# Certificates for the R, R^-1 and duality building blocks
# ------------------------------------------------------------------

def building_block_windows() -> List[Tuple[str, FunctionTable, FunctionTable, List[QWeylOp]]]:
    """(label, fitting table, held-out table, witnesses), one row per block."""
    cases = []
    for sign in (1, -1):
        fit = k_block_table(sign, hi=(3, 2, 3, 2))
        cases.append((f"K^{sign}", fit, k_block_table(sign), k_block_annihilators(sign)))
    for inverse in (False, True):
        label = "exp(E1 F1) of R^-1" if inverse else "exp(E1 F1) of R"
        fit = e1f1_table(1, inverse, (3, 1), (4, 3))
        cases.append((label, fit, e1f1_table(1, inverse, (3, 1), (5, 3)), e1f1_annihilators(1)))
    for which in DUALITY_MAPS:
        fit = duality_table(which, hi=(4, 2, 2))
        cases.append((which, fit, duality_table(which), duality_annihilators()))
    return cases


def certify_building_blocks() -> Dict[str, HolonomyCertificate]:
    """Raises CertificationRefused naming the first block that fails."""
    certificates = {}
    for label, fit, held_out, ops in building_block_windows():
        try:
            certificates[label] = certify(fit, ops, held_out)
        except CertificationRefused as exc:
            raise CertificationRefused(f"{label}: {exc.reason}") from exc
    return certificates
