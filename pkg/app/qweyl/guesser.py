"""
Recurrence guessing for tabulated functions.

For a direction j the ansatz is

    sum_{s=0..d} sum_{beta} c_{s,beta} M^beta L_j^s,   beta in [-e, e]^{mdirs}

with unknown coefficients in the scalar field. Each window point gives
one linear equation; rows are cleared of denominators and eliminated
fraction-free over the Laurent polynomial ring, and the nullspace is
read back as operators. Every returned operator has been checked
against the full table.
"""

import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from app.scalars import ONE, Scalar
from app.scalars.laurent import ONE_POLY, LaurentPoly, Monomial
from app.qweyl.operators import QWeylOp
from app.qweyl.tables import FunctionTable, annihilates
from app.utils.errors import DegenerateSystem
from app.utils.logger import get_logger

logger = get_logger(__name__)

Column = Tuple[int, Tuple[int, ...]]


def _orders(max_order: int, shape_only: bool) -> List[int]:
    return sorted({0, max_order}) if shape_only else list(range(max_order + 1))


def required_length(max_order: int, max_mdegree: int, shape_only: bool = False) -> int:
    """
    Window length in the guessing direction: one equation per unknown of
    the ansatz, plus the max_order rows lost to the shift.
    """
    unknowns = len(_orders(max_order, shape_only)) * (2 * max_mdegree + 1)
    return unknowns + max_order


def _columns(orders: Sequence[int], max_mdegree: int, mdirs: int) -> List[Column]:
    """Unknowns sorted by (s, beta) ascending, so free columns come last."""
    betas = sorted(itertools.product(range(-max_mdegree, max_mdegree + 1), repeat=mdirs))
    return [(s, beta) for s in orders for beta in betas]


def _clear_row(row: Sequence[Scalar]) -> List[LaurentPoly]:
    """Multiply by the product of the distinct denominators and strip monomial content."""
    dens: List[LaurentPoly] = []
    for value in row:
        if not value.den.is_constant() and not any(value.den == d for d in dens):
            dens.append(value.den)
    common = ONE_POLY
    for d in dens:
        common = common * d

    cleared = []
    for value in row:
        if value.is_zero():
            cleared.append(LaurentPoly())
        else:
            cleared.append(value.num * common.exact_div(value.den))

    nonzero = [p for p in cleared if not p.is_zero()]
    if not nonzero:
        return cleared
    gens = set().union(*(p.gens() for p in nonzero))
    content = Monomial((g, min(p.min_exp(g) for p in nonzero)) for g in gens)
    if not content:
        return cleared
    inverse = content.inverse()
    return [p.mul_monomial(inverse) for p in cleared]


def _build_rows(
    f: FunctionTable,
    direction: int,
    columns: List[Column],
    max_order: int,
    mdirs: Sequence[int],
) -> List[List[LaurentPoly]]:
    rows = []
    for point in f.points():
        if point[direction] + max_order > f.hi[direction]:
            continue
        row = []
        for s, beta in columns:
            shifted = list(point)
            shifted[direction] += s
            exponent = sum(b * point[k] for b, k in zip(beta, mdirs))
            row.append(Scalar.q(exponent) * f[tuple(shifted)])
        cleared = _clear_row(row)
        if any(not p.is_zero() for p in cleared):
            rows.append(cleared)
    return rows


def bareiss_echelon(rows: List[List[LaurentPoly]], ncols: int) -> List[Tuple[int, List[LaurentPoly]]]:
    """
    Fraction-free row echelon form. Returns (pivot column, row) pairs in
    pivot order. Pivots are chosen with the fewest terms; every division
    by the previous pivot is exact.
    """
    rows = [list(r) for r in rows]
    previous = ONE_POLY
    pivots: List[Tuple[int, List[LaurentPoly]]] = []
    top = 0
    for col in range(ncols):
        if top >= len(rows):
            break
        candidates = [i for i in range(top, len(rows)) if not rows[i][col].is_zero()]
        if not candidates:
            continue
        best = min(candidates, key=lambda i: (len(rows[i][col]), i))
        rows[top], rows[best] = rows[best], rows[top]
        pivot_row = rows[top]
        pivot = pivot_row[col]
        for i in range(top + 1, len(rows)):
            row = rows[i]
            factor = row[col]
            if factor.is_zero():
                new = [(pivot * row[k]).exact_div(previous) for k in range(ncols)]
            else:
                new = [(pivot * row[k] - factor * pivot_row[k]).exact_div(previous) for k in range(ncols)]
            new[col] = LaurentPoly()
            rows[i] = new
        pivots.append((col, pivot_row))
        previous = pivot
        top += 1
    return pivots


def nullspace(pivots: List[Tuple[int, List[LaurentPoly]]], ncols: int) -> List[List[Scalar]]:
    """One basis vector per free column, by back substitution."""
    pivot_cols = [c for c, _ in pivots]
    free = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for f in free:
        x: Dict[int, Scalar] = {f: ONE}
        for col, row in reversed(pivots):
            total = Scalar(0)
            for k in range(col + 1, ncols):
                if k in x and not row[k].is_zero():
                    total = total + Scalar(row[k]) * x[k]
            if not total.is_zero():
                x[col] = -total / Scalar(row[col])
        basis.append([x.get(c, Scalar(0)) for c in range(ncols)])
    return basis


def _to_operator(
    vector: List[Scalar],
    columns: List[Column],
    f: FunctionTable,
    direction: int,
    mdirs: Sequence[int],
) -> Optional[QWeylOp]:
    rank = f.total_rank
    terms = {}
    for value, (s, beta) in zip(vector, columns):
        if value.is_zero():
            continue
        alpha = tuple(s if k == direction else 0 for k in range(rank))
        full_beta = [0] * rank
        for b, k in zip(beta, mdirs):
            full_beta[k] = b
        terms[(alpha, tuple(full_beta))] = value
    if not terms:
        return None
    lead = max(terms)
    scale = terms[lead].inverse()
    return QWeylOp(rank, {k: v * scale for k, v in terms.items()}, f.continuous)


def guess_recurrence(
    f: FunctionTable,
    direction: int,
    max_order: int,
    max_mdegree: int,
    mdirections: Optional[Sequence[int]] = None,
    shape_only: bool = False,
) -> List[QWeylOp]:
    """
    Annihilators of f with L only in ``direction`` (0-based, discrete).

    ``mdirections`` lists the directions whose M may appear (default: only
    ``direction``). With ``shape_only`` the ansatz keeps only L^0 and
    L^max_order. Returns a basis of the solution space, possibly empty.
    """
    if not 0 <= direction < f.rank:
        raise ValueError(f"direction {direction} is not a discrete direction of the table")
    if max_order < 0 or max_mdegree < 0:
        raise ValueError("order and M-degree bounds must be nonnegative")
    mdirs = tuple(mdirections) if mdirections is not None else (direction,)
    if any(not 0 <= k < f.rank for k in mdirs):
        raise ValueError("M directions must be discrete directions of the table")
    needed = required_length(max_order, max_mdegree, shape_only)
    if f.length(direction) < needed:
        raise ValueError(
            f"window length {f.length(direction)} in direction {direction + 1} is below the "
            f"{needed} points needed for order {max_order}, M-degree {max_mdegree}"
        )
    if f.is_zero():
        raise DegenerateSystem("the table vanishes identically; every operator annihilates it")

    orders = _orders(max_order, shape_only)
    columns = _columns(orders, max_mdegree, len(mdirs))
    rows = _build_rows(f, direction, columns, max_order, mdirs)
    logger.info(
        "Guessing recurrence",
        extra={"direction": direction + 1, "unknowns": len(columns), "equations": len(rows)},
    )
    pivots = bareiss_echelon(rows, len(columns))
    logger.debug("Elimination finished", extra={"system_rank": len(pivots)})

    found = []
    for vector in nullspace(pivots, len(columns)):
        op = _to_operator(vector, columns, f, direction, mdirs)
        if op is None:
            continue
        if annihilates(op, f):
            found.append(op)
        else:
            logger.warning("Discarded a guessed operator that fails on the table", extra={"operator": op.to_text()})
    logger.info("Recurrence guess done", extra={"direction": direction + 1, "operators": len(found)})
    return found
