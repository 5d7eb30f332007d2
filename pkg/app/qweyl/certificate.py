"""
Holonomy certificates: one annihilator per direction of the shape

    p_j(M) L_j^{d_j} + q_j(M),   d_j >= 1, p_j != 0, q_j != 0,

checked on the fitting window and again on a larger, independently
tabulated window.
"""

from typing import List, Sequence

from pydantic import BaseModel

from app.qweyl.operators import QWeylOp
from app.qweyl.tables import FunctionTable, annihilates
from app.utils.errors import CertificationRefused
from app.utils.logger import get_logger

logger = get_logger(__name__)


class OperatorWitness(BaseModel):
    direction: int
    order: int
    operator: str
    leading: str
    trailing: str


class HolonomyCertificate(BaseModel):
    rank: int
    continuous: List[int]
    window_lo: List[int]
    window_hi: List[int]
    held_out_lo: List[int]
    held_out_hi: List[int]
    witnesses: List[OperatorWitness]


def witness_shape(op: QWeylOp):
    """(direction, order) of an operator p(M) L_j^d + q(M), or None."""
    support = op.l_support()
    zero = (0,) * op.rank
    if len(support) != 2 or zero not in support:
        return None
    (alpha,) = support - {zero}
    moving = [k for k, a in enumerate(alpha) if a]
    if len(moving) != 1:
        return None
    direction = moving[0]
    return direction, alpha[direction]


def _check_held_out(f: FunctionTable, held_out: FunctionTable) -> None:
    if held_out.rank != f.rank or held_out.continuous != f.continuous:
        raise CertificationRefused("held-out table has a different shape")
    if not held_out.contains(f):
        raise CertificationRefused("held-out table does not contain the fitting window")
    if f.rank and held_out.lo == f.lo and held_out.hi == f.hi:
        raise CertificationRefused("held-out table adds no points beyond the fitting window")
    for point in f.points():
        if not held_out[point] == f[point]:
            raise CertificationRefused(f"held-out table disagrees with the fitting table at {point}")


def certify(f: FunctionTable, ops: Sequence[QWeylOp], held_out: FunctionTable) -> HolonomyCertificate:
    _check_held_out(f, held_out)

    witnesses = {}
    for op in ops:
        if op.rank != f.total_rank:
            raise CertificationRefused(f"operator of rank {op.rank} on a table of rank {f.total_rank}")
        shape = witness_shape(op)
        if shape is None:
            raise CertificationRefused(f"operator {op.to_text()} is not of the form p(M) L^d + q(M)")
        direction, order = shape
        witnesses.setdefault(direction, (op, order))

    missing = [k + 1 for k in range(f.total_rank) if k not in witnesses]
    if missing:
        raise CertificationRefused(f"no operator for direction(s) {missing}")

    for op in ops:
        for label, table in (("fitting", f), ("held-out", held_out)):
            try:
                ok = annihilates(op, table)
            except ValueError as exc:
                raise CertificationRefused(f"{label} window too small for {op.to_text()}: {exc}") from exc
            if not ok:
                raise CertificationRefused(f"operator {op.to_text()} fails on the {label} window")

    items = []
    for direction in sorted(witnesses):
        op, order = witnesses[direction]
        alpha = tuple(order if k == direction else 0 for k in range(op.rank))
        items.append(
            OperatorWitness(
                direction=direction + 1,
                order=order,
                operator=op.to_text(),
                leading=op.part(alpha).to_text(),
                trailing=op.part((0,) * op.rank).to_text(),
            )
        )
    certificate = HolonomyCertificate(
        rank=f.total_rank,
        continuous=list(f.continuous),
        window_lo=list(f.lo),
        window_hi=list(f.hi),
        held_out_lo=list(held_out.lo),
        held_out_hi=list(held_out.hi),
        witnesses=items,
    )
    logger.info("Certificate issued", extra={"directions": len(items), "rank": f.total_rank})
    return certificate
