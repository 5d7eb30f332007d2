"""
Library of q-hypergeometric functions with known annihilators.

Each builtin carries its tabulator, a default window where it is defined
without poles, and the operators that annihilate it.
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from app.scalars import ONE, Scalar, qpochhammer
from app.qweyl.operators import QWeylOp
from app.qweyl.tables import FunctionTable, Point


@dataclass(frozen=True)
class Builtin:
    name: str
    rank: int
    function: Callable[..., Scalar]
    build_operators: Callable[[], List[QWeylOp]]
    lo: Point
    hi: Point
    continuous: Tuple[int, ...] = ()

    def operators(self) -> List[QWeylOp]:
        return self.build_operators()

    def tabulate(self, lo: Optional[Point] = None, hi: Optional[Point] = None) -> FunctionTable:
        return FunctionTable.tabulate(
            self.function,
            self.lo if lo is None else tuple(lo),
            self.hi if hi is None else tuple(hi),
            self.continuous,
        )


def _q(exp: int) -> Scalar:
    return Scalar.q(exp)


# ------------------------------------------------------------------
# Functions
# ------------------------------------------------------------------

def pochhammer(n1: int, n2: int) -> Scalar:
    """(q^{n1}; q)_{n2}."""
    return qpochhammer(_q(n1), n2)


def inv_pochhammer(n1: int, n2: int) -> Scalar:
    return qpochhammer(_q(n1), n2).inverse()


def indicator(n1: int, n2: int, n3: int) -> Scalar:
    """1 if n1 <= n3 <= n2, else 0."""
    return ONE if n1 <= n3 <= n2 else Scalar(0)


def inv_qnum(n: int) -> Scalar:
    """1/{n} = q^{-n} / (q^{-2n}; q)_1."""
    return _q(-n) / qpochhammer(_q(-2 * n), 1)


def qsquare(n: int) -> Scalar:
    return _q(n * n)


def zsquare(n: int) -> Scalar:
    """q^{(n + a2)^2} = q^{n^2} x1^{2n} z11, with a2 continuous."""
    return Scalar.q(n * n) * Scalar.x(1, 2 * n) * Scalar.z(1, 1)


# ------------------------------------------------------------------
# Annihilators
# ------------------------------------------------------------------

def _pochhammer_ops() -> List[QWeylOp]:
    M1, M2 = QWeylOp.M(0, 2), QWeylOp.M(1, 2)
    L1, L2 = QWeylOp.L(0, 2), QWeylOp.L(1, 2)
    return [(1 - M1) * L1 - 1 + M1 * M2, L2 + M1 * M2 - 1]


def _inv_pochhammer_ops() -> List[QWeylOp]:
    M1, M2 = QWeylOp.M(0, 2), QWeylOp.M(1, 2)
    L1, L2 = QWeylOp.L(0, 2), QWeylOp.L(1, 2)
    return [(1 - M1 * M2) * L1 - 1 + M1, (1 - M1 * M2) * L2 - 1]


def _indicator_ops() -> List[QWeylOp]:
    M1, M2, M3 = (QWeylOp.M(i, 3) for i in range(3))
    L1, L2, L3 = (QWeylOp.L(i, 3) for i in range(3))
    return [
        (M3 - M1) * (L1 - 1),
        (M3 - M2.scale(_q(1))) * (L2 - 1),
        (M3 - M1.scale(_q(-1))) * (M3 - M2) * (L3 - 1),
    ]


def _inv_qnum_ops() -> List[QWeylOp]:
    M, L = QWeylOp.M(0, 1), QWeylOp.L(0, 1)
    M2 = M * M
    return [(M2.scale(_q(1)) - _q(-1)) * L - (M2 - 1)]


def _qsquare_ops() -> List[QWeylOp]:
    M, L = QWeylOp.M(0, 1), QWeylOp.L(0, 1)
    return [L - (M * M).scale(_q(1))]


def _zsquare_ops() -> List[QWeylOp]:
    continuous = (1,)
    M1, M2 = QWeylOp.M(0, 2, 2, continuous), QWeylOp.M(1, 2, 2, continuous)
    step = (M1 * M2).scale(_q(1))
    return [QWeylOp.L(0, 2, continuous=continuous) - step, QWeylOp.L(1, 2, continuous=continuous) - step]


BUILTINS: Dict[str, Builtin] = {
    b.name: b
    for b in (
        Builtin("pochhammer", 2, pochhammer, _pochhammer_ops, (0, 0), (6, 6)),
        Builtin("inv_pochhammer", 2, inv_pochhammer, _inv_pochhammer_ops, (1, 0), (7, 6)),
        Builtin("indicator", 3, indicator, _indicator_ops, (0, 0, 0), (6, 6, 6)),
        Builtin("inv_qnum", 1, inv_qnum, _inv_qnum_ops, (1,), (7,)),
        Builtin("qsquare", 1, qsquare, _qsquare_ops, (0,), (6,)),
        Builtin("zsquare", 1, zsquare, _zsquare_ops, (0,), (6,), (1,)),
    )
}


def builtin(name: str) -> Builtin:
    try:
        return BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown builtin {name!r}; choose from {', '.join(sorted(BUILTINS))}") from None
