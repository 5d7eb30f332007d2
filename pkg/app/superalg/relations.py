"""Defining relations of U_h(sl(2|1)) checked as exact matrix identities."""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from app.scalars import qbracket
from app.scalars.scalar import Scalar
from app.superalg.graded_matrix import GradedMatrix, supercommutator
from app.superalg.typical_module import (
    GENERATOR_PARITY,
    TypicalColor,
    generator,
    q_power_h,
)
from app.utils.logger import get_logger

logger = get_logger(__name__)

CARTAN = ((2, -1), (-1, 0))


@dataclass(frozen=True)
class RelationCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class RelationReport:
    color: TypicalColor
    checks: List[RelationCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[RelationCheck]:
        return [c for c in self.checks if not c.passed]


Comparator = Callable[[GradedMatrix, GradedMatrix], Optional[Tuple[int, int]]]


def _exact(lhs: GradedMatrix, rhs: GradedMatrix) -> Optional[Tuple[int, int]]:
    return lhs.first_difference(rhs)


def _relations(color: TypicalColor):
    g = {name: generator(color, name) for name in ("h1", "h2", "E1", "E2", "F1", "F2")}
    zero = GradedMatrix.zero(g["E1"].row_parity, g["E1"].col_parity)
    inv_bracket = qbracket(1).inverse()

    yield "[h1,h2] = 0", supercommutator(g["h1"], g["h2"]), zero
    for i in (1, 2):
        for j in (1, 2):
            a = CARTAN[i - 1][j - 1]
            yield (
                f"[h{i},E{j}] = {a} E{j}",
                supercommutator(g[f"h{i}"], g[f"E{j}"]),
                g[f"E{j}"].scale(a),
            )
            yield (
                f"[h{i},F{j}] = {-a} F{j}",
                supercommutator(g[f"h{i}"], g[f"F{j}"]),
                g[f"F{j}"].scale(-a),
            )
    for i in (1, 2):
        k_diff = q_power_h(color, i, 1) - q_power_h(color, i, -1)
        yield f"[E{i},F{i}] = [h{i}]", supercommutator(g[f"E{i}"], g[f"F{i}"]), k_diff.scale(inv_bracket)
    yield "[E1,F2] = 0", supercommutator(g["E1"], g["F2"]), zero
    yield "[E2,F1] = 0", supercommutator(g["E2"], g["F1"]), zero
    yield "E2^2 = 0", g["E2"] @ g["E2"], zero
    yield "F2^2 = 0", g["F2"] @ g["F2"], zero

    two = Scalar.q() + Scalar.q(-1)
    for x in ("E", "F"):
        a, b = g[f"{x}1"], g[f"{x}2"]
        serre = a @ a @ b - (a @ b @ a).scale(two) + b @ a @ a
        yield f"{x}1^2 {x}2 - [2] {x}1 {x}2 {x}1 + {x}2 {x}1^2 = 0", serre, zero


def check_parity_homogeneity(color: TypicalColor) -> List[RelationCheck]:
    checks = []
    for name, expected in GENERATOR_PARITY.items():
        degree = generator(color, name).degree()
        checks.append(RelationCheck(f"parity({name}) = {expected}", degree == expected, f"degree={degree}"))
    return checks


def verify_relations(color: TypicalColor, compare: Comparator = _exact) -> RelationReport:
    """Evaluate every defining relation on V(a1, a2); one check per relation."""
    report = RelationReport(color)
    for name, lhs, rhs in _relations(color):
        bad = compare(lhs, rhs)
        if bad is None:
            report.checks.append(RelationCheck(name, True))
        else:
            i, j = bad
            detail = f"entry ({i},{j}): lhs={lhs.entry(i, j).to_text()} rhs={rhs.entry(i, j).to_text()}"
            report.checks.append(RelationCheck(name, False, detail))
            logger.error("Relation failed", extra={"relation": name, "a1": color.a1, "entry": bad})
    report.checks.extend(check_parity_homogeneity(color))
    logger.info(
        "Relations verified",
        extra={"a1": color.a1, "checks": len(report.checks), "passed": report.passed},
    )
    return report
