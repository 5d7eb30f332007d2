"""
Evaluation of sliced tangles and the modified invariant F'(L) = d(V) <T_V>.

Vectors in the register space are sparse dicts from multi-indices to Scalars.
Every slice map is even, so applying it to a pair of factors needs no
Koszul sign from the factors on its left.
"""

from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Tuple

from app.config import settings
from app.diagram.closure import Cap, ColoredLink, Crossing, Cup, Identity, SlicedTangle, close_and_cut
from app.ribbon.ribbon_data import RibbonData
from app.scalars import ONE, Scalar, rename_variables
from app.superalg.graded_matrix import GradedMatrix
from app.superalg.typical_module import TypicalColor, parity_vector
from app.utils.errors import VerificationError
from app.utils.logger import get_logger

logger = get_logger(__name__)

Vector = Dict[Tuple[int, ...], Scalar]

_DEFAULT_RIBBON: Optional[RibbonData] = None


def default_ribbon() -> RibbonData:
    global _DEFAULT_RIBBON
    if _DEFAULT_RIBBON is None:
        _DEFAULT_RIBBON = RibbonData()
    return _DEFAULT_RIBBON


def _accumulate(acc: Vector, key: Tuple[int, ...], value: Scalar) -> None:
    if key in acc:
        acc[key] = acc[key] + value
    else:
        acc[key] = value


def _prune(vec: Vector) -> Vector:
    return {k: v for k, v in vec.items() if not v.is_zero()}


def _step(vec: Vector, register, event, ribbon: RibbonData) -> Vector:
    if isinstance(event, Identity):
        return vec
    out: Vector = {}
    if isinstance(event, Crossing):
        i = event.position
        table = ribbon.crossing_table(register[i].color, register[i + 1].color, event.sign)
        for key, value in vec.items():
            for (k1, k2), w in table.get(key[i:i + 2], ()):
                _accumulate(out, key[:i] + (k1, k2) + key[i + 2:], value * w)
        return _prune(out)
    if isinstance(event, Cup):
        i = event.position
        pairs = ribbon.cup_vector(event.color, event.kind)
        for key, value in vec.items():
            for (k1, k2), w in pairs:
                _accumulate(out, key[:i] + (k1, k2) + key[i:], value * w)
        return _prune(out)
    if isinstance(event, Cap):
        i = event.position
        covector = ribbon.cap_covector(register[i].color, event.kind)
        for key, value in vec.items():
            w = covector.get(key[i:i + 2])
            if w is not None:
                _accumulate(out, key[:i] + key[i + 2:], value * w)
        return _prune(out)
    raise TypeError(f"unknown slice event {event!r}")


def evaluate_column(tangle: SlicedTangle, ribbon: RibbonData, column: int) -> Vector:
    """Image of the bottom basis vector ``column`` under the tangle."""
    registers = tangle.registers()
    vec: Vector = {(column,): ONE}
    for register, event in zip(registers, tangle.slices):
        vec = _step(vec, register, event, ribbon)
    return vec


def evaluate(tangle: SlicedTangle, ribbon: Optional[RibbonData] = None) -> GradedMatrix:
    """The endomorphism of the open strand's module, composed bottom to top."""
    ribbon = ribbon or default_ribbon()
    tangle.validate()
    color = tangle.bottom[0].color
    columns = {}
    for j in range(color.dim):
        vec = evaluate_column(tangle, ribbon, j)
        if vec:
            columns[j] = {key[0]: value for key, value in vec.items()}
    parity = parity_vector(color)
    return GradedMatrix(parity, parity, columns)


def scalar_of_endo(matrix: GradedMatrix, verify: bool = True) -> Scalar:
    """The scalar lambda with matrix = lambda * Id; raises if the endomorphism is not scalar."""
    if matrix.rows != matrix.cols:
        raise VerificationError("endomorphism matrix is not square")
    value = matrix.entry(0, 0)
    if verify:
        for j in range(matrix.cols):
            column = matrix.column(j)
            diagonal = column.get(j)
            off = [i for i in column if i != j]
            if off:
                raise VerificationError(f"non-scalar endomorphism: entry ({off[0]},{j}) is nonzero")
            if not (diagonal if diagonal is not None else Scalar(0)) == value:
                raise VerificationError(f"non-scalar endomorphism: diagonal entry {j} differs from entry 0")
    return value


@dataclass(frozen=True, eq=False)
class InvariantResult:
    braid: str
    cut: int
    strand: int
    colors: Tuple[TypicalColor, ...]
    bracket: Scalar
    modified_dim: Scalar
    value: Scalar
    writhe: int
    self_writhe: Tuple[int, ...]
    normalized: Scalar

    def identify_variables(self, mapping: Mapping[int, int]) -> "InvariantResult":
        """Apply the ring map x_i -> x_{m(i)}, z_ij -> z_{m(i)m(j)} to every scalar."""
        return InvariantResult(
            braid=self.braid,
            cut=self.cut,
            strand=self.strand,
            colors=self.colors,
            bracket=rename_variables(self.bracket, mapping),
            modified_dim=rename_variables(self.modified_dim, mapping),
            value=rename_variables(self.value, mapping),
            writhe=self.writhe,
            self_writhe=self.self_writhe,
            normalized=rename_variables(self.normalized, mapping),
        )


def invariant(
    link: ColoredLink,
    cut: int = 1,
    strand: Optional[int] = None,
    ribbon: Optional[RibbonData] = None,
    verify_endo: Optional[bool] = None,
) -> InvariantResult:
    ribbon = ribbon or default_ribbon()
    verify_endo = settings.VERIFY_SCALAR_ENDO if verify_endo is None else verify_endo

    tangle = close_and_cut(link, cut, strand)
    if verify_endo:
        bracket = scalar_of_endo(evaluate(tangle, ribbon))
    else:
        vec = evaluate_column(tangle, ribbon, 0)
        bracket = vec.get((0,), Scalar(0))

    cut_color = link.colors[cut - 1]
    dim = ribbon.modified_dim(cut_color)
    value = dim * bracket

    self_writhe = link.self_writhe()
    normalized = value
    for color, w in zip(link.colors, self_writhe):
        if w:
            normalized = normalized * ribbon.twist(color) ** (-w)

    position = link.components[cut - 1][0] if strand is None else strand
    logger.info(
        "Invariant computed",
        extra={"braid": link.braid.to_text(), "cut": cut, "writhe": link.braid.writhe},
    )
    return InvariantResult(
        braid=link.braid.to_text(),
        cut=cut,
        strand=position,
        colors=link.colors,
        bracket=bracket,
        modified_dim=dim,
        value=value,
        writhe=link.braid.writhe,
        self_writhe=self_writhe,
        normalized=normalized,
    )
