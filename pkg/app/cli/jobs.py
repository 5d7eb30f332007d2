"""
Job specifications and the command implementations shared by the CLI and
the HTTP API. Every cmd_* returns a JSON-ready document.
"""

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from app.config import settings
from app.diagram import ColoredLink, InvariantResult, components, invariant, parse_braid
from app.qweyl import (
    FunctionTable,
    builtin,
    certify,
    guess_recurrence,
    required_length,
    witness_shape,
)
from app.scalars import Scalar, specialize
from app.schema.schema_builder import (
    build_certificate_document,
    build_invariant_document,
    build_sweep_document,
)
from app.superalg import TypicalColor
from app.utils.errors import BudgetExceeded, CertificationRefused, ColoringError, DegenerateSystem
from app.utils.logger import get_logger

logger = get_logger(__name__)

_COLOR_RE = re.compile(r"^\s*a1\s*=\s*(\d+)(?:\s*\.\.\s*(\d+))?\s*(?:,\s*var\s*=\s*(\d+)\s*)?$")


class ColorSpec(BaseModel):
    """a1 value or inclusive range for one component; a2 is the symbolic variable ``var``."""

    lo: int = Field(ge=0)
    hi: int = Field(ge=0)
    var: Optional[int] = None

    @model_validator(mode="after")
    def _nonempty(self):
        if self.hi < self.lo:
            raise ValueError(f"empty a1 range {self.lo}..{self.hi}")
        return self

    @classmethod
    def parse(cls, text: str) -> "ColorSpec":
        match = _COLOR_RE.match(text)
        if not match:
            raise ColoringError(f"bad color {text!r}; expected a1=<int>, a1=<lo>..<hi>, optionally ',var=<k>'")
        lo = int(match.group(1))
        hi = int(match.group(2)) if match.group(2) is not None else lo
        var = int(match.group(3)) if match.group(3) is not None else None
        if hi < lo:
            raise ColoringError(f"empty a1 range {lo}..{hi}")
        return cls(lo=lo, hi=hi, var=var)

    @property
    def is_range(self) -> bool:
        return self.hi != self.lo


class JobSpec(BaseModel):
    braid: str
    colors: List[ColorSpec]
    cut: int = Field(default=1, ge=1)
    strand: Optional[int] = Field(default=None, ge=1)
    seed: int = settings.DEFAULT_SEED
    specialize: Dict[str, str] = {}

    @field_validator("colors", mode="before")
    @classmethod
    def _parse_colors(cls, value):
        return [ColorSpec.parse(v) if isinstance(v, str) else v for v in value]


def specialize_assignment(job: JobSpec) -> Dict[str, Fraction]:
    try:
        return {name: Fraction(value) for name, value in job.specialize.items()}
    except (ValueError, ZeroDivisionError) as exc:
        raise ColoringError(f"bad specialization {job.specialize}: {exc}") from exc


def _colors(job: JobSpec, a1_override: Optional[Tuple[int, int]] = None) -> Tuple[TypicalColor, ...]:
    """Colors of the job; a specialized x_var is baked into the color so every matrix is built numeric."""
    assignment = specialize_assignment(job)
    colors = []
    for cid, spec in enumerate(job.colors, start=1):
        if a1_override is not None and a1_override[0] == cid:
            a1 = a1_override[1]
        elif spec.is_range:
            raise ColoringError(f"component {cid} has an a1 range; use the sweep command")
        else:
            a1 = spec.lo
        var = spec.var if spec.var is not None else cid
        try:
            colors.append(TypicalColor(a1, var, assignment.get(f"x{var}")))
        except ValueError as exc:
            raise ColoringError(str(exc)) from exc
    return tuple(colors)


def build_link(job: JobSpec, a1_override: Optional[Tuple[int, int]] = None) -> ColoredLink:
    braid = parse_braid(job.braid)
    count = len(components(braid))
    if len(job.colors) != count:
        raise ColoringError(f"the closure has {count} component(s) but {len(job.colors)} color(s) were given")
    return ColoredLink(braid, _colors(job, a1_override))


def _specialized(result: InvariantResult, job: JobSpec) -> InvariantResult:
    if not job.specialize:
        return result
    assignment = specialize_assignment(job)
    return InvariantResult(
        braid=result.braid,
        cut=result.cut,
        strand=result.strand,
        colors=result.colors,
        bracket=specialize(result.bracket, assignment),
        modified_dim=specialize(result.modified_dim, assignment),
        value=specialize(result.value, assignment),
        writhe=result.writhe,
        self_writhe=result.self_writhe,
        normalized=specialize(result.normalized, assignment),
    )


def run_invariant(
    job: JobSpec,
    a1_override: Optional[Tuple[int, int]] = None,
    verify_endo: Optional[bool] = None,
) -> InvariantResult:
    link = build_link(job, a1_override)
    result = invariant(link, cut=job.cut, strand=job.strand, verify_endo=verify_endo)
    return _specialized(result, job)


# ------------------------------------------------------------------
# invariant
# ------------------------------------------------------------------

def cmd_invariant(job: JobSpec) -> Dict[str, Any]:
    result = run_invariant(job)
    return build_invariant_document(result=result, seed=job.seed, specialized=job.specialize)


# ------------------------------------------------------------------
# sweep
# ------------------------------------------------------------------

@dataclass(frozen=True)
class SweepOutcome:
    table: FunctionTable
    document: Dict[str, Any]

    @property
    def complete(self) -> bool:
        return self.document["complete"]


def _sweep_row(payload: Tuple[Dict[str, Any], int, int]) -> Tuple[int, Optional[Scalar], Optional[str]]:
    """One sweep row; top-level so a process pool can pickle it."""
    job_data, component, a1 = payload
    job = JobSpec.model_validate(job_data)
    try:
        # one column suffices for a value; the full endomorphism check belongs to verify
        return a1, run_invariant(job, (component, a1), verify_endo=False).value, None
    except BudgetExceeded as exc:
        return a1, None, str(exc)


def _sweep_component(job: JobSpec) -> Tuple[int, ColorSpec]:
    ranged = [(cid, spec) for cid, spec in enumerate(job.colors, start=1) if spec.is_range]
    if len(ranged) != 1:
        raise ColoringError("sweep needs exactly one component colored with an a1 range lo..hi")
    return ranged[0]


def cmd_sweep(job: JobSpec) -> SweepOutcome:
    component, spec = _sweep_component(job)
    payloads = [(job.model_dump(), component, a1) for a1 in range(spec.lo, spec.hi + 1)]
    logger.info("Sweep started", extra={"component": component, "lo": spec.lo, "hi": spec.hi})

    if settings.SWEEP_WORKERS > 1:
        with ProcessPoolExecutor(max_workers=settings.SWEEP_WORKERS) as pool:
            results = list(pool.map(_sweep_row, payloads))
    else:
        results = []
        for payload in payloads:
            results.append(_sweep_row(payload))
            if results[-1][2] is not None:
                break

    values: Dict[Tuple[int, ...], Scalar] = {}
    reason = None
    for a1, value, error in results:
        if error is not None:
            reason = error
            break
        values[(a1,)] = value
    if not values:
        raise BudgetExceeded(reason or "sweep produced no rows")

    last = max(p[0] for p in values)
    complete = reason is None
    if not complete:
        logger.warning("Sweep cut short by a budget", extra={"last_a1": last, "reason": reason})

    table = FunctionTable((spec.lo,), (last,), values)
    link_colors = _colors(job, (component, spec.lo))
    document = build_sweep_document(
        braid=job.braid,
        colors=link_colors,
        component=component,
        lo=spec.lo,
        hi=spec.hi,
        rows=[{"a1": p[0], "value": v.to_text()} for p, v in sorted(values.items())],
        complete=complete,
        reason=reason,
        seed=job.seed,
        specialized=job.specialize,
    )
    return SweepOutcome(table, document)


# ------------------------------------------------------------------
# guess
# ------------------------------------------------------------------

def _split(table: FunctionTable, held: int) -> FunctionTable:
    """Fitting part of a table: the last ``held`` rows of every direction are held out."""
    hi = tuple(h - held for h in table.hi)
    if any(h < l for h, l in zip(hi, table.lo)):
        raise ValueError(f"table too small to hold out {held} point(s) per direction")
    return table.restrict(table.lo, hi)


def _search(fit: FunctionTable, direction: int, max_order: int, max_mdegree: int, mdirections):
    """First operator of the form p(M) L^d + q(M) for d = 1..max_order, else the general basis."""
    length = fit.length(direction)
    if length < required_length(1, max_mdegree, shape_only=True):
        raise ValueError(
            f"window length {length} in direction {direction + 1} is below "
            f"{required_length(1, max_mdegree, shape_only=True)}, the minimum for M-degree {max_mdegree}"
        )
    for order in range(1, max_order + 1):
        if length < required_length(order, max_mdegree, shape_only=True):
            break
        found = [
            op
            for op in guess_recurrence(fit, direction, order, max_mdegree, mdirections, shape_only=True)
            if witness_shape(op)
        ]
        if found:
            return found[0], []
    order = max_order
    while order > 1 and length < required_length(order, max_mdegree):
        order -= 1
    return None, guess_recurrence(fit, direction, order, max_mdegree, mdirections)


def _describe(op) -> Dict[str, Any]:
    shape = witness_shape(op)
    return {
        "direction": shape[0] + 1 if shape else None,
        "order": shape[1] if shape else None,
        "operator": op.to_text(),
    }


def guess_and_certify(
    fit: FunctionTable,
    held_out: FunctionTable,
    max_order: int,
    max_mdegree: int,
    extra_ops=(),
    all_m: bool = False,
) -> Dict[str, Any]:
    """Guess one witness per discrete direction and certify them together."""
    witnesses, general, reason = [], [], None
    mdirections = tuple(range(fit.rank)) if all_m else None
    for direction in range(fit.rank):
        try:
            op, others = _search(fit, direction, max_order, max_mdegree, mdirections)
        except DegenerateSystem as exc:
            return {"status": "no_witness", "reason": str(exc), "operators": [], "certificate": None}
        if op is not None:
            witnesses.append(op)
        else:
            general.extend(others)
            reason = reason or f"no operator of the form p(M) L^d + q(M) in direction {direction + 1}"
    witnesses.extend(extra_ops)
    listed = [_describe(op) for op in witnesses + general]

    if reason is None:
        try:
            certificate = certify(fit, witnesses, held_out)
            return {"status": "certified", "reason": None, "operators": listed, "certificate": certificate.model_dump()}
        except CertificationRefused as exc:
            reason = exc.reason
    if not listed:
        return {"status": "no_witness", "reason": f"no witness at these bounds: {reason}", "operators": [], "certificate": None}
    return {"status": "operators_only", "reason": reason, "operators": listed, "certificate": None}


def _builtin_windows(name: str, max_mdegree: int, held: int):
    spec = builtin(name)
    need = required_length(1, max_mdegree)
    hi = tuple(max(h, l + need - 1) for l, h in zip(spec.lo, spec.hi))
    fit = spec.tabulate(spec.lo, hi)
    held_out = spec.tabulate(spec.lo, tuple(h + held for h in hi))
    # continuous directions are not guessed; the library operators for them go along
    continuous_ops = []
    for op in spec.operators():
        shape = witness_shape(op)
        if shape is not None and shape[0] >= spec.rank:
            continuous_ops.append(op)
    return fit, held_out, continuous_ops


def cmd_guess(
    *,
    max_order: int,
    max_mdegree: int,
    table: Optional[FunctionTable] = None,
    builtin_name: Optional[str] = None,
    job: Optional[JobSpec] = None,
    seed: Optional[int] = None,
    all_m: bool = False,
) -> Dict[str, Any]:
    """Exactly one of ``table``, ``builtin_name`` or ``job`` (swept inline) is the source."""
    if sum(s is not None for s in (table, builtin_name, job)) != 1:
        raise ValueError("guess needs exactly one of a table, a builtin or a braid job")
    if max_order < 1 or max_mdegree < 0:
        raise ValueError("guess needs order >= 1 and M-degree >= 0")
    held = settings.HELD_OUT_POINTS
    if seed is None:
        seed = job.seed if job is not None else settings.DEFAULT_SEED

    extra_ops = []
    if builtin_name is not None:
        fit, held_out, extra_ops = _builtin_windows(builtin_name, max_mdegree, held)
        source = f"builtin:{builtin_name}"
    else:
        if job is not None:
            table = cmd_sweep(job).table
            source = f"sweep:{job.braid}"
        else:
            source = "table"
        fit, held_out = _split(table, held), table

    result = guess_and_certify(fit, held_out, max_order, max_mdegree, extra_ops, all_m)
    logger.info("Guess finished", extra={"source": source, "status": result["status"]})
    return build_certificate_document(
        source=source,
        max_order=max_order,
        max_mdegree=max_mdegree,
        operators=result["operators"],
        certificate=result["certificate"],
        status=result["status"],
        reason=result["reason"],
        seed=seed,
    )
