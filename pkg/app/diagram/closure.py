"""
Trace closure of a colored braid, cut open along one component.

The strand to open is conjugated to position 1 (sigma_1 ... sigma_{p-1} below
the braid, their inverses above), so the closure is unchanged and the open
strand is leftmost. Return arcs of the remaining strands run to the right:

    bottom:  [V_1]
    cups:    V_i (x) V_i* inserted right of V_{i-1}, for i = 2..n
    braid:   crossings between up strands at positions i, i+1
    caps:    ev_left on (V_i, V_i*), for i = n..2

The register peaks at width 2n - 1, so a 2-strand closure such as sigma_1^3
runs on (V_1, V_2, V_2*) rather than the (V, V, V*, V*) of closing every
strand with its own cup.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from app.config import settings
from app.diagram.braid_parser import BraidWord, components
from app.ribbon.tensor import TensorFactor
from app.superalg.typical_module import TypicalColor
from app.utils.errors import BudgetExceeded, ColoringError
from app.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ColoredLink:
    braid: BraidWord
    colors: Tuple[TypicalColor, ...]

    def __post_init__(self):
        count = len(components(self.braid))
        if len(self.colors) != count:
            raise ColoringError(f"link has {count} components but {len(self.colors)} colors were given")
        variables = [c.var for c in self.colors]
        if len(set(variables)) != len(variables):
            raise ColoringError("distinct components must use distinct a2 variables")
        for color in self.colors:
            if color.a1 > settings.MAX_A1:
                raise BudgetExceeded(f"a1={color.a1} exceeds MAX_A1={settings.MAX_A1}")

    @property
    def components(self) -> List[List[int]]:
        return components(self.braid)

    def component_of_position(self, position: int) -> int:
        """1-based component id of a 1-based bottom position."""
        for cid, comp in enumerate(self.components, start=1):
            if position in comp:
                return cid
        raise IndexError(f"no strand at position {position}")

    def color_of_position(self, position: int) -> TypicalColor:
        return self.colors[self.component_of_position(position) - 1]

    def self_writhe(self) -> Tuple[int, ...]:
        totals = [0] * len(self.colors)
        for left, right, sign in self.braid.crossing_strands():
            c_left = self.component_of_position(left + 1)
            if c_left == self.component_of_position(right + 1):
                totals[c_left - 1] += sign
        return tuple(totals)


# ------------------------------------------------------------------
# Slice events
# ------------------------------------------------------------------

@dataclass(frozen=True)
class Crossing:
    position: int
    sign: int


@dataclass(frozen=True)
class Cup:
    position: int
    kind: str
    color: TypicalColor


@dataclass(frozen=True)
class Cap:
    position: int
    kind: str


@dataclass(frozen=True)
class Identity:
    pass


Event = Union[Crossing, Cup, Cap, Identity]


def _apply_event(register: Tuple[TensorFactor, ...], event: Event) -> Tuple[TensorFactor, ...]:
    if isinstance(event, Identity):
        return register
    if isinstance(event, Crossing):
        i = event.position
        if i + 1 >= len(register) or not (register[i].up and register[i + 1].up):
            raise TypeError(f"crossing at {i} needs two up strands")
        return register[:i] + (register[i + 1], register[i]) + register[i + 2:]
    if isinstance(event, Cup):
        up, down = TensorFactor(event.color, True), TensorFactor(event.color, False)
        pair = (up, down) if event.kind == "right" else (down, up)
        return register[: event.position] + pair + register[event.position:]
    if isinstance(event, Cap):
        i = event.position
        if i + 1 >= len(register):
            raise TypeError(f"cap at {i} outside register of width {len(register)}")
        left, right = register[i], register[i + 1]
        expected = (True, False) if event.kind == "left" else (False, True)
        if (left.up, right.up) != expected or left.color != right.color:
            raise TypeError(f"cap '{event.kind}' at {i} does not match {left} (x) {right}")
        return register[:i] + register[i + 2:]
    raise TypeError(f"unknown slice event {event!r}")


@dataclass(frozen=True)
class SlicedTangle:
    bottom: Tuple[TensorFactor, ...]
    slices: Tuple[Event, ...]

    def registers(self) -> List[Tuple[TensorFactor, ...]]:
        """Register before the first slice and after every slice."""
        out = [self.bottom]
        for event in self.slices:
            out.append(_apply_event(out[-1], event))
        return out

    @property
    def top(self) -> Tuple[TensorFactor, ...]:
        return self.registers()[-1]

    @property
    def max_width(self) -> int:
        return max(len(r) for r in self.registers())

    def validate(self) -> None:
        if self.top != self.bottom:
            raise TypeError(f"tangle is not an endomorphism: {self.bottom} -> {self.top}")


def close_and_cut(link: ColoredLink, cut: int = 1, strand: Optional[int] = None) -> SlicedTangle:
    """
    (1,1)-tangle obtained by opening component ``cut`` (1-based) at the top
    point ``strand`` (1-based position; default its leftmost strand).
    """
    comps = link.components
    if not 1 <= cut <= len(comps):
        raise ColoringError(f"no component {cut}; the link has {len(comps)}")
    position = comps[cut - 1][0] if strand is None else strand
    if position not in comps[cut - 1]:
        raise ColoringError(f"strand {position} does not belong to component {cut}")

    n = link.braid.strands
    lower = tuple(range(1, position))
    upper = tuple(-i for i in range(position - 1, 0, -1))
    word = lower + link.braid.letters + upper

    # bottom position j of the conjugated braid enters the original braid at lower_top[j]
    lower_top = BraidWord(n, lower).top_positions()
    colors = [link.color_of_position(lower_top[j] + 1) for j in range(n)]

    width = 2 * n - 1
    if width > settings.MAX_REGISTER_WIDTH:
        raise BudgetExceeded(f"register width {width} exceeds MAX_REGISTER_WIDTH={settings.MAX_REGISTER_WIDTH}")

    slices: List[Event] = []
    for i in range(2, n + 1):
        slices.append(Cup(i - 1, "right", colors[i - 1]))
    for letter in word:
        slices.append(Crossing(abs(letter) - 1, 1 if letter > 0 else -1))
    for i in range(n, 1, -1):
        slices.append(Cap(i - 1, "left"))
    if not slices:
        slices.append(Identity())

    tangle = SlicedTangle((TensorFactor(colors[0], True),), tuple(slices))
    tangle.validate()
    logger.info(
        "Closed and cut braid",
        extra={"braid": link.braid.to_text(), "cut": cut, "strand": position, "slices": len(slices)},
    )
    return tangle
