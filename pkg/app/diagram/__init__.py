from app.diagram.braid_parser import BraidWord, components, parse_braid
from app.diagram.closure import (
    Cap,
    ColoredLink,
    Crossing,
    Cup,
    Identity,
    SlicedTangle,
    close_and_cut,
)
from app.diagram.evaluator import (
    InvariantResult,
    default_ribbon,
    evaluate,
    evaluate_column,
    invariant,
    scalar_of_endo,
)
