from app.scalars.laurent import LaurentPoly, Monomial, Q, gen_name, parse_gen_name, x_gen, z_gen
from app.scalars.scalar import (
    ONE,
    ZERO,
    Scalar,
    eval_at_point,
    parse_scalar,
    random_point,
    rename_variables,
    shift,
    specialize,
)
from app.scalars.qnumbers import Exponent, a2, q_power, qbracket, qfactorial_paren, qint, qpochhammer
