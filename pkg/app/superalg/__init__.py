from app.superalg.graded_matrix import GradedMatrix, supercommutator
from app.superalg.typical_module import (
    BLOCKS,
    BasisIndex,
    TypicalColor,
    WeightTable,
    act_E1,
    act_E2,
    act_F1,
    act_F2,
    act_h,
    basis,
    chebyshev_P,
    generator,
    parity,
    parity_vector,
    q_power_h,
    specialize_a2,
    weight_table,
)
from app.superalg.dual import antipode, dual_generator
from app.superalg.relations import RelationReport, verify_relations
