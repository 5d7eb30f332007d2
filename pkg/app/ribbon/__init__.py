from app.ribbon.tensor import TensorFactor, TensorSpace, flip, super_kron
from app.ribbon.r_matrix import (
    braiding,
    braiding_inverse,
    coproduct,
    coproduct_op,
    eprime_fprime,
    e1f1_factor,
    k_matrix,
    qexp_factor,
    r_inverse,
    r_matrix,
)
from app.ribbon.pivotal import (
    DualityMaps,
    dual_twist_scalar,
    duality_maps,
    modified_dim,
    qdim,
    twist_matrix,
    twist_scalar,
)
from app.ribbon.ribbon_data import RibbonData
