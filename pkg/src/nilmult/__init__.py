from .abelian import (
    FinAbelian,
    iterated_tensor,
    max_abelian,
    multiplier_abelian,
    normalize,
    s_function,
    tensor,
)
from .collect import (
    IntLattice,
    NilGroupCtx,
    NilWord,
    commutator,
    graded_image,
    inverse,
    lattice_equal,
    multiply,
    power,
    smith_quotient,
    verify_e1_congruence,
)
from .descriptor import parse
from .gamma import gamma, multiplier_direct_product
from .hall import BasicCommutator, HallBasis, compare, generate, is_mixed
from .limits import (
    basis_ceiling,
    partition_ceiling,
    reset_ceilings,
    series_ceiling,
    set_basis_ceiling,
    set_partition_ceiling,
    set_series_ceiling,
)
from .pgroups import (
    Abelian,
    CenterType,
    ExtraSpecial,
    ExtraSpecialType,
    GeneralizedExtraSpecial,
    Product,
    attains_order_bound,
    capability,
    direct_product,
    gamma_star_dihedral,
    multiplier,
    order_bound_exponent,
)
from .witt import mobius, witt, witt_graded

__all__ = ["mobius", "witt", "witt_graded"]
__all__ += ["BasicCommutator", "HallBasis", "compare", "generate", "is_mixed"]
__all__ += ["IntLattice", "NilGroupCtx", "NilWord", "commutator", "graded_image", "inverse"]
__all__ += ["lattice_equal", "multiply", "power", "smith_quotient", "verify_e1_congruence"]
__all__ += ["FinAbelian", "iterated_tensor", "max_abelian", "multiplier_abelian", "normalize"]
__all__ += ["s_function", "tensor"]
__all__ += ["gamma", "multiplier_direct_product"]
__all__ += ["Abelian", "CenterType", "ExtraSpecial", "ExtraSpecialType"]
__all__ += ["GeneralizedExtraSpecial", "Product", "attains_order_bound", "capability"]
__all__ += ["direct_product", "gamma_star_dihedral", "multiplier", "order_bound_exponent"]
__all__ += ["parse"]
__all__ += ["basis_ceiling", "partition_ceiling", "reset_ceilings", "series_ceiling"]
__all__ += ["set_basis_ceiling", "set_partition_ceiling", "set_series_ceiling"]
