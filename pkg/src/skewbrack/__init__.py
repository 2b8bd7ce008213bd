"""Exact computation of the graded Lie structure on the cohomology of
polynomial skew group algebras: canonical representatives, Gerstenhaber
brackets, noncommutative Poisson structures, and the parameter spaces of
the associated PBW deformations."""

from .cyclo import CycNum, ExactError, order_of_unity, quantum_integer, root_of_unity
from .group import (
    ConjClassData,
    EigenData,
    Frame,
    Group,
    GroupError,
    change_of_basis,
    conjugated_eigen_data,
)
from .poly import (
    Poly,
    STD,
    change_coords,
    divides_linear,
    group_act,
    poly_to_basis,
    poly_to_std,
    quantum_partial,
    twisted_partial,
)
from .cochain import (
    Cochain,
    HSpace,
    act_on_cochain,
    h_space_basis,
    in_H,
    invariant_basis,
    is_invariant,
    koszul_dual_diff,
    proj_H,
    proj_Vg,
    reynolds,
)
from .bracket import (
    BarMultiplier,
    BracketError,
    TauImage,
    abelian_bracket,
    circ_det,
    circ_direct,
    divisibility_check,
    gamma,
    gamma_prime,
    gerstenhaber_bracket,
    phi_star,
    poisson_check,
    prebracket,
    sn_bracket,
    square_bracket,
    tau_evaluator,
    upsilon_eval,
)
from .hecke import (
    constant_cocycle_space,
    hecke_parameter_space,
    kappa_from_mu1,
    mu1,
    pbw_relations,
    relation_strings,
)

__version__ = "0.1.0"
