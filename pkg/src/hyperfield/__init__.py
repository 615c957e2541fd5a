"""Bicomplex-ring toolkit for two dissipatively coupled charged scalar fields."""

from .errors import (DomainError, HyperfieldError, ImaginaryFrequency,
                     NonConvergent, NotInvertible, PoleAtZeroMomentum,
                     TruncationOrderTooLarge, UndeterminedByAxioms)
from .ring import (Bicomplex, I_UNIT, IJ_UNIT, J_MINUS, J_PLUS, J_UNIT, ONE,
                   ZERO, add, conj_bar, exp_bicomplex, exp_hyperbolic_split,
                   exp_ring, idempotent_decompose, modulus, mul)
from .modes import (FieldParams, ModeSolution, dissipative_coefficients,
                    eom_residual, field_value, make_mode, omega)
from .operators import (CommutationTable, ModeOp, OperatorPoly, VacuumRules,
                        anticommutator, commutator, default_table,
                        generic_table, normal_order, pair_commutation_check,
                        polys_equal, vev)
from .commutators import (CommutatorResult, QuadratureSpec, bessel_k,
                          commutator_omega_omegadagger,
                          commutator_omega_pi_closed,
                          commutator_omega_pi_m0_limit,
                          commutator_omega_pi_quadrature,
                          commutator_pi_pidagger, difference_bracket,
                          figure_data, lattice_commutator, sum_bracket,
                          weighted_commutators, weighted_quadrature)
from .observables import (GeometrySpec, charge_density_classical, charge_poly,
                          geometry_kernel, h_gamma, hamiltonian_poly,
                          noether_residual, vev_H, vev_Q)
from .states import (PhasePair, StateVector, asymptotic_state_finite,
                     asymptotic_state_infinite, eta_k, evolve_vacuum,
                     norm_preservation, overlap_phases, overlap_with_vacuum,
                     project_view, schmidt_rank)

__version__ = "0.1.0"
