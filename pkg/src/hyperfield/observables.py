"""Hamiltonian and charge observables, geometry kernel, conservation check.

The Hamiltonian couples the two sectors through projected anticommutator
pairs weighted by h_gamma(k, k') and a geometry factor; on the infinite
line the geometry kernel collapses to a lattice Dirac delta and the double
momentum sum becomes diagonal.  The charge operator is anti-Hermitian and
its vacuum expectation cancels exactly under the constrained vacuum rules.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError
from .modes import (FieldParams, ModeSolution, field_space_derivative,
                    field_time_derivative, field_value, omega)
from .operators import (CommutationTable, ModeOp, OperatorPoly, VacuumRules,
                        anticommutator, vev)
from .ring import Bicomplex, J_MINUS, J_PLUS, J_UNIT

TWO_PI = 2.0 * math.pi

INFINITE_LINE = "infinite_line"
FINITE_INTERVAL = "finite_interval"


@dataclass(frozen=True)
class GeometrySpec:
    """Spatial region of the total system: full line or [L1, L2]."""

    kind: str = INFINITE_LINE
    L1: float = 0.0
    L2: float = 0.0

    def __post_init__(self):
        if self.kind not in (INFINITE_LINE, FINITE_INTERVAL):
            raise ValueError(f"unknown geometry {self.kind!r}")
        if self.kind == FINITE_INTERVAL and not self.L2 > self.L1:
            raise ValueError("finite interval requires L2 > L1")

    @property
    def length(self) -> float:
        return self.L2 - self.L1


def h_gamma(k: float, kprime: float, params: FieldParams) -> complex:
    """Quadratic Hamiltonian weight

    2 w' w + k' k / 2 + i gamma (w' + w) / 2 + (m^2 - gamma^2/4) / 2.

    On the diagonal k' = k the real part collapses to (5/2) w^2, the origin
    of the factor 5 in the asymptotic-state kernels.
    """
    w = omega(k, params)
    wp = omega(kprime, params)
    return (2.0 * wp * w + 0.5 * kprime * k
            + 0.5j * params.gamma * (wp + w) + 0.5 * params.m2_mod)


def geometry_kernel(q: float, geom: GeometrySpec,
                    delta_k: float | None = None) -> complex:
    """Spatial integral I(q) = Integral_system e^{-i q x} dx.

    Finite interval: (e^{-i q L1} - e^{-i q L2}) / (i q), with I(0) equal
    to the total length.  Infinite line: (2 pi) times the lattice delta,
    which needs the lattice spacing delta_k.
    """
    if geom.kind == FINITE_INTERVAL:
        if q == 0.0:
            return complex(geom.length)
        return (cmath.exp(-1j * q * geom.L1)
                - cmath.exp(-1j * q * geom.L2)) / (1j * q)
    if delta_k is None:
        raise DomainError("infinite-line kernel needs delta_k for the lattice delta")
    return TWO_PI / delta_k if q == 0.0 else 0.0


def _geometry_factor(k: float, kp: float, t: float, params: FieldParams,
                     geom: GeometrySpec, table: CommutationTable) -> complex:
    """G(k, k'; t) = e^{i (w_k - w_k') t} I(k - k')."""
    kern = geometry_kernel(k - kp, geom, table.delta_k)
    if kern == 0.0:
        return 0.0
    phase = cmath.exp(1j * (omega(k, params) - omega(kp, params)) * t)
    return phase * kern


def hamiltonian_terms(params: FieldParams, geom: GeometrySpec,
                      table: CommutationTable, t: float = 0.0):
    """Yield (k_index, kp_index, weight) for the displayed half of H.

    weight = delta_k^2 H_gamma(k, k') G(k, k'; t); for the infinite line
    only the diagonal survives.
    """
    dk = table.delta_k
    idx = table.momentum_indices()
    if geom.kind == INFINITE_LINE:
        for i in idx:
            k = table.momentum(i)
            yield i, i, dk * dk * h_gamma(k, k, params) * (TWO_PI / dk)
        return
    for i in idx:
        k = table.momentum(i)
        for j in idx:
            kp = table.momentum(j)
            g = _geometry_factor(k, kp, t, params, geom, table)
            if g != 0.0:
                yield i, j, dk * dk * h_gamma(k, kp, params) * g


def hamiltonian_poly(params: FieldParams, geom: GeometrySpec,
                     table: CommutationTable, t: float = 0.0) -> OperatorPoly:
    """Lattice Hamiltonian operator (displayed part plus Hermitian conjugate).

    H = sum w(k,k') [J+ {a1(k), b1(k')} + J- {b2(k'), a2(k)}] + h.c.;
    the conjugate part carries conj(w) on [J- {a1+, b1+} + J+ {b2+, a2+}].
    No damping factor enters: the idempotent projectors cancel them.
    """
    total = OperatorPoly.zero()
    for i, j, w in hamiltonian_terms(params, geom, table, t):
        c = Bicomplex.from_complex(w)
        cc = Bicomplex.from_complex(w.conjugate())
        total = total + anticommutator(
            ModeOp("a1", i, False), ModeOp("b1", j, False)).scale(J_PLUS * c)
        total = total + anticommutator(
            ModeOp("b2", j, False), ModeOp("a2", i, False)).scale(J_MINUS * c)
        total = total + anticommutator(
            ModeOp("a1", i, True), ModeOp("b1", j, True)).scale(J_MINUS * cc)
        total = total + anticommutator(
            ModeOp("b2", j, True), ModeOp("a2", i, True)).scale(J_PLUS * cc)
    return total


def charge_poly(params: FieldParams, table: CommutationTable) -> OperatorPoly:
    """Charge operator in its momentum-diagonal (infinite line) form.

    Q = -2i dk sum_k w_k [ J+{a1, b1} + J-{a1+, b1+}
                          - (J+{b2+, a2+} + J-{b2, a2}) ];
    anti-Hermitian by construction.
    """
    total = OperatorPoly.zero()
    dk = table.delta_k
    for i in table.momentum_indices():
        w = omega(table.momentum(i), params)
        c = Bicomplex.from_complex(-2j * dk * w)
        total = total + anticommutator(
            ModeOp("a1", i, False), ModeOp("b1", i, False)).scale(J_PLUS * c)
        total = total + anticommutator(
            ModeOp("a1", i, True), ModeOp("b1", i, True)).scale(J_MINUS * c)
        total = total + anticommutator(
            ModeOp("b2", i, True), ModeOp("a2", i, True)).scale(J_PLUS * (-1.0 * c))
        total = total + anticommutator(
            ModeOp("b2", i, False), ModeOp("a2", i, False)).scale(J_MINUS * (-1.0 * c))
    return total


def charge_density_classical(phi1: float, phi2: float, psi1: float, psi2: float,
                             dphi1: float, dphi2: float, dpsi1: float,
                             dpsi2: float) -> Bicomplex:
    """Charge density in the four real field components (d* = time derivative).

    i (dphi2 phi1 - dphi1 phi2 + dpsi1 psi2 - dpsi2 psi1)
    + j (dpsi1 phi1 + dpsi2 phi2 - dphi1 psi1 - dphi2 psi2);
    with psi = 0 the usual U(1) charge density survives.
    """
    i_part = dphi2 * phi1 - dphi1 * phi2 + dpsi1 * psi2 - dpsi2 * psi1
    j_part = dpsi1 * phi1 + dpsi2 * phi2 - dphi1 * psi1 - dphi2 * psi2
    return Bicomplex(0.0, i_part, j_part, 0.0)


def noether_residual(modes: list[ModeSolution], params: FieldParams,
                     x: float, t: float, h: float = 1e-3) -> Bicomplex:
    """Finite-difference residual of the conservation law d_t j0 = d_x flux.

    j0 = conj(W) dW/dt - W dconj(W)/dt + j gamma W conj(W) (the last term is
    the dissipative addition); flux = conj(W) dW/dx - W dconj(W)/dx.
    O(h^2) residual for on-shell modes.
    """
    def j0(xx: float, tt: float) -> Bicomplex:
        w = field_value(modes, xx, tt)
        wd = field_time_derivative(modes, xx, tt)
        return (w.conj() * wd - w * wd.conj()
                + J_UNIT * Bicomplex.from_complex(params.gamma) * w * w.conj())

    def flux(xx: float, tt: float) -> Bicomplex:
        w = field_value(modes, xx, tt)
        wx = field_space_derivative(modes, xx, tt)
        return w.conj() * wx - w * wx.conj()

    dt_j0 = (j0(x, t + h) - j0(x, t - h)) * (1.0 / (2.0 * h))
    dx_flux = (flux(x + h, t) - flux(x - h, t)) * (1.0 / (2.0 * h))
    return dt_j0 - dx_flux


def vev_H(params: FieldParams, geom: GeometrySpec, table: CommutationTable,
          rules: VacuumRules, t: float = 0.0) -> Bicomplex:
    """Vacuum expectation of the Hamiltonian; exactly zero when constrained."""
    return vev(hamiltonian_poly(params, geom, table, t), rules, table)


def vev_Q(params: FieldParams, table: CommutationTable,
          rules: VacuumRules) -> Bicomplex:
    """Vacuum expectation of the charge; exactly zero when constrained."""
    return vev(charge_poly(params, table), rules, table)
