"""Classical field layer: dispersion relation, damped plane-wave modes.

The coupled equations of motion split over the idempotent basis into a
damped sector (J+, coefficient -gamma/2) and an anti-damped mirror sector
(J-, coefficient +gamma/2).  Only real frequencies are admitted; momenta
with k^2 + M^2 < 0 fall in the IR-cutoff region and are rejected.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ImaginaryFrequency
from .ring import Bicomplex, J_MINUS, J_PLUS

PLUS = "plus"
MINUS = "minus"


@dataclass(frozen=True)
class FieldParams:
    """Mass m >= 0, dissipation gamma >= 0, spatial dimension dim >= 1."""

    m: float = 1.0
    gamma: float = 0.0
    dim: int = 1

    def __post_init__(self):
        if self.m < 0 or self.gamma < 0:
            raise ValueError("m and gamma must be nonnegative")
        if self.dim < 1:
            raise ValueError("dim must be a positive integer")

    @property
    def m2_mod(self) -> float:
        """Modified mass squared M^2 = m^2 - gamma^2/4."""
        return self.m * self.m - self.gamma * self.gamma / 4.0


def _ksq(k) -> float:
    if isinstance(k, (int, float)):
        return float(k) * float(k)
    return sum(float(c) * float(c) for c in k)


def _kdotx(k, x) -> float:
    if isinstance(k, (int, float)):
        return float(k) * float(x)
    return sum(float(a) * float(b) for a, b in zip(k, x))


def dissipative_coefficients(params: FieldParams) -> tuple[float, float]:
    """Damping exponents of the two sectors: (-gamma/2, +gamma/2)."""
    return (-params.gamma / 2.0, params.gamma / 2.0)


def omega(k, params: FieldParams) -> float:
    """Positive frequency sqrt(k^2 + M^2).

    Raises ImaginaryFrequency when k^2 + M^2 < 0 (IR-cutoff region for
    gamma > 2m).
    """
    rad = _ksq(k) + params.m2_mod
    if rad < 0.0:
        raise ImaginaryFrequency(
            f"k^2 + M^2 = {rad} < 0: momentum below the IR cutoff")
    return math.sqrt(rad)


@dataclass(frozen=True)
class ModeSolution:
    """One damped plane-wave mode of a single sector.

    The mode contributes  P exp(Gamma t) [A e^{i theta} + B e^{-i theta}]
    with theta = omega t - k.x, P the sector projector, A = coeff_a and
    B = coeff_b.
    """

    branch: str
    coeff_a: Bicomplex
    coeff_b: Bicomplex
    k: object
    omega: float
    Gamma: float

    def projector(self) -> Bicomplex:
        return J_PLUS if self.branch == PLUS else J_MINUS


def make_mode(branch: str, k, params: FieldParams,
              coeff_a: Bicomplex, coeff_b: Bicomplex) -> ModeSolution:
    """Mode with frequency and damping consistent with the field parameters."""
    if branch not in (PLUS, MINUS):
        raise ValueError(f"unknown branch {branch!r}")
    g1, g2 = dissipative_coefficients(params)
    return ModeSolution(branch, coeff_a, coeff_b, k,
                        omega(k, params), g1 if branch == PLUS else g2)


def _phase(mode: ModeSolution, x, t: float) -> complex:
    return complex(mode.omega * t - _kdotx(mode.k, x))


def field_value(modes: list[ModeSolution], x, t: float) -> Bicomplex:
    """Superposition of mode contributions at the spacetime point (x, t)."""
    total = Bicomplex.zero()
    for mode in modes:
        theta = _phase(mode, x, t)
        damp = math.exp(mode.Gamma * t)
        ephase = cmath.exp(1j * theta)
        osc = (mode.coeff_a * Bicomplex.from_complex(ephase)
               + mode.coeff_b * Bicomplex.from_complex(1.0 / ephase))
        total = total + mode.projector() * (damp * osc)
    return total


def field_time_derivative(modes: list[ModeSolution], x, t: float) -> Bicomplex:
    total = Bicomplex.zero()
    for mode in modes:
        theta = _phase(mode, x, t)
        damp = math.exp(mode.Gamma * t)
        ephase = cmath.exp(1j * theta)
        ca = (mode.Gamma + 1j * mode.omega) * ephase
        cb = (mode.Gamma - 1j * mode.omega) / ephase
        osc = (mode.coeff_a * Bicomplex.from_complex(ca)
               + mode.coeff_b * Bicomplex.from_complex(cb))
        total = total + mode.projector() * (damp * osc)
    return total


def field_space_derivative(modes: list[ModeSolution], x, t: float,
                           axis: int = 0) -> Bicomplex:
    total = Bicomplex.zero()
    for mode in modes:
        kc = mode.k if isinstance(mode.k, (int, float)) else mode.k[axis]
        theta = _phase(mode, x, t)
        damp = math.exp(mode.Gamma * t)
        ephase = cmath.exp(1j * theta)
        osc = (mode.coeff_a * Bicomplex.from_complex(-1j * kc * ephase)
               + mode.coeff_b * Bicomplex.from_complex(1j * kc / ephase))
        total = total + mode.projector() * (damp * osc)
    return total


def eom_residual(mode: ModeSolution, params: FieldParams, x, t: float) -> Bicomplex:
    """Residual of the sector equation of motion at (x, t).

    Evaluates d_t^2 - laplacian +/- gamma d_t + m^2 on the mode via its
    analytic derivatives; the sign of the dissipative term is + for the
    plus sector and - for the minus sector.
    """
    sign = 1.0 if mode.branch == PLUS else -1.0
    ksq = _ksq(mode.k)
    m2 = params.m * params.m
    g = mode.Gamma

    def factor(freq_sign: float) -> complex:
        z = g + 1j * freq_sign * mode.omega
        return z * z + ksq + sign * params.gamma * z + m2

    theta = _phase(mode, x, t)
    damp = math.exp(g * t)
    ephase = cmath.exp(1j * theta)
    osc = (mode.coeff_a * Bicomplex.from_complex(factor(+1.0) * ephase)
           + mode.coeff_b * Bicomplex.from_complex(factor(-1.0) / ephase))
    return mode.projector() * (damp * osc)
