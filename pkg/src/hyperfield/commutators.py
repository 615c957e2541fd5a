"""Equal-time field commutators: lattice evaluation, closed forms, oracle.

Three commutators arise.  With the difference bracket
B_diff = J+ (rho1 - conj rho4) + J- (conj rho1 - rho4) and the sum bracket
B_sum = J+ (rho1 + conj rho4) + J- (conj rho1 + rho4):

    [Omega, Omega+] = (2 pi)^n B_diff delta(dx)
    [Pi, Pi+]       = (2 pi)^n B_diff (delta'' - M^2 delta)(dx)
    [Omega, Pi]     = -i B_sum Integral omega_k e^{i k dx} dk
                    =  2 i B_sum (M/|dx|) K1(M |dx|)        (M^2 > 0, 1d)

All three follow mechanically from the commutation table; the symbolic
lattice route (build the field operators as OperatorPoly and commute) and
the regularized-quadrature route are kept as independent cross-checks of
the closed forms.  Weighted variants use the 1/sqrt(omega_k) measure and
swap the kernels around (K0 for [Omega,Omega+], K1 for [Pi,Pi+], a plain
delta for [Omega,Pi]).

An alternative closed-form convention (difference bracket, squared-mass
Bessel argument) circulates for these commutators; it is reproducible
through ``alt_form=True`` for comparison plots but is not validated by
the quadrature oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.special import k0 as _scipy_k0, k1 as _scipy_k1, y1 as _scipy_y1

from .errors import DomainError, NonConvergent
from .modes import FieldParams, omega
from .operators import CommutationTable, ModeOp, OperatorPoly, normal_order
from .ring import Bicomplex, J_MINUS, J_PLUS

TWO_PI = 2.0 * math.pi


def bessel_k(order: int, z: float) -> float:
    """Modified Bessel function of the second kind, order 0 or 1."""
    if z <= 0.0:
        raise DomainError(f"bessel_k requires z > 0, got {z}")
    if order == 0:
        return float(_scipy_k0(z))
    if order == 1:
        return float(_scipy_k1(z))
    raise DomainError(f"order must be 0 or 1, got {order}")


def difference_bracket(table: CommutationTable, k: float = 0.0) -> Bicomplex:
    """J+ (rho1 - conj rho4) + J- (conj rho1 - rho4) at momentum pair (k, k)."""
    r1 = table.rho_at(0, k, k)
    r4 = table.rho_at(3, k, k)
    return J_PLUS * (r1 - r4.conj()) + J_MINUS * (r1.conj() - r4)


def sum_bracket(table: CommutationTable, k: float = 0.0) -> Bicomplex:
    """J+ (rho1 + conj rho4) + J- (conj rho1 + rho4) at momentum pair (k, k)."""
    r1 = table.rho_at(0, k, k)
    r4 = table.rho_at(3, k, k)
    return J_PLUS * (r1 + r4.conj()) + J_MINUS * (r1.conj() + r4)


# ---------------------------------------------------------------------------
# structural results (delta-type kernels)
# ---------------------------------------------------------------------------

KERNEL_DELTA = "delta"
KERNEL_DELTA2_M2 = "delta_second_derivative_minus_M2_delta"
KERNEL_K1_OVER_DX = "bessel_K1_over_dx"
KERNEL_K0 = "bessel_K0"
KERNEL_DIVERGENT = "divergent"


@dataclass(frozen=True)
class CommutatorResult:
    """Structural commutator: coefficient times a named kernel.

    For delta kernels the value is coefficient * (2 pi)^n * kernel(dx);
    delta_coeff / delta2_coeff carry the split of composite kernels.
    value_at evaluates smooth kernels pointwise (None for distributions).
    """

    which: str
    coefficient: Bicomplex
    kernel: str
    delta_coeff: Optional[Bicomplex] = None
    delta2_coeff: Optional[Bicomplex] = None
    value_at: Optional[Callable[[float], Bicomplex]] = None


def commutator_omega_omegadagger(table: CommutationTable) -> CommutatorResult:
    """[Omega, Omega+]: a pure Dirac delta, independent of t, gamma and m."""
    coeff = difference_bracket(table)
    return CommutatorResult("omega_omega", coeff, KERNEL_DELTA,
                            delta_coeff=coeff)


def commutator_pi_pidagger(table: CommutationTable,
                           params: FieldParams) -> CommutatorResult:
    """[Pi, Pi+]: delta'' - M^2 delta with the same difference bracket."""
    coeff = difference_bracket(table)
    m2 = params.m2_mod
    return CommutatorResult("pi_pi", coeff, KERNEL_DELTA2_M2,
                            delta_coeff=coeff * Bicomplex.from_complex(-m2),
                            delta2_coeff=coeff)


# ---------------------------------------------------------------------------
# symbolic lattice route
# ---------------------------------------------------------------------------

def field_operator_poly(x: float, t: float, params: FieldParams,
                        table: CommutationTable,
                        weighted: bool = False) -> OperatorPoly:
    """Lattice field operator Omega(x, t) as an OperatorPoly.

    Plus sector: exp(-gamma t / 2) [a1(k) e^{i th} + a2+(k) e^{-i th}],
    minus sector: exp(+gamma t / 2) [b1+(k) e^{i th} + b2(k) e^{-i th}],
    th = omega_k t - k x, integrated as delta_k * sum over the lattice.
    """
    g = params.gamma
    dk = table.delta_k
    out: dict = {}
    poly = OperatorPoly(out)
    for i in table.momentum_indices():
        k = table.momentum(i)
        w = omega(k, params)
        meas = dk / math.sqrt(w) if weighted else dk
        ph = cmath.exp(1j * (w * t - k * x))
        dp = math.exp(-g * t / 2.0) * meas
        dm = math.exp(+g * t / 2.0) * meas
        poly._merged((ModeOp("a1", i, False),),
                     J_PLUS * Bicomplex.from_complex(dp * ph), out)
        poly._merged((ModeOp("a2", i, True),),
                     J_PLUS * Bicomplex.from_complex(dp / ph), out)
        poly._merged((ModeOp("b1", i, True),),
                     J_MINUS * Bicomplex.from_complex(dm * ph), out)
        poly._merged((ModeOp("b2", i, False),),
                     J_MINUS * Bicomplex.from_complex(dm / ph), out)
    return poly


def momentum_operator_poly(x: float, t: float, params: FieldParams,
                           table: CommutationTable,
                           weighted: bool = False) -> OperatorPoly:
    """Lattice conjugate momentum Pi(x, t) as an OperatorPoly.

    Pi = -{ e^{+gamma t/2} J+ i omega [b1 e^{-i th} - b2+ e^{i th}]
          + e^{-gamma t/2} J- i omega [a1+ e^{-i th} - a2 e^{i th}] }.
    """
    g = params.gamma
    dk = table.delta_k
    out: dict = {}
    poly = OperatorPoly(out)
    for i in table.momentum_indices():
        k = table.momentum(i)
        w = omega(k, params)
        meas = dk / math.sqrt(w) if weighted else dk
        ph = cmath.exp(1j * (w * t - k * x))
        cp = -1j * w * math.exp(+g * t / 2.0) * meas
        cm = -1j * w * math.exp(-g * t / 2.0) * meas
        poly._merged((ModeOp("b1", i, False),),
                     J_PLUS * Bicomplex.from_complex(cp / ph), out)
        poly._merged((ModeOp("b2", i, True),),
                     J_PLUS * Bicomplex.from_complex(-cp * ph), out)
        poly._merged((ModeOp("a1", i, True),),
                     J_MINUS * Bicomplex.from_complex(cm / ph), out)
        poly._merged((ModeOp("a2", i, False),),
                     J_MINUS * Bicomplex.from_complex(-cm * ph), out)
    return poly


def lattice_commutator(which: str, x: float, xprime: float, t: float,
                       params: FieldParams, table: CommutationTable,
                       weighted: bool = False) -> Bicomplex:
    """Equal-time commutator evaluated symbolically on the lattice.

    which is one of 'omega_omega', 'pi_pi', 'omega_pi'.  The result of the
    operator commutator must be central; its scalar part is returned.
    """
    if which == "omega_omega":
        left = field_operator_poly(x, t, params, table, weighted)
        right = field_operator_poly(xprime, t, params, table, weighted).adjoint()
    elif which == "pi_pi":
        left = momentum_operator_poly(x, t, params, table, weighted)
        right = momentum_operator_poly(xprime, t, params, table, weighted).adjoint()
    elif which == "omega_pi":
        left = field_operator_poly(x, t, params, table, weighted)
        right = momentum_operator_poly(xprime, t, params, table, weighted)
    else:
        raise ValueError(f"unknown commutator {which!r}")
    comm = normal_order(left.commutator_with(right), table)
    scalar = comm.scalar_part()
    rest = OperatorPoly({w: c for w, c in comm.terms.items() if w != ()})
    if not rest.is_zero(tol=1e-9 * max(1.0, scalar.norm())):
        raise ArithmeticError("field commutator is not central")
    return scalar


def lattice_delta_profile(dx: float, table: CommutationTable) -> complex:
    """Lattice realization delta_k * sum_k e^{i k dx} of (2 pi) delta(dx)."""
    return table.delta_k * sum(
        cmath.exp(1j * table.momentum(i) * dx) for i in table.momentum_indices())


# ---------------------------------------------------------------------------
# regularized quadrature oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureSpec:
    """Gaussian regulator e^{-eps k^2} with Richardson extrapolation to 0.

    regulator_epsilon None picks a scale from dx automatically.  The
    epsilon sequence is halved extrapolation_steps times; the final two
    extrapolants must agree (Cauchy test) or NonConvergent is raised.
    """

    regulator_epsilon: Optional[float] = None
    k_max: Optional[float] = None
    samples: int = 0
    extrapolation_steps: int = 5

    def __post_init__(self):
        if self.extrapolation_steps < 2:
            raise ValueError("extrapolation_steps must be >= 2")


def _auto_epsilon(dx: float) -> float:
    # keep exp(-dx^2 / 4 eps) below ~1e-70 while keeping the O(eps) term,
    # whose coefficient grows like 1/dx^4, small enough for extrapolation
    return min(dx * dx / 660.0, 2e-3)


def _omega_transform(dx: float, params: FieldParams,
                     spec: QuadratureSpec) -> float:
    """Finite part of Integral_{-inf}^{inf} omega_k e^{i k dx} dk (1d, even).

    For M^2 >= 0 integrates 2 Int_0^inf sqrt(k^2 + M^2) cos(k dx); for
    M^2 < 0 the IR cutoff k^2 >= -M^2 applies and the substitution
    q = sqrt(k^2 + M^2) keeps the integrand smooth at the edge.
    """
    adx = abs(dx)
    if adx == 0.0:
        raise NonConvergent("omega transform has no finite part at dx = 0")
    m2 = params.m2_mod
    eps0 = spec.regulator_epsilon if spec.regulator_epsilon else _auto_epsilon(adx)
    steps = spec.extrapolation_steps

    vals = []
    for s in range(steps):
        eps = eps0 / 2.0 ** s
        kmax = spec.k_max if spec.k_max else math.sqrt(40.0 / eps) + math.sqrt(abs(m2))
        n = spec.samples if spec.samples else max(
            8001, int(72.0 * kmax * adx / TWO_PI) | 1)
        if n % 2 == 0:
            n += 1
        if m2 >= 0.0:
            k = np.linspace(0.0, kmax, n)
            f = np.sqrt(k * k + m2) * np.cos(k * adx) * np.exp(-eps * k * k)
        else:
            # substitute q = sqrt(k^2 + M^2): k = sqrt(q^2 - M^2) >= sqrt(-M^2)
            q = np.linspace(0.0, kmax, n)
            kk = np.sqrt(q * q - m2)
            f = (q * q / kk) * np.cos(kk * adx) * np.exp(-eps * q * q)
        vals.append(2.0 * _simpson(f, k if m2 >= 0.0 else q))

    return _richardson(vals)


def _simpson(y: np.ndarray, x: np.ndarray) -> float:
    h = x[1] - x[0]
    return float(h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum()
                            + 2.0 * y[2:-2:2].sum()))


def _richardson(vals: list[float]) -> float:
    """Extrapolate a sequence F(eps), F(eps/2), ... to eps -> 0."""
    table = [list(vals)]
    for j in range(1, len(vals)):
        prev = table[-1]
        table.append([(2.0 ** j * prev[i + 1] - prev[i]) / (2.0 ** j - 1.0)
                      for i in range(len(prev) - 1)])
    last = table[-1][0]
    prev = table[-2][0] if len(table) > 1 else last
    scale = max(abs(last), abs(vals[0]), 1e-300)
    if abs(last - prev) > 1e-4 * scale + 1e-12:
        raise NonConvergent(
            f"Richardson sequence failed its Cauchy test: {vals} -> {last}")
    return last


def commutator_omega_pi_quadrature(delta_x: float, params: FieldParams,
                                   spec: QuadratureSpec,
                                   table: CommutationTable) -> Bicomplex:
    """[Omega, Pi] by regularized quadrature; the oracle for the closed form.

    Evaluates -i B_sum * Integral omega_k e^{i k dx} dk with the Gaussian
    regulator and extrapolation; raises NonConvergent at dx = 0.
    """
    if params.dim != 1:
        raise DomainError("quadrature oracle supports dim = 1 only")
    f = _omega_transform(delta_x, params, spec)
    return Bicomplex.from_complex(-1j * f) * sum_bracket(table)


def commutator_omega_pi_closed(delta_x: float, params: FieldParams,
                               table: CommutationTable,
                               alt_form: bool = False) -> Bicomplex:
    """Closed form of [Omega, Pi] in 1+1 dimensions, M^2 > 0.

    Oracle-validated form: 2 i B_sum (M / |dx|) K1(M |dx|).  The alt_form
    flag instead returns the alternative convention
    -2 i B_diff (M / dx) K1(M^2 dx) for comparison plots.
    """
    if params.dim != 1:
        raise DomainError("closed form derived for dim = 1 only")
    m2 = params.m2_mod
    if m2 <= 0.0:
        raise DomainError(f"closed form requires M^2 > 0, got {m2}")
    if delta_x == 0.0:
        raise DomainError("commutator diverges at dx = 0")
    mmod = math.sqrt(m2)
    if alt_form:
        profile = (mmod / delta_x) * bessel_k(1, m2 * abs(delta_x))
        return Bicomplex.from_complex(-2j * profile) * difference_bracket(table)
    profile = (mmod / abs(delta_x)) * bessel_k(1, mmod * abs(delta_x))
    return Bicomplex.from_complex(2j * profile) * sum_bracket(table)


def commutator_omega_pi_m0_limit(delta_x: float, gamma: float,
                                 table: CommutationTable,
                                 alt_form: bool = False) -> Bicomplex:
    """m -> 0 limit of [Omega, Pi] (M^2 = -gamma^2/4, IR-cutoff integral).

    The cutoff integral evaluates to an oscillatory Bessel-Y form,
    Integral = (pi gamma / 2 |dx|) Y1(gamma |dx| / 2), so the commutator is
    -i B_sum times that.  alt_form returns the alternative
    B_diff |gamma| K1(gamma^4 dx / 16) convention instead.
    """
    if delta_x == 0.0:
        raise DomainError("commutator diverges at dx = 0")
    if gamma <= 0.0:
        raise DomainError("m -> 0 limit requires gamma > 0")
    adx = abs(delta_x)
    if alt_form:
        profile = abs(gamma) * bessel_k(1, gamma ** 4 * adx / 16.0)
        return Bicomplex.from_complex(profile) * difference_bracket(table)
    f0 = (math.pi * gamma / (2.0 * adx)) * float(_scipy_y1(gamma * adx / 2.0))
    return Bicomplex.from_complex(-1j * f0) * sum_bracket(table)


# ---------------------------------------------------------------------------
# weighted measure variants
# ---------------------------------------------------------------------------

def weighted_commutators(which: str, delta_x: float, params: FieldParams,
                         table: CommutationTable) -> CommutatorResult:
    """Commutators with the 1/sqrt(omega_k) integration weight.

    omega_omega -> 2 B_diff K0(M |dx|); pi_pi -> 2 B_diff (M/|dx|) K1(M |dx|);
    omega_pi -> -i B_sum times a plain (2 pi)^n delta.  The kernels are
    interchanged relative to the unweighted set.
    """
    if which == "omega_pi":
        coeff = Bicomplex.from_complex(-1j) * sum_bracket(table)
        return CommutatorResult("w_omega_pi", coeff, KERNEL_DELTA,
                                delta_coeff=coeff)
    if params.dim != 1:
        raise DomainError("weighted Bessel kernels derived for dim = 1 only")
    m2 = params.m2_mod
    if m2 <= 0.0:
        raise DomainError(f"weighted kernels require M^2 > 0, got {m2}")
    mmod = math.sqrt(m2)
    bdiff = difference_bracket(table)
    if which == "omega_omega":
        def value_at(dx: float, _b=bdiff, _m=mmod) -> Bicomplex:
            if dx == 0.0:
                raise DomainError("K0 kernel diverges at dx = 0")
            return _b * Bicomplex.from_complex(2.0 * bessel_k(0, _m * abs(dx)))
        return CommutatorResult("w_omega_omega", bdiff, KERNEL_K0,
                                value_at=value_at)
    if which == "pi_pi":
        def value_at(dx: float, _b=bdiff, _m=mmod) -> Bicomplex:
            if dx == 0.0:
                raise DomainError("K1 kernel diverges at dx = 0")
            prof = 2.0 * (_m / abs(dx)) * bessel_k(1, _m * abs(dx))
            return _b * Bicomplex.from_complex(prof)
        return CommutatorResult("w_pi_pi", bdiff, KERNEL_K1_OVER_DX,
                                value_at=value_at)
    raise ValueError(f"unknown weighted commutator {which!r}")


def weighted_quadrature(which: str, delta_x: float, params: FieldParams,
                        spec: QuadratureSpec,
                        table: CommutationTable) -> Bicomplex:
    """Oracle for the weighted kernels by direct regularized integration."""
    adx = abs(delta_x)
    if adx == 0.0:
        raise NonConvergent("no finite part at dx = 0")
    m2 = params.m2_mod
    if m2 <= 0.0:
        raise DomainError("weighted oracle requires M^2 > 0")
    eps0 = spec.regulator_epsilon if spec.regulator_epsilon else _auto_epsilon(adx)
    power = {"omega_omega": -1, "pi_pi": 1}[which]
    vals = []
    for s in range(spec.extrapolation_steps):
        eps = eps0 / 2.0 ** s
        kmax = spec.k_max if spec.k_max else math.sqrt(40.0 / eps)
        n = spec.samples if spec.samples else max(
            8001, int(72.0 * kmax * adx / TWO_PI) | 1)
        if n % 2 == 0:
            n += 1
        k = np.linspace(0.0, kmax, n)
        w = np.sqrt(k * k + m2)
        f = w ** power * np.cos(k * adx) * np.exp(-eps * k * k)
        vals.append(2.0 * _simpson(f, k))
    integral = _richardson(vals)
    if which == "omega_omega":
        return difference_bracket(table) * Bicomplex.from_complex(integral)
    return difference_bracket(table) * Bicomplex.from_complex(-integral)


# ---------------------------------------------------------------------------
# figure sweeps
# ---------------------------------------------------------------------------

def figure_data(figure: str, grid, params: FieldParams,
                table: CommutationTable | None = None) -> list[tuple[float, float, float]]:
    """CSV-ready sweep (abscissa, re, im) for the commutator profiles.

    fig1: [Omega, Pi] closed form vs dx.     fig2: same vs M at fixed dx.
    fig6/fig6b: weighted [Omega, Omega+] vs dx / vs M.
    fig7/fig7b: weighted [Pi, Pi+] vs dx / vs M.
    grid is (lo, hi, steps) plus an optional fixed dx as 4th entry for the
    M sweeps (default 1.0).  Reported re/im are the plus-sector components.
    """
    if table is None:
        table = CommutationTable(rho=(Bicomplex.one(), Bicomplex.zero(),
                                      Bicomplex.zero(), Bicomplex.zero()))
    lo, hi, steps = grid[0], grid[1], int(grid[2])
    fixed_dx = grid[3] if len(grid) > 3 else 1.0
    if steps < 1:
        raise DomainError("empty sweep")
    xs = [lo + (hi - lo) * i / max(steps - 1, 1) for i in range(steps)]

    def value_dx(dx: float) -> Bicomplex:
        if figure == "fig1":
            return commutator_omega_pi_closed(dx, params, table)
        if figure.startswith("fig6"):
            return weighted_commutators("omega_omega", dx, params, table).value_at(dx)
        if figure.startswith("fig7"):
            return weighted_commutators("pi_pi", dx, params, table).value_at(dx)
        raise ValueError(f"unknown figure {figure!r}")

    rows = []
    if figure in ("fig1", "fig6", "fig7"):
        for dx in xs:
            if dx == 0.0:
                raise DomainError("sweep grid must avoid dx = 0")
            val = value_dx(dx).plus()
            rows.append((dx, val.real, val.imag))
        return rows
    if figure in ("fig2", "fig6b", "fig7b"):
        base = "fig1" if figure == "fig2" else figure[:4]
        for mmod in xs:
            if mmod <= 0.0:
                raise DomainError("M sweep requires M > 0")
            m = math.sqrt(mmod * mmod + params.gamma ** 2 / 4.0)
            p = FieldParams(m=m, gamma=params.gamma, dim=params.dim)
            if base == "fig1":
                val = commutator_omega_pi_closed(fixed_dx, p, table).plus()
            elif base == "fig6":
                val = weighted_commutators("omega_omega", fixed_dx, p,
                                           table).value_at(fixed_dx).plus()
            else:
                val = weighted_commutators("pi_pi", fixed_dx, p,
                                           table).value_at(fixed_dx).plus()
            rows.append((mmod, val.real, val.imag))
        return rows
    raise ValueError(f"unknown figure {figure!r}")
