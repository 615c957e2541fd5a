"""Truncated evolved and asymptotic vacuum states, projections, diagnostics.

Basis kets are labeled by multisets of excitation-pair labels
(tag, k_index, kp_index, ordering_flag): tag '2ba' for the mirror-copy
pairs created in the plus sector, '1ab' for the subsystem pairs created in
the minus sector, and the flag distinguishing the two operator orderings
the anticommutator produces.  Distinct label multisets are orthonormal.

The creation part of the evolution exponent acts as a commuting family of
label appenders, so the truncated exponential is a plain multiset
expansion with per-label scalar weights.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .errors import PoleAtZeroMomentum, TruncationOrderTooLarge
from .modes import FieldParams, omega
from .observables import (FINITE_INTERVAL, GeometrySpec, geometry_kernel,
                          h_gamma, hamiltonian_terms)
from .operators import CommutationTable, VacuumRules
from .ring import Bicomplex, J_MINUS, J_PLUS, exp_bicomplex

TWO_PI = 2.0 * math.pi

TAG_MIRROR = "2ba"    # J+ sector: pairs of b2+, a2+ quanta (environment copy)
TAG_SYSTEM = "1ab"    # J- sector: pairs of a1+, b1+ quanta (subsystem)

DEFAULT_BASIS_CAP = 200_000


@dataclass(frozen=True)
class PhasePair:
    """Elliptic and hyperbolic phases of the vacuum overlap."""

    alpha: float
    beta: float


class StateVector:
    """Truncated ket: map from basis-ket label to Bicomplex amplitude.

    The vacuum carries the empty label ().  Keys are sorted tuples of pair
    labels (tag, k_index, kp_index, flag).
    """

    __slots__ = ("amplitudes", "truncation_order")

    def __init__(self, amplitudes: dict | None = None, truncation_order: int = 0):
        self.amplitudes = {} if amplitudes is None else amplitudes
        self.truncation_order = truncation_order

    @staticmethod
    def vacuum() -> "StateVector":
        return StateVector({(): Bicomplex.one()}, 0)

    def inner(self, other: "StateVector") -> Bicomplex:
        """Ring inner product sum_K conj(amp_K) other_amp_K."""
        total = Bicomplex.zero()
        small, large = ((self.amplitudes, other.amplitudes)
                        if len(self.amplitudes) <= len(other.amplitudes)
                        else (other.amplitudes, self.amplitudes))
        for key, amp in small.items():
            mate = large.get(key)
            if mate is not None:
                if small is self.amplitudes:
                    total = total + amp.conj() * mate
                else:
                    total = total + mate.conj() * amp
        return total

    def __add__(self, other: "StateVector") -> "StateVector":
        out = dict(self.amplitudes)
        for key, amp in other.amplitudes.items():
            s = out.get(key, Bicomplex.zero()) + amp
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return StateVector(out, max(self.truncation_order, other.truncation_order))

    def support(self) -> set:
        return set(self.amplitudes)

    def excited_support(self) -> set:
        return {k for k in self.amplitudes if k != ()}

    def to_jsonable(self) -> dict:
        """Ket label -> four real amplitude components, keys sorted."""
        def label_str(key) -> str:
            if not key:
                return "vacuum"
            return ";".join(f"{t}:{k},{kp},{f}" for (t, k, kp, f) in key)

        amps = {label_str(k): [float(c) for c in v.to_tuple()]
                for k, v in sorted(self.amplitudes.items())}
        return {"truncation_order": self.truncation_order, "amplitudes": amps}


def _expand_exponential(labels_plus: dict, labels_minus: dict, order: int,
                        basis_cap: int) -> StateVector:
    """exp of a creation exponent with per-label scalars, truncated.

    labels_* map (tag, k, kp, flag) -> complex weight; plus labels carry a
    J+ ring amplitude, minus labels J-.  Mixed-sector products vanish
    (J+ J- = 0), so the two sectors expand independently.
    """
    amps: dict = {(): Bicomplex.one()}

    for labels, sector in ((labels_plus, J_PLUS), (labels_minus, J_MINUS)):
        if not labels:
            continue
        names = sorted(labels)
        for n in range(1, order + 1):
            count = math.comb(len(names) + n - 1, n)
            if len(amps) + count > basis_cap:
                raise TruncationOrderTooLarge(
                    f"basis would exceed cap {basis_cap} at order {n}")
            for combo in combinations_with_replacement(names, n):
                scalar = complex(1.0)
                mult = 1
                run = 1
                for idx in range(n):
                    scalar *= labels[combo[idx]]
                    if idx > 0 and combo[idx] == combo[idx - 1]:
                        run += 1
                        mult *= run
                    else:
                        run = 1
                amp = sector * Bicomplex.from_complex(scalar / mult)
                if not amp.is_zero():
                    amps[combo] = amp
    return StateVector(amps, order)


def evolve_vacuum(t: float, order: int, params: FieldParams,
                  geom: GeometrySpec, table: CommutationTable,
                  rules: VacuumRules,
                  basis_cap: int = DEFAULT_BASIS_CAP) -> StateVector:
    """Truncated evolution of the vacuum, exp(i H t)|0>, constrained rules.

    Under the constraints the annihilation part of the exponent acts as
    the identity on the vacuum and the creation part carries weight
    i t conj(w) per momentum pair, w the Hamiltonian weight.
    """
    if not rules.constrained:
        raise ValueError("evolve_vacuum requires constrained vacuum rules")
    labels_plus: dict = {}
    labels_minus: dict = {}
    for i, j, w in hamiltonian_terms(params, geom, table, t):
        z = 1j * t * w.conjugate()
        if z == 0:
            continue
        for flag in (0, 1):
            labels_plus[(TAG_MIRROR, i, j, flag)] = z
            labels_minus[(TAG_SYSTEM, i, j, flag)] = z
    return _expand_exponential(labels_plus, labels_minus, order, basis_cap)


def overlap_phases(t: float, params: FieldParams, geom: GeometrySpec,
                   table: CommutationTable, rules: VacuumRules) -> PhasePair:
    """Phases (alpha, beta) of <0|0(t)> = e^{i alpha} e^{j beta}.

    alpha = t Re W and beta = -t Im W with
    W = sum_pairs w [lambda1_plus] + conj(w [lambda2_minus]); both vanish
    identically under the constrained rules.
    """
    a = rules.lambda1.plus()
    b = rules.lambda2.minus()
    w_sum = complex(0.0)
    if a != 0 or b != 0:
        for _i, _j, w in hamiltonian_terms(params, geom, table, t):
            w_sum += w * a + (w * b).conjugate()
    return PhasePair(t * w_sum.real, -t * w_sum.imag)


def overlap_with_vacuum(t: float, params: FieldParams, geom: GeometrySpec,
                        table: CommutationTable,
                        rules: VacuumRules) -> Bicomplex:
    """<0|0(t)> as a bicomplex phase; identically 1 under constrained rules."""
    ph = overlap_phases(t, params, geom, table, rules)
    return exp_bicomplex(ph.alpha, ph.beta)


def norm_preservation(t: float, order: int, params: FieldParams,
                      geom: GeometrySpec, table: CommutationTable,
                      rules: VacuumRules,
                      basis_cap: int = DEFAULT_BASIS_CAP) -> float:
    """Deviation of <0(t)|0(t)> from 1 on the truncated state.

    In the ring pairing the excited amplitudes are zero divisors
    (conj(J+ c) J+ c = 0), so the deviation vanishes identically at every
    truncation order; the returned float records the numerical residue.
    """
    state = evolve_vacuum(t, order, params, geom, table, rules, basis_cap)
    return (state.inner(state) - Bicomplex.one()).norm()


def eta_k(k: float, params: FieldParams) -> complex:
    """Frequency-diagonal kernel (w/|k|) conj(h_gamma(k, k)).

    Equals (5/2) w^3/|k| - i gamma w^2/|k|: the 5/2 comes from the diagonal
    real part of h_gamma, the 1/|k| from the delta(w' - w) Jacobian.
    """
    if k == 0.0:
        raise PoleAtZeroMomentum("eta_k has a pole at k = 0")
    w = omega(k, params)
    return (w / abs(k)) * h_gamma(k, k, params).conjugate()


def asymptotic_state_finite(order: int, params: FieldParams, L1: float,
                            L2: float, table: CommutationTable,
                            include_cross_term: bool = False,
                            basis_cap: int = DEFAULT_BASIS_CAP) -> StateVector:
    """Large-time state for a finite total system [L1, L2], truncated.

    The time-oscillating factor acts as a delta sequence in the frequency
    difference; keeping the frequency-diagonal k' = k branch gives the
    exponent (L2 - L1) dk sum_k eta_k W(k, k).  The k' = -k branch (which
    multiplies I(2k) rather than the total length) is off by default and
    available through include_cross_term.
    """
    geom = GeometrySpec(FINITE_INTERVAL, L1, L2)
    labels_plus: dict = {}
    labels_minus: dict = {}
    dk = table.delta_k
    for i in table.momentum_indices():
        k = table.momentum(i)
        if k == 0.0:
            raise PoleAtZeroMomentum("lattice must exclude k = 0")
        z = geom.length * dk * eta_k(k, params)
        for flag in (0, 1):
            labels_plus[(TAG_MIRROR, i, i, flag)] = z
            labels_minus[(TAG_SYSTEM, i, i, flag)] = z
        if include_cross_term:
            w = omega(k, params)
            kern = geometry_kernel(2.0 * k, geom).conjugate()
            zc = dk * (w / abs(k)) * h_gamma(k, -k, params).conjugate() * kern
            mi = _mirror_index(i, table)
            if mi is not None:
                for flag in (0, 1):
                    labels_plus[(TAG_MIRROR, i, mi, flag)] = zc
                    labels_minus[(TAG_SYSTEM, i, mi, flag)] = zc
    return _expand_exponential(labels_plus, labels_minus, order, basis_cap)


def _mirror_index(i: int, table: CommutationTable):
    """Lattice index carrying momentum -momentum(i), if present."""
    target = -table.momentum(i)
    for j in table.momentum_indices():
        if table.momentum(j) == target:
            return j
    return None


def project_view(state: StateVector, side: str) -> StateVector:
    """Projection J+ (side 'plus') or J- ('minus') of every amplitude.

    The plus view retains the mirror-copy kets (tag '2ba'), the minus view
    the subsystem kets (tag '1ab'); the two views recompose to the state.
    """
    proj = J_PLUS if side == "plus" else J_MINUS
    out = {}
    for key, amp in state.amplitudes.items():
        p = proj * amp
        if not p.is_zero():
            out[key] = p
    return StateVector(out, state.truncation_order)


def asymptotic_state_infinite(t_values, params: FieldParams,
                              table: CommutationTable) -> list[dict]:
    """Divergence/cyclostationarity diagnostics for the infinite total system.

    The geometry kernel is a Dirac delta, so each mode carries the factor
    exp(z_k(t)) with z_k(t) = i t (2 pi dk) conj(h_gamma(k, k)): a pure
    phase when gamma = 0 (cyclostationary) and an exponential growth of
    rate gamma * 2 pi dk sum_k w_k when gamma > 0.
    """
    dk = table.delta_k
    ks = [table.momentum(i) for i in table.momentum_indices()]
    hbar = [h_gamma(k, k, params).conjugate() for k in ks]
    rate_predicted = params.gamma * TWO_PI * dk * sum(omega(k, params) for k in ks)

    out = []
    for t in t_values:
        zs = [1j * t * TWO_PI * dk * h for h in hbar]
        log_mod = sum(z.real for z in zs)
        drift = max((abs(abs(cmath.exp(z)) - 1.0) for z in zs), default=0.0)
        measured = log_mod / t if t > 0 else 0.0
        out.append({
            "t": float(t),
            "log_modulus": log_mod,
            "modulus_growth_rate": measured,
            "predicted_growth_rate": rate_predicted,
            "is_cyclostationary": params.gamma == 0.0 and drift < 1e-12,
            "divergent": params.gamma > 0.0,
        })
    return out


def schmidt_rank(state: StateVector, partition: set,
                 threshold: float = 1e-10) -> int:
    """Schmidt rank of the state across a momentum-index bipartition.

    Each ket multiset splits into the pair labels whose first momentum
    index lies in the partition and the rest; the amplitude matrix over
    (left, right) labels is SVD'd in each idempotent sector and the larger
    count of singular values above threshold is returned.
    """
    split: dict = {}
    for key, amp in state.amplitudes.items():
        left = tuple(p for p in key if p[1] in partition)
        right = tuple(p for p in key if p[1] not in partition)
        split[(left, right)] = amp

    lefts = sorted({lr[0] for lr in split})
    rights = sorted({lr[1] for lr in split})
    li = {l: n for n, l in enumerate(lefts)}
    ri = {r: n for n, r in enumerate(rights)}

    rank = 0
    for sector in ("plus", "minus"):
        mat = np.zeros((len(lefts), len(rights)), dtype=complex)
        for (l, r), amp in split.items():
            mat[li[l], ri[r]] = amp.plus() if sector == "plus" else amp.minus()
        if mat.size:
            sv = np.linalg.svd(mat, compute_uv=False)
            rank = max(rank, int((sv > threshold).sum()))
    return rank
