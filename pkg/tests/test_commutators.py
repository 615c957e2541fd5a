import cmath
import math

import numpy as np
import pytest

from hyperfield.commutators import (KERNEL_DELTA, KERNEL_DELTA2_M2,
                                    QuadratureSpec, bessel_k,
                                    commutator_omega_omegadagger,
                                    commutator_omega_pi_closed,
                                    commutator_omega_pi_m0_limit,
                                    commutator_omega_pi_quadrature,
                                    commutator_pi_pidagger,
                                    difference_bracket, figure_data,
                                    lattice_commutator, sum_bracket,
                                    weighted_commutators, weighted_quadrature)
from hyperfield.errors import DomainError, NonConvergent
from hyperfield.modes import FieldParams
from hyperfield.operators import CommutationTable, generic_table
from hyperfield.ring import Bicomplex, J_MINUS, J_PLUS


@pytest.fixture
def rho_table():
    return CommutationTable(
        rho=(Bicomplex(0.9, 0.2, 0.1, -0.3), Bicomplex.zero(),
             Bicomplex.zero(), Bicomplex(0.4, -0.5, 0.2, 0.1)),
        delta_k=0.25, N=5)


def bessel_oracle(order: int, z: float) -> float:
    """Independent integral representation Int_0^inf e^{-z cosh t} cosh(nu t) dt."""
    t = np.linspace(0.0, 30.0, 300_001)
    f = np.exp(-z * np.cosh(t).clip(max=700.0 / max(z, 1e-12)))
    w = f * np.cosh(order * t)
    h = t[1] - t[0]
    return float(h / 3.0 * (w[0] + w[-1] + 4 * w[1:-1:2].sum() + 2 * w[2:-2:2].sum()))


class TestBesselK:
    def test_k1_at_one(self):
        assert bessel_k(1, 1.0) == pytest.approx(0.6019072301972346, rel=1e-12)
        assert bessel_k(1, 1.0) == pytest.approx(bessel_oracle(1, 1.0), rel=1e-10)

    def test_k0_at_one(self):
        assert bessel_k(0, 1.0) == pytest.approx(0.4210244382407083, rel=1e-12)
        assert bessel_k(0, 1.0) == pytest.approx(bessel_oracle(0, 1.0), rel=1e-10)

    def test_against_oracle_over_range(self):
        for z in (1e-3, 0.1, 1.0, 5.0, 20.0):
            assert bessel_k(0, z) == pytest.approx(bessel_oracle(0, z), rel=1e-9)
            assert bessel_k(1, z) == pytest.approx(bessel_oracle(1, z), rel=1e-9)

    def test_asymptotic_tail(self):
        z = 50.0
        assert bessel_k(0, z) * math.exp(z) * math.sqrt(z) == pytest.approx(
            math.sqrt(math.pi / 2.0), rel=0.01)

    def test_domain(self):
        with pytest.raises(DomainError):
            bessel_k(0, 0.0)
        with pytest.raises(DomainError):
            bessel_k(1, -1.0)
        with pytest.raises(DomainError):
            bessel_k(2, 1.0)


class TestStructuralCommutators:
    def test_omega_omega_delta_kernel(self, rho_table):
        res = commutator_omega_omegadagger(rho_table)
        assert res.kernel == KERNEL_DELTA
        assert res.coefficient.is_close(difference_bracket(rho_table), 1e-15)

    def test_omega_omega_coefficient_examples(self):
        t_equal = CommutationTable(rho=(Bicomplex.one(), Bicomplex.zero(),
                                        Bicomplex.zero(), Bicomplex.one()))
        assert commutator_omega_omegadagger(t_equal).coefficient.is_zero()
        t_gen = generic_table()
        assert commutator_omega_omegadagger(t_gen).coefficient.is_close(
            Bicomplex.one(), 1e-15)

    def test_abelian_table(self):
        t0 = CommutationTable(rho=(Bicomplex.zero(),) * 4)
        assert commutator_omega_omegadagger(t0).coefficient.is_zero()

    def test_pi_pi_kernel_structure(self, rho_table):
        p = FieldParams(m=1.5, gamma=1.0)
        res = commutator_pi_pidagger(rho_table, p)
        assert res.kernel == KERNEL_DELTA2_M2
        assert res.delta2_coeff.is_close(difference_bracket(rho_table), 1e-15)
        expected_delta = difference_bracket(rho_table) * Bicomplex.from_complex(-p.m2_mod)
        assert res.delta_coeff.is_close(expected_delta, 1e-14)

    def test_pi_pi_limits(self, rho_table):
        # M^2 = 0: pure delta''
        res0 = commutator_pi_pidagger(rho_table, FieldParams(m=1.0, gamma=2.0))
        assert res0.delta_coeff.is_zero()
        # m = 0, gamma = 2: delta coefficient is +gamma^2/4 times the bracket
        resm = commutator_pi_pidagger(rho_table, FieldParams(m=0.0, gamma=2.0))
        assert resm.delta_coeff.is_close(
            difference_bracket(rho_table) * Bicomplex.from_complex(1.0), 1e-14)


class TestLatticeRoute:
    def test_time_independence(self, rho_table):
        p = FieldParams(m=1.2, gamma=0.8)
        for which in ("omega_omega", "pi_pi"):
            vals = [lattice_commutator(which, 0.3, 1.1, t, p, rho_table)
                    for t in (0.0, 1.0, 10.0)]
            for v in vals[1:]:
                assert v.is_close(vals[0], 1e-12 * max(vals[0].norm(), 1.0))

    def test_gamma_independence_omega_omega(self, rho_table):
        vals = [lattice_commutator("omega_omega", 0.3, 1.1, 2.0,
                                   FieldParams(m=1.2, gamma=g), rho_table)
                for g in (0.0, 1.0, 2.0)]
        for v in vals[1:]:
            assert v.is_close(vals[0], 1e-12 * max(vals[0].norm(), 1.0))

    def test_matches_structural_delta_realization(self, rho_table):
        # [Omega, Omega+](dx) on the lattice: per-k bracket times e^{ik dx}
        p = FieldParams(m=1.0, gamma=0.5)
        dx = 0.7
        got = lattice_commutator("omega_omega", 0.0, dx, 1.3, p, rho_table)
        expect = Bicomplex.zero()
        r1, r4 = rho_table.rho[0], rho_table.rho[3]
        for i in rho_table.momentum_indices():
            k = rho_table.momentum(i)
            e = Bicomplex.from_complex(rho_table.delta_k * cmath.exp(1j * k * dx))
            expect = expect + (J_PLUS * r1 + J_MINUS * r1.conj()) * e
            expect = expect - (J_PLUS * r4.conj() + J_MINUS * r4) * e.conj()
        assert got.is_close(expect, 1e-12)

    def test_hermiticity_relation_holds(self, rho_table):
        p = FieldParams(m=1.0, gamma=0.7)
        a = lattice_commutator("omega_omega", 0.3, 1.1, 1.0, p, rho_table)
        b = lattice_commutator("omega_omega", 1.1, 0.3, 1.0, p, rho_table).conj()
        assert a.is_close(b, 1e-12)

    def test_sigma_switches_time_dependence_on(self, rho_table):
        ts = CommutationTable(rho=rho_table.rho, sigma=(Bicomplex(0.3),) * 4,
                              delta_k=0.25, N=5)
        p = FieldParams(m=1.0, gamma=0.7)
        v0 = lattice_commutator("omega_omega", 0.3, 1.1, 0.0, p, ts)
        v1 = lattice_commutator("omega_omega", 0.3, 1.1, 1.0, p, ts)
        assert not v0.is_close(v1, 1e-9)


class TestQuadratureOracle:
    def test_closed_vs_quadrature_grid(self):
        p = FieldParams(m=1.0, gamma=0.0)
        t = generic_table()
        spec = QuadratureSpec()
        for n in range(10):
            dx = 0.5 + 4.5 * n / 9.0
            closed = commutator_omega_pi_closed(dx, p, t)
            quad = commutator_omega_pi_quadrature(dx, p, spec, t)
            assert (closed - quad).norm() <= 1e-6 * closed.norm()

    def test_gamma_enters_through_modified_mass(self, rho_table):
        p = FieldParams(m=1.3, gamma=1.0)
        spec = QuadratureSpec()
        closed = commutator_omega_pi_closed(1.7, p, rho_table)
        quad = commutator_omega_pi_quadrature(1.7, p, spec, rho_table)
        assert (closed - quad).norm() <= 1e-6 * closed.norm()

    def test_nonconvergent_at_zero(self):
        with pytest.raises(NonConvergent):
            commutator_omega_pi_quadrature(0.0, FieldParams(m=1.0),
                                           QuadratureSpec(), generic_table())

    def test_ir_cutoff_branch(self):
        # M^2 < 0: quadrature integrates over k^2 >= -M^2 and matches the
        # oscillatory closed form of the m -> 0 limit at m = 0
        t = generic_table()
        spec = QuadratureSpec()
        for dx in (1.0, 2.5):
            quad = commutator_omega_pi_quadrature(dx, FieldParams(m=0.0, gamma=2.0),
                                                  spec, t)
            closed = commutator_omega_pi_m0_limit(dx, 2.0, t)
            assert (closed - quad).norm() <= 1e-4 * max(closed.norm(), 1e-12)

    def test_closed_form_value(self):
        # frozen: 2 i (M/|dx|) K1(M |dx|) with unit bracket
        t = generic_table()
        got = commutator_omega_pi_closed(1.0, FieldParams(m=1.0, gamma=0.0), t)
        expect = Bicomplex.from_complex(2j * 0.6019072301972346)
        assert got.is_close(expect, 1e-10)

    def test_bessel_tail_envelope(self):
        # |closed form| bounded by C e^{-M dx}/sqrt(dx) in the tail
        t = generic_table()
        p = FieldParams(m=1.0, gamma=0.0)
        C = 3.0
        for dx in (5.0, 8.0, 12.0, 20.0):
            val = commutator_omega_pi_closed(dx, p, t).norm()
            assert val <= C * math.exp(-dx) / math.sqrt(dx)

    def test_closed_form_domain_errors(self):
        t = generic_table()
        with pytest.raises(DomainError):
            commutator_omega_pi_closed(0.0, FieldParams(m=1.0), t)
        with pytest.raises(DomainError):
            commutator_omega_pi_closed(1.0, FieldParams(m=1.0, gamma=2.5), t)

    def test_alt_form_variant_differs(self):
        t = generic_table()
        p = FieldParams(m=1.2, gamma=0.0)
        a = commutator_omega_pi_closed(1.0, p, t)
        b = commutator_omega_pi_closed(1.0, p, t, alt_form=True)
        assert not a.is_close(b, 1e-3)


class TestM0Limit:
    def test_decay_at_large_separation(self):
        t = generic_table()
        vals = [commutator_omega_pi_m0_limit(dx, 2.0, t).norm()
                for dx in (50.0, 200.0)]
        assert vals[1] < vals[0] < 0.05

    def test_domain_error_at_zero(self):
        with pytest.raises(DomainError):
            commutator_omega_pi_m0_limit(0.0, 2.0, generic_table())

    def test_small_gamma_large_value(self):
        # M^2 -> 0: the profile approaches the 1/dx^2 envelope and grows
        t = generic_table()
        small = commutator_omega_pi_m0_limit(1.0, 0.05, t).norm()
        assert small == pytest.approx(2.0, rel=0.05)  # 2/dx^2 envelope at dx=1


class TestWeighted:
    def test_kernels(self):
        p = FieldParams(m=1.0, gamma=0.0)
        t = generic_table()
        woo = weighted_commutators("omega_omega", 1.0, p, t)
        assert woo.kernel == "bessel_K0"
        assert woo.value_at(1.0).is_close(
            Bicomplex(2 * 0.4210244382407083), 1e-10)
        wpp = weighted_commutators("pi_pi", 1.0, p, t)
        assert wpp.value_at(1.0).is_close(
            Bicomplex(2 * 0.6019072301972346), 1e-10)
        wop = weighted_commutators("omega_pi", 1.0, p, t)
        assert wop.kernel == KERNEL_DELTA
        assert wop.coefficient.is_close(Bicomplex.from_complex(-1j)
                                        * sum_bracket(t), 1e-14)

    def test_weighted_vs_quadrature(self):
        p = FieldParams(m=1.0, gamma=0.0)
        t = generic_table()
        spec = QuadratureSpec()
        for which in ("omega_omega", "pi_pi"):
            for dx in (0.5, 1.5, 4.0):
                c = weighted_commutators(which, dx, p, t).value_at(dx)
                q = weighted_quadrature(which, dx, p, spec, t)
                assert (c - q).norm() <= 1e-6 * c.norm()

    def test_interchange_map(self):
        # weighted [Pi, Pi+] = -i * unweighted [Omega, Pi] when rho4 = 0
        p = FieldParams(m=1.0, gamma=0.6)
        t = generic_table()
        for dx in (0.8, 2.0):
            wpp = weighted_commutators("pi_pi", dx, p, t).value_at(dx)
            op = commutator_omega_pi_closed(dx, p, t)
            assert wpp.is_close(Bicomplex.from_complex(-1j) * op, 1e-12)

    def test_weighted_lattice_time_independence(self, rho_table):
        p = FieldParams(m=1.2, gamma=0.8)
        vals = [lattice_commutator("omega_omega", 0.3, 1.1, t, p, rho_table,
                                   weighted=True) for t in (0.0, 2.0)]
        assert vals[0].is_close(vals[1], 1e-12 * max(vals[0].norm(), 1.0))


class TestFigureData:
    def test_fig1_shape(self):
        p = FieldParams(m=1.0, gamma=0.0)
        rows = figure_data("fig1", (0.1, 30.0, 60), p)
        mags = [math.hypot(r, i) for _x, r, i in rows]
        assert all(a > b for a, b in zip(mags, mags[1:]))
        assert mags[-1] < 1e-8

    def test_fig2_continuity(self):
        p = FieldParams(m=1.0, gamma=0.4)
        rows = figure_data("fig2", (0.3, 3.0, 80, 1.0), p)
        vals = [complex(r, i) for _x, r, i in rows]
        scale = max(abs(v) for v in vals)
        assert all(abs(b - a) < 0.1 * scale for a, b in zip(vals, vals[1:]))

    def test_fig6_is_k0_profile(self):
        p = FieldParams(m=1.0, gamma=0.0)
        rows = figure_data("fig6", (0.5, 2.0, 4), p)
        for dx, re, im in rows:
            assert re == pytest.approx(2 * bessel_k(0, dx), rel=1e-10)
            assert im == 0.0

    def test_grid_validation(self):
        p = FieldParams(m=1.0, gamma=0.0)
        with pytest.raises(DomainError):
            figure_data("fig1", (0.0, 1.0, 5), p)
        with pytest.raises(DomainError):
            figure_data("fig1", (0.5, 1.0, 0), p)
