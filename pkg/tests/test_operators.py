import math
import random

import pytest

from hyperfield.errors import UndeterminedByAxioms
from hyperfield.operators import (CommutationTable, ModeOp, OperatorPoly,
                                  VacuumRules, anticommutator, commutator,
                                  generic_table, normal_order, pair_poly,
                                  pair_commutation_check, polys_equal, vev)
from hyperfield.ring import Bicomplex, J_MINUS, J_PLUS


@pytest.fixture
def table():
    return CommutationTable(
        rho=(Bicomplex(0.9, 0.2, 0.1, -0.3), Bicomplex.zero(),
             Bicomplex.zero(), Bicomplex(0.4, -0.5, 0.2, 0.1)),
        delta_k=0.25, N=4)


class TestCommutator:
    def test_cross_pair_diagonal(self, table):
        c = commutator(ModeOp("a1", 2), ModeOp("b1", 2), table)
        assert c.is_close(table.rho[0] * (1.0 / table.delta_k), 1e-14)

    def test_off_diagonal_vanishes(self, table):
        assert commutator(ModeOp("a1", 2), ModeOp("b1", 3), table).is_zero()

    def test_antisymmetry(self, table):
        c1 = commutator(ModeOp("a1", 1), ModeOp("b1", 1), table)
        c2 = commutator(ModeOp("b1", 1), ModeOp("a1", 1), table)
        assert (c1 + c2).is_zero()

    def test_daggered_pair_conjugated(self, table):
        c = commutator(ModeOp("b2", 0, True), ModeOp("a2", 0, True), table)
        assert c.is_close(table.rho[3].conj() * (1.0 / table.delta_k), 1e-14)

    def test_mixed_dagger_vanishes_with_zero_sigma(self, table):
        assert commutator(ModeOp("a1", 1), ModeOp("b2", -1, True), table).is_zero()

    def test_same_family_vanishes(self, table):
        assert commutator(ModeOp("a1", 1), ModeOp("a1", 1, True), table).is_zero()
        assert commutator(ModeOp("b1", 1), ModeOp("b1", 1, True), table).is_zero()
        assert commutator(ModeOp("a1", 1), ModeOp("a2", 1), table).is_zero()

    def test_momentum_dependent_rho(self):
        rho1 = lambda k, kp: Bicomplex(k * kp, 0, 0, 0)
        t = CommutationTable(rho=(rho1, Bicomplex.zero(), Bicomplex.zero(),
                                  Bicomplex.zero()), delta_k=0.5, N=3)
        c = commutator(ModeOp("a1", 2), ModeOp("b1", 2), t)
        assert c.is_close(Bicomplex(1.0 * 1.0 / 0.5, 0, 0, 0), 1e-14)

    def test_sigma_support_on_opposite_momenta(self, table):
        ts = CommutationTable(rho=table.rho, sigma=(Bicomplex(0.3),) * 4,
                              delta_k=0.25, N=4)
        c = commutator(ModeOp("a1", 2), ModeOp("b1", -2, True), ts)
        assert c.is_close(Bicomplex(0.3 / 0.25), 1e-14)
        assert commutator(ModeOp("a1", 2), ModeOp("b1", 2, True), ts).is_zero()


class TestNormalOrder:
    def test_off_diagonal_swap_no_central(self, table):
        poly = OperatorPoly.from_word((ModeOp("b1", 3), ModeOp("a1", 2)))
        no = normal_order(poly, table)
        assert set(no.terms) == {(ModeOp("a1", 2), ModeOp("b1", 3))}

    def test_diagonal_swap_adds_central(self, table):
        poly = OperatorPoly.from_word((ModeOp("b1", 2), ModeOp("a1", 2)))
        no = normal_order(poly, table)
        word = (ModeOp("a1", 2), ModeOp("b1", 2))
        assert no.terms[word].is_close(Bicomplex.one())
        assert no.terms[()].is_close(-1.0 * table.rho[0] * (1.0 / table.delta_k), 1e-14)

    def test_fixed_point(self, table):
        word = (ModeOp("a2", 1, True), ModeOp("a1", 0), ModeOp("b1", 2))
        poly = OperatorPoly.from_word(word)
        assert set(normal_order(poly, table).terms) == {word}

    def test_daggers_move_left(self, table):
        poly = OperatorPoly.from_word((ModeOp("a1", 0), ModeOp("b2", 1, True)))
        no = normal_order(poly, table)
        assert list(no.terms) == [(ModeOp("b2", 1, True), ModeOp("a1", 0))]

    def test_equality_of_algebra_elements(self, table):
        p = OperatorPoly.from_word((ModeOp("a1", 2), ModeOp("b1", 2)))
        q = (OperatorPoly.from_word((ModeOp("b1", 2), ModeOp("a1", 2)))
             + OperatorPoly.identity(commutator(ModeOp("a1", 2), ModeOp("b1", 2), table)))
        assert polys_equal(p, q, table, 1e-14)


class TestAnticommutator:
    def test_definition(self, table):
        ac = anticommutator(ModeOp("a1", 1), ModeOp("b1", 1))
        assert set(ac.terms) == {(ModeOp("a1", 1), ModeOp("b1", 1)),
                                 (ModeOp("b1", 1), ModeOp("a1", 1))}

    def test_normal_ordered_form(self, table):
        ac = anticommutator(ModeOp("a1", 1), ModeOp("b1", 1))
        no = normal_order(ac, table)
        word = (ModeOp("a1", 1), ModeOp("b1", 1))
        assert no.terms[word].is_close(Bicomplex(2.0))
        assert no.terms[()].is_close(-1.0 * table.rho[0] * (1.0 / table.delta_k), 1e-14)
        # same element as 2 b1 a1 + rho1/dk (the swapped presentation)
        alt = (OperatorPoly.from_word((ModeOp("b1", 1), ModeOp("a1", 1)),
                                      Bicomplex(2.0))
               + OperatorPoly.identity(table.rho[0] * (1.0 / table.delta_k)))
        assert polys_equal(no, alt, table, 1e-14)

    def test_same_operator(self, table):
        ac = anticommutator(ModeOp("a1", 1), ModeOp("a1", 1))
        assert ac.terms[(ModeOp("a1", 1), ModeOp("a1", 1))].is_close(Bicomplex(2.0))


class TestAdjoint:
    def test_word_reversal_and_conjugation(self, table):
        c = Bicomplex(0.3, 0.7, -0.2, 0.1)
        poly = OperatorPoly.from_word((ModeOp("a1", 1), ModeOp("b1", 2)), c)
        adj = poly.adjoint()
        word = (ModeOp("b1", 2, True), ModeOp("a1", 1, True))
        assert adj.terms[word].is_close(c.conj())

    def test_involution(self, table):
        poly = pair_poly(("a1", "b1"), 1, 2, J_PLUS) + pair_poly(
            ("b2", "a2"), 0, 0, J_MINUS, dagger=True)
        assert polys_equal(poly.adjoint().adjoint(), poly, table, 1e-14)


class TestJacobi:
    def test_triples(self, table):
        rng = random.Random(31)
        species = ("a1", "b1", "a2", "b2")
        for _ in range(60):
            ops = [OperatorPoly.from_word((ModeOp(rng.choice(species),
                                                  rng.randint(-2, 2),
                                                  rng.random() < 0.5),))
                   for _ in range(3)]
            x, y, z = ops
            jac = (x.commutator_with(y.commutator_with(z))
                   + z.commutator_with(x.commutator_with(y))
                   + y.commutator_with(z.commutator_with(x)))
            assert normal_order(jac, table).is_zero(1e-12)


class TestVacuumRules:
    def test_constrained_validation(self):
        with pytest.raises(ValueError):
            VacuumRules(Bicomplex.one(), Bicomplex.zero(), constrained=True)
        rules = VacuumRules.constrained_rules(0.5 + 0.5j, 1.0)
        assert rules.lambda1.plus() == 0
        assert rules.lambda2.minus() == 0

    def test_generic(self):
        rules = VacuumRules.generic(1.0, 2.0)
        assert not rules.constrained


class TestVev:
    def test_identity_normalization(self, table):
        rules = VacuumRules.generic(1.0, 0.5)
        assert vev(OperatorPoly.identity(), rules, table).is_close(Bicomplex.one())

    def test_pair_eigenvalue(self, table):
        lam1 = Bicomplex(0.3, 0.4, 0.1, -0.2)
        rules = VacuumRules.generic(lam1, Bicomplex.zero())
        poly = pair_poly(("a1", "b1"), 1, 3, J_PLUS)
        assert vev(poly, rules, table).is_close(J_PLUS * lam1, 1e-14)

    def test_mirror_pair_eigenvalue(self, table):
        lam2 = Bicomplex(-0.2, 0.6, 0.3, 0.1)
        rules = VacuumRules.generic(Bicomplex.zero(), lam2)
        poly = pair_poly(("b2", "a2"), 2, 2, J_MINUS)
        assert vev(poly, rules, table).is_close(J_MINUS * lam2, 1e-14)

    def test_constrained_pair_plus_cc_vanishes(self, table):
        rules = VacuumRules.constrained_rules(0.7 - 0.1j, 0.2 + 0.9j)
        poly = pair_poly(("a1", "b1"), 1, 2, J_PLUS)
        poly = poly + poly.adjoint()
        assert vev(poly, rules, table).is_zero()

    def test_outside_fragment_raises(self, table):
        rules = VacuumRules.generic(1.0, 1.0)
        with pytest.raises(UndeterminedByAxioms):
            vev(OperatorPoly.from_word((ModeOp("a1", 1),)), rules, table)
        with pytest.raises(UndeterminedByAxioms):
            # unprojected pair: both sectors active, minus sector undetermined
            vev(anticommutator(ModeOp("a1", 1), ModeOp("b1", 1)), rules, table)
        with pytest.raises(UndeterminedByAxioms):
            # unbalanced word inside the right family
            vev(OperatorPoly.from_word((ModeOp("a1", 1), ModeOp("a1", 2)),
                                       J_PLUS), rules, table)

    def test_normal_order_preserves_vev(self, table):
        rng = random.Random(37)
        rules = VacuumRules.generic(Bicomplex(0.3, 0.4, 0.1, -0.2),
                                    Bicomplex(-0.1, 0.8, 0.3, 0.05))
        for _ in range(40):
            poly = OperatorPoly.identity(Bicomplex(rng.uniform(-1, 1)))
            for _ in range(rng.randint(1, 3)):
                sector = rng.choice((J_PLUS, J_MINUS))
                dag = rng.random() < 0.5
                if sector is J_PLUS:
                    pair = ("b2", "a2") if dag else ("a1", "b1")
                else:
                    pair = ("a1", "b1") if dag else ("b2", "a2")
                poly = poly * pair_poly(pair, rng.randint(-2, 2),
                                        rng.randint(-2, 2), sector, dagger=dag)
            v1 = vev(poly, rules, table)
            v2 = vev(normal_order(poly, table), rules, table)
            assert v1.is_close(v2, 1e-10 * max(1.0, v1.norm()))


class TestPairCommutationCheck:
    def test_sigma_free_table_passes(self, table):
        assert pair_commutation_check(table)

    def test_sigma_injection_fails(self, table):
        ts = CommutationTable(rho=table.rho,
                              sigma=(Bicomplex(0.2), Bicomplex.zero(),
                                     Bicomplex.zero(), Bicomplex.zero()),
                              delta_k=0.25, N=4)
        assert not pair_commutation_check(ts)

    def test_abelian_table_passes(self):
        t0 = CommutationTable(rho=(Bicomplex.zero(),) * 4, delta_k=0.25, N=4)
        assert pair_commutation_check(t0)


class TestLatticeRefinement:
    def test_riemann_convergence(self):
        # dk^2 sum f(k) g(k') [a1(k), b1(k')] -> dk sum f g rho1 -> integral
        def value(dk, n):
            t = generic_table(delta_k=dk, N=n)
            total = 0.0
            for i in t.momentum_indices():
                k = t.momentum(i)
                c = commutator(ModeOp("a1", i), ModeOp("b1", i), t)
                total += dk * dk * math.exp(-k * k) * (1 + k * k) * c.x
            return total
        coarse = value(0.5, 20)   # span 10
        fine = value(0.25, 40)
        assert abs(coarse - fine) / abs(fine) < 0.01
