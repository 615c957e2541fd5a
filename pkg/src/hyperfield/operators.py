"""Symbolic ladder-operator engine on a discretized momentum lattice.

Species a1, a2 belong to the subsystem of interest, b1, b2 to the mirror
copy.  The quantization ansatz is noncanonical: the only nonvanishing
commutators are the cross ones [a_i(k), b_j(k')] = rho_m delta(k - k')
(and their daggered partners with the bar-conjugated coefficient); all
same-family commutators and all [a, a+], [b, b+] vanish.  Every commutator
is therefore a central ring element and normal ordering terminates.

The Dirac delta is realized on the lattice as Kronecker(k, k') / delta_k,
and momentum integrals as delta_k * sum over sites.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import UndeterminedByAxioms
from .ring import Bicomplex, J_MINUS, J_PLUS

SPECIES = ("a1", "b1", "a2", "b2")
_RANK = {"a1": 0, "b1": 1, "a2": 2, "b2": 3}
_A_FAMILY = {"a1", "a2"}

# rho index map for the cross commutators [a_i, b_j]
_RHO_INDEX = {("a1", "b1"): 0, ("a1", "b2"): 1, ("a2", "b1"): 2, ("a2", "b2"): 3}


@dataclass(frozen=True)
class ModeOp:
    """Single ladder operator: species, lattice momentum index, dagger flag."""

    species: str
    index: int
    dagger: bool = False

    def adjoint(self) -> "ModeOp":
        return ModeOp(self.species, self.index, not self.dagger)

    def sort_key(self):
        # daggered block first, then species order a1 < b1 < a2 < b2, then k
        return (0 if self.dagger else 1, _RANK[self.species], self.index)

    def __repr__(self):
        return f"{self.species}{'+' if self.dagger else ''}({self.index})"


def _as_rho(value):
    if callable(value):
        return value
    b = value if isinstance(value, Bicomplex) else Bicomplex.from_complex(value)
    return lambda k, kp, _b=b: _b


@dataclass(frozen=True)
class CommutationTable:
    """The four rho coefficients plus the lattice discretization.

    rho entries may be Bicomplex constants or callables rho(k, k') ->
    Bicomplex.  sigma entries default to zero, the choice that keeps
    damping factors out of the equal-time commutators; nonzero sigmas are
    supported only so tests can exhibit the breakage they cause.
    """

    rho: tuple = (Bicomplex.one(), Bicomplex.zero(),
                  Bicomplex.zero(), Bicomplex.one())
    sigma: tuple = (Bicomplex.zero(),) * 4
    delta_k: float = 0.1
    N: int = 32
    stagger: bool = False

    def momentum_indices(self) -> list[int]:
        if self.stagger:
            return list(range(-self.N, self.N))
        return list(range(-self.N, self.N + 1))

    def momentum(self, index: int) -> float:
        off = 0.5 if self.stagger else 0.0
        return (index + off) * self.delta_k

    def lattice_delta(self, i: int, j: int) -> float:
        """Dirac delta realization: Kronecker / delta_k."""
        return 1.0 / self.delta_k if i == j else 0.0

    def rho_at(self, m: int, k: float, kprime: float) -> Bicomplex:
        return _as_rho(self.rho[m])(k, kprime)

    def sigma_at(self, m: int, k: float, kprime: float) -> Bicomplex:
        return _as_rho(self.sigma[m])(k, kprime)


def default_table(**kw) -> CommutationTable:
    return CommutationTable(**kw)


def generic_table(**kw) -> CommutationTable:
    """Table with rho1 = 1, rho4 = 0: keeps the difference bracket nonzero."""
    kw.setdefault("rho", (Bicomplex.one(), Bicomplex.zero(),
                          Bicomplex.zero(), Bicomplex.zero()))
    return CommutationTable(**kw)


def commutator(op1: ModeOp, op2: ModeOp, table: CommutationTable) -> Bicomplex:
    """Central ring value of [op1, op2] under the commutation table."""
    fam1 = op1.species in _A_FAMILY
    fam2 = op2.species in _A_FAMILY
    if fam1 == fam2:
        return Bicomplex.zero()  # same family: a-a or b-b in any dagger combo

    a_op, b_op = (op1, op2) if fam1 else (op2, op1)
    sign = 1.0 if fam1 else -1.0
    m = _RHO_INDEX[(a_op.species, b_op.species)]
    ka = table.momentum(a_op.index)
    kb = table.momentum(b_op.index)

    if op1.dagger != op2.dagger:
        # sigma sector, delta(k + k') support
        if ka != -kb:
            return Bicomplex.zero()
        delta = 1.0 / table.delta_k
        sig = table.sigma_at(m, ka, kb)
        if sig.is_zero():
            return Bicomplex.zero()
        # [a, b+] = sigma delta; [b, a+] = conj(sigma) delta
        if a_op.dagger:          # pair is (a+, b) in some order
            value = sig.conj()
            sign = -sign         # table fixes [b, a+]; we hold [a+, b] = -that
        else:                    # pair is (a, b+)
            value = sig
        return (sign * delta) * value

    delta = table.lattice_delta(a_op.index, b_op.index)
    if delta == 0.0:
        return Bicomplex.zero()
    rho = table.rho_at(m, ka, kb)
    if op1.dagger:
        # table row: [b+(k'), a+(k)] = conj(rho) delta  =>  [a+, b+] = -conj(rho) delta
        return (-sign * delta) * rho.conj()
    return (sign * delta) * rho


class OperatorPoly:
    """Finite sum of ladder-operator words with Bicomplex coefficients.

    terms maps a tuple of ModeOp (a word; () is the identity) to its
    coefficient.  Values are immutable by convention: operations return
    new polynomials.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {} if terms is None else terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "OperatorPoly":
        return OperatorPoly({})

    @staticmethod
    def identity(coeff: Bicomplex = Bicomplex.one()) -> "OperatorPoly":
        return OperatorPoly({(): coeff})

    @staticmethod
    def from_word(ops, coeff: Bicomplex = Bicomplex.one()) -> "OperatorPoly":
        return OperatorPoly({tuple(ops): coeff})

    # -- algebra -----------------------------------------------------------

    def _merged(self, word, coeff, into):
        if word in into:
            s = into[word] + coeff
            if s.is_zero():
                del into[word]
            else:
                into[word] = s
        elif not coeff.is_zero():
            into[word] = coeff

    def __add__(self, other: "OperatorPoly") -> "OperatorPoly":
        out = dict(self.terms)
        result = OperatorPoly(out)
        for word, coeff in other.terms.items():
            result._merged(word, coeff, out)
        return result

    def __sub__(self, other: "OperatorPoly") -> "OperatorPoly":
        return self + other.scale(Bicomplex(-1.0))

    def scale(self, c) -> "OperatorPoly":
        c = c if isinstance(c, Bicomplex) else Bicomplex.from_complex(c)
        if c.is_zero():
            return OperatorPoly.zero()
        return OperatorPoly({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other: "OperatorPoly") -> "OperatorPoly":
        out: dict = {}
        result = OperatorPoly(out)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                result._merged(w1 + w2, c1 * c2, out)
        return result

    def adjoint(self) -> "OperatorPoly":
        out: dict = {}
        result = OperatorPoly(out)
        for word, coeff in self.terms.items():
            new_word = tuple(op.adjoint() for op in reversed(word))
            result._merged(new_word, coeff.conj(), out)
        return result

    def commutator_with(self, other: "OperatorPoly") -> "OperatorPoly":
        return self * other - other * self

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(c.norm() <= tol for c in self.terms.values())

    def scalar_part(self) -> Bicomplex:
        return self.terms.get((), Bicomplex.zero())

    def max_norm(self) -> float:
        return max((c.norm() for c in self.terms.values()), default=0.0)

    def __repr__(self):
        if not self.terms:
            return "OperatorPoly(0)"
        bits = [f"{coeff.to_tuple()}*{list(word)}"
                for word, coeff in itertools.islice(self.terms.items(), 6)]
        more = "..." if len(self.terms) > 6 else ""
        return f"OperatorPoly({' + '.join(bits)}{more})"


def anticommutator(op1: ModeOp, op2: ModeOp) -> OperatorPoly:
    """{op1, op2} = op1 op2 + op2 op1 as an operator polynomial."""
    out = OperatorPoly.from_word((op1, op2))
    return out + OperatorPoly.from_word((op2, op1))


def pair_poly(species_pair, k_index: int, kp_index: int, sector,
              dagger: bool = False) -> OperatorPoly:
    """Projected anticommutator J_sector {s1(k), s2(k')} used everywhere.

    species_pair is a tuple like ("a1", "b1"); sector is J_PLUS or J_MINUS.
    """
    s1, s2 = species_pair
    o1 = ModeOp(s1, k_index, dagger)
    o2 = ModeOp(s2, kp_index, dagger)
    return anticommutator(o1, o2).scale(sector)


def normal_order(poly: OperatorPoly, table: CommutationTable) -> OperatorPoly:
    """Rewrite into canonical order (daggers left, species rank, momentum).

    All commutators are central, so each transposition splits a word into
    the swapped word plus a shorter word; the rewriting terminates.
    """
    out: dict = {}
    result = OperatorPoly(out)
    stack = list(poly.terms.items())
    while stack:
        word, coeff = stack.pop()
        if coeff.is_zero():
            continue
        swap_at = -1
        for i in range(len(word) - 1):
            if word[i].sort_key() > word[i + 1].sort_key():
                swap_at = i
                break
        if swap_at < 0:
            result._merged(word, coeff, out)
            continue
        i = swap_at
        swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2:]
        stack.append((swapped, coeff))
        central = commutator(word[i], word[i + 1], table)
        if not central.is_zero():
            stack.append((word[:i] + word[i + 2:], coeff * central))
    return result


def polys_equal(p: OperatorPoly, q: OperatorPoly, table: CommutationTable,
                tol: float = 0.0) -> bool:
    """Equality as algebra elements (compares normal forms)."""
    return (normal_order(p, table) - normal_order(q, table)).is_zero(tol)


@dataclass(frozen=True)
class VacuumRules:
    """Eigenvalues of the pair-coherent vacuum definition.

    J+ {a1(k), b1(k')} |0> = J+ lambda1 |0> and
    J- {b2(k'), a2(k)} |0> = J- lambda2 |0> for all momenta.  When
    constrained is True the projected eigenvalues vanish identically
    (lambda1 proportional to J-, lambda2 to J+).
    """

    lambda1: Bicomplex = Bicomplex.zero()
    lambda2: Bicomplex = Bicomplex.zero()
    constrained: bool = True

    def __post_init__(self):
        if self.constrained:
            if abs(self.lambda1.plus()) != 0.0 or abs(self.lambda2.minus()) != 0.0:
                raise ValueError(
                    "constrained rules require J+ lambda1 = 0 and J- lambda2 = 0")

    @staticmethod
    def constrained_rules(c1=0.0, c2=0.0) -> "VacuumRules":
        """lambda1 = J- c1, lambda2 = J+ c2: the vev-cancelling choice."""
        return VacuumRules(J_MINUS * Bicomplex.from_complex(c1),
                           J_PLUS * Bicomplex.from_complex(c2), True)

    @staticmethod
    def generic(lambda1, lambda2) -> "VacuumRules":
        l1 = lambda1 if isinstance(lambda1, Bicomplex) else Bicomplex.from_complex(lambda1)
        l2 = lambda2 if isinstance(lambda2, Bicomplex) else Bicomplex.from_complex(lambda2)
        return VacuumRules(l1, l2, False)


# pair families per sector: the ket rule collapses the sector's own
# annihilation pairs, the bra rule the mirror family's creation pairs
_PLUS_ANN = frozenset({"a1", "b1"})
_MINUS_ANN = frozenset({"b2", "a2"})


def _ket_word_value(word, species_pair, eigen: complex, sector: int,
                    table: CommutationTable) -> complex:
    """Value of an annihilation-family word acting on the vacuum ket.

    The family is Heisenberg-like: a-side ops commute among themselves,
    b-side ops too, and cross commutators are central; the vacuum is an
    eigenvector of every cross anticommutator with eigenvalue ``eigen``.
    Words with equal a/b counts collapse recursively: the trailing op is
    paired with the nearest opposite-side op, which hops over the ops in
    between at the cost of central contractions.
    """
    side_a, side_b = tuple(species_pair)

    def comm(o1: ModeOp, o2: ModeOp) -> complex:
        c = commutator(o1, o2, table)
        return c.plus() if sector > 0 else c.minus()

    def value(w: tuple) -> complex:
        if not w:
            return 1.0
        last = w[-1]
        same = last.species
        p = None
        for q in range(len(w) - 2, -1, -1):
            if w[q].species != same:
                p = q
                break
        if p is None:
            raise UndeterminedByAxioms(
                f"unpaired operators {w}: not fixed by the vacuum axioms")
        partner = w[p]
        between = w[p + 1:-1]
        head = w[:p]
        # partner hops over `between` (all same side as `last`)
        total = 0.5 * (eigen + comm(partner, last)) * value(head + between)
        for i, mid in enumerate(between):
            c = comm(partner, mid)
            if c != 0.0:
                total += c * value(head + between[:i] + between[i + 1:] + (last,))
        return total

    for op in word:
        if op.species not in (side_a, side_b):
            raise UndeterminedByAxioms(
                f"operator {op} outside the sector's collapsible family")
    n_a = sum(1 for op in word if op.species == side_a)
    if 2 * n_a != len(word):
        raise UndeterminedByAxioms(
            f"unbalanced word {word}: not fixed by the vacuum axioms")
    return value(tuple(word))


def _sector_vev(word, sector: int, rules: VacuumRules,
                table: CommutationTable) -> complex:
    """Vacuum expectation of a word inside one idempotent sector.

    The evaluable fragment: every op is either an undaggered member of the
    sector's annihilation family (collapses on the ket with the lambda
    eigenvalue) or a daggered member of the mirror family (collapses on
    the bra with the conjugate eigenvalue).  The two families commute
    exactly, so the value factorizes; the bra factor is evaluated through
    its adjoint in the opposite sector.
    """
    if sector > 0:
        ann_species, ket_eigen = _PLUS_ANN, rules.lambda1.plus()
        cre_species, mirror_eigen = _MINUS_ANN, rules.lambda2.minus()
    else:
        ann_species, ket_eigen = _MINUS_ANN, rules.lambda2.minus()
        cre_species, mirror_eigen = _PLUS_ANN, rules.lambda1.plus()

    ann_part = []
    cre_part = []
    for op in word:
        if not op.dagger and op.species in ann_species:
            ann_part.append(op)
        elif op.dagger and op.species in cre_species:
            cre_part.append(op)
        else:
            raise UndeterminedByAxioms(
                f"operator {op} not fixed by the vacuum axioms in this sector")

    ket = _ket_word_value(tuple(ann_part), ann_species, ket_eigen, sector, table)
    # <0| W = (adjoint(W) |0>)^dagger: reverse, undagger, evaluate in the
    # mirror sector, conjugate
    adj = tuple(op.adjoint() for op in reversed(cre_part))
    bra = _ket_word_value(adj, cre_species, mirror_eigen, -sector,
                          table).conjugate()
    return ket * bra


def vev(poly: OperatorPoly, rules: VacuumRules,
        table: CommutationTable) -> Bicomplex:
    """Vacuum expectation value of an operator polynomial.

    The polynomial is first brought to its (unique) normal form and the
    vacuum functional is applied to the canonical basis words: each
    monomial's coefficient is split over the idempotent sectors and the
    word is collapsed per sector; <0|0> is normalized to 1.  Defining the
    functional on the normal-form basis makes it a well-defined linear
    functional on the algebra -- the pair eigen-rules for different
    momentum pairs do not commute, so word-by-word evaluation of an
    arbitrary presentation would be ordering-dependent.  Raises
    UndeterminedByAxioms outside the evaluable fragment.
    """
    ordered = normal_order(poly, table)
    scale = ordered.max_norm()
    total = Bicomplex.zero()
    for word, coeff in ordered.terms.items():
        if coeff.norm() <= 1e-14 * scale:
            continue  # rounding residue of cancelling sector products
        cp, cm = coeff.plus(), coeff.minus()
        if cp != 0:
            total = total + J_PLUS * Bicomplex.from_complex(
                cp * _sector_vev(word, +1, rules, table))
        if cm != 0:
            total = total + J_MINUS * Bicomplex.from_complex(
                cm * _sector_vev(word, -1, rules, table))
    return total


def pair_commutation_check(table: CommutationTable) -> bool:
    """True iff every annihilation operator commutes with every creator.

    This is the property that lets the evolution exponent factor into
    commuting creation and annihilation parts; it fails whenever a sigma
    coefficient is switched on.
    """
    indices = table.momentum_indices()
    for s_ann in SPECIES:
        for s_cre in SPECIES:
            for i in indices:
                for j in indices:
                    c = commutator(ModeOp(s_ann, i, False),
                                   ModeOp(s_cre, j, True), table)
                    if not c.is_zero():
                        return False
    return True
