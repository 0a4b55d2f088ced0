"""Dijkgraaf-Witten invariants on tori.

Partition functions as exact sums of roots of unity, twisted-representation
and Drinfeld-double simple-object counts, circle transgression to the loop
groupoid, torus state spaces as parallel sections, and the induced symmetry
action on states.

No floating point: sums of phases are carried as integer vectors indexed by
residues mod M (elements of the group ring Z[Z_M]) and collapsed by exact
reduction modulo the M-th cyclotomic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from math import lcm

from sympy import Poly, Symbol, cyclotomic_poly

from .cochains import (
    Cochain,
    coboundary,
    evaluate,
    is_cocycle_fast,
    pullback,
    torus_fundamental_cycle,
)
from .errors import DegreeMismatch, IncompatiblePhases, NotACocycle
from .groupoids import gauge_groupoid
from .groups import FiniteGroup, GroupHom
from .phase import PhaseValue

# The independent Dijkgraaf-Pasquier-Roche formula for the twisted-double
# 2-cocycle agrees with circle transgression on the nose under the
# conventions used here; set to True if a build ever needs the simultaneous
# inversion of both sides instead.
DPR_INVERTED = False


# ---------------------------------------------------------------------------
# exact sums of phases


@dataclass(frozen=True)
class ExactPhaseSum:
    """Sum of rational multiples of M-th roots of unity.

    ``counts[r]`` is the coefficient of exp(2*pi*i*r/M).  Rationality and
    integrality are decided exactly by reduction mod the cyclotomic
    polynomial.
    """

    counts: tuple
    modulus: int

    @staticmethod
    def from_phases(phases, modulus):
        counts = [0] * modulus
        for p in phases:
            if modulus % p.modulus != 0:
                raise ValueError("phase does not live at the stated modulus")
            counts[p.numerator * (modulus // p.modulus) % modulus] += 1
        return ExactPhaseSum(tuple(counts), modulus)

    def scaled(self, factor):
        factor = Fraction(factor)
        return ExactPhaseSum(
            tuple(Fraction(c) * factor for c in self.counts), self.modulus
        )

    def as_rational(self):
        """The value as a Fraction, or None if it is irrational."""
        if self.modulus == 1:
            return Fraction(self.counts[0])
        x = Symbol("x")
        coeffs = [Fraction(c) for c in reversed(self.counts)]
        p = Poly(coeffs, x, domain="QQ")
        r = p.rem(Poly(cyclotomic_poly(self.modulus, x), x, domain="QQ"))
        rc = r.all_coeffs()
        if any(c != 0 for c in rc[:-1]):
            return None
        return Fraction(rc[-1]) if rc else Fraction(0)


# ---------------------------------------------------------------------------
# torus partition functions and counts


@dataclass(frozen=True)
class TorusPartition:
    """Exact torus partition value together with its phase-sum form."""

    value: Fraction
    phase_sum: ExactPhaseSum

    def __eq__(self, other):
        if isinstance(other, TorusPartition):
            return self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        if self.value.denominator != 1:
            raise ValueError("partition value is not an integer")
        return int(self.value)


def commuting_tuples(group: FiniteGroup, n: int):
    return gauge_groupoid(group, n).objects()


def dw_partition_torus(group: FiniteGroup, theta: Cochain, n: int) -> TorusPartition:
    """(1/|G|) * sum over commuting n-tuples of the evaluated action phase.

    For a cocycle theta this is a nonnegative integer (the number of simple
    objects of the associated category); integrality is asserted exactly,
    never rounded.
    """
    if theta.group is not group and theta.group != group:
        raise ValueError("cocycle lives on a different group")
    if theta.degree != n:
        raise DegreeMismatch(f"need degree {n}, got {theta.degree}")
    if not is_cocycle_fast(theta):
        raise NotACocycle("dw_partition_torus needs a cocycle")
    modulus = theta.modulus
    phases = [
        evaluate(theta, torus_fundamental_cycle(group, t)).reduced()
        for t in commuting_tuples(group, n)
    ]
    m = lcm(modulus, *(p.modulus for p in phases)) if phases else modulus
    total = ExactPhaseSum.from_phases(phases, m).scaled(Fraction(1, group.order))
    value = total.as_rational()
    assert value is not None and value >= 0 and value.denominator == 1, (
        "partition sum of a cocycle must be a nonnegative integer"
    )
    return TorusPartition(value, total)


def twisted_irrep_count(group: FiniteGroup, omega: Cochain) -> int:
    """Number of irreducible omega-twisted representations of G.

    Computed as (1/|G|) * sum over commuting pairs of
    omega(h,g) - omega(g,h).
    """
    if omega.degree != 2:
        raise DegreeMismatch("twisted representations need a 2-cocycle")
    if not is_cocycle_fast(omega):
        raise NotACocycle("twisted_irrep_count needs a cocycle")
    phases = [
        (omega.value((h, g)) - omega.value((g, h))).reduced()
        for (g, h) in commuting_tuples(group, 2)
    ]
    m = lcm(omega.modulus, *(p.modulus for p in phases))
    total = ExactPhaseSum.from_phases(phases, m).scaled(Fraction(1, group.order))
    value = total.as_rational()
    assert value is not None and value.denominator == 1 and value >= 0
    return int(value)


def omega_regular_class_count(group: FiniteGroup, omega: Cochain) -> int:
    """Count conjugacy classes whose elements are omega-regular.

    g is omega-regular when omega(g,h) = omega(h,g) for every h in the
    centralizer of g; this is the classical oracle for the number of
    twisted irreducibles.
    """
    if omega.degree != 2:
        raise DegreeMismatch("regularity is defined for 2-cochains")
    count = 0
    for cls in group.conjugacy_classes():
        g = cls[0]
        if all(
            omega.value((g, h)) == omega.value((h, g))
            for h in group.centralizer([g])
        ):
            count += 1
    return count


def drinfeld_double_simple_count(group: FiniteGroup, theta: Cochain) -> int:
    """Number of simple modules of the theta-twisted Drinfeld double."""
    if theta.degree != 3:
        raise DegreeMismatch("the twisted double needs a 3-cocycle")
    return int(dw_partition_torus(group, theta, 3))


# ---------------------------------------------------------------------------
# transgression and the loop groupoid


class LoopCochain:
    """Cochain on the m-fold loop groupoid of a finite group.

    Objects of the groupoid are commuting m-tuples (bases); a morphism x
    sends the base phi to x^{-1} phi x (entrywise).  A degree-k cochain
    assigns a phase to (base; x_1, ..., x_k), normalized to vanish when any
    x_i is the identity.
    """

    __slots__ = ("group", "loops", "degree", "modulus", "values")

    def __init__(self, group, loops, degree, modulus, values):
        self.group = group
        self.loops = loops
        self.degree = degree
        self.modulus = modulus
        clean = {}
        for (base, args), v in values.items():
            if any(x == group.identity for x in args):
                if not v.is_zero():
                    raise ValueError("normalized cochain must vanish on identities")
                continue
            if not v.is_zero():
                clean[(tuple(base), tuple(args))] = v
        self.values = clean

    def value(self, base, args):
        if any(x == self.group.identity for x in args):
            return PhaseValue.zero(self.modulus)
        return self.values.get(
            (tuple(base), tuple(args)), PhaseValue.zero(self.modulus)
        )

    def is_zero(self):
        return not self.values

    def transport(self, x, base):
        g = self.group
        xi = g.inverses[x]
        return tuple(g.mul(g.mul(xi, b), x) for b in base)

    def __eq__(self, other):
        if not isinstance(other, LoopCochain):
            return NotImplemented
        if (self.group, self.loops, self.degree) != (
            other.group,
            other.loops,
            other.degree,
        ):
            return False
        keys = set(self.values) | set(other.values)
        return all(self.value(b, a) == other.value(b, a) for (b, a) in keys)


def _loop_bases(group, m):
    return commuting_tuples(group, m)


def loop_coboundary(c: LoopCochain) -> LoopCochain:
    """Groupoid bar differential on the m-fold loop groupoid."""
    g = c.group
    k = c.degree
    vals = {}
    non_id = g.nonidentity()
    for base in _loop_bases(g, c.loops):
        for args in iter_product(non_id, repeat=k + 1):
            acc = c.value(c.transport(args[0], base), args[1:])
            sign = -1
            for i in range(k):
                merged = args[:i] + (g.mul(args[i], args[i + 1]),) + args[i + 2:]
                acc = acc + sign * c.value(base, merged)
                sign = -sign
            acc = acc + sign * c.value(base, args[:k])
            if not acc.is_zero():
                vals[(base, args)] = acc
    return LoopCochain(g, c.loops, k + 1, c.modulus, vals)


def is_loop_cocycle(c: LoopCochain) -> bool:
    return loop_coboundary(c).is_zero()


def transgress_circle(theta, check=True):
    """Transgress once around a circle.

    A degree-n group cochain becomes a degree n-1 cochain on the loop
    groupoid; a degree-k cochain on the m-fold loop groupoid becomes a
    degree k-1 cochain on the (m+1)-fold one.  For cocycle input the output
    satisfies the groupoid cocycle condition.  Pass ``check=False`` to
    apply the formula to a non-closed cochain (the output is then just a
    transport datum, not a cocycle).
    """
    if isinstance(theta, Cochain):
        if check and not is_cocycle_fast(theta):
            raise NotACocycle("transgression needs a cocycle")
        group, loops, degree = theta.group, 0, theta.degree
        base_value = lambda base, args: theta.value(args)
    elif isinstance(theta, LoopCochain):
        group, loops, degree = theta.group, theta.loops, theta.degree
        base_value = theta.value
    else:
        raise TypeError("expected a Cochain or LoopCochain")
    if degree < 1:
        raise DegreeMismatch("transgression needs degree >= 1")
    g = group
    vals = {}
    non_id = g.nonidentity()
    for base in _loop_bases(g, loops + 1):
        phi, loop = base[:-1], base[-1]
        for args in iter_product(non_id, repeat=degree - 1):
            acc = PhaseValue.zero(theta.modulus)
            sign = 1
            carried = loop
            for i in range(degree):
                acc = acc + sign * base_value(phi, args[:i] + (carried,) + args[i:])
                sign = -sign
                if i < degree - 1:
                    x = args[i]
                    carried = g.mul(g.mul(g.inverses[x], carried), x)
            if not acc.is_zero():
                vals[(base, args)] = acc
    return LoopCochain(g, loops + 1, degree - 1, theta.modulus, vals)


def transgress_torus(theta: Cochain, times=None, check=True) -> LoopCochain:
    """Iterate circle transgression (default: down to degree 0)."""
    times = theta.degree if times is None else times
    out = theta
    for _ in range(times):
        out = transgress_circle(out, check=check)
    return out


def dpr_double_cocycle(theta: Cochain) -> LoopCochain:
    """The twisted-double 2-cocycle of a 3-cocycle, computed directly.

    beta_g(x, y) = theta(g,x,y) - theta(x, x^{-1}gx, y)
                 + theta(x, y, (xy)^{-1}g(xy)), a 2-cochain on the loop
    groupoid; serves as an independent cross-check for transgress_circle.
    """
    if theta.degree != 3:
        raise DegreeMismatch("the double cocycle needs a 3-cocycle")
    if not is_cocycle_fast(theta):
        raise NotACocycle("the double cocycle needs a 3-cocycle")
    g_grp = theta.group
    vals = {}
    for g in g_grp.elements():
        for x in g_grp.nonidentity():
            gx = g_grp.conjugate(g_grp.inverses[x], g)
            for y in g_grp.nonidentity():
                xy = g_grp.mul(x, y)
                gxy = g_grp.conjugate(g_grp.inverses[xy], g)
                acc = (
                    theta.value((g, x, y))
                    - theta.value((x, gx, y))
                    + theta.value((x, y, gxy))
                )
                if not acc.is_zero():
                    vals[((g,), (x, y))] = acc
    return LoopCochain(g_grp, 1, 2, theta.modulus, vals)


def matches_dpr(theta: Cochain) -> bool:
    """Whether circle transgression equals the direct double cocycle.

    The comparison is elementwise, inverting both sides when DPR_INVERTED
    is set.
    """
    tau = transgress_circle(theta)
    beta = dpr_double_cocycle(theta)
    if DPR_INVERTED:
        beta = LoopCochain(
            beta.group, beta.loops, beta.degree, beta.modulus,
            {k: -v for k, v in beta.values.items()},
        )
    return tau == beta


# ---------------------------------------------------------------------------
# state spaces


def _subgroup_generators(group, elems):
    gens = []
    closed = {group.identity}
    for x in sorted(elems, key=lambda e: (-group.element_order(e), e)):
        if x not in closed:
            gens.append(x)
            closed = group.subgroup_closure(gens)
    return gens


@dataclass(frozen=True)
class StateSpace:
    """Torus state space of a Dijkgraaf-Witten theory: parallel sections.

    ``basis`` lists representatives of the conjugation orbits of commuting
    torus_dim-tuples whose stabilizer character (the restriction of the
    transgression line bundle to the automorphism group) is trivial.
    """

    group: FiniteGroup
    cocycle: Cochain
    torus_dim: int
    basis: tuple
    line_bundle: LoopCochain
    orbits: tuple

    @property
    def dimension(self):
        return len(self.basis)

    def bundle_phase(self, base, x):
        """Phase of the transport morphism x: base -> x^{-1} base x."""
        return self.line_bundle.value(base, (x,))


def state_space_torus(group: FiniteGroup, theta: Cochain) -> StateSpace:
    """State space on the (n-1)-torus for a degree-n cocycle."""
    n = theta.degree
    if n < 2:
        raise DegreeMismatch("state spaces need degree >= 2")
    if not is_cocycle_fast(theta):
        raise NotACocycle("state_space_torus needs a cocycle")
    k = n - 1
    bundle = transgress_torus(theta, n - 1)
    classes = gauge_groupoid(group, k).isomorphism_classes()
    basis = []
    for cls in classes:
        rep = cls[0]
        stab = group.centralizer(rep)
        gens = _subgroup_generators(group, stab)
        if all(bundle.value(rep, (y,)).is_zero() for y in gens):
            basis.append(rep)
    dim = dw_partition_torus(group, theta, n).value
    assert dim == len(basis), "section count must match the partition function"
    return StateSpace(
        group, theta, k, tuple(basis), bundle, tuple(c[0] for c in classes)
    )


# ---------------------------------------------------------------------------
# quantum symmetry action


def symmetry_action(sym_group: FiniteGroup, alpha, phis, space: StateSpace):
    """Action of a symmetry group on a torus state space.

    ``alpha(g)`` is an automorphism of the state space's group D and
    ``phis[g]`` a (torus_dim)-cochain on D with
    delta phis[g] = omega - alpha(g^{-1})^* omega.  Returns (matrices,
    defect): monomial matrices over the state basis as sparse dicts
    {(row, col): PhaseValue}, and the composition defect
    rho(g2) rho(g1) - rho(g2 g1) as {(g2, g1): value} where value is a
    single PhaseValue when the defect is scalar and otherwise a dict
    {row: PhaseValue} of per-sector phases.  The action is an honest
    representation exactly when the defect is empty.
    """
    d_grp = space.group
    omega = space.cocycle
    k = space.torus_dim
    for g in sym_group.elements():
        ginv = sym_group.inverses[g]
        target = omega - pullback(alpha(ginv), omega)
        if coboundary(phis[g]) != target:
            raise IncompatiblePhases(
                f"delta Phi_g differs from omega - alpha(g^-1)^* omega at g={g}"
            )

    classes = gauge_groupoid(d_grp, k).isomorphism_classes()
    orbit_of = {}
    for idx, cls in enumerate(classes):
        for t in cls:
            orbit_of[t] = idx
    basis_index = {rep: i for i, rep in enumerate(space.basis)}
    class_rep = {idx: cls[0] for idx, cls in enumerate(classes)}
    rep_basis = {
        orbit_of[rep]: i for rep, i in basis_index.items()
    }

    def transporter(src, dst):
        for y in d_grp.elements():
            if tuple(d_grp.conjugate(d_grp.inverses[y], t) for t in src) == dst:
                return y
        return None

    matrices = {}
    for g in sym_group.elements():
        ginv = sym_group.inverses[g]
        a_inv = alpha(ginv)
        mat = {}
        for i, phi in enumerate(space.basis):
            phase = evaluate(phis[g], torus_fundamental_cycle(d_grp, phi))
            psi = tuple(a_inv(x) for x in phi)
            j = rep_basis.get(orbit_of[psi])
            if j is None:
                raise IncompatiblePhases(
                    "symmetry maps a basis orbit outside the basis"
                )
            rep_j = space.basis[j]
            y = transporter(rep_j, psi)
            mat[(i, j)] = (phase + space.bundle_phase(rep_j, y)).reduced()
        matrices[g] = mat

    defect = {}
    for g2 in sym_group.elements():
        for g1 in sym_group.elements():
            prod = {}
            for (i, j), p2 in matrices[g2].items():
                for (j2, l), p1 in matrices[g1].items():
                    if j2 == j:
                        prod[(i, l)] = p2 + p1
            target = matrices[sym_group.mul(g2, g1)]
            if set(prod) != set(target):
                raise IncompatiblePhases(
                    "composed monomial support differs from the product's"
                )
            per_row = {
                i: (prod[(i, l)] - target[(i, l)]).reduced()
                for (i, l) in prod
            }
            distinct = set(per_row.values())
            if len(distinct) == 1:
                d = distinct.pop()
                if not d.is_zero():
                    defect[(g2, g1)] = d
            else:
                defect[(g2, g1)] = {
                    i: d for i, d in per_row.items() if not d.is_zero()
                }
    return matrices, defect
