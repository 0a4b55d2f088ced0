import random
from fractions import Fraction
from itertools import product as iter_product

import pytest

from support import random_cochain

from dwkit.cochains import (
    Cochain,
    catalog_cocycle,
    coboundary,
    cohomology,
    evaluate,
    interval_pairing,
    is_cocycle,
    pullback,
    torus_fundamental_cycle,
)
from dwkit.errors import DegreeMismatch, IncompatiblePhases, NotACocycle
from dwkit.groupoids import gauge_groupoid
from dwkit.groups import (
    GroupHom,
    cyclic_group,
    dihedral_group,
    pauli_group,
    product_group,
    product_index,
)
from dwkit.invariants import (
    ExactPhaseSum,
    dpr_double_cocycle,
    drinfeld_double_simple_count,
    dw_partition_torus,
    is_loop_cocycle,
    loop_coboundary,
    matches_dpr,
    omega_regular_class_count,
    state_space_torus,
    symmetry_action,
    transgress_circle,
    transgress_torus,
    twisted_irrep_count,
)
from dwkit.anomalies import Extension, find_closed_lift, find_section
from dwkit.phase import PhaseValue


def type_three_cocycle():
    """omega(g,h,k) = (1/2) g_1 h_2 k_3 on Z2 x Z2 x Z2."""
    grp = product_group([2, 2, 2])
    coords = {}
    for t in iter_product(range(2), repeat=3):
        coords[product_index([2, 2, 2], t)] = t
    vals = {}
    for g in range(8):
        for h in range(8):
            for k in range(8):
                v = PhaseValue(coords[g][0] * coords[h][1] * coords[k][2], 2)
                if not v.is_zero():
                    vals[(g, h, k)] = v
    return Cochain(grp, 3, 2, vals)


# --------------------------------------------------------------------------
# exact phase sums


def test_exact_phase_sum_rationality():
    full = ExactPhaseSum((1, 1, 1, 1), 4)
    assert full.as_rational() == 0
    pair = ExactPhaseSum((1, 0, 1, 0), 4)
    assert pair.as_rational() == 0
    assert ExactPhaseSum((0, 1, 0, 0), 4).as_rational() is None
    assert ExactPhaseSum((3,), 1).as_rational() == 3
    half = ExactPhaseSum((1, 1, 1), 3).scaled(Fraction(1, 3))
    assert half.as_rational() == 0


def test_exact_phase_sum_from_phases():
    s = ExactPhaseSum.from_phases([PhaseValue(1, 2), PhaseValue(1, 4)], 4)
    assert s.counts == (0, 1, 1, 0)
    with pytest.raises(ValueError):
        ExactPhaseSum.from_phases([PhaseValue(1, 3)], 4)


# --------------------------------------------------------------------------
# torus partition functions


def test_untwisted_partition_counts_classes():
    for group in (
        cyclic_group(5),
        product_group([2, 4]),
        dihedral_group(8),
        dihedral_group(6),
        pauli_group(),
    ):
        z = dw_partition_torus(group, Cochain.zero(group, 2), 2)
        assert z == len(group.conjugacy_classes())


def test_untwisted_three_torus():
    s3 = dihedral_group(6)
    z = dw_partition_torus(s3, Cochain.zero(s3, 3), 3)
    assert z == 8
    z2 = cyclic_group(2)
    assert dw_partition_torus(z2, Cochain.zero(z2, 3), 3) == 4


def test_partition_coboundary_invariance():
    rng = random.Random(21)
    z4 = cyclic_group(4)
    theta = catalog_cocycle("cyclic_3cocycle", {"N": 4, "k": 1})
    base = dw_partition_torus(z4, theta, 3)
    for _ in range(4):
        beta = random_cochain(z4, 2, 8, rng)
        assert dw_partition_torus(z4, theta + coboundary(beta), 3) == base


def test_partition_rejects_bad_input():
    z4 = cyclic_group(4)
    with pytest.raises(DegreeMismatch):
        dw_partition_torus(z4, Cochain.zero(z4, 2), 3)
    bad = Cochain(z4, 3, 4, {(1, 1, 1): PhaseValue(1, 4)})
    with pytest.raises(NotACocycle):
        dw_partition_torus(z4, bad, 3)


# --------------------------------------------------------------------------
# twisted representation counts


def test_twisted_irrep_count_examples():
    k4 = product_group([2, 2])
    w1 = catalog_cocycle("product_2cocycle", {"N": 2, "k": 1})
    assert twisted_irrep_count(k4, w1) == 1
    assert twisted_irrep_count(k4, Cochain.zero(k4, 2)) == 4
    d8 = dihedral_group(8)
    w = catalog_cocycle("dihedral8_2cocycle", {})
    assert twisted_irrep_count(d8, w) == 2


def test_twisted_count_matches_regular_classes():
    cases = []
    for n in (2, 3, 4):
        grp = product_group([n, n])
        coh = cohomology(grp, 2)
        cases.extend((grp, gen) for gen in coh.generators)
        cases.append((grp, Cochain.zero(grp, 2)))
    for grp in (dihedral_group(8), pauli_group()):
        coh = cohomology(grp, 2)
        cases.extend((grp, gen) for gen in coh.generators)
    for grp, omega in cases:
        assert twisted_irrep_count(grp, omega) == omega_regular_class_count(
            grp, omega
        )


def test_drinfeld_double_counts():
    z2 = cyclic_group(2)
    assert drinfeld_double_simple_count(z2, Cochain.zero(z2, 3)) == 4
    s3 = dihedral_group(6)
    assert drinfeld_double_simple_count(s3, Cochain.zero(s3, 3)) == 8
    assert drinfeld_double_simple_count(product_group([2, 2, 2]), type_three_cocycle()) == 22


# --------------------------------------------------------------------------
# transgression


def test_transgression_is_closed():
    for group in (cyclic_group(4), product_group([2, 2]), dihedral_group(8)):
        for gen in cohomology(group, 3).generators:
            assert is_loop_cocycle(transgress_circle(gen))


def test_transgression_of_coboundary_is_loop_exact():
    z4 = cyclic_group(4)
    beta = random_cochain(z4, 2, 4, random.Random(31))
    tau = transgress_circle(coboundary(beta))
    # transgression is a chain map: tau(delta beta) = loop-delta of tau(beta)
    assert tau == loop_coboundary(transgress_circle(beta, check=False))


def test_iterated_transgression_matches_torus_evaluation():
    cases = [
        (cyclic_group(2), catalog_cocycle("cyclic_3cocycle", {"N": 2, "k": 1}), 3),
        (cyclic_group(4), catalog_cocycle("cyclic_3cocycle", {"N": 4, "k": 3}), 3),
        (product_group([2, 2]), catalog_cocycle("product_2cocycle", {"N": 2, "k": 1}), 2),
        (dihedral_group(8), catalog_cocycle("dihedral8_2cocycle", {}), 2),
    ]
    for group, theta, n in cases:
        full = transgress_torus(theta, n)
        for base in gauge_groupoid(group, n).objects():
            assert full.value(base, ()) == evaluate(
                theta, torus_fundamental_cycle(group, base)
            )


def dpr_reference(theta, g, x, y):
    grp = theta.group
    cj = lambda a, b: grp.conjugate(grp.inverses[b], a)
    return (
        theta.value((g, x, y))
        - theta.value((x, cj(g, x), y))
        + theta.value((x, y, cj(g, grp.mul(x, y))))
    )


def test_transgression_matches_reference_formula():
    for n in (2, 3, 4):
        grp = cyclic_group(n)
        for k in range(n):
            theta = catalog_cocycle("cyclic_3cocycle", {"N": n, "k": k})
            beta = transgress_circle(theta)
            for g in grp.elements():
                for x in grp.elements():
                    for y in grp.elements():
                        assert beta.value((g,), (x, y)) == dpr_reference(
                            theta, g, x, y
                        )
            assert matches_dpr(theta)
            assert dpr_double_cocycle(theta) == beta


def test_dpr_on_nonabelian_group():
    s3 = dihedral_group(6)
    for gen in cohomology(s3, 3).generators:
        assert matches_dpr(gen)


# --------------------------------------------------------------------------
# state spaces


def test_state_space_dimensions():
    z2 = cyclic_group(2)
    th = catalog_cocycle("cyclic_3cocycle", {"N": 2, "k": 1})
    assert state_space_torus(z2, th).dimension == 4
    s3 = dihedral_group(6)
    assert state_space_torus(s3, Cochain.zero(s3, 3)).dimension == 8
    d8 = dihedral_group(8)
    w = catalog_cocycle("dihedral8_2cocycle", {})
    space = state_space_torus(d8, w)
    assert space.dimension == twisted_irrep_count(d8, w) == 2


def test_state_space_dimension_equals_partition():
    k4 = product_group([2, 2])
    w1 = catalog_cocycle("product_2cocycle", {"N": 2, "k": 1})
    space = state_space_torus(k4, w1)
    assert space.dimension == int(dw_partition_torus(k4, w1, 2))


# --------------------------------------------------------------------------
# symmetry action


def klein_in_d8_extension():
    d8 = dihedral_group(8)
    k4 = product_group([2, 2])
    iota = GroupHom(k4, d8, [0, 2, 4, 6])
    z2 = cyclic_group(2)
    klein = {0, 2, 4, 6}
    lam = GroupHom(d8, z2, [0 if x in klein else 1 for x in d8.elements()])
    return Extension(k4, d8, z2, iota, lam, find_section(lam))


def test_symmetry_action_from_closed_lift_is_exact():
    ext = klein_in_d8_extension()
    k4, z2 = ext.kernel, ext.quotient
    w1 = catalog_cocycle("product_2cocycle", {"N": 2, "k": 1})
    lift = find_closed_lift(ext, w1)
    assert lift is not None and pullback(ext.iota, lift) == w1

    alpha = ext.action
    phis = {
        g: interval_pairing(lift, ext.section[z2.inverses[g]], ext.iota)
        for g in z2.elements()
    }
    space = state_space_torus(k4, w1)
    matrices, defect = symmetry_action(z2, alpha, phis, space)
    assert defect == {}
    for mat in matrices.values():
        assert len(mat) == space.dimension


def test_symmetry_action_reports_projective_defect():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    space = state_space_torus(z4, Cochain.zero(z4, 2))
    assert space.dimension == 4
    chi = Cochain(z4, 1, 4, {(x,): PhaseValue(x, 4) for x in range(1, 4)})
    phis = {0: Cochain.zero(z4, 1), 1: chi}
    ident = GroupHom(z4, z4, [0, 1, 2, 3])
    _, defect = symmetry_action(z2, lambda g: ident, phis, space)
    assert defect == {(1, 1): {1: PhaseValue(1, 2), 3: PhaseValue(1, 2)}}


def test_symmetry_action_rejects_wrong_phi():
    z4, z2 = cyclic_group(4), cyclic_group(2)
    space = state_space_torus(z4, Cochain.zero(z4, 2))
    bad = Cochain(z4, 1, 4, {(1,): PhaseValue(1, 4)})
    wrong = {0: Cochain.zero(z4, 1), 1: bad}
    ident = GroupHom(z4, z4, [0, 1, 2, 3])
    with pytest.raises(IncompatiblePhases):
        symmetry_action(z2, lambda g: ident, wrong, space)
