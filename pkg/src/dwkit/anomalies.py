"""Group extensions, obstruction searches, and relative partition functions.

An extension 1 -> D -> Ghat -> G -> 1 encodes a G-symmetry of a
Dijkgraaf-Witten theory with gauge group D.  Gauging the symmetry requires
lifting the topological action omega on D to Ghat; the failure modes are
't Hooft anomalies.  The searches here are exact linear solves over Z/M:

* closed lift: omegahat on Ghat with delta omegahat = 0, iota^* omegahat = omega;
* boundary pair: (omega' on Ghat, theta on G) with iota^* omega' = omega,
  delta omega' = lambda^* theta, delta theta = 0.

Coboundary-type constraints are imposed only on tuples whose first entry is
a group generator; this is equivalent to the full system because the
residual cochain is closed (see the cochains module docstring).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .cochains import (
    Cochain,
    TupleIndex,
    coboundary,
    cohomology,
    delta_matrix_rows,
    evaluate,
    interval_pairing,
    is_cocycle_fast,
    pullback,
    solve_coboundary,
    torus_fundamental_cycle,
    vector_cochain,
)
from .errors import (
    DegreeMismatch,
    IncompatiblePhases,
    InvalidCocycle,
    NonCommuting,
    NotABoundaryPair,
    NotACocycle,
    SectionNotValid,
)
from .groupoids import gauge_groupoid, homotopy_fiber, induced_gauge_functor, integrate
from .groups import FiniteGroup, GroupHom, group_from_table
from .invariants import ExactPhaseSum, LoopCochain, TorusPartition, transgress_torus
from .linalg import SparseElimination
from .phase import PhaseValue


# ---------------------------------------------------------------------------
# non-abelian 2-cocycles and extensions


class NonAbelianCocycle:
    """Extension data (alpha, sigma) for G acting on D.

    ``alpha[g]`` is an automorphism of D given as a permutation list;
    ``sigma[g1][g2]`` is an element of D.  The mixed associativity
    relations are checked exhaustively.
    """

    __slots__ = ("group", "kernel", "alpha", "sigma")

    def __init__(self, group: FiniteGroup, kernel: FiniteGroup, alpha, sigma, check=True):
        self.group = group
        self.kernel = kernel
        self.alpha = tuple(tuple(a) for a in alpha)
        self.sigma = tuple(tuple(s) for s in sigma)
        if check:
            self._validate()

    def act(self, g, d):
        return self.alpha[g][d]

    def _validate(self):
        g_grp, d_grp = self.group, self.kernel
        if self.alpha[g_grp.identity] != tuple(d_grp.elements()):
            raise InvalidCocycle("alpha(1) must be the identity automorphism")
        if self.sigma[g_grp.identity][g_grp.identity] != d_grp.identity:
            raise InvalidCocycle("sigma(1,1) must be the identity")
        for g in g_grp.elements():
            a = self.alpha[g]
            if sorted(a) != list(d_grp.elements()):
                raise InvalidCocycle(f"alpha({g}) is not a bijection")
            for x in d_grp.elements():
                for y in d_grp.elements():
                    if a[d_grp.mul(x, y)] != d_grp.mul(a[x], a[y]):
                        raise InvalidCocycle(
                            f"alpha({g}) is not a homomorphism at ({x},{y})"
                        )
        for g1 in g_grp.elements():
            for g2 in g_grp.elements():
                s = self.sigma[g1][g2]
                si = d_grp.inverses[s]
                a12 = self.alpha[g_grp.mul(g1, g2)]
                for d in d_grp.elements():
                    lhs = a12[d]
                    rhs = d_grp.word([si, self.alpha[g1][self.alpha[g2][d]], s])
                    if lhs != rhs:
                        raise InvalidCocycle(
                            f"twisted-homomorphism relation fails at g1={g1}, g2={g2}, d={d}"
                        )
        for g1 in g_grp.elements():
            for g2 in g_grp.elements():
                for g3 in g_grp.elements():
                    lhs = d_grp.mul(
                        self.sigma[g1][g2], self.sigma[g_grp.mul(g1, g2)][g3]
                    )
                    rhs = d_grp.mul(
                        self.alpha[g1][self.sigma[g2][g3]],
                        self.sigma[g1][g_grp.mul(g2, g3)],
                    )
                    if lhs != rhs:
                        raise InvalidCocycle(
                            f"cocycle relation fails at ({g1},{g2},{g3})"
                        )


@dataclass(frozen=True)
class Extension:
    """A short exact sequence 1 -> D -> Ghat -> G -> 1 with a set section."""

    kernel: FiniteGroup
    total: FiniteGroup
    quotient: FiniteGroup
    iota: GroupHom
    lam: GroupHom
    section: tuple

    def __post_init__(self):
        d_grp, ghat, g_grp = self.kernel, self.total, self.quotient
        if not self.iota.is_injective():
            raise SectionNotValid("iota must be injective")
        if not self.lam.is_surjective():
            raise SectionNotValid("lambda must be surjective")
        if set(self.iota.image()) != set(self.lam.kernel()):
            raise SectionNotValid("image(iota) must equal kernel(lambda)")
        if len(self.section) != g_grp.order:
            raise SectionNotValid("section must be defined on all of G")
        if self.section[g_grp.identity] != ghat.identity:
            raise SectionNotValid("section must be normalized: s(1) = 1")
        for g in g_grp.elements():
            if self.lam(self.section[g]) != g:
                raise SectionNotValid(f"lambda(s({g})) != {g}")

    def iota_inverse(self, x):
        for d in self.kernel.elements():
            if self.iota(d) == x:
                return d
        raise SectionNotValid(f"{x} is not in the image of iota")

    def action(self, g) -> GroupHom:
        """The automorphism alpha(g) of D: conjugation by s(g) in Ghat."""
        ghat, s = self.total, self.section[g]
        return GroupHom(
            self.kernel,
            self.kernel,
            [
                self.iota_inverse(ghat.conjugate(s, self.iota(d)))
                for d in self.kernel.elements()
            ],
            check=False,
        )


def find_section(lam: GroupHom):
    """Deterministic normalized set-section of a surjection (first found)."""
    ghat, g_grp = lam.source, lam.target
    section = [None] * g_grp.order
    section[g_grp.identity] = ghat.identity
    for x in ghat.elements():
        g = lam(x)
        if section[g] is None:
            section[g] = x
    return tuple(section)


def extension_from_cocycle(nc: NonAbelianCocycle) -> Extension:
    """Build the extension D x G with twisted multiplication.

    Elements are pairs (g, d) indexed as g*|D| + d, multiplying by
    (g2, d2)(g1, d1) = (g2 g1, d2 * alpha(g2)[d1] * sigma(g2, g1)).
    """
    g_grp, d_grp = nc.group, nc.kernel
    order = g_grp.order * d_grp.order
    dn = d_grp.order

    def idx(g, d):
        return g * dn + d

    table = [[0] * order for _ in range(order)]
    for g2 in g_grp.elements():
        for d2 in d_grp.elements():
            for g1 in g_grp.elements():
                for d1 in d_grp.elements():
                    g = g_grp.mul(g2, g1)
                    d = d_grp.word([d2, nc.alpha[g2][d1], nc.sigma[g2][g1]])
                    table[idx(g2, d2)][idx(g1, d1)] = idx(g, d)
    ghat = group_from_table(order, table, label="extension")
    iota = GroupHom(d_grp, ghat, [idx(g_grp.identity, d) for d in d_grp.elements()])
    lam = GroupHom(ghat, g_grp, [x // dn for x in range(order)])
    section = tuple(idx(g, d_grp.identity) for g in g_grp.elements())
    return Extension(d_grp, ghat, g_grp, iota, lam, section)


def cocycle_from_extension(ext: Extension) -> NonAbelianCocycle:
    """Read off (alpha, sigma) from an extension and its section."""
    g_grp, d_grp, ghat = ext.quotient, ext.kernel, ext.total
    alpha = [ext.action(g).map for g in g_grp.elements()]
    sigma = []
    for g1 in g_grp.elements():
        row = []
        for g2 in g_grp.elements():
            x = ghat.word(
                [
                    ext.section[g1],
                    ext.section[g2],
                    ghat.inverses[ext.section[g_grp.mul(g1, g2)]],
                ]
            )
            row.append(ext.iota_inverse(x))
        sigma.append(row)
    return NonAbelianCocycle(g_grp, d_grp, alpha, sigma)


def extension_round_trip_iso(ext: Extension) -> GroupHom:
    """The canonical equivalence from ext to its cocycle reconstruction.

    Sends x to (lambda(x), iota^{-1}(x * s(lambda(x))^{-1})); verified to be
    an isomorphism commuting with iota and lambda.
    """
    rebuilt = extension_from_cocycle(cocycle_from_extension(ext))
    ghat, g_grp, d_grp = ext.total, ext.quotient, ext.kernel
    dn = d_grp.order
    mapping = []
    for x in ghat.elements():
        g = ext.lam(x)
        d = ext.iota_inverse(ghat.mul(x, ghat.inverses[ext.section[g]]))
        mapping.append(g * dn + d)
    phi = GroupHom(ghat, rebuilt.total, mapping)
    assert phi.is_injective(), "round-trip map must be an isomorphism"
    for d in d_grp.elements():
        assert phi(ext.iota(d)) == rebuilt.iota(d)
    for x in ghat.elements():
        assert rebuilt.lam(phi(x)) == ext.lam(x)
    return phi


def direct_product_extension(d_grp: FiniteGroup, g_grp: FiniteGroup) -> Extension:
    """The split extension with trivial action: Ghat = D x G."""
    alpha = [list(d_grp.elements()) for _ in g_grp.elements()]
    sigma = [[d_grp.identity] * g_grp.order for _ in g_grp.elements()]
    return extension_from_cocycle(
        NonAbelianCocycle(g_grp, d_grp, alpha, sigma, check=False)
    )


# ---------------------------------------------------------------------------
# obstruction searches


def is_invariant_class(ext: Extension, omega: Cochain):
    """Check [omega] is fixed by the G-action; return (verdict, witnesses).

    The witnesses are cochains Phi'_g with
    delta Phi'_g = omega - alpha(g^{-1})^* omega.
    """
    if not is_cocycle_fast(omega):
        raise NotACocycle("invariance is a statement about cocycles")
    g_grp = ext.quotient
    phis = {}
    for g in g_grp.elements():
        ginv = g_grp.inverses[g]
        target = omega - pullback(ext.action(ginv), omega)
        phi = solve_coboundary(target)
        if phi is None:
            return False, None
        phis[g] = phi
    return True, phis


def _identity_hom(group):
    return GroupHom(group, group, list(group.elements()), check=False)


def _sigma_slant(omega, d_grp, s):
    """The slant of omega by the kernel element s: a primitive for
    omega - (conjugation by s)^* omega."""
    return interval_pairing(omega, s, _identity_hom(d_grp))


def _ext_sigma(ext):
    g_grp, ghat = ext.quotient, ext.total
    cache = {}

    def sigma(a, b):
        key = (a, b)
        if key not in cache:
            x = ghat.word(
                [
                    ext.section[a],
                    ext.section[b],
                    ghat.inverses[ext.section[g_grp.mul(a, b)]],
                ]
            )
            cache[key] = ext.iota_inverse(x)
        return cache[key]

    return sigma


def is_first_obstruction_trivial(ext: Extension, omega: Cochain, phis):
    """Decide whether the obstruction class [U] in H^2(G; H^{n-1}(D)) is
    trivial; on success return (True, corrected Phi family), else
    (False, None).

    The corrected family satisfies the coherence relation up to coboundary,
    re-verified directly with solve_coboundary for every pair.
    """
    g_grp, d_grp = ext.quotient, ext.kernel
    n = omega.degree
    coh = cohomology(d_grp, n - 1)
    slots = coh.invariant_factors
    r = len(slots)
    sigma = _ext_sigma(ext)

    us = {}
    for g1 in g_grp.elements():
        for g2 in g_grp.elements():
            i1, i2 = g_grp.inverses[g1], g_grp.inverses[g2]
            u = (
                phis[i1]
                + pullback(ext.action(g1), phis[i2])
                - phis[g_grp.inverses[g_grp.mul(g1, g2)]]
                + _sigma_slant(omega, d_grp, sigma(i1, i2))
            )
            if not is_cocycle_fast(u):
                raise NotACocycle("obstruction cochain must be closed")
            us[(g1, g2)] = coh.classify(u)

    if r == 0:
        trivial = all(all(v == 0 for v in c) for c in us.values())
        return (True, dict(phis)) if trivial else (False, None)

    # action of g on H^{n-1}(D) classes, as columns in slot coordinates
    act = {}
    for g in g_grp.elements():
        cols = [
            coh.classify(pullback(ext.action(g), coh.generators[j]))
            for j in range(r)
        ]
        act[g] = cols

    big = lcm(*slots)
    non_id = [g for g in g_grp.elements() if g != g_grp.identity]
    var = {
        (g, j): idx
        for idx, (g, j) in enumerate((g, j) for g in non_id for j in range(r))
    }
    rows, rhs = [], []
    for g1 in g_grp.elements():
        for g2 in g_grp.elements():
            g12 = g_grp.mul(g1, g2)
            for i in range(r):
                scale = big // slots[i]
                row = {}

                def add(col, v):
                    if col is not None:
                        row[col] = (row.get(col, 0) + v) % big

                if g1 != g_grp.identity:
                    add(var[(g1, i)], scale)
                if g2 != g_grp.identity:
                    for j in range(r):
                        a = act[g1][j][i]
                        if a:
                            add(var[(g2, j)], scale * a)
                if g12 != g_grp.identity:
                    add(var[(g12, i)], -scale)
                rows.append({k: v for k, v in row.items() if v % big})
                rhs.append((-scale * us[(g1, g2)][i]) % big)
    elim = SparseElimination(rows, len(var), modulus=big)
    sol = elim.solve(rhs)
    if sol is None:
        return False, None

    corrected = {g_grp.identity: phis[g_grp.identity]}
    for g in non_id:
        ginv = g_grp.inverses[g]
        corr = phis[g]
        for j in range(r):
            w = sol[var[(ginv, j)]] % slots[j]
            if w:
                corr = corr + w * coh.generators[j]
        corrected[g] = corr
    # strict re-verification: coherence up to coboundary for every pair
    for g1 in g_grp.elements():
        for g2 in g_grp.elements():
            i1, i2 = g_grp.inverses[g1], g_grp.inverses[g2]
            u = (
                corrected[i1]
                + pullback(ext.action(g1), corrected[i2])
                - corrected[g_grp.inverses[g_grp.mul(g1, g2)]]
                + _sigma_slant(omega, d_grp, sigma(i1, i2))
            )
            if solve_coboundary(u) is None:
                return False, None
    return True, corrected


def default_modulus(ext: Extension, omega: Cochain, multiplier=1):
    return omega.denominator() * ext.total.order * multiplier


def find_closed_lift(ext: Extension, omega: Cochain, modulus=None):
    """A closed cocycle omegahat on Ghat restricting to omega, or None.

    The linear system over Z/M imposes delta omegahat = 0 on tuples whose
    first entry generates Ghat (equivalent to full closedness) plus the
    restriction values; the result is re-verified directly.
    """
    if not is_cocycle_fast(omega):
        raise NotACocycle("lifting is a statement about cocycles")
    n = omega.degree
    ghat, d_grp = ext.total, ext.kernel
    den = omega.denominator()
    m = modulus or default_modulus(ext, omega)
    if m % den:
        raise ValueError("working modulus must be divisible by the denominator")
    index = TupleIndex(ghat, n)
    _, rows = delta_matrix_rows(ghat, n, ghat.generators(), index)
    rhs = [0] * len(rows)
    for t in itertools.product(d_grp.nonidentity(), repeat=n):
        rows.append({index.index(tuple(ext.iota(x) for x in t)): 1})
        f = omega.value(t).as_fraction()
        rhs.append(f.numerator * (m // f.denominator) % m)
    elim = SparseElimination(rows, index.size, modulus=m)
    sol = elim.solve(rhs)
    if sol is None:
        return None
    omegahat = vector_cochain(ghat, n, sol, m, index=index)
    assert is_cocycle_fast(omegahat), "solver output must be closed"
    assert pullback(ext.iota, omegahat) == omega, "solver output must restrict"
    return omegahat


def find_boundary_pair(ext: Extension, omega: Cochain, modulus=None):
    """(omega' on Ghat, theta on G) with iota^* omega' = omega,
    delta omega' = lambda^* theta, delta theta = 0; or None.

    Solved as one coupled system over Z/M; the returned pair re-verifies
    bit-exactly.
    """
    if not is_cocycle_fast(omega):
        raise NotACocycle("boundary pairs are for cocycles")
    n = omega.degree
    ghat, g_grp, d_grp = ext.total, ext.quotient, ext.kernel
    den = omega.denominator()
    m = modulus or default_modulus(ext, omega)
    if m % den:
        raise ValueError("working modulus must be divisible by the denominator")
    idx_x = TupleIndex(ghat, n)
    idx_y = TupleIndex(g_grp, n + 1)
    off = idx_x.size
    rows, rhs = [], []
    # restriction rows
    for t in itertools.product(d_grp.nonidentity(), repeat=n):
        rows.append({idx_x.index(tuple(ext.iota(x) for x in t)): 1})
        f = omega.value(t).as_fraction()
        rhs.append(f.numerator * (m // f.denominator) % m)
    # delta omega' - lambda^* theta = 0 on generator-led tuples of Ghat
    row_tuples, drows = delta_matrix_rows(ghat, n, ghat.generators(), idx_x)
    for t, row in zip(row_tuples, drows):
        lt = tuple(ext.lam(x) for x in t)
        row = dict(row)
        if all(x != g_grp.identity for x in lt):
            c = off + idx_y.index(lt)
            row[c] = (row.get(c, 0) - 1) % m
        rows.append(row)
        rhs.append(0)
    # delta theta = 0 on generator-led tuples of G
    _, trows = delta_matrix_rows(g_grp, n + 1, g_grp.generators(), idx_y)
    for row in trows:
        rows.append({off + c: v for c, v in row.items()})
        rhs.append(0)
    elim = SparseElimination(rows, off + idx_y.size, modulus=m)
    sol = elim.solve(rhs)
    if sol is None:
        return None
    omega_p = vector_cochain(ghat, n, sol[:off], m, index=idx_x)
    theta = vector_cochain(g_grp, n + 1, sol[off:], m, index=idx_y)
    assert pullback(ext.iota, omega_p) == omega
    assert coboundary(omega_p) == pullback(ext.lam, theta)
    assert is_cocycle_fast(theta)
    return omega_p, theta


@dataclass(frozen=True)
class ObstructionReport:
    """Outcome of the gauging-obstruction workflow for (extension, omega)."""

    invariant_class: bool
    first_obstruction_trivial: bool
    phi_witnesses: dict
    closed_lift: Cochain | None
    boundary_pair: tuple | None
    theta_class: tuple | None
    verdict: str
    modulus: int


def anomaly_report(ext: Extension, omega: Cochain, modulus_multiplier=1) -> ObstructionReport:
    """Run the obstruction checks in order, short-circuiting on failure.

    Verdicts: anomaly_free (closed lift exists),
    thooft_anomalous_with_bulk (boundary pair with nontrivial bulk theta),
    invariance_fails, first_obstruction_fails.
    """
    m = default_modulus(ext, omega, modulus_multiplier)
    inv, phis = is_invariant_class(ext, omega)
    if not inv:
        return ObstructionReport(
            False, False, {}, None, None, None, "invariance_fails", m
        )
    ok, corrected = is_first_obstruction_trivial(ext, omega, phis)
    if not ok:
        return ObstructionReport(
            True, False, phis, None, None, None, "first_obstruction_fails", m
        )
    lift = find_closed_lift(ext, omega, modulus=m)
    if lift is not None:
        zero_theta = Cochain.zero(ext.quotient, omega.degree + 1, 1)
        return ObstructionReport(
            True,
            True,
            corrected,
            lift,
            (lift, zero_theta),
            tuple([0] * len(cohomology(ext.quotient, omega.degree + 1).invariant_factors)),
            "anomaly_free",
            m,
        )
    pair = find_boundary_pair(ext, omega, modulus=m)
    assert pair is not None, (
        "first obstruction vanished but no boundary pair was found; "
        "escalate the working modulus"
    )
    theta = pair[1]
    cls = cohomology(ext.quotient, omega.degree + 1).classify(theta)
    return ObstructionReport(
        True, True, corrected, None, pair, cls, "thooft_anomalous_with_bulk", m
    )


# ---------------------------------------------------------------------------
# relative partition function and projective state cocycle


def _verify_boundary_pair(ext, omega_p, theta):
    if coboundary(omega_p) != pullback(ext.lam, theta) or not is_cocycle_fast(theta):
        raise NotABoundaryPair("delta omega' must equal lambda^* theta with theta closed")


def relative_partition_torus(ext: Extension, omega_p: Cochain, theta: Cochain, phi):
    """Relative (anomalous) partition function on the torus in sector phi.

    phi is a commuting tuple in G of length n = deg(omega'); the value is
    the groupoid integral over the homotopy fibre of lambda_* above phi of
    the omega'-action of the lifted holonomies times the theta-cylinder
    term of the comparison isomorphism.
    """
    _verify_boundary_pair(ext, omega_p, theta)
    n = omega_p.degree
    g_grp, ghat = ext.quotient, ext.total
    if len(phi) != n:
        raise NonCommuting(phi, f"expected a commuting {n}-tuple")
    for a in phi:
        for b in phi:
            if not g_grp.commute(a, b):
                raise NonCommuting(a, b)
    functor = induced_gauge_functor(ext.lam, n)
    fibre = homotopy_fiber(functor, tuple(phi))
    ident = _identity_hom(g_grp)

    def integrand(obj):
        phihat, h = obj
        val = evaluate(omega_p, torus_fundamental_cycle(ghat, phihat))
        down = tuple(ext.lam(x) for x in phihat)
        if h != g_grp.identity:
            cyl = interval_pairing(theta, h, ident)
            val = val + evaluate(cyl, torus_fundamental_cycle(g_grp, down))
        return val.reduced()

    weights = integrate(fibre, integrand)
    if isinstance(weights, Fraction):
        return TorusPartition(weights, ExactPhaseSum((weights,), 1))
    if not weights:
        zero = ExactPhaseSum((Fraction(0),), 1)
        return TorusPartition(Fraction(0), zero)
    m = lcm(*(p.modulus for p in weights))
    counts = [Fraction(0)] * m
    for p, w in weights.items():
        counts[p.numerator * (m // p.modulus) % m] += w
    total = ExactPhaseSum(tuple(counts), m)
    return TorusPartition(total.as_rational(), total)


def projective_state_cocycle(ext: Extension, omega_p: Cochain, theta: Cochain, k=None):
    """Defect 2-cocycle of the symmetry action on torus state spaces.

    Builds, sector by sector, the projective action of G on the relative
    state spaces on T^k (k = deg(theta) - 2) and extracts its scalar
    composition defect as a 2-cocycle on the gauge groupoid of G; returns
    (defect, transgressed theta, same_class) where same_class is decided by
    solving for a groupoid coboundary between the two.
    """
    _verify_boundary_pair(ext, omega_p, theta)
    if k is None:
        k = theta.degree - 2
    if k != theta.degree - 2:
        raise DegreeMismatch("torus dimension must be deg(theta) - 2")
    if k < 1:
        raise NotABoundaryPair("need deg(theta) >= 3")
    g_grp, ghat, d_grp = ext.quotient, ext.total, ext.kernel
    modulus = lcm(omega_p.modulus, theta.modulus)

    # k-fold transgression of omega' on Ghat; omega' is generally not
    # closed (delta omega' = lambda* theta), so skip the closure check --
    # the result is used only as a transport datum along kernel morphisms.
    bundle = transgress_torus(omega_p, k, check=False)

    sectors = gauge_groupoid(g_grp, k).objects()
    bases = {}
    for phi in sectors:
        objs = [
            t
            for t in gauge_groupoid(ghat, k).objects()
            if tuple(ext.lam(x) for x in t) == phi
        ]
        # orbits under conjugation by the kernel
        orbit = {}
        for t in objs:
            if t in orbit:
                continue
            for d in d_grp.elements():
                u = tuple(ghat.conjugate(ext.iota(d), x) for x in t)
                orbit[u] = t
        reps = sorted({orbit[t] for t in objs})
        basis = []
        for rep in reps:
            stab = [
                d
                for d in d_grp.elements()
                if all(ghat.commute(ext.iota(d), x) for x in rep)
            ]
            if all(
                bundle.value(rep, (ext.iota(d),)).is_zero() for d in stab
            ):
                basis.append(rep)
        bases[phi] = (basis, orbit)

    def transport_phase(rep, target):
        """Phase moving a parallel section value from rep to target."""
        for d in d_grp.elements():
            u = ext.iota(d)
            if tuple(ghat.conjugate(ghat.inverses[u], x) for x in rep) == target:
                return bundle.value(rep, (u,))
        raise AssertionError("target not in the orbit of rep")

    def operator(phi, g):
        """Monomial operator from sector g^{-1} phi g to sector phi."""
        src_phi = tuple(g_grp.conjugate(g_grp.inverses[g], x) for x in phi)
        src_basis, _ = bases[src_phi]
        dst_basis, dst_orbit = bases[phi]
        s = ext.section[g]
        mat = {}
        for i, rep in enumerate(src_basis):
            moved = tuple(ghat.conjugate(s, x) for x in rep)
            phase = bundle.value(rep, (ghat.inverses[s],))
            target_rep = dst_orbit.get(moved)
            if target_rep is None or target_rep not in dst_basis:
                raise IncompatiblePhases("symmetry does not preserve the basis")
            j = dst_basis.index(target_rep)
            mat[(j, i)] = (phase + transport_phase(target_rep, moved)).reduced()
        return mat

    vals = {}
    for phi in sectors:
        for g1 in g_grp.nonidentity():
            for g2 in g_grp.nonidentity():
                mid = tuple(g_grp.conjugate(g_grp.inverses[g1], x) for x in phi)
                m1 = operator(phi, g1)
                m2 = operator(mid, g2)
                comp = {}
                for (j, i), p1 in m1.items():
                    for (i2, l), p2 in m2.items():
                        if i2 == i:
                            comp[(j, l)] = p1 + p2
                m12 = operator(phi, g_grp.mul(g1, g2))
                assert set(comp) == set(m12), "monomial supports must agree"
                diffs = {
                    (comp[key] - m12[key]).reduced() for key in comp
                }
                assert len(diffs) <= 1, "composition defect must be scalar"
                d = diffs.pop() if diffs else PhaseValue.zero(1)
                if not d.is_zero():
                    vals[(phi, (g1, g2))] = d
    defect = LoopCochain(g_grp, k, 2, modulus, vals)
    trans = transgress_torus(theta, k)
    same = loop_classes_equal(defect, trans)
    return defect, trans, same


def loop_solve_coboundary(diff: LoopCochain):
    """Solve delta(eta) = diff for a 1-cochain on the loop groupoid, or None."""
    g = diff.group
    m_work = diff.modulus * g.order
    bases = gauge_groupoid(g, diff.loops).objects()
    non_id = g.nonidentity()
    var = {}
    for b in bases:
        for x in non_id:
            var[(b, x)] = len(var)
    rows, rhs = [], []
    for b in bases:
        for x1 in non_id:
            for x2 in non_id:
                row = {}

                def add(key, v):
                    if key[1] != g.identity:
                        c = var[key]
                        row[c] = (row.get(c, 0) + v) % m_work

                tb = diff.transport(x1, b)
                add((tb, x2), 1)
                add((b, g.mul(x1, x2)), -1)
                add((b, x1), 1)
                rows.append(row)
                f = diff.value(b, (x1, x2)).as_fraction()
                rhs.append(f.numerator * (m_work // f.denominator) % m_work)
    elim = SparseElimination(rows, len(var), modulus=m_work)
    sol = elim.solve(rhs)
    if sol is None:
        return None
    vals = {}
    for (b, x), c in var.items():
        if sol[c] % m_work:
            vals[(b, (x,))] = PhaseValue(sol[c], m_work)
    return LoopCochain(g, diff.loops, 1, m_work, vals)


def loop_classes_equal(a: LoopCochain, b: LoopCochain) -> bool:
    """Whether two loop-groupoid 2-cocycles differ by a groupoid coboundary."""
    m = lcm(a.modulus, b.modulus)
    vals = {}
    keys = set(a.values) | set(b.values)
    for (base, args) in keys:
        v = a.value(base, args) - b.value(base, args)
        if not v.is_zero():
            vals[(base, args)] = v
    diff = LoopCochain(a.group, a.loops, 2, m, vals)
    return loop_solve_coboundary(diff) is not None
