"""Normalized bar cochains with values in Q/Z, and their exact cohomology.

Cohomology with U(1) coefficients is computed as integral cohomology one
degree up (exact for finite groups), with U(1)-valued generator cocycles
recovered by dividing integral torsion witnesses.

A key size reduction used throughout: a bar cochain z with delta z = 0 that
vanishes on all tuples whose first entry lies in a generating set vanishes
identically (induction on the word length of the first entry, using the
simplicial identity).  Kernels and coboundary equations are therefore solved
on the generator-restricted row set, which is exactly equivalent.
"""

from __future__ import annotations

import itertools
from math import gcd, lcm

from sympy import factorint

from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    NonCommuting,
    NotACocycle,
    UnknownFamily,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    cyclic_group,
    dihedral_exponents,
    dihedral_group,
    product_digits,
    product_group,
)
from .linalg import SparseElimination
from .phase import PhaseValue

BAR_MATRIX_NNZ_BUDGET = 2**22


# -- cochains ----------------------------------------------------------------


class Cochain:
    """Normalized n-cochain on a finite group with values in (1/M)Z/Z."""

    __slots__ = ("group", "degree", "modulus", "values")

    def __init__(self, group, degree, modulus, values=None):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        if modulus < 1:
            raise ValueError("modulus must be positive")
        cleaned = {}
        e = group.identity
        for t, v in (values or {}).items():
            t = tuple(t)
            if len(t) != degree:
                raise ValueError(f"tuple {t} has wrong length")
            if e in t:
                if not v.is_zero():
                    raise ValueError(
                        f"non-normalized value at {t}"
                    )
                continue
            if modulus % v.reduced().modulus:
                raise ValueError(
                    f"value modulus {v.modulus} does not divide {modulus}"
                )
            if not v.is_zero():
                cleaned[t] = v.reduced()
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "values", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("Cochain is immutable")

    @staticmethod
    def zero(group, degree, modulus=1):
        return Cochain(group, degree, modulus, {})

    def value(self, t):
        v = self.values.get(tuple(t))
        return v if v is not None else PhaseValue.zero(self.modulus)

    def is_zero(self):
        return not self.values

    def _combine(self, other, sign):
        if self.group != other.group or self.degree != other.degree:
            raise DegreeMismatch("cochains not compatible")
        m = lcm(self.modulus, other.modulus)
        vals = dict(self.values)
        for t, v in other.values.items():
            w = vals.get(t, PhaseValue.zero(1)) + (sign * v)
            if w.is_zero():
                vals.pop(t, None)
            else:
                vals[t] = w
        return Cochain(self.group, self.degree, m, vals)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Cochain(
            self.group,
            self.degree,
            self.modulus,
            {t: -v for t, v in self.values.items()},
        )

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return Cochain(
            self.group,
            self.degree,
            self.modulus,
            {t: v * k for t, v in self.values.items()},
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (
            self.group == other.group
            and self.degree == other.degree
            and self.values == other.values
        )

    def __hash__(self):
        return hash(
            (self.degree, self.modulus, tuple(sorted(self.values.items(),
                                                     key=lambda kv: kv[0])))
        )

    def denominator(self):
        """lcm of the reduced denominators of all values (1 if zero)."""
        d = 1
        for v in self.values.values():
            d = lcm(d, v.reduced().modulus)
        return d

    def __repr__(self):
        return (
            f"Cochain(degree={self.degree}, modulus={self.modulus}, "
            f"support={len(self.values)})"
        )


def all_tuples(group, n):
    """All normalized n-tuples (no identity entries), row-major order."""
    return itertools.product(group.nonidentity(), repeat=n)


class TupleIndex:
    """Dense row-major indexing of normalized n-tuples."""

    def __init__(self, group, n):
        self.group = group
        self.n = n
        self.nonid = group.nonidentity()
        self.pos = {g: i for i, g in enumerate(self.nonid)}
        self.base = len(self.nonid)
        self.size = self.base**n

    def index(self, t):
        i = 0
        for g in t:
            i = i * self.base + self.pos[g]
        return i

    def tuple(self, i):
        out = []
        for _ in range(self.n):
            out.append(self.nonid[i % self.base])
            i //= self.base
        return tuple(reversed(out))

    def all(self):
        return itertools.product(self.nonid, repeat=self.n)


def _delta_faces(group, t):
    """Faces of the bar differential at tuple t: pairs (sign, face_tuple).

    Faces containing the identity are dropped (normalized complex).
    """
    e = group.identity
    n = len(t)
    faces = []
    f0 = t[1:]
    if e not in f0:
        faces.append((1, f0))
    sign = -1
    for i in range(n - 1):
        f = t[:i] + (group.mul(t[i], t[i + 1]),) + t[i + 2:]
        if e not in f:
            faces.append((sign, f))
        sign = -sign
    flast = t[:-1]
    if e not in flast:
        faces.append((sign, flast))
    return faces


def coboundary(c):
    """The bar differential (trivial coefficients), degree n -> n+1."""
    g = c.group
    vals = {}
    if c.is_zero():
        return Cochain(g, c.degree + 1, c.modulus, {})
    for t in all_tuples(g, c.degree + 1):
        acc = PhaseValue.zero(c.modulus)
        for sign, f in _delta_faces(g, t):
            acc = acc + sign * c.value(f)
        if not acc.is_zero():
            vals[t] = acc
    return Cochain(g, c.degree + 1, c.modulus, vals)


def is_cocycle(c):
    return coboundary(c).is_zero()


def pullback(f: GroupHom, c: Cochain):
    """(f^* c)(g1..gn) = c(f g1, ..., f gn), re-normalized."""
    src = f.source
    vals = {}
    e = src.identity
    for t in all_tuples(src, c.degree):
        v = c.value(tuple(f(g) for g in t))
        if not v.is_zero():
            vals[t] = v
    return Cochain(src, c.degree, c.modulus, vals)


# -- formal chains and shuffles ------------------------------------------------


class FormalChain:
    """Finitely supported integer combination of bar n-simplices."""

    __slots__ = ("group", "degree", "terms")

    def __init__(self, group, degree, terms=None):
        cleaned = {}
        e = group.identity
        for t, k in (terms or {}).items():
            t = tuple(t)
            if len(t) != degree:
                raise ValueError(f"tuple {t} has wrong length")
            if k and e not in t:
                cleaned[t] = cleaned.get(t, 0) + k
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(
            self, "terms", {t: k for t, k in cleaned.items() if k}
        )

    def __setattr__(self, name, value):
        raise AttributeError("FormalChain is immutable")

    @staticmethod
    def zero(group, degree):
        return FormalChain(group, degree, {})

    @staticmethod
    def simplex(group, t):
        return FormalChain(group, len(t), {tuple(t): 1})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.group != other.group or self.degree != other.degree:
            raise DegreeMismatch("chains not compatible")
        terms = dict(self.terms)
        for t, k in other.terms.items():
            terms[t] = terms.get(t, 0) + k
        return FormalChain(self.group, self.degree, terms)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return FormalChain(
            self.group, self.degree, {t: v * k for t, v in self.terms.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FormalChain):
            return NotImplemented
        return (
            self.group == other.group
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def boundary(self):
        """Bar boundary (adjoint to the coboundary under the pairing)."""
        terms = {}
        for t, k in self.terms.items():
            for sign, f in _delta_faces(self.group, t):
                terms[f] = terms.get(f, 0) + sign * k
        return FormalChain(self.group, self.degree - 1, terms)

    def __repr__(self):
        return f"FormalChain(degree={self.degree}, terms={len(self.terms)})"


def _shuffles(p, q):
    """(p,q)-shuffles as (sign, positions-of-first-block)."""
    for pos in itertools.combinations(range(p + q), p):
        inversions = sum(pos[k] - k for k in range(p))
        yield (-1) ** inversions, pos


def shuffle_cross(a: FormalChain, b: FormalChain):
    """Eilenberg-Zilber shuffle product of bar chains on one group.

    Satisfies the Leibniz rule whenever the entries of the two factors
    commute elementwise (the only case used here: torus directions).
    """
    if a.group != b.group:
        raise DegreeMismatch("chains on different groups")
    p, q = a.degree, b.degree
    out = {}
    for ta, ka in a.terms.items():
        for tb, kb in b.terms.items():
            for sign, pos in _shuffles(p, q):
                merged = [None] * (p + q)
                for k, i in enumerate(pos):
                    merged[i] = ta[k]
                it = iter(tb)
                for i in range(p + q):
                    if merged[i] is None:
                        merged[i] = next(it)
                t = tuple(merged)
                if a.group.identity not in t:
                    out[t] = out.get(t, 0) + sign * ka * kb
    return FormalChain(a.group, p + q, out)


def torus_fundamental_cycle(group, elems):
    """Fundamental cycle of the n-torus with the given commuting holonomies.

    The n-fold shuffle product of the 1-cycles (g_i): n! signed simplices.
    """
    elems = list(elems)
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if not group.commute(elems[i], elems[j]):
                raise NonCommuting(elems[i], elems[j])
    cycle = FormalChain(group, 0, {(): 1})
    for g in elems:
        cycle = shuffle_cross(cycle, FormalChain.simplex(group, (g,)))
    return cycle


def evaluate(c: Cochain, z: FormalChain):
    """Pairing <c, z> = sum of coeff * c(tuple) in Q/Z."""
    if c.group != z.group:
        raise DegreeMismatch("cochain and chain on different groups")
    if c.degree != z.degree:
        raise DegreeMismatch(
            f"cochain degree {c.degree} vs chain degree {z.degree}"
        )
    acc = PhaseValue.zero(c.modulus)
    for t, k in z.terms.items():
        acc = acc + k * c.value(t)
    return acc


def interval_pairing(omega_hat: Cochain, ghat, iota: GroupHom):
    """Slant the n-cochain on Ghat with the interval holonomy ghat.

    Returns the (n-1)-cochain Phi on D with
    delta Phi = iota^* omega_hat - kappa^* iota^* omega_hat,
    where kappa is conjugation by ghat (for closed omega_hat).
    """
    ghg = omega_hat.group
    d_grp = iota.source
    n = omega_hat.degree
    if n < 1:
        raise DegreeMismatch("interval pairing needs degree >= 1")
    vals = {}
    for t in all_tuples(d_grp, n - 1):
        up = [iota(d) for d in t]
        acc = PhaseValue.zero(omega_hat.modulus)
        sign = 1
        for i in range(n):
            # conjugate the entries that sit past the interval direction
            args = (
                [ghg.conjugate(ghat, u) for u in up[:i]]
                + [ghat]
                + up[i:]
            )
            acc = acc + sign * omega_hat.value(tuple(args))
            sign = -sign
        if not acc.is_zero():
            vals[t] = acc
    return Cochain(d_grp, n - 1, omega_hat.modulus, vals)


# -- catalog cocycles ----------------------------------------------------------


def catalog_cocycle(name, params=None):
    """Named cocycle families used as reference data.

    * ``product_2cocycle`` (N, k): on Z_N x Z_N,
      w((a1,b1),(a2,b2)) = k a1 b2 / N.
    * ``dihedral8_2cocycle``: on D8, w(a^i b^j, a^i' b^j') = 0 if j = 0,
      else i'/4.
    * ``cyclic_3cocycle`` (N, k): on Z_N,
      w(a,b,c) = k a floor((b+c)/N) / N.
    * ``extension_2cocycle`` (N, M): the Z_N-valued 2-cocycle on Z_M,
      sigma(a,b) = floor((a+b)/M) mod N, returned as an M x M table.
    """
    params = dict(params or {})
    if name == "product_2cocycle":
        n_par, k = int(params["N"]), int(params.get("k", 1))
        grp = product_group([n_par, n_par])
        vals = {}
        for t in all_tuples(grp, 2):
            a1, _b1 = product_digits([n_par, n_par], t[0])
            _a2, b2 = product_digits([n_par, n_par], t[1])
            v = PhaseValue(k * a1 * b2, n_par)
            if not v.is_zero():
                vals[t] = v
        return Cochain(grp, 2, n_par, vals)
    if name == "dihedral8_2cocycle":
        grp = dihedral_group(8)
        vals = {}
        for t in all_tuples(grp, 2):
            _i, j = dihedral_exponents(8, t[0])
            i2, _j2 = dihedral_exponents(8, t[1])
            if j == 1:
                v = PhaseValue(i2, 4)
                if not v.is_zero():
                    vals[t] = v
        return Cochain(grp, 2, 4, vals)
    if name == "cyclic_3cocycle":
        n_par, k = int(params["N"]), int(params.get("k", 1))
        grp = cyclic_group(n_par)
        vals = {}
        for t in all_tuples(grp, 3):
            a, b, c = t
            v = PhaseValue(k * a * ((b + c) // n_par), n_par)
            if not v.is_zero():
                vals[t] = v
        return Cochain(grp, 3, n_par, vals)
    if name == "extension_2cocycle":
        n_par, m_par = int(params["N"]), int(params["M"])
        return [
            [((a + b) // m_par) % n_par for b in range(m_par)]
            for a in range(m_par)
        ]
    raise UnknownFamily(f"unknown cocycle family {name!r}")


# -- delta as a sparse matrix ----------------------------------------------------


def delta_matrix_rows(group, n, first_args=None, index=None):
    """Sparse rows of delta: C^n -> C^{n+1}, one row per (n+1)-tuple.

    ``first_args`` restricts rows to tuples whose first entry is in the
    given set (sufficient for kernel and coboundary systems, see module
    docstring).  Returns (row_tuples, row_dicts) with columns indexed by
    ``index`` (a TupleIndex for degree n).
    """
    index = index or TupleIndex(group, n)
    firsts = list(first_args) if first_args is not None else group.nonidentity()
    row_tuples = []
    rows = []
    for t in itertools.product(
        firsts, *([group.nonidentity()] * n)
    ):
        row = {}
        for sign, f in _delta_faces(group, t):
            c = index.index(f)
            v = row.get(c, 0) + sign
            if v:
                row[c] = v
            else:
                row.pop(c, None)
        row_tuples.append(t)
        rows.append(row)
    return row_tuples, rows


def full_bar_nnz(group, n):
    """Pessimistic nonzero count of the unrestricted delta matrix C^n -> C^{n+1}."""
    return (group.order - 1) ** (n + 1) * (n + 2)


def cochain_vector(c: Cochain, index: TupleIndex, scale_to=None):
    """Integer vector of c on the index, scaled to denominator ``scale_to``."""
    den = scale_to or c.denominator()
    vec = [0] * index.size
    for t, v in c.values.items():
        f = v.as_fraction()
        vec[index.index(t)] = f.numerator * (den // f.denominator)
    return vec


def vector_cochain(group, degree, vec, modulus, index=None):
    """Cochain with values vec[i]/modulus on the indexed tuples."""
    index = index or TupleIndex(group, degree)
    vals = {}
    for i, v in enumerate(vec):
        if v % modulus:
            vals[index.tuple(i)] = PhaseValue(v, modulus)
    return Cochain(group, degree, modulus, vals)


# -- cohomology -----------------------------------------------------------------


def _integral_coboundary(group, n, vec, index_n, index_k):
    """delta of an integer n-cochain vector, as an integer (n+1)-vector."""
    out = [0] * index_k.size
    for i, t in enumerate(index_k.all()):
        acc = 0
        for sign, f in _delta_faces(group, t):
            v = vec[index_n.index(f)]
            if v:
                acc += sign * v
        if acc:
            out[i] = acc
    return out


def _crt_pair(r1, m1, r2, m2):
    g, x = 0, 0
    # m1, m2 coprime here
    from math import gcd as _g
    assert _g(m1, m2) == 1
    inv = pow(m1, -1, m2)
    return (r1 + m1 * ((r2 - r1) * inv % m2)) % (m1 * m2), m1 * m2


class CohomologyGroup:
    """H^n(G; U(1)) with explicit generator cocycles and a classifying map.

    ``invariant_factors`` is the ascending divisibility chain (entries > 1);
    ``generators[i]`` is a U(1)-valued cocycle of order exactly
    ``invariant_factors[i]`` with classify(generators[i]) = e_i.
    """

    def __init__(self, group, degree, invariant_factors, generators, data):
        self.group = group
        self.degree = degree
        self.invariant_factors = invariant_factors
        self.generators = generators
        self._data = data

    def classify(self, c: Cochain):
        """Coefficient vector of [c] on the generators, mod the factors.

        Additive, kills coboundaries; raises NotACocycle if c is not closed
        over Q/Z.
        """
        if c.group != self.group or c.degree != self.degree:
            raise DegreeMismatch("cochain does not match this cohomology")
        d = self._data
        den = c.denominator()
        vec = cochain_vector(c, d["index_n"], scale_to=den)
        w = _integral_coboundary(self.group, self.degree, vec,
                                 d["index_n"], d["index_k"])
        for i, v in enumerate(w):
            if v % den:
                raise NotACocycle("cochain is not closed over Q/Z")
            w[i] = v // den
        coords = d["elim_b"].col_coords(w)
        for _r, cc, _dd in d["elim_b"].pivots:
            if coords[cc]:
                raise NotACocycle("Bockstein image is not a cocycle vector")
        fc_vec = [coords[f] for f in d["elim_b"].free_cols]
        y = d["elim_x"].apply_row_ops(fc_vec)
        raw = {r: y[r] for r, _c, _dd in d["elim_x"].pivots}
        out = []
        for parts in d["slots"]:
            residue, mod = 0, 1
            for _p, pe, pos, mult in parts:
                r_piv = d["elim_x"].pivots[pos][0]
                comp = raw[r_piv] * pow(mult, -1, pe) % pe
                residue, mod = _crt_pair(residue, mod, comp, pe)
            out.append(residue)
        return tuple(out)

    def __repr__(self):
        return (
            f"CohomologyGroup(H^{self.degree}, factors="
            f"{self.invariant_factors})"
        )


def cohomology(group, n, allow_large=False, budget=BAR_MATRIX_NNZ_BUDGET):
    """H^n(G; U(1)), computed as integral cohomology in degree n+1.

    The kernel and image of the integral bar differential are found by exact
    sparse elimination; each torsion generator f of order d gets a U(1)
    representative a/d from an integral witness delta(a) = d*f.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    k = n + 1
    nnz = full_bar_nnz(group, k)
    if nnz > budget and not allow_large:
        raise BudgetExceeded(
            f"bar matrix for H^{n}({group.label or 'G'})", nnz, budget
        )
    gens = group.generators()
    index_n = TupleIndex(group, n)
    index_k = TupleIndex(group, k)

    # cocycles: kernel of delta_k on the generator-restricted row set
    _bt, rows_b = delta_matrix_rows(group, k, first_args=gens, index=index_k)
    elim_b = SparseElimination(rows_b, index_k.size).eliminate()
    free = elim_b.free_cols
    free_pos = {f: i for i, f in enumerate(free)}
    nullity = len(free)

    # coboundaries: columns of delta_n expressed in kernel coordinates
    cols = [dict() for _ in range(index_n.size)]
    for i, t in enumerate(index_k.all()):
        for sign, f in _delta_faces(group, t):
            j = index_n.index(f)
            v = cols[j].get(i, 0) + sign
            if v:
                cols[j][i] = v
            else:
                cols[j].pop(i, None)
    x_rows = [dict() for _ in range(nullity)]
    for j, col in enumerate(cols):
        dense = [0] * index_k.size
        for i, v in col.items():
            dense[i] = v
        coords = elim_b.col_coords(dense)
        for _r, cc, _d in elim_b.pivots:
            assert coords[cc] == 0, "coboundary outside the cocycle space"
        for f, i in free_pos.items():
            if coords[f]:
                x_rows[i][j] = coords[f]
    elim_x = SparseElimination(x_rows, index_n.size).eliminate()
    if len(elim_x.pivots) != nullity:
        raise AssertionError("unexpected free part in group cohomology")

    # raw cyclic summands -> canonical invariant factors (per-prime slots)
    raw_orders = [abs(d) for _r, _c, d in elim_x.pivots]
    primary = {}  # prime -> [(exponent, pivot position, cofactor)], desc
    for pos, d in enumerate(raw_orders):
        if d <= 1:
            continue
        for p, e in factorint(d).items():
            primary.setdefault(p, []).append((e, pos, d // p**e))
    for p in primary:
        primary[p].sort(reverse=True)
    nslots = max((len(v) for v in primary.values()), default=0)
    slots = []
    for t in range(nslots):
        parts = []
        for p in sorted(primary):
            lst = primary[p]
            if t < len(lst):
                e, pos, mult = lst[t]
                parts.append((p, p**e, pos, mult))
        slots.append(parts)
    slots.reverse()  # ascending divisibility chain
    factors = []
    for parts in slots:
        f = 1
        for _p, pe, _pos, _mult in parts:
            f *= pe
        factors.append(f)

    def raw_generator_vector(pos):
        r, _c, _d = elim_x.pivots[pos]
        e = [0] * nullity
        e[r] = 1
        fc = elim_x.unapply_row_ops(e)
        full = [0] * index_k.size
        for f, i in free_pos.items():
            full[f] = fc[i]
        return elim_b.apply_col_ops(full)

    # Bockstein witnesses: delta a = d * gen over Z, on restricted rows
    wit_tuples, wit_rows = delta_matrix_rows(group, n, first_args=gens,
                                             index=index_n)
    elim_a = SparseElimination(wit_rows, index_n.size)

    generators = []
    for d_slot, parts in zip(factors, slots):
        gen_vec = [0] * index_k.size
        for _p, _pe, pos, mult in parts:
            gv = raw_generator_vector(pos)
            for i, v in enumerate(gv):
                if v:
                    gen_vec[i] += mult * v
        rhs = [d_slot * gen_vec[index_k.index(t)] for t in wit_tuples]
        a = elim_a.solve(rhs)
        assert a is not None, "torsion witness must exist over Z"
        rep = vector_cochain(group, n, [v % d_slot for v in a], d_slot,
                             index=index_n)
        generators.append(rep)

    data = {
        "index_n": index_n,
        "index_k": index_k,
        "elim_b": elim_b,
        "elim_x": elim_x,
        "slots": slots,
    }
    h = CohomologyGroup(group, n, factors, generators, data)
    return h


# -- coboundary solving ---------------------------------------------------------


def is_cocycle_fast(c: Cochain):
    """Integer-arithmetic closedness check (equivalent to is_cocycle)."""
    den = c.denominator()
    index_n = TupleIndex(c.group, c.degree)
    index_k = TupleIndex(c.group, c.degree + 1)
    vec = cochain_vector(c, index_n, scale_to=den)
    w = _integral_coboundary(c.group, c.degree, vec, index_n, index_k)
    return all(v % den == 0 for v in w)


def solve_coboundary(y: Cochain, working_modulus=None):
    """Find x with delta x = y exactly in Q/Z, or None.

    The integral lift delta X = (M/den) * y~ is solved over Z/M with
    M = lcm(denominators) * |G| by default; None at the default modulus is
    definitive (torsion bound on coboundary witnesses).
    """
    g = y.group
    n = y.degree
    if n < 1:
        raise DegreeMismatch("cannot solve below degree 1")
    den = y.denominator()
    if y.is_zero():
        return Cochain.zero(g, n - 1, y.modulus)
    if not is_cocycle_fast(y):
        return None
    m_work = working_modulus or den * g.order
    if m_work % den:
        raise ValueError("working modulus must be divisible by the "
                         "denominator of y")
    index = TupleIndex(g, n - 1)
    index_n = TupleIndex(g, n)
    tuples, rows = delta_matrix_rows(g, n - 1, first_args=g.generators(),
                                     index=index)
    yvec = cochain_vector(y, index_n, scale_to=den)
    scale = m_work // den
    rhs = [scale * yvec[index_n.index(t)] for t in tuples]
    elim = SparseElimination(rows, index.size, modulus=m_work)
    x = elim.solve(rhs)
    if x is None:
        return None
    return vector_cochain(g, n - 1, x, m_work, index=index)
