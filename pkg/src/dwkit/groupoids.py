"""Essentially finite groupoids, cardinality, and gauge-invariant integration.

A groupoid here is an explicit finite category in which every morphism is
invertible: a finite set of objects together with finite morphism sets and a
composition rule.  The main instances are the gauge groupoids of a finite
group G on a torus: objects are commuting n-tuples (holonomies), morphisms
are simultaneous conjugations.

Integration against the groupoid cardinality measure sums f(x)/|Aut(x)| over
isomorphism classes; the integrand is checked to be constant on classes
before summing.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iter_product

from .errors import BudgetExceeded, NotGaugeInvariant
from .groups import FiniteGroup, GroupHom
from .phase import PhaseValue

GAUGE_TUPLE_BUDGET = 10**6

# Associativity is checked on all composable triples only below this many
# morphisms; larger groupoids are spot-checked on a deterministic sample.
FULL_ASSOC_MORPHISM_CAP = 200


class FinGroupoid:
    """Finite groupoid given by explicit morphism sets.

    ``hom`` maps ordered object pairs to tuples of morphism labels; pairs
    with no morphisms may be omitted.  ``compose`` is a callable
    ``compose(x, y, z, f, g) -> label`` returning g∘f for f: x -> y and
    g: y -> z.  ``identities`` maps each object to its identity label.
    """

    def __init__(self, objects, hom, compose, identities, check=True):
        self._objects = tuple(objects)
        self._hom = {k: tuple(v) for k, v in hom.items() if v}
        self._compose = compose
        self._identities = dict(identities)
        self._classes = None
        if check:
            self._validate()

    # -- basic structure ---------------------------------------------------

    def objects(self):
        return self._objects

    def morphisms(self, x, y):
        return self._hom.get((x, y), ())

    def identity(self, x):
        return self._identities[x]

    def compose(self, x, y, z, f, g):
        """g∘f for f: x -> y, g: y -> z."""
        return self._compose(x, y, z, f, g)

    def aut(self, x):
        return self.morphisms(x, x)

    def morphism_pairs(self):
        """Ordered object pairs with at least one morphism."""
        return self._hom.keys()

    def _validate(self):
        for x in self._objects:
            e = self._identities.get(x)
            if e is None or e not in self.morphisms(x, x):
                raise ValueError(f"missing identity morphism at {x!r}")
        total = sum(len(v) for v in self._hom.values())
        for (x, y), fs in self._hom.items():
            ex, ey = self._identities[x], self._identities[y]
            for f in fs:
                if self.compose(x, x, y, ex, f) != f:
                    raise ValueError("identity is not right-neutral")
                if self.compose(x, y, y, f, ey) != f:
                    raise ValueError("identity is not left-neutral")
                back = self.morphisms(y, x)
                if not any(
                    self.compose(x, y, x, f, g) == ex
                    and self.compose(y, x, y, g, f) == ey
                    for g in back
                ):
                    raise ValueError(f"morphism {f!r}: {x!r} -> {y!r} has no inverse")
        if total <= FULL_ASSOC_MORPHISM_CAP:
            triples = [
                (x, y, z, f, g, h)
                for (x, y), fs in self._hom.items()
                for (y2, z), gs in self._hom.items()
                if y2 == y
                for (z2, w), hs in self._hom.items()
                if z2 == z
                for f in fs
                for g in gs
                for h in hs
            ]
        else:
            pairs = sorted(self._hom.keys(), key=repr)
            triples = []
            for (x, y) in pairs[:20]:
                f = self._hom[(x, y)][0]
                for (y2, z) in pairs:
                    if y2 != y:
                        continue
                    g = self._hom[(y2, z)][0]
                    for (z2, w) in pairs:
                        if z2 != z:
                            continue
                        h = self._hom[(z2, w)][0]
                        triples.append((x, y, z, f, g, h))
                        break
                    break
        for (x, y, z, f, g, h) in triples:
            w = None
            for (z2, ww), hs in self._hom.items():
                if z2 == z and h in hs:
                    w = ww
                    break
            if w is None:
                continue
            lhs = self.compose(x, z, w, self.compose(x, y, z, f, g), h)
            rhs = self.compose(x, y, w, f, self.compose(y, z, w, g, h))
            if lhs != rhs:
                raise ValueError("composition is not associative")

    # -- isomorphism classes -----------------------------------------------

    def isomorphism_classes(self):
        """Partition of the objects into connected components.

        Returns a list of lists; the first entry of each is the class
        representative.
        """
        if self._classes is None:
            parent = {x: x for x in self._objects}

            def find(a):
                while parent[a] != a:
                    parent[a] = parent[parent[a]]
                    a = parent[a]
                return a

            for (x, y) in self.morphism_pairs():
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
            buckets = {}
            for x in self._objects:
                buckets.setdefault(find(x), []).append(x)
            self._classes = [sorted(v, key=repr) for v in buckets.values()]
            self._classes.sort(key=lambda c: repr(c[0]))
        return self._classes

    def some_morphism(self, x, y):
        """An arbitrary morphism x -> y, or None."""
        ms = self.morphisms(x, y)
        return ms[0] if ms else None


class GaugeGroupoid(FinGroupoid):
    """Commuting n-tuples in G with simultaneous conjugation as morphisms.

    Morphism labels are group elements: k maps the tuple t to k t k^{-1}
    (applied entrywise); composition is group multiplication.
    """

    def __init__(self, group: FiniteGroup, dim: int, objects):
        self.group = group
        self.dim = dim
        self._objects = tuple(objects)
        self._object_set = set(self._objects)
        self._classes = None

    def conj_tuple(self, k, t):
        g = self.group
        return tuple(g.conjugate(k, x) for x in t)

    def morphisms(self, x, y):
        return tuple(
            k for k in self.group.elements() if self.conj_tuple(k, x) == y
        )

    def identity(self, x):
        return self.group.identity

    def compose(self, x, y, z, f, g):
        return self.group.mul(g, f)

    def aut(self, x):
        return self.morphisms(x, x)

    def morphism_pairs(self):
        for t in self._objects:
            seen = set()
            for k in self.group.elements():
                u = self.conj_tuple(k, t)
                if u not in seen:
                    seen.add(u)
                    yield (t, u)

    def some_morphism(self, x, y):
        for k in self.group.elements():
            if self.conj_tuple(k, x) == y:
                return k
        return None


def gauge_groupoid(group: FiniteGroup, n: int) -> GaugeGroupoid:
    """The groupoid of G-bundles on the n-torus: commuting n-tuples in G."""
    if n < 1:
        raise ValueError("torus dimension must be >= 1")
    if group.order**n > GAUGE_TUPLE_BUDGET:
        raise BudgetExceeded("gauge groupoid tuples", group.order**n, GAUGE_TUPLE_BUDGET)
    tuples = [()]
    for _ in range(n):
        nxt = []
        for t in tuples:
            for g in group.elements():
                if all(group.commute(g, x) for x in t):
                    nxt.append(t + (g,))
        tuples = nxt
    return GaugeGroupoid(group, n, tuples)


def cardinality(groupoid: FinGroupoid) -> Fraction:
    """Groupoid cardinality: sum of 1/|Aut| over isomorphism classes."""
    total = Fraction(0)
    for cls in groupoid.isomorphism_classes():
        total += Fraction(1, len(groupoid.aut(cls[0])))
    return total


def integrate(groupoid: FinGroupoid, f):
    """Integrate f over the groupoid: sum of f(x)/|Aut(x)| over classes.

    f must be constant on isomorphism classes (verified; a violating
    morphism is reported otherwise).  If f takes values in PhaseValue the
    result is a dict mapping reduced phases to rational weights; otherwise
    a single Fraction.
    """
    phase_weights = {}
    rational_total = Fraction(0)
    saw_phase = False
    saw_rational = False
    for cls in groupoid.isomorphism_classes():
        rep = cls[0]
        val = f(rep)
        for other in cls[1:]:
            if f(other) != val:
                raise NotGaugeInvariant(
                    (rep, other, groupoid.some_morphism(rep, other))
                )
        weight = Fraction(1, len(groupoid.aut(rep)))
        if isinstance(val, PhaseValue):
            saw_phase = True
            key = val.reduced()
            phase_weights[key] = phase_weights.get(key, Fraction(0)) + weight
        else:
            saw_rational = True
            rational_total += Fraction(val) * weight
    if saw_phase and saw_rational:
        raise TypeError("integrand mixes phases and rationals")
    if saw_phase:
        return {k: v for k, v in phase_weights.items() if v != 0}
    return rational_total


class Functor:
    """Functor between explicit finite groupoids.

    ``obj_map`` maps source objects to target objects; ``mor_map`` is a
    callable ``mor_map(x, y, f) -> label`` sending f: x -> y to a target
    morphism obj_map(x) -> obj_map(y).
    """

    def __init__(self, source, target, obj_map, mor_map, check=True):
        self.source = source
        self.target = target
        self._obj = obj_map if callable(obj_map) else obj_map.__getitem__
        self._mor = mor_map
        if check:
            self._validate()

    def on_object(self, x):
        return self._obj(x)

    def on_morphism(self, x, y, f):
        return self._mor(x, y, f)

    def _validate(self):
        src = self.source
        for x in src.objects():
            fx = self.on_object(x)
            if self.on_morphism(x, x, src.identity(x)) != self.target.identity(fx):
                raise ValueError("functor does not preserve identities")
        checked = 0
        for (x, y) in src.morphism_pairs():
            for f in src.morphisms(x, y)[:2]:
                for z in (y,):
                    for g in src.morphisms(y, z)[:2]:
                        gf = src.compose(x, y, z, f, g)
                        lhs = self.on_morphism(x, z, gf)
                        rhs = self.target.compose(
                            self.on_object(x),
                            self.on_object(y),
                            self.on_object(z),
                            self.on_morphism(x, y, f),
                            self.on_morphism(y, z, g),
                        )
                        if lhs != rhs:
                            raise ValueError("functor does not preserve composition")
                        checked += 1
                        if checked >= 200:
                            return


def induced_gauge_functor(hom: GroupHom, n: int) -> Functor:
    """The functor between gauge groupoids induced by a group homomorphism.

    Sends a commuting tuple to its entrywise image and a conjugation by k
    to conjugation by hom(k).
    """
    src = gauge_groupoid(hom.source, n)
    tgt = gauge_groupoid(hom.target, n)
    return Functor(
        src,
        tgt,
        lambda t: tuple(hom(x) for x in t),
        lambda x, y, k: hom(k),
        check=False,
    )


def homotopy_fiber(functor: Functor, y) -> FinGroupoid:
    """The homotopy fibre of a functor over a target object y.

    Objects are pairs (x, h) with h: F(x) -> y in the target; morphisms
    (x, h) -> (x', h') are source morphisms g: x -> x' with h'∘F(g) = h.
    """
    src, tgt = functor.source, functor.target
    objs = []
    for x in src.objects():
        for h in tgt.morphisms(functor.on_object(x), y):
            objs.append((x, h))
    hom = {}
    for (x, h) in objs:
        fx = functor.on_object(x)
        for (x2, h2) in objs:
            fx2 = functor.on_object(x2)
            ms = []
            for g in src.morphisms(x, x2):
                fg = functor.on_morphism(x, x2, g)
                if tgt.compose(fx, fx2, y, fg, h2) == h:
                    ms.append(g)
            if ms:
                hom[((x, h), (x2, h2))] = tuple(ms)
    return FinGroupoid(
        objs,
        hom,
        lambda a, b, c, f, g: src.compose(a[0], b[0], c[0], f, g),
        {(x, h): src.identity(x) for (x, h) in objs},
        check=False,
    )


def delooping(group: FiniteGroup) -> FinGroupoid:
    """The one-object groupoid with automorphism group G."""
    star = "*"
    return FinGroupoid(
        [star],
        {(star, star): tuple(group.elements())},
        lambda x, y, z, f, g: group.mul(g, f),
        {star: group.identity},
        check=False,
    )
