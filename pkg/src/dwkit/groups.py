"""Finite groups as multiplication tables, and homomorphisms between them.

Elements are dense indices 0..order-1; all algebra runs on the table.
"""

from __future__ import annotations

import hashlib
import itertools
import random

from .errors import NotAGroup, UnknownBuiltin

# Full associativity is O(order^3); above this cap we sample random triples
# and rely on the Latin-square + identity + inverse checks.
FULL_ASSOC_ORDER_CAP = 64
ASSOC_SAMPLE_TRIPLES = 1000


class FiniteGroup:
    """A finite group presented by its multiplication table.

    table[g][h] is the index of g*h.  Instances are immutable and validated
    at construction time via :func:`group_from_table`.
    """

    __slots__ = ("order", "table", "identity", "inverses", "label",
                 "builtin_spec", "_generators", "_hash")

    def __init__(self, order, table, identity, inverses, label=""):
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "identity", identity)
        object.__setattr__(self, "inverses", inverses)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "builtin_spec", None)
        object.__setattr__(self, "_generators", None)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteGroup is immutable")

    # -- basic algebra -----------------------------------------------------

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverses[a]

    def conjugate(self, k, g):
        """k g k^{-1}."""
        return self.table[self.table[k][g]][self.inverses[k]]

    def commute(self, a, b):
        return self.table[a][b] == self.table[b][a]

    def elements(self):
        return range(self.order)

    def nonidentity(self):
        return [g for g in range(self.order) if g != self.identity]

    def word(self, elems):
        """Product of a sequence of elements (empty product = identity)."""
        acc = self.identity
        for g in elems:
            acc = self.table[acc][g]
        return acc

    def power(self, g, k):
        if k < 0:
            g, k = self.inverses[g], -k
        acc = self.identity
        for _ in range(k):
            acc = self.table[acc][g]
        return acc

    def element_order(self, g):
        acc, k = g, 1
        while acc != self.identity:
            acc = self.table[acc][g]
            k += 1
        return k

    # -- structure ---------------------------------------------------------

    def is_abelian(self):
        return all(
            self.table[a][b] == self.table[b][a]
            for a in range(self.order)
            for b in range(a + 1, self.order)
        )

    def center(self):
        return [
            g
            for g in range(self.order)
            if all(self.commute(g, h) for h in range(self.order))
        ]

    def centralizer(self, elems):
        """Joint centralizer of a collection of elements."""
        elems = list(elems)
        return [
            k
            for k in range(self.order)
            if all(self.commute(k, g) for g in elems)
        ]

    def conjugacy_classes(self):
        seen = [False] * self.order
        classes = []
        for g in range(self.order):
            if seen[g]:
                continue
            cls = sorted({self.conjugate(k, g) for k in range(self.order)})
            for h in cls:
                seen[h] = True
            classes.append(tuple(cls))
        return classes

    def subgroup_closure(self, gens):
        """Element set of the subgroup generated by ``gens``."""
        closed = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in closed:
                    closed.add(y)
                    frontier.append(y)
        return closed

    def generators(self):
        """A small generating set, found greedily (deterministic)."""
        if self._generators is not None:
            return self._generators
        by_order = sorted(
            range(self.order), key=lambda g: (-self.element_order(g), g)
        )
        gens = None
        for g in by_order:
            if len(self.subgroup_closure([g])) == self.order:
                gens = [g]
                break
        if gens is None and self.order <= FULL_ASSOC_ORDER_CAP:
            for i, g in enumerate(by_order):
                for h in by_order[i + 1:]:
                    if len(self.subgroup_closure([g, h])) == self.order:
                        gens = [g, h]
                        break
                if gens:
                    break
        if gens is None:
            gens = []
            closed = {self.identity}
            for g in by_order:
                if g not in closed:
                    gens.append(g)
                    closed = self.subgroup_closure(gens)
                    if len(closed) == self.order:
                        break
        object.__setattr__(self, "_generators", tuple(gens))
        return self._generators

    def canonical_hash(self):
        """Deterministic cross-run identity for caching."""
        if self._hash is not None:
            return self._hash
        h = hashlib.sha256()
        h.update(str(self.order).encode())
        for row in self.table:
            h.update(b"|")
            h.update(",".join(map(str, row)).encode())
        digest = h.hexdigest()
        object.__setattr__(self, "_hash", digest)
        return digest

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.order == other.order and self.table == other.table

    def __hash__(self):
        return hash((self.order, self.table))

    def __repr__(self):
        name = self.label or "group"
        return f"FiniteGroup({name}, order={self.order})"


def group_from_table(order, table, label=""):
    """Validate a multiplication table and build a FiniteGroup."""
    if order < 1:
        raise NotAGroup("order must be positive")
    if len(table) != order or any(len(row) != order for row in table):
        raise NotAGroup(f"table is not {order}x{order}")
    table = tuple(tuple(row) for row in table)
    full = frozenset(range(order))
    for g, row in enumerate(table):
        if not full.issuperset(row):
            raise NotAGroup("table entry out of range", witness=g)
        if len(set(row)) != order:
            raise NotAGroup(f"row {g} is not a permutation", witness=g)
    for h in range(order):
        col = {table[g][h] for g in range(order)}
        if len(col) != order:
            raise NotAGroup(f"column {h} is not a permutation", witness=h)

    identity = None
    for e in range(order):
        if all(table[e][g] == g and table[g][e] == g for g in range(order)):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no two-sided identity")

    inverses = [None] * order
    for g in range(order):
        for h in range(order):
            if table[g][h] == identity and table[h][g] == identity:
                inverses[g] = h
                break
        if inverses[g] is None:
            raise NotAGroup(f"element {g} has no inverse", witness=g)

    if order <= FULL_ASSOC_ORDER_CAP:
        triples = itertools.product(range(order), repeat=3)
    else:
        rng = random.Random(order)
        triples = (
            tuple(rng.randrange(order) for _ in range(3))
            for _ in range(ASSOC_SAMPLE_TRIPLES)
        )
    for a, b, c in triples:
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAGroup("associativity fails", witness=(a, b, c))

    return FiniteGroup(order, table, identity, tuple(inverses), label=label)


# -- builtin groups --------------------------------------------------------


def _cyclic_table(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def cyclic_group(n):
    g = group_from_table(n, _cyclic_table(n), label=f"Z{n}")
    object.__setattr__(g, "builtin_spec", ("cyclic", {"n": n}))
    return g


def product_group(factors):
    """Direct product of cyclic groups Z_{n1} x ... x Z_{nk}.

    Element index is the mixed-radix encoding with the first factor most
    significant: index(a1..ak) = a1*n2*...*nk + ... + ak.
    """
    factors = list(factors)
    if not factors or any(n < 1 for n in factors):
        raise UnknownBuiltin(f"bad product factors {factors}")
    order = 1
    for n in factors:
        order *= n

    def decode(i):
        digits = []
        for n in reversed(factors):
            digits.append(i % n)
            i //= n
        return tuple(reversed(digits))

    def encode(digits):
        i = 0
        for d, n in zip(digits, factors):
            i = i * n + (d % n)
        return i

    table = [
        [
            encode([x + y for x, y in zip(decode(a), decode(b))])
            for b in range(order)
        ]
        for a in range(order)
    ]
    label = "x".join(f"Z{n}" for n in factors)
    g = group_from_table(order, table, label=label)
    object.__setattr__(g, "builtin_spec", ("product", {"factors": list(factors)}))
    return g


def product_index(factors, digits):
    """Element index in product_group(factors) for the given digit tuple."""
    i = 0
    for d, n in zip(digits, factors):
        i = i * n + (d % n)
    return i


def product_digits(factors, index):
    """Digit tuple for an element index of product_group(factors)."""
    digits = []
    for n in reversed(factors):
        digits.append(index % n)
        index //= n
    return tuple(reversed(digits))


def dihedral_group(order):
    """Dihedral group of the given (even) order 2n.

    Presentation a^n = b^2 = 1, b a b^{-1} = a^{-1}; element a^i b^j has
    index j*n + i.
    """
    if order < 2 or order % 2:
        raise UnknownBuiltin(f"dihedral order must be even, got {order}")
    n = order // 2

    def mul(x, y):
        i, j = x % n, x // n
        i2, j2 = y % n, y // n
        # (a^i b^j)(a^i2 b^j2) = a^(i + (-1)^j i2) b^(j+j2)
        return ((j + j2) % 2) * n + (i + (i2 if j == 0 else -i2)) % n

    table = [[mul(x, y) for y in range(order)] for x in range(order)]
    g = group_from_table(order, table, label=f"D{order}")
    object.__setattr__(g, "builtin_spec", ("dihedral", {"order": order}))
    return g


def dihedral_index(order, i, j):
    """Index of a^i b^j in dihedral_group(order)."""
    n = order // 2
    return (j % 2) * n + (i % n)


def dihedral_exponents(order, index):
    """(i, j) with element = a^i b^j in dihedral_group(order)."""
    n = order // 2
    return index % n, index // n


def pauli_group():
    """The order-16 subgroup of U(2) generated by the Pauli matrices.

    Built as the semidirect product D8 x| Z2 where the Z2 generator acts on
    D8 = <a, b | a^4 = b^2 = 1, bab^{-1} = a^{-1}> by conjugation with a.
    Element (d, k) has index k*8 + d with d a D8 index.
    """
    d8 = dihedral_group(8)
    a = dihedral_index(8, 1, 0)

    def act(k, d):
        # conjugation by a^k inside D8
        for _ in range(k % 2):
            d = d8.conjugate(a, d)
        return d

    def mul(x, y):
        d1, k1 = x % 8, x // 8
        d2, k2 = y % 8, y // 8
        # (d1, k1)(d2, k2) = (d1 * act(k1, d2), k1 + k2)
        return ((k1 + k2) % 2) * 8 + d8.mul(d1, act(k1, d2))

    table = [[mul(x, y) for y in range(16)] for x in range(16)]
    g = group_from_table(16, table, label="pauli")
    object.__setattr__(g, "builtin_spec", ("pauli", {}))
    return g


def builtin_group(name, params=None):
    """Construct a builtin group: cyclic, product, dihedral, or pauli."""
    params = dict(params or {})
    if name == "cyclic":
        return cyclic_group(int(params["n"]))
    if name == "product":
        return product_group([int(n) for n in params["factors"]])
    if name == "dihedral":
        return dihedral_group(int(params["order"]))
    if name == "pauli":
        return pauli_group()
    raise UnknownBuiltin(f"unknown builtin group {name!r}")


# -- homomorphisms ---------------------------------------------------------


class GroupHom:
    """A homomorphism given by its value on every source element."""

    __slots__ = ("source", "target", "map")

    def __init__(self, source, target, mapping, check=True):
        mapping = tuple(mapping)
        if len(mapping) != source.order:
            raise ValueError("hom map has wrong length")
        if check:
            if mapping[source.identity] != target.identity:
                raise ValueError("hom does not preserve identity")
            for a in range(source.order):
                for b in range(source.order):
                    if (
                        mapping[source.mul(a, b)]
                        != target.mul(mapping[a], mapping[b])
                    ):
                        raise ValueError(
                            f"not a homomorphism at ({a}, {b})"
                        )
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "map", mapping)

    def __setattr__(self, name, value):
        raise AttributeError("GroupHom is immutable")

    def __call__(self, g):
        return self.map[g]

    @staticmethod
    def identity(group):
        return GroupHom(group, group, range(group.order), check=False)

    def compose(self, other):
        """self after other."""
        if other.target is not self.source:
            if other.target != self.source:
                raise ValueError("homs not composable")
        return GroupHom(
            other.source,
            self.target,
            [self.map[other.map[g]] for g in range(other.source.order)],
            check=False,
        )

    def is_injective(self):
        return len(set(self.map)) == self.source.order

    def is_surjective(self):
        return len(set(self.map)) == self.target.order

    def kernel(self):
        return [g for g in range(self.source.order)
                if self.map[g] == self.target.identity]

    def image(self):
        return sorted(set(self.map))


def conjugation_hom(group, k):
    """The inner automorphism g -> k g k^{-1} as a GroupHom."""
    return GroupHom(
        group,
        group,
        [group.conjugate(k, g) for g in range(group.order)],
        check=False,
    )


def find_isomorphism(a: FiniteGroup, b: FiniteGroup):
    """An isomorphism a -> b found by exhaustive generator-image search.

    Returns a GroupHom, or None if the groups are not isomorphic.
    """
    if a.order != b.order:
        return None
    gens = a.generators()
    words = {a.identity: ()}
    frontier = [a.identity]
    while frontier:
        x = frontier.pop(0)
        for i in range(len(gens)):
            y = a.mul(x, gens[i])
            if y not in words:
                words[y] = words[x] + (i,)
                frontier.append(y)
    orders = [a.element_order(g) for g in gens]
    candidates = [
        [h for h in b.elements() if b.element_order(h) == o] for o in orders
    ]
    for imgs in itertools.product(*candidates):
        mapping = [0] * a.order
        for x, w in words.items():
            mapping[x] = b.word([imgs[i] for i in w])
        if len(set(mapping)) != a.order:
            continue
        if all(
            mapping[a.mul(x, y)] == b.mul(mapping[x], mapping[y])
            for x in range(a.order)
            for y in range(a.order)
        ):
            return GroupHom(a, b, mapping, check=False)
    return None
