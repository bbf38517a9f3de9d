"""Finite groups as indexed multiplication tables.

Everything downstream works with element indices into a Cayley table whose
identity sits at index 0.  Subgroups are index sets over the parent's
numbering; conjugacy classes are computed once and shared.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    BadSubgroup,
    NotAGroup,
    NotAPermutation,
    NotNormal,
    OrderLimitExceeded,
    UnknownFamily,
    UnsupportedParameter,
)

DEFAULT_ORDER_CAP = 20480


@dataclass(frozen=True)
class GroupTable:
    """A finite group given by its multiplication table.

    Index 0 is always the identity.  `mul` and `inv` are tuples so instances
    are immutable and safe to share between workers.
    """

    order: int
    mul: tuple  # tuple of row tuples
    inv: tuple
    labels: tuple | None = None

    def op(self, a, b):
        return self.mul[a][b]

    def inverse(self, a):
        return self.inv[a]

    def power(self, a, k):
        if k < 0:
            a, k = self.inv[a], -k
        result = 0
        while k:
            if k & 1:
                result = self.mul[result][a]
            a = self.mul[a][a]
            k >>= 1
        return result

    def conjugate(self, g, x):
        """x^-1 g x."""
        return self.mul[self.mul[self.inv[x]][g]][x]

    def commutator(self, a, b):
        """[a, b] = a^-1 b^-1 a b."""
        return self.mul[self.mul[self.mul[self.inv[a]][self.inv[b]]][a]][b]

    def element_order(self, a):
        o, x = 1, a
        while x != 0:
            x = self.mul[x][a]
            o += 1
        return o

    def exponent(self):
        e = 1
        for a in range(self.order):
            e = math.lcm(e, self.element_order(a))
        return e

    def label(self, a):
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    def generating_set(self):
        """A small (greedy) generating set."""
        gens = []
        reached = {0}
        for a in range(self.order):
            if a not in reached:
                gens.append(a)
                reached = _closure_indices(self, reached | {a})
                if len(reached) == self.order:
                    break
        return gens

    def canonical_key(self):
        """Hashable fingerprint of the multiplication table."""
        return (self.order, self.mul)


@dataclass(frozen=True)
class Subgroup:
    """An index set inside a parent group, closed under product and inverse."""

    parent: GroupTable
    members: tuple  # sorted element indices

    def __post_init__(self):
        object.__setattr__(self, "_member_set", frozenset(self.members))

    @property
    def order(self):
        return len(self.members)

    def __contains__(self, a):
        return a in self._member_set

    def __eq__(self, other):
        return (isinstance(other, Subgroup)
                and self.parent is other.parent
                and self.members == other.members)

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def is_normal(self):
        G = self.parent
        for h in self.members:
            for g in range(G.order):
                if G.conjugate(h, g) not in self._member_set:
                    return False
        return True

    def materialize(self):
        """Standalone GroupTable on this subgroup plus index maps.

        Returns (table, to_sub, to_parent): to_sub maps parent index ->
        subgroup index (members only), to_parent the reverse.
        """
        G = self.parent
        to_parent = list(self.members)  # sorted, so identity 0 comes first
        to_sub = {p: i for i, p in enumerate(to_parent)}
        n = len(to_parent)
        mul = tuple(
            tuple(to_sub[G.mul[to_parent[i]][to_parent[j]]] for j in range(n))
            for i in range(n)
        )
        inv = tuple(to_sub[G.inv[p]] for p in to_parent)
        labels = None
        if G.labels is not None:
            labels = tuple(G.labels[p] for p in to_parent)
        return GroupTable(n, mul, inv, labels), to_sub, to_parent


@dataclass(frozen=True)
class ConjugacyData:
    """Conjugacy class partition: identity class first, then by (size, min)."""

    class_of: tuple  # element -> class index
    reps: tuple  # class index -> representative element
    sizes: tuple
    inverse_class: tuple

    @property
    def num_classes(self):
        return len(self.reps)


def _closure_indices(G, seed):
    """Closure of a set of indices under multiplication (finite group, so
    inverses come for free)."""
    members = set(seed)
    members.add(0)
    frontier = list(members)
    while frontier:
        nxt = []
        for a in frontier:
            row = G.mul[a]
            for b in list(members):
                for c in (row[b], G.mul[b][a]):
                    if c not in members:
                        members.add(c)
                        nxt.append(c)
        frontier = nxt
    return members


def subgroup_closure(G, seed):
    """Smallest subgroup of G containing `seed`."""
    return Subgroup(G, tuple(sorted(_closure_indices(G, seed))))


def trivial_subgroup(G):
    return Subgroup(G, (0,))


def whole_subgroup(G):
    return Subgroup(G, tuple(range(G.order)))


# ---------------------------------------------------------------------------
# construction


def from_cayley_table(table, labels=None):
    """Validate a raw n x n index matrix and wrap it as a GroupTable.

    The identity need not be at index 0; the table is relabeled if required.
    """
    n = len(table)
    if n == 0:
        raise NotAGroup("empty table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise NotAGroup(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not (0 <= v < n):
                raise NotAGroup(f"entry ({i},{j}) = {v} out of range 0..{n - 1}")

    # Latin square check
    full = set(range(n))
    for i in range(n):
        if set(table[i]) != full:
            raise NotAGroup(f"row {i} is not a permutation of 0..{n - 1}")
        if {table[j][i] for j in range(n)} != full:
            raise NotAGroup(f"column {i} is not a permutation of 0..{n - 1}")

    # locate two-sided identity
    e = None
    for cand in range(n):
        if all(table[cand][a] == a and table[a][cand] == a for a in range(n)):
            e = cand
            break
    if e is None:
        raise NotAGroup("no two-sided identity element")

    if e != 0:
        perm = [e] + [a for a in range(n) if a != e]
        pos = {a: i for i, a in enumerate(perm)}
        table = [[pos[table[perm[i]][perm[j]]] for j in range(n)] for i in range(n)]
        if labels is not None:
            labels = [labels[p] for p in perm]

    mul = tuple(tuple(row) for row in table)
    G = GroupTable(n, mul, _inverses(mul, n), tuple(labels) if labels else None)
    _check_associativity(G)
    return G


def _inverses(mul, n):
    inv = [None] * n
    for a in range(n):
        for b in range(n):
            if mul[a][b] == 0:
                inv[a] = b
                break
        if inv[a] is None or mul[inv[a]][a] != 0:
            raise NotAGroup(f"element {a} has no two-sided inverse")
    return tuple(inv)


def _check_associativity(G):
    n = G.order
    mul = G.mul
    if n <= 512:
        for a in range(n):
            ra = mul[a]
            for b in range(n):
                ab = ra[b]
                rb = mul[b]
                rab = mul[ab]
                for c in range(n):
                    if rab[c] != ra[rb[c]]:
                        raise NotAGroup(
                            f"associativity fails at ({a},{b},{c}): "
                            f"({a}*{b})*{c} != {a}*({b}*{c})")
    else:
        # Light's test: checking against a generating set suffices.
        gens = G.generating_set()
        for g in gens:
            rg = mul[g]
            for a in range(n):
                ag = mul[a][g]
                ra, rag = mul[a], mul[ag]
                for c in range(n):
                    if rag[c] != ra[rg[c]]:
                        raise NotAGroup(
                            f"associativity fails at ({a},{g},{c})")


def from_permutation_generators(degree, gens, order_cap=DEFAULT_ORDER_CAP):
    """Closure of permutation generators, as a GroupTable.

    Element 0 is the identity permutation; the rest appear in BFS order,
    which makes the numbering deterministic.
    """
    ident = tuple(range(degree))
    checked = []
    for g in gens:
        t = tuple(g)
        if sorted(t) != list(range(degree)):
            raise NotAPermutation(f"{g!r} is not a permutation of 0..{degree - 1}")
        checked.append(t)

    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in checked:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in index:
                    if len(elements) >= order_cap:
                        raise OrderLimitExceeded(
                            f"closure exceeds order cap {order_cap}")
                    index[q] = len(elements)
                    elements.append(q)
                    nxt.append(q)
        frontier = nxt

    n = len(elements)
    mul = tuple(
        tuple(index[tuple(p[q[i]] for i in range(degree))] for q in elements)
        for p in elements
    )
    labels = tuple(str(p) for p in elements)
    return GroupTable(n, mul, _inverses(mul, n), labels)


def _table_from_elements(elements, combine, label=str):
    """Cayley table over an explicit element list (identity must be first)."""
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    mul = tuple(
        tuple(index[combine(a, b)] for b in elements) for a in elements
    )
    return GroupTable(n, mul, _inverses(mul, n), tuple(label(e) for e in elements))


# ---------------------------------------------------------------------------
# builtin families


def _cyclic(n):
    if n < 1:
        raise UnsupportedParameter("cyclic order must be >= 1")
    return _table_from_elements(list(range(n)), lambda a, b: (a + b) % n)


def _dihedral(order):
    # parameter is the group order: rotations r^i and reflections r^i s
    if order < 4 or order % 2:
        raise UnsupportedParameter("dihedral order must be even and >= 4")
    m = order // 2
    elements = [(i, s) for s in (0, 1) for i in range(m)]

    def combine(a, b):
        i, s = a
        j, t = b
        # (r^i s^s)(r^j s^t): s r^j = r^-j s
        return ((i + (j if s == 0 else -j)) % m, s ^ t)

    return _table_from_elements(elements, combine,
                                lambda e: f"r{e[0]}" + ("s" if e[1] else ""))


def _quaternion(order):
    # generalized quaternion: a of order m = order/2, b^2 = a^(m/2), a^b = a^-1
    if order < 8 or order & (order - 1):
        raise UnsupportedParameter("quaternion order must be a power of 2, >= 8")
    m = order // 2
    elements = [(i, s) for s in (0, 1) for i in range(m)]

    def combine(x, y):
        i, s = x
        j, t = y
        j = j if s == 0 else (-j) % m
        k = (i + j + (m // 2 if s and t else 0)) % m
        return (k, s ^ t)

    return _table_from_elements(elements, combine,
                                lambda e: f"a{e[0]}" + ("b" if e[1] else ""))


def _symmetric(n):
    if not 1 <= n <= 6:
        raise UnsupportedParameter("symmetric degree must be 1..6")
    elements = list(itertools.permutations(range(n)))  # identity first

    def combine(p, q):
        return tuple(p[q[i]] for i in range(n))

    return _table_from_elements(elements, combine)


def _elementary_abelian(p, k):
    if not _is_prime(p) or k < 1:
        raise UnsupportedParameter("need a prime p and k >= 1")
    elements = list(itertools.product(range(p), repeat=k))

    def combine(a, b):
        return tuple((x + y) % p for x, y in zip(a, b))

    return _table_from_elements(elements, combine)


def _heisenberg(p):
    if not _is_prime(p):
        raise UnsupportedParameter("heisenberg parameter must be prime")
    elements = list(itertools.product(range(p), repeat=3))

    def combine(x, y):
        a, b, c = x
        d, e, f = y
        return ((a + d) % p, (b + e) % p, (c + f + a * e) % p)

    return _table_from_elements(elements, combine)


def _extraspecial_plus(p):
    if p == 2:
        return _dihedral(8)
    return _heisenberg(p)


def _extraspecial_minus(p):
    if p == 2:
        return _quaternion(8)
    if not _is_prime(p):
        raise UnsupportedParameter("extraspecial parameter must be prime")
    # exponent p^2 group of order p^3: a of order p^2, b of order p, a^b = a^(1+p)
    pp = p * p
    elements = [(i, j) for j in range(p) for i in range(pp)]
    elements.sort(key=lambda e: (e != (0, 0), e))

    def combine(x, y):
        i, j = x
        k, l = y
        # b^j a^k = a^(k*(1+p)^j) b^j
        k = (k * pow(1 + p, j, pp)) % pp
        return ((i + k) % pp, (j + l) % p)

    return _table_from_elements(elements, combine)


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


def _prime_power(q):
    for p in range(2, q + 1):
        if _is_prime(p) and q > 1:
            k, m = 0, q
            while m % p == 0:
                m //= p
                k += 1
            if m == 1:
                return p, k
    return None


class _GF:
    """Small finite field GF(p^k), elements as coefficient tuples."""

    def __init__(self, p, k):
        self.p, self.k = p, k
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1) if k > 1 else (1,)
        self.modpoly = self._find_irreducible()
        self.elements = list(itertools.product(range(p), repeat=k))

    def _find_irreducible(self):
        p, k = self.p, self.k
        if k == 1:
            return None
        # monic degree-k polynomial, coefficients low-to-high, leading 1 implied
        for tail in itertools.product(range(p), repeat=k):
            poly = tail  # x^k + tail[k-1] x^(k-1) + ... + tail[0]
            if self._irreducible(poly):
                return poly
        raise UnsupportedParameter("no irreducible polynomial found")

    def _irreducible(self, tail):
        # brute root-free + factor-free test by trial division over GF(p)
        p, k = self.p, self.k
        full = list(tail) + [1]
        for d in range(1, k // 2 + 1):
            for cand in itertools.product(range(p), repeat=d):
                divisor = list(cand) + [1]
                if self._polydivides(divisor, full):
                    return False
        return True

    def _polydivides(self, a, b):
        p = self.p
        rem = list(b)
        da, db = len(a) - 1, len(b) - 1
        for i in range(db - da, -1, -1):
            c = rem[i + da] % p
            if c:
                for j in range(da + 1):
                    rem[i + j] = (rem[i + j] - c * a[j]) % p
        return all(x % p == 0 for x in rem)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        p, k = self.p, self.k
        if k == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by x^k = -tail
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(k):
                    prod[i - k + j] = (prod[i - k + j] - c * self.modpoly[j]) % p
        return tuple(prod[:k])


def _agl1(q):
    pk = _prime_power(q)
    if pk is None or q > 32 or q < 2:
        raise UnsupportedParameter("agl1 parameter must be a prime power <= 32")
    F = _GF(*pk)
    units = [u for u in F.elements if u != F.zero]
    units.sort(key=lambda u: (u != F.one, u))
    elements = [(a, b) for a in units for b in F.elements]

    def combine(x, y):
        a, b = x
        c, d = y
        # x -> a(cx + d) + b
        return (F.mul(a, c), F.add(F.mul(a, d), b))

    return _table_from_elements(elements, combine)


def direct_product(A, B):
    elements = [(a, b) for a in range(A.order) for b in range(B.order)]

    def combine(x, y):
        return (A.mul[x[0]][y[0]], B.mul[x[1]][y[1]])

    return _table_from_elements(
        elements, combine,
        lambda e: f"({A.label(e[0])},{B.label(e[1])})")


_FAMILIES = {
    "cyclic": (_cyclic, 1),
    "dihedral": (_dihedral, 1),
    "quaternion": (_quaternion, 1),
    "symmetric": (_symmetric, 1),
    "elementary_abelian": (_elementary_abelian, 2),
    "extraspecial_plus": (_extraspecial_plus, 1),
    "extraspecial_minus": (_extraspecial_minus, 1),
    "heisenberg": (_heisenberg, 1),
    "agl1": (_agl1, 1),
}


def builtin(family, *params):
    """Construct a builtin group.  For direct_product, params are GroupTables."""
    if family == "direct_product":
        if len(params) != 2 or not all(isinstance(p, GroupTable) for p in params):
            raise UnsupportedParameter("direct_product takes two groups")
        return direct_product(*params)
    try:
        fn, arity = _FAMILIES[family]
    except KeyError:
        raise UnknownFamily(f"unknown family {family!r}") from None
    if len(params) != arity:
        raise UnsupportedParameter(
            f"{family} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


def parse_builtin_spec(text):
    """Parse a spec like 'symmetric(3)' or 'direct_product(quaternion(8),cyclic(2))'."""
    text = text.strip()
    spec, rest = _parse_spec(text, 0)
    if rest != len(text):
        raise UnknownFamily(f"trailing input in builtin spec: {text[rest:]!r}")
    return spec


def _parse_spec(text, i):
    j = i
    while j < len(text) and (text[j].isalnum() or text[j] == "_"):
        j += 1
    name = text[i:j]
    if not name:
        raise UnknownFamily(f"expected family name at position {i}")
    if j >= len(text) or text[j] != "(":
        raise UnknownFamily(f"expected '(' after {name!r}")
    j += 1
    args = []
    while True:
        if j < len(text) and text[j].isdigit():
            k = j
            while k < len(text) and text[k].isdigit():
                k += 1
            args.append(int(text[j:k]))
            j = k
        else:
            sub, j = _parse_spec(text, j)
            args.append(sub)
        if j < len(text) and text[j] == ",":
            j += 1
            continue
        break
    if j >= len(text) or text[j] != ")":
        raise UnknownFamily(f"expected ')' at position {j}")
    return builtin(name, *args), j + 1


# ---------------------------------------------------------------------------
# structure


def conjugacy_classes(G):
    n = G.order
    class_of = [-1] * n
    classes = []
    for a in range(n):
        if class_of[a] != -1:
            continue
        orbit = {a}
        frontier = [a]
        while frontier:
            x = frontier.pop()
            for g in range(n):
                y = G.conjugate(x, g)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        classes.append(sorted(orbit))
        for x in orbit:
            class_of[x] = -2  # visited, renumbered below
    # deterministic order: identity class first, then (size, min element)
    classes.sort(key=lambda c: (0 not in c, len(c), c[0]))
    for idx, cls in enumerate(classes):
        for x in cls:
            class_of[x] = idx
    reps = tuple(cls[0] for cls in classes)
    sizes = tuple(len(cls) for cls in classes)
    inverse_class = tuple(class_of[G.inv[rep]] for rep in reps)
    return ConjugacyData(tuple(class_of), reps, sizes, inverse_class)


def center(G):
    members = [a for a in range(G.order)
               if all(G.mul[a][b] == G.mul[b][a] for b in range(G.order))]
    return Subgroup(G, tuple(members))


def centralizer_of_subgroup_mod(G, lower):
    """Elements g with [g, x] in `lower` for every x (preimage of the center
    of G / lower).  `lower` must be normal."""
    lset = frozenset(lower.members)
    members = [g for g in range(G.order)
               if all(G.commutator(g, x) in lset for x in range(G.order))]
    return Subgroup(G, tuple(members))


def commutator_of(G, A, B):
    """Subgroup generated by [a, b] for a in A, b in B."""
    seed = {G.commutator(a, b) for a in A.members for b in B.members}
    return subgroup_closure(G, seed)


def commutator_subgroup(G):
    return commutator_of(G, whole_subgroup(G), whole_subgroup(G))


def upper_central_series(G):
    """[Z_0, Z_1, ...] until stabilization."""
    series = [trivial_subgroup(G)]
    while True:
        nxt = centralizer_of_subgroup_mod(G, series[-1])
        if nxt.members == series[-1].members:
            break
        series.append(nxt)
    return series


def lower_central_series(G):
    """[gamma_1, gamma_2, ...] until stabilization."""
    series = [whole_subgroup(G)]
    while True:
        nxt = commutator_of(G, series[-1], whole_subgroup(G))
        if nxt.members == series[-1].members:
            break
        series.append(nxt)
    return series


def nilpotency_class(G):
    """Least c with Z_c = G, or None if G is not nilpotent.

    Both central series are computed and must agree.
    """
    ucs = upper_central_series(G)
    lcs = lower_central_series(G)
    upper_c = len(ucs) - 1 if ucs[-1].order == G.order else None
    lower_c = len(lcs) - 1 if lcs[-1].order == 1 else None
    if upper_c != lower_c:
        raise AssertionError("central series disagree on nilpotency class")
    return upper_c


def zn(G, n):
    """Z_n(G); the series is extended by its stable tail for large n."""
    series = upper_central_series(G)
    return series[min(n, len(series) - 1)]


def gamma(G, i):
    """gamma_i(G), i >= 1; stable tail for large i."""
    series = lower_central_series(G)
    return series[min(i - 1, len(series) - 1)]


def quotient(G, N):
    """Quotient group on coset representatives plus the projection map."""
    if not isinstance(N, Subgroup) or N.parent is not G:
        raise NotNormal("subgroup belongs to a different group")
    if not N.is_normal():
        raise NotNormal("subgroup is not normal")
    n = G.order
    coset_rep = [None] * n
    reps = []
    for a in range(n):
        if coset_rep[a] is None:
            coset = sorted(G.mul[a][h] for h in N.members)
            rep = coset[0]
            for x in coset:
                coset_rep[x] = rep
            reps.append(rep)
    reps.sort()  # identity coset has rep 0, stays first
    rep_index = {r: i for i, r in enumerate(reps)}
    k = len(reps)
    mul = tuple(
        tuple(rep_index[coset_rep[G.mul[reps[i]][reps[j]]]] for j in range(k))
        for i in range(k)
    )
    labels = tuple(G.label(r) + "N" for r in reps)
    Q = GroupTable(k, mul, _inverses(mul, k), labels)
    proj = tuple(rep_index[coset_rep[a]] for a in range(n))
    return Q, proj


def is_camina_pair(G, H):
    """True iff gH is contained in the conjugacy class of g for all g not in H."""
    if not isinstance(H, Subgroup) or H.parent is not G:
        raise BadSubgroup("subgroup belongs to a different group")
    if H.order <= 1 or H.order >= G.order:
        raise BadSubgroup("Camina pair needs 1 < H < G")
    if not H.is_normal():
        raise BadSubgroup("Camina pair needs H normal in G")
    classes = conjugacy_classes(G)
    for g in range(G.order):
        if g in H:
            continue
        cg = classes.class_of[g]
        for h in H.members:
            if classes.class_of[G.mul[g][h]] != cg:
                return False
    return True


def normal_subgroups(G, classes=None):
    """All normal subgroups, as joins of normal closures of conjugacy classes."""
    if classes is None:
        classes = conjugacy_classes(G)
    by_class = {}
    for a in range(G.order):
        by_class.setdefault(classes.class_of[a], []).append(a)
    atoms = []
    seen = set()
    for idx in range(1, classes.num_classes):
        sg = subgroup_closure(G, by_class[idx])
        if sg.members not in seen:
            seen.add(sg.members)
            atoms.append(sg)
    found = {(0,): trivial_subgroup(G)}
    frontier = [trivial_subgroup(G)]
    while frontier:
        nxt = []
        for N in frontier:
            for A in atoms:
                if set(A.members) <= set(N.members):
                    continue
                J = subgroup_closure(G, set(N.members) | set(A.members))
                if J.members not in found:
                    found[J.members] = J
                    nxt.append(J)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.order, s.members))
