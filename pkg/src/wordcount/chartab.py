"""Exact ordinary character tables.

The table is computed by the prime-field method: simultaneous eigenvectors
of the class-sum matrices over F_p (p = 1 mod exponent, p > 2 sqrt|G|) give
the central characters mod p, and discrete-Fourier multiplicity counts lift
each value to an exact cyclotomic integer.  Both orthogonality relations are
then verified exactly; a failure is a bug, not a data condition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import groups
from .cyclotomic import Cyclotomic
from .errors import (
    InternalInconsistency,
    MismatchedGroup,
    NonIntegral,
    NotNormal,
    OrderLimitExceeded,
)
from .groups import ConjugacyData, GroupTable, Subgroup


@dataclass(frozen=True)
class ClassFunction:
    """Exact rational values, one per conjugacy class."""

    group: GroupTable
    classes: ConjugacyData
    values: tuple  # Fractions or ints

    def at_element(self, g):
        return self.values[self.classes.class_of[g]]

    def as_element_array(self):
        return [self.values[self.classes.class_of[g]] for g in range(self.group.order)]

    def total_mass(self):
        return sum(s * v for s, v in zip(self.classes.sizes, self.values))

    def __eq__(self, other):
        return (isinstance(other, ClassFunction)
                and self.group.canonical_key() == other.group.canonical_key()
                and all(Fraction(a) == Fraction(b)
                        for a, b in zip(self.values, other.values)))

    def __hash__(self):
        return hash((self.group.canonical_key(), self.values))


@dataclass(frozen=True)
class CharacterTable:
    group: GroupTable
    classes: ConjugacyData
    exponent: int
    values: tuple  # k x k of Cyclotomic, character x class
    degrees: tuple
    linear_mask: tuple  # booleans

    @property
    def num_characters(self):
        return len(self.degrees)

    def row(self, r):
        return self.values[r]

    def value(self, r, j):
        return self.values[r][j]

    def linear_indices(self):
        return [r for r, lin in enumerate(self.linear_mask) if lin]

    def nonlinear_indices(self):
        return [r for r, lin in enumerate(self.linear_mask) if not lin]


# ---------------------------------------------------------------------------
# modular linear algebra helpers


def _rref(rows, p):
    """Row-reduce over F_p; returns (rref rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _coords(v, basis, pivots, p):
    """Coordinates of v in an RREF basis (v must lie in its span)."""
    v = list(v)
    out = []
    for row, c in zip(basis, pivots):
        f = v[c] % p
        out.append(f)
        if f:
            v = [(a - f * b) % p for a, b in zip(v, row)]
    if any(x % p for x in v):
        raise InternalInconsistency("vector outside subspace during splitting")
    return out


def _kernel(X, p):
    """RREF basis of the nullspace of the square matrix X over F_p."""
    n = len(X)
    R, pivots = _rref(X, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, c in zip(R, pivots):
            v[c] = (-row[f]) % p
        basis.append(v)
    b, _ = _rref(basis, p) if basis else ([], [])
    return b


def _charpoly(X, p):
    """Characteristic polynomial of X over F_p, low-to-high coefficients."""
    n = len(X)
    H = [[v % p for v in row] for row in X]
    # reduce to upper Hessenberg form by similarity
    for i in range(1, n - 1):
        piv = next((r for r in range(i, n) if H[r][i - 1]), None)
        if piv is None:
            continue
        if piv != i:
            H[i], H[piv] = H[piv], H[i]
            for row in H:
                row[i], row[piv] = row[piv], row[i]
        inv = pow(H[i][i - 1], p - 2, p)
        for r in range(i + 1, n):
            f = (H[r][i - 1] * inv) % p
            if f:
                H[r] = [(a - f * b) % p for a, b in zip(H[r], H[i])]
                for row in H:
                    row[i] = (row[i] + f * row[r]) % p
    # determinant recurrence for Hessenberg matrices
    polys = [[1]]
    for m in range(1, n + 1):
        hmm = H[m - 1][m - 1]
        prev = polys[m - 1]
        poly = [0] + prev  # x * p_{m-1}
        poly = [(a - hmm * b) % p for a, b in zip(poly, prev + [0])]
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = (prod * H[i][i - 1]) % p
            c = (H[i - 1][m - 1] * prod) % p
            if c:
                pi = polys[i - 1]
                for j, a in enumerate(pi):
                    poly[j] = (poly[j] - c * a) % p
        polys.append(poly)
    return polys[n]


def _poly_roots(poly, p):
    roots = []
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


def _smallest_dixon_prime(order, exponent):
    bound = 2 * math.isqrt(order) + 1
    p = exponent + 1
    while True:
        if p > bound and _is_prime(p) and (p - 1) % exponent == 0:
            return p
        p += 1


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def _primitive_root(p):
    factors = set()
    m = p - 1
    d = 2
    while d * d <= m:
        while m % d == 0:
            factors.add(d)
            m //= d
        d += 1
    if m > 1:
        factors.add(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise InternalInconsistency("no primitive root found")


# ---------------------------------------------------------------------------
# Dixon's method


def class_mult_coefficients(G, classes):
    """a[i][j][m]: number of (x, y) in C_i x C_j with x*y = rep(C_m)."""
    k = classes.num_classes
    a = [[[0] * k for _ in range(k)] for _ in range(k)]
    for m in range(k):
        z = classes.reps[m]
        for x in range(G.order):
            i = classes.class_of[x]
            j = classes.class_of[G.mul[G.inv[x]][z]]
            a[i][j][m] += 1
    return a


_TABLE_CACHE = {}


def character_table(G, classes=None, order_cap=groups.DEFAULT_ORDER_CAP):
    key = G.canonical_key()
    if key in _TABLE_CACHE:
        return _TABLE_CACHE[key]
    if G.order > order_cap:
        raise OrderLimitExceeded(f"|G| = {G.order} exceeds cap {order_cap}")
    if classes is None:
        classes = groups.conjugacy_classes(G)
    table = _compute_table(G, classes)
    _verify_table(G, table)
    _TABLE_CACHE[key] = table
    return table


def _compute_table(G, classes):
    n = G.order
    k = classes.num_classes
    e = G.exponent()
    if n == 1:
        row = (Cyclotomic.from_rational(1, 1),)
        return CharacterTable(G, classes, 1, (row,), (1,), (True,))
    p = _smallest_dixon_prime(n, e)
    a = class_mult_coefficients(G, classes)
    mats = [[[a[i][j][m] % p for m in range(k)] for j in range(k)] for i in range(k)]

    # split the simultaneous eigenspaces of the class matrices
    identity = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    subspaces = [(identity, list(range(k)))]
    for i in range(1, k):
        if all(len(B) == 1 for B, _ in subspaces):
            break
        M = mats[i]
        nxt = []
        for B, piv in subspaces:
            if len(B) == 1:
                nxt.append((B, piv))
                continue
            # restricted action X with rows: M . b expressed in basis B
            images = [
                [sum(M[c][m] * b[m] for m in range(k)) % p for c in range(k)]
                for b in B
            ]
            X = [_coords(img, B, piv, p) for img in images]
            # transpose convention: b_r -> sum_s X[r][s] b_s; eigenvectors of X^T
            XT = [[X[r][s] for r in range(len(B))] for s in range(len(B))]
            for lam in _poly_roots(_charpoly(XT, p), p):
                shifted = [[(XT[r][c] - (lam if r == c else 0)) % p
                            for c in range(len(B))] for r in range(len(B))]
                lifted = [
                    [sum(kv[r] * B[r][m] for r in range(len(B))) % p
                     for m in range(k)]
                    for kv in _kernel(shifted, p)
                ]
                if lifted:
                    nxt.append(_rref(lifted, p))
        if sum(len(B) for B, _ in nxt) != k:
            raise InternalInconsistency("eigenspace splitting lost dimensions")
        subspaces = nxt

    if not all(len(B) == 1 for B, _ in subspaces):
        raise InternalInconsistency("class matrices failed to split the algebra")

    inv_sizes = [pow(s, p - 2, p) for s in classes.sizes]
    omegas = []
    for B, _ in subspaces:
        u = B[0]
        if u[0] % p == 0:
            raise InternalInconsistency("central character vanishes at identity")
        norm = pow(u[0], p - 2, p)
        omegas.append([(v * norm) % p for v in u])

    # degrees from the second orthogonality of central characters
    inv_class = classes.inverse_class
    degrees = []
    for om in omegas:
        s = sum(om[m] * om[inv_class[m]] * inv_sizes[m] for m in range(k)) % p
        d2 = (n * pow(s, p - 2, p)) % p
        d = next((x for x in range(1, (p + 1) // 2) if (x * x) % p == d2), None)
        if d is None:
            raise InternalInconsistency("character degree is not a square mod p")
        degrees.append(d)

    # powers of class representatives, for the Fourier lift
    rep_order = [G.element_order(r) for r in classes.reps]
    power_class = []
    for m in range(k):
        r = classes.reps[m]
        pc, x = [], 0
        for _ in range(rep_order[m]):
            pc.append(classes.class_of[x])
            x = G.mul[x][r]
        power_class.append(pc)

    z = _primitive_root(p)
    zeta_mod = {o: pow(z, (p - 1) // o, p) for o in set(rep_order)}

    rows = []
    for om, d in zip(omegas, degrees):
        chi_mod = [(d * om[m] * inv_sizes[m]) % p for m in range(k)]
        coeffs_by_class = []
        for m in range(k):
            o = rep_order[m]
            zo = zeta_mod[o]
            inv_o = pow(o, p - 2, p)
            coeffs = [0] * e
            for t in range(o):
                # mu_t = (1/o) sum_s chi(g^s) zo^(-st)
                acc = 0
                zpow = 1
                step = pow(zo, (o - t) % o, p)
                for s in range(o):
                    acc = (acc + chi_mod[power_class[m][s]] * zpow) % p
                    zpow = (zpow * step) % p
                mu = (acc * inv_o) % p
                if mu > d:
                    raise InternalInconsistency("root multiplicity exceeds degree")
                if mu:
                    coeffs[(t * (e // o)) % e] += mu
            coeffs_by_class.append(Cyclotomic(e, tuple(coeffs)))
        rows.append((d, tuple(coeffs_by_class)))

    # canonical ordering: by degree, then by reduced value vectors
    rows.sort(key=lambda r: (r[0], tuple(c.reduced() for c in r[1])))
    degrees = tuple(r[0] for r in rows)
    values = tuple(r[1] for r in rows)
    linear_mask = tuple(d == 1 for d in degrees)
    return CharacterTable(G, classes, e, values, degrees, linear_mask)


def _verify_table(G, table):
    n = G.order
    k = table.num_characters
    classes = table.classes
    if sum(d * d for d in table.degrees) != n:
        raise InternalInconsistency("sum of squared degrees != |G|")
    for d in table.degrees:
        if n % d != 0:
            raise InternalInconsistency(f"degree {d} does not divide |G|")
    # row orthogonality
    for r in range(k):
        for s in range(r, k):
            acc = Cyclotomic.zero(table.exponent)
            for j in range(k):
                acc = acc + table.values[r][j] * table.values[s][j].conjugate() * classes.sizes[j]
            got = acc.to_rational()
            want = n if r == s else 0
            if got != want:
                raise InternalInconsistency(
                    f"row orthogonality fails for characters {r},{s}")
    # column orthogonality
    for i in range(k):
        for j in range(i, k):
            acc = Cyclotomic.zero(table.exponent)
            for r in range(k):
                acc = acc + table.values[r][i] * table.values[r][j].conjugate()
            got = acc.to_rational()
            want = Fraction(n, classes.sizes[i]) if i == j else 0
            if got != want:
                raise InternalInconsistency(
                    f"column orthogonality fails for classes {i},{j}")
    dG = groups.commutator_subgroup(G)
    if sum(table.linear_mask) != n // dG.order:
        raise InternalInconsistency("linear character count != |G : G'|")


# ---------------------------------------------------------------------------
# derived operations


def _as_class_values(table, phi):
    """Accept a character index, ClassFunction, or per-class value sequence."""
    if isinstance(phi, int):
        return table.values[phi]
    if isinstance(phi, ClassFunction):
        if phi.classes is not table.classes and \
                phi.group.canonical_key() != table.group.canonical_key():
            raise MismatchedGroup("class function belongs to a different group")
        return phi.values
    return phi


def _conj(v):
    return v.conjugate() if isinstance(v, Cyclotomic) else v


def _to_rational(v):
    if isinstance(v, Cyclotomic):
        return v.to_rational()
    return Fraction(v)


def inner_product(table, phi, psi):
    """Exact <phi, psi> over the whole group."""
    phi = _as_class_values(table, phi)
    psi = _as_class_values(table, psi)
    classes = table.classes
    acc = Cyclotomic.zero(table.exponent)
    for j in range(classes.num_classes):
        acc = acc + classes.sizes[j] * (phi[j] * _conj(psi[j]))
    return acc.to_rational() / table.group.order


def inner_product_on(table, H, phi, psi):
    """Exact <phi, psi>_H, summing over the elements of the subgroup H."""
    if not isinstance(H, Subgroup) or \
            H.parent.canonical_key() != table.group.canonical_key():
        raise MismatchedGroup("subgroup belongs to a different group")
    phi = _as_class_values(table, phi)
    psi = _as_class_values(table, psi)
    cls = table.classes.class_of
    acc = Cyclotomic.zero(table.exponent)
    for g in H.members:
        j = cls[g]
        acc = acc + phi[j] * _conj(psi[j])
    return acc.to_rational() / H.order


def irr_given(G, N, table):
    """Partition character indices into (Irr(G/N) inflations, Irr(G|N))."""
    if not isinstance(N, Subgroup) or \
            N.parent.canonical_key() != G.canonical_key():
        raise NotNormal("subgroup belongs to a different group")
    if not N.is_normal():
        raise NotNormal("subgroup is not normal")
    cls = table.classes.class_of
    inflated, moved = [], []
    for r in range(table.num_characters):
        deg = table.degrees[r]
        if all(table.values[r][cls[g]] == deg for g in N.members):
            inflated.append(r)
        else:
            moved.append(r)
    return inflated, moved


def central_character(table, chi, j):
    """chi(x_j) |Cl(x_j)| / chi(1), asserted to be an algebraic integer."""
    v = table.values[chi][j].scale_div(table.classes.sizes[j], table.degrees[chi])
    red = v.reduced()
    for c in red:
        if Fraction(c).denominator != 1:
            raise NonIntegral(
                f"central character for chi={chi}, class={j} is not integral")
    e = table.exponent
    coeffs = [int(c) for c in red] + [0] * (e - len(red))
    return Cyclotomic(e, tuple(coeffs[:e]))


def frobenius_schur_check(G, table):
    """Sum of nu(chi) chi(1) must equal 1 + the number of involutions."""
    classes = table.classes
    sq_class = [classes.class_of[G.mul[r][r]] for r in classes.reps]
    total = Fraction(0)
    for r in range(table.num_characters):
        acc = Cyclotomic.zero(table.exponent)
        for j in range(classes.num_classes):
            acc = acc + classes.sizes[j] * table.values[r][sq_class[j]]
        nu = acc.to_rational() / G.order
        total += nu * table.degrees[r]
    involutions = sum(1 for a in range(1, G.order) if G.mul[a][a] == 0)
    return total == 1 + involutions


# ---------------------------------------------------------------------------
# cache file format


def dump_table(table):
    """Serialize to the text cache format."""
    lines = [f"chartab e={table.exponent} k={table.num_characters}"]
    for rep, size in zip(table.classes.reps, table.classes.sizes):
        lines.append(f"class {rep} {size}")
    for row in table.values:
        lines.append(",".join(":".join(str(c) for c in v.coeffs) for v in row))
    return "\n".join(lines) + "\n"


def load_table(G, text, classes=None):
    """Rebuild a CharacterTable from cache text (verified on load)."""
    if classes is None:
        classes = groups.conjugacy_classes(G)
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "chartab":
        raise InternalInconsistency("bad cache header")
    e = int(head[1].split("=")[1])
    k = int(head[2].split("=")[1])
    for m, ln in enumerate(lines[1:1 + k]):
        _, rep, size = ln.split()
        if int(rep) != classes.reps[m] or int(size) != classes.sizes[m]:
            raise InternalInconsistency("cached classes do not match the group")
    values = []
    for ln in lines[1 + k:1 + 2 * k]:
        row = tuple(
            Cyclotomic(e, tuple(int(c) for c in chunk.split(":")))
            for chunk in ln.split(",")
        )
        values.append(row)
    degrees = tuple(v[0].to_integer() for v in values)
    linear_mask = tuple(d == 1 for d in degrees)
    table = CharacterTable(G, classes, e, tuple(values), degrees, linear_mask)
    _verify_table(G, table)
    return table
