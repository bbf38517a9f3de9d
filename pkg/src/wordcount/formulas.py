"""Character-theoretic and closed-form evaluators for iterated commutators.

Everything here is cross-checkable against the brute-force oracle in
`counting`.  Two of the source displays disagree with their own general
forms under exact substitution; those are resolved in favor of the values
that satisfy the forced total-mass identity (see FLAG_* below and the
`verify` report's FLAGGED lines).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import chartab, counting, groups
from .chartab import ClassFunction
from .cyclotomic import Cyclotomic
from .errors import (
    CheckFailed,
    InternalInconsistency,
    NotMeasurePreserving,
    NotNormal,
    PredicateFailed,
)
from .words import make_word

FLAG_CAMINA3_IDENTITY = "camina3-identity-display"
FLAG_UNIQUE_NL_OFFIDENTITY = "unique-nonlinear-offidentity-display"


@dataclass
class GroupClassReport:
    is_abelian: bool
    nilpotency_class: int | None
    camina_pair_targets: list
    is_camina_group: bool
    cd: set
    gcp_targets: list
    is_vz: bool
    unique_nonlinear: bool


@dataclass(frozen=True)
class CaminaInvariants:
    """The order data |G|, |G'|, |Z(G)|, |Z_2(G)| driving the closed forms."""

    order: int
    derived_order: int
    center_order: int
    z2_order: int

    def index_center(self):
        return self.order // self.center_order


def invariants_of(G):
    z = groups.center(G)
    z2 = groups.zn(G, 2)
    return CaminaInvariants(
        G.order, groups.commutator_subgroup(G).order, z.order, z2.order)


# ---------------------------------------------------------------------------
# character-theoretic path


def _rational_row_sum(table, terms):
    """Reduce sum(coef * chi(g_j)) to an exact rational per class.

    `terms` is a list of (coef: Fraction, char index); returns per-class
    Fractions.
    """
    k = table.classes.num_classes
    out = []
    for j in range(k):
        acc = Cyclotomic.zero(table.exponent)
        for coef, r in terms:
            acc = acc + table.values[r][j] * coef
        out.append(acc.to_rational())
    return out


def zeta_w2_frobenius(G, table):
    """zeta for [x1,x2] as the classical character sum."""
    terms = [(Fraction(G.order, table.degrees[r]), r)
             for r in range(table.num_characters)]
    values = _rational_row_sum(table, terms)
    return _as_integer_class_function(G, table, values, 2)


def _as_integer_class_function(G, table, values, n):
    ints = []
    for v in values:
        if v.denominator != 1 or v < 0:
            raise InternalInconsistency(f"fiber count {v} is not a natural number")
        ints.append(v.numerator)
    cf = ClassFunction(G, table.classes, tuple(ints))
    if cf.total_mass() != G.order ** n:
        raise InternalInconsistency("character-path counts fail total mass")
    return cf


def c_wn(G, table, chi, n, zeta_prev=None):
    """The coefficient <zeta^{w_{n-1}} chi, chi>, with its special cases."""
    if n == 2:
        return Fraction(1)
    if table.linear_mask[chi]:
        return Fraction(G.order ** (n - 2))
    if zeta_prev is None:
        zeta_prev = zeta_wn_char(G, table, n - 1)
    classes = table.classes
    acc = Cyclotomic.zero(table.exponent)
    for j in range(classes.num_classes):
        zj = zeta_prev.values[j]
        if zj:
            row = table.values[chi][j]
            acc = acc + classes.sizes[j] * zj * (row * row.conjugate())
    return acc.to_rational() / G.order


def zeta_wn_char(G, table, n):
    """zeta for the left-normed commutator word w_n via the recursion."""
    if n < 2:
        raise PredicateFailed("the recursion starts at n = 2")
    zeta = zeta_w2_frobenius(G, table)
    for k in range(3, n + 1):
        terms = []
        for r in range(table.num_characters):
            if table.linear_mask[r]:
                coef = Fraction(G.order ** (k - 1))
            else:
                c = c_wn(G, table, r, k, zeta)
                coef = Fraction(G.order) * c / table.degrees[r]
            terms.append((coef, r))
        values = _rational_row_sum(table, terms)
        zeta = _as_integer_class_function(G, table, values, k)
    return zeta


def bracket_word(w1, w2):
    """The word [w1(x1..xn), w2(x_{n+1}..x_m)] on disjoint variables."""
    shift = w1.arity
    l1 = list(w1.letters)
    l2 = [(v + shift, e) for v, e in w2.letters]
    inv = lambda ls: [(v, -e) for v, e in reversed(ls)]
    return make_word(inv(l1) + inv(l2) + l1 + l2)


def zeta_mixed_theorem21(G, H, w1, w2, table=None):
    """Counts for [w1(vars in H), w2(vars in G)] via the character formula.

    Returns a per-element integer list over G.  Requires H normal and w2
    measure preserving with respect to G.
    """
    if not isinstance(H, groups.Subgroup) or \
            H.parent.canonical_key() != G.canonical_key():
        raise NotNormal("subgroup belongs to a different group")
    if not H.is_normal():
        raise NotNormal("H must be normal in G")
    if not counting.is_measure_preserving(G, w2):
        raise NotMeasurePreserving(
            f"word {w2} is not measure preserving on this group")
    if table is None:
        table = chartab.character_table(G)

    m = w1.arity + w2.arity
    Htab, _, to_parent = H.materialize()
    zeta1 = counting.zeta_element_counts(Htab, w1)
    cls = table.classes.class_of

    # coefficient of chi: |G|^(m-n-1) |H| / chi(1) * <zeta1 chi, chi>_H,
    # carried as an exact cyclotomic (it need not be rational per character)
    per_class = []
    coefs = []
    for r in range(table.num_characters):
        acc = Cyclotomic.zero(table.exponent)
        for hsub, count in enumerate(zeta1):
            if count:
                hg = to_parent[hsub]
                row = table.values[r][cls[hg]]
                acc = acc + count * (row * row.conjugate())
        # acc = |H| <zeta1 chi, chi>_H
        coefs.append(acc.scale_div(G.order ** (m - w1.arity - 1),
                                   table.degrees[r]))
    k = table.classes.num_classes
    for j in range(k):
        acc = Cyclotomic.zero(table.exponent)
        for r in range(table.num_characters):
            acc = acc + coefs[r] * table.values[r][j]
        v = acc.to_rational()
        if v.denominator != 1 or v < 0:
            raise InternalInconsistency("mixed-domain count is not a natural number")
        per_class.append(v.numerator)
    counts = [per_class[cls[g]] for g in range(G.order)]
    if sum(counts) != (H.order ** w1.arity) * (G.order ** w2.arity):
        raise InternalInconsistency("mixed-domain counts fail total mass")
    return counts


# ---------------------------------------------------------------------------
# class predicates


def classify(G, table=None):
    """Structural predicates feeding the closed-form evaluators."""
    if table is None:
        table = chartab.character_table(G)
    classes = table.classes
    z = groups.center(G)
    derived = groups.commutator_subgroup(G)
    is_abelian = z.order == G.order
    nclass = groups.nilpotency_class(G)

    normals = groups.normal_subgroups(G, classes)
    camina_targets = []
    for H in normals:
        if 1 < H.order < G.order and groups.is_camina_pair(G, H):
            camina_targets.append(H)
    for H in camina_targets:
        if not (set(z.members) <= set(H.members)
                and set(H.members) <= set(derived.members)):
            raise InternalInconsistency("Camina target outside Z(G)..G'")
    is_camina_group = any(H.members == derived.members for H in camina_targets)

    cd = set(table.degrees)
    nl = table.nonlinear_indices()
    gcp_targets = []
    if nl:
        support = {g for g in range(G.order)
                   if any(not table.values[r][classes.class_of[g]].is_zero()
                          for r in nl)}
        V = groups.subgroup_closure(G, support)
        vset = set(V.members)
        for N in normals:
            if N.order < G.order and vset <= set(N.members):
                gcp_targets.append(N)
    is_vz = any(N.members == z.members for N in gcp_targets)
    return GroupClassReport(
        is_abelian=is_abelian,
        nilpotency_class=nclass,
        camina_pair_targets=camina_targets,
        is_camina_group=is_camina_group,
        cd=cd,
        gcp_targets=gcp_targets,
        is_vz=is_vz,
        unique_nonlinear=len(nl) == 1,
    )


# ---------------------------------------------------------------------------
# closed forms (pure functions of the invariants; wrappers verify predicates)


def closed_gcp_center(inv, n, region):
    """Counts for a group with (G, Z(G)) a GCP; region in
    {"identity", "nontrivial"} (the latter meaning 1 != g in G')."""
    return _closed_gcp_center_all(inv, n)[region]


def _closed_gcp_center_all(inv, n):
    o, d, q = inv.order, inv.derived_order, inv.index_center()
    if n == 2:
        vals = {
            "identity": Fraction(o * o, d) * (1 + Fraction(d - 1, q)),
            "nontrivial": Fraction(o * o, d) * (1 - Fraction(1, q)),
        }
    elif n >= 3:
        vals = {"identity": Fraction(o**n), "nontrivial": Fraction(0)}
    else:
        raise PredicateFailed("n must be >= 2")
    out = {k: _expect_int(v) for k, v in vals.items()}
    total = out["identity"] + (d - 1) * out["nontrivial"]
    if total != o**n:
        raise InternalInconsistency("GCP closed form fails total mass")
    return out


def _expect_int(v):
    v = Fraction(v)
    if v.denominator != 1 or v < 0:
        raise PredicateFailed(f"closed form produced non-natural value {v}")
    return v.numerator


def camina3_parameters(inv):
    """(p, m) with |G:G'| = p^(2m), |G':Z| = p^m, m even; PredicateFailed
    if the invariants are not of Camina class-3 shape."""
    if inv.order % inv.derived_order or inv.derived_order % inv.center_order:
        raise PredicateFailed("orders do not divide as required")
    idx = inv.order // inv.derived_order
    mid = inv.derived_order // inv.center_order
    if idx != mid * mid:
        raise PredicateFailed("|G:G'| != |G':Z(G)|^2")
    pm = _prime_power_decomposition(mid)
    if pm is None:
        raise PredicateFailed(f"|G':Z(G)| = {mid} is not a prime power")
    p, m = pm
    if m % 2:
        raise PredicateFailed(f"m = {m} is odd")
    return p, m


def _prime_power_decomposition(q):
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            return (p, m) if r == 1 else None
        p += 1
    return (q, 1)


def closed_camina3(inv, n, region):
    """Counts for a Camina p-group of nilpotency class 3.

    Regions: "identity", "center_nontrivial" (1 != g in gamma_3 = Z) and
    "derived_rest" (g in G' minus gamma_3).  The n=3 identity value comes
    from the class-function form, which is the one satisfying total mass;
    the scalar display is available via camina3_identity_display.
    """
    return _closed_camina3_all(inv, n)[region]


def _closed_camina3_all(inv, n):
    camina3_parameters(inv)
    o, d, z = inv.order, inv.derived_order, inv.center_order
    if n == 2:
        vals = {
            "identity": Fraction(o * o, d) + Fraction(o * d, z) + o * (z - 2),
            "center_nontrivial":
                Fraction(o * (o - d), d) + Fraction(o * (d - z), z),
            "derived_rest": Fraction(o * (o - d), d),
        }
    elif n == 3:
        lin = o // d
        coef_center = Fraction(o**3, d) + Fraction(o * o * (d - z), z)
        ident = (Fraction(o * o * lin)
                 + coef_center * (z - 1)
                 + Fraction(o**3, d) * (d // z - 1))
        vals = {
            "identity": ident,
            "center_nontrivial": Fraction(o * o * (d - z) * (o - d), d * z),
            "derived_rest": Fraction(0),
        }
    else:
        raise PredicateFailed("closed form is stated for n in {2, 3}")
    out = {k: _expect_int(v) for k, v in vals.items()}
    total = (out["identity"] + (z - 1) * out["center_nontrivial"]
             + (d - z) * out["derived_rest"])
    if total != o**n:
        raise InternalInconsistency("Camina class-3 closed form fails total mass")
    return out


def camina3_identity_display(inv):
    """The published scalar n=3 identity value (FLAGGED: fails total mass)."""
    o, d, z = inv.order, inv.derived_order, inv.center_order
    return Fraction(o**3 * (z * z + d - 1), z * d) \
        + Fraction(o * o * (d - z) * (z - 1), z)


def closed_camina_gcp_tower(inv, n, region):
    """Counts for (G, Z(G)) a Camina pair with (G/Z, Z(G/Z)) a GCP.

    Regions as for closed_camina3, with Z(G) in place of gamma_3.
    """
    return _closed_tower_all(inv, n)[region]


def _closed_tower_all(inv, n):
    o, d, z, z2 = inv.order, inv.derived_order, inv.center_order, inv.z2_order
    if n == 2:
        # the identity value is |G| * #Irr(G); the bracket is |G'||Z|* #Irr(G)
        vals = {
            "identity":
                Fraction(o * (z * (o + d * (z - 1)) + z2 * (d - z)), d * z),
            "center_nontrivial":
                Fraction(o * (z * (o - d) + z2 * (d - z)), d * z),
            "derived_rest": Fraction(o * (o - z2), d),
        }
    elif n == 3:
        vals = {
            "identity":
                Fraction(o * o * (o * z * z + (d - z) * (o + z2 * (z - 1))),
                         d * z),
            "center_nontrivial": Fraction(o * o * (d - z) * (o - z2), d * z),
            "derived_rest": Fraction(0),
        }
    else:
        raise PredicateFailed("closed form is stated for n in {2, 3}")
    out = {k: _expect_int(v) for k, v in vals.items()}
    total = (out["identity"] + (z - 1) * out["center_nontrivial"]
             + (d - z) * out["derived_rest"])
    if total != o**n:
        raise InternalInconsistency(
            "Camina/GCP tower closed form fails total mass")
    return out


def _regions_class_function(G, table, values_by_region, inner, n):
    """Assemble a ClassFunction from region values.

    `inner` is the subgroup whose nontrivial part takes the
    "center_nontrivial" value; G' \\ inner takes "derived_rest"; everything
    outside G' takes 0.
    """
    derived = groups.commutator_subgroup(G)
    classes = table.classes
    vals = []
    for m in range(classes.num_classes):
        g = classes.reps[m]
        if g == 0:
            vals.append(values_by_region["identity"])
        elif g in inner:
            vals.append(values_by_region["center_nontrivial"])
        elif g in derived:
            vals.append(values_by_region["derived_rest"])
        else:
            vals.append(0)
    cf = ClassFunction(G, classes, tuple(vals))
    if cf.total_mass() != G.order ** n:
        raise InternalInconsistency("region class function fails total mass")
    return cf


def closed_zeta_gcp_center(G, table, n):
    """ClassFunction form of closed_gcp_center, with the predicate checked."""
    report = classify(G, table)
    if not report.is_vz:
        raise PredicateFailed("(G, Z(G)) is not a GCP")
    inv = invariants_of(G)
    vals = _closed_gcp_center_all(inv, n)
    by_region = {
        "identity": vals["identity"],
        "center_nontrivial": vals["nontrivial"],
        "derived_rest": vals["nontrivial"],
    }
    derived = groups.commutator_subgroup(G)
    return _regions_class_function(G, table, by_region, derived, n)


def closed_zeta_camina3(G, table, n):
    report = classify(G, table)
    if not (report.is_camina_group and report.nilpotency_class == 3):
        raise PredicateFailed("not a Camina group of nilpotency class 3")
    if _prime_power_decomposition(G.order) is None:
        raise PredicateFailed("not a p-group")
    inv = invariants_of(G)
    gamma3 = groups.gamma(G, 3)
    z = groups.center(G)
    if gamma3.members != z.members:
        raise PredicateFailed("gamma_3(G) != Z(G)")
    return _regions_class_function(
        G, table, _closed_camina3_all(inv, n), gamma3, n)


def closed_zeta_tower(G, table, n):
    z = groups.center(G)
    if z.order <= 1 or z.order >= G.order or not groups.is_camina_pair(G, z):
        raise PredicateFailed("(G, Z(G)) is not a Camina pair")
    Q, _ = groups.quotient(G, z)
    qtable = chartab.character_table(Q)
    if not classify(Q, qtable).is_vz:
        raise PredicateFailed("(G/Z, Z(G/Z)) is not a GCP")
    inv = invariants_of(G)
    return _regions_class_function(
        G, table, _closed_tower_all(inv, n), z, n)


# ---------------------------------------------------------------------------
# unique nonlinear irreducible character (the Frobenius family)


def _unique_nonlinear_setup(G, table):
    nl = table.nonlinear_indices()
    if len(nl) != 1:
        raise PredicateFailed("group has more than one nonlinear character")
    if groups.center(G).order != 1:
        raise PredicateFailed("center is not trivial")
    phi = nl[0]
    pm = table.degrees[phi] + 1
    if _prime_power_decomposition(pm) is None:
        raise PredicateFailed(f"phi(1)+1 = {pm} is not a prime power")
    if G.order != pm * (pm - 1):
        raise PredicateFailed("|G| != p^m (p^m - 1)")
    return phi, pm


def unique_nonlinear_recursion(G, table, n, verify=True):
    """(C^{w_n}(phi), zeta^{w_n}) by the one-character recursion."""
    if n < 2:
        raise PredicateFailed("recursion starts at n = 2")
    phi, pm = _unique_nonlinear_setup(G, table)
    d = groups.commutator_subgroup(G).order
    c = Fraction(1)
    for k in range(3, n + 1):
        c = Fraction(G.order ** (k - 1), d) \
            + Fraction(G.order, pm - 1) * c * (pm - 2)
    c = _expect_int(c)
    terms = [(Fraction(G.order ** (n - 1)), r)
             for r in range(table.num_characters) if table.linear_mask[r]]
    terms.append((Fraction(G.order * c, pm - 1), phi))
    values = _rational_row_sum(table, terms)
    zeta = _as_integer_class_function(G, table, values, n)
    if verify and zeta != zeta_wn_char(G, table, n):
        raise InternalInconsistency(
            "unique-nonlinear recursion disagrees with the general recursion")
    return c, zeta


def appl_identity_value(order, derived_order, pm, n=3):
    """Identity count for the unique-nonlinear family, from the published
    n=3 scalar form (which is consistent)."""
    if n != 3:
        raise PredicateFailed("the scalar display is stated for n = 3")
    v = Fraction(2 * order**3, derived_order) \
        + Fraction(order * order * (pm - 2), pm - 1)
    return _expect_int(v)


def appl_offidentity_display(order, derived_order, pm):
    """The published n=3 off-identity value (FLAGGED: can be negative).

    Returns None in the degenerate p^m = 2 case where the display divides
    by zero.
    """
    if pm == 2:
        return None
    return Fraction(order**3, derived_order) \
        - Fraction(order * order, pm - 2) \
        * (Fraction(order, derived_order) + Fraction(pm - 2, pm - 1))


def appl_offidentity_value(order, derived_order, pm, c_n, n=3):
    """Off-identity count recomputed from the general recursion form."""
    return _expect_int(Fraction(order**n, derived_order)
                       - Fraction(order, pm - 1) * c_n)


# ---------------------------------------------------------------------------
# remaining predicates and bounds


def cd2_bound_check(G, table, N, n):
    """Check C^{w_n}(chi) <= m |G|^{n-1} / |N| for every nonlinear chi.

    Preconditions: n >= 3, cd(G) = {1, m} with m = |G : N|, N abelian and
    normal, and every nonlinear character induced from N (verified through
    vanishing off N and <chi|N, chi|N>_N = m).
    """
    if n < 3:
        raise PredicateFailed("the bound is stated for n >= 3")
    m = G.order // N.order
    if set(table.degrees) != {1, m}:
        raise PredicateFailed(f"cd(G) != {{1, {m}}}")
    if not N.is_normal():
        raise PredicateFailed("N is not normal")
    sub, _, _ = N.materialize()
    if groups.center(sub).order != sub.order:
        raise PredicateFailed("N is not abelian")
    cls = table.classes.class_of
    for r in table.nonlinear_indices():
        for g in range(G.order):
            if g not in N and not table.values[r][cls[g]].is_zero():
                raise PredicateFailed(
                    f"character {r} does not vanish off N")
        if chartab.inner_product_on(table, N, r, r) != m:
            raise PredicateFailed(
                f"character {r} is not induced from N")
    zeta_prev = zeta_wn_char(G, table, n - 1)
    bound = Fraction(m * G.order ** (n - 1), N.order)
    out = []
    for r in table.nonlinear_indices():
        c = c_wn(G, table, r, n, zeta_prev)
        if c > bound:
            raise CheckFailed(f"C^w_n({r}) = {c} exceeds bound {bound}")
        out.append((r, c, bound))
    return out


def verify_camina_pair_structure(G, table):
    """Check the three consequences of (G, Z(G)) being a Camina pair."""
    z = groups.center(G)
    if z.order <= 1 or z.order >= G.order or not groups.is_camina_pair(G, z):
        raise PredicateFailed("(G, Z(G)) is not a Camina pair")
    _, moved = chartab.irr_given(G, z, table)
    if len(moved) != z.order - 1:
        raise CheckFailed(
            f"|Irr(G|Z)| = {len(moved)}, expected |Z|-1 = {z.order - 1}")
    idx = G.order // z.order
    cls = table.classes.class_of
    for r in moved:
        if table.degrees[r] ** 2 != idx:
            raise CheckFailed(
                f"character {r} has degree {table.degrees[r]}, "
                f"expected |G:Z|^(1/2)")
        for g in range(G.order):
            if g not in z and not table.values[r][cls[g]].is_zero():
                raise CheckFailed(f"character {r} does not vanish off Z(G)")
    return {"irr_given_center": moved, "degree": int(idx ** 0.5)}
