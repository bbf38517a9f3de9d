from fractions import Fraction

import pytest

from wordcount import chartab, counting, formulas, groups, words
from wordcount.errors import (NotMeasurePreserving, NotNormal,
                              PredicateFailed)
from wordcount.formulas import CaminaInvariants


def _table(G):
    return chartab.character_table(G)


def test_frobenius_formula_matches_brute():
    for spec in ["symmetric(3)", "symmetric(4)", "quaternion(8)",
                 "dihedral(10)", "agl1(5)", "cyclic(9)"]:
        G = groups.parse_builtin_spec(spec)
        table = _table(G)
        assert formulas.zeta_w2_frobenius(G, table) == \
            counting.zeta_brute(G, words.wn(2), classes=table.classes)


def test_recursion_matches_brute():
    for spec, n in [("symmetric(3)", 3), ("quaternion(8)", 3),
                    ("dihedral(12)", 3), ("agl1(4)", 3),
                    ("quaternion(8)", 4), ("cyclic(6)", 4)]:
        G = groups.parse_builtin_spec(spec)
        table = _table(G)
        assert formulas.zeta_wn_char(G, table, n) == \
            counting.zeta_brute(G, words.wn(n), classes=table.classes)


def test_c_wn_values():
    S3 = groups.builtin("symmetric", 3)
    table = _table(S3)
    chi = table.nonlinear_indices()[0]
    assert formulas.c_wn(S3, table, chi, 2) == 1
    assert formulas.c_wn(S3, table, chi, 3) == 15
    lin = table.linear_indices()[0]
    assert formulas.c_wn(S3, table, lin, 4) == 36


def test_mixed_domain_theorem():
    S3 = groups.builtin("symmetric", 3)
    table = _table(S3)
    A3 = groups.commutator_subgroup(S3)
    x = words.parse("x1")
    got = formulas.zeta_mixed_theorem21(S3, A3, x, x, table)
    assert got == [12, 0, 0, 3, 3, 0]


def test_mixed_domain_matches_brute_on_q8():
    Q8 = groups.builtin("quaternion", 8)
    table = _table(Q8)
    Z = groups.center(Q8)
    w1 = words.parse("x1 x2")
    w2 = words.parse("x1")
    got = formulas.zeta_mixed_theorem21(Q8, Z, w1, w2, table)
    combined = formulas.bracket_word(w1, w2)
    spec = counting.DomainSpec((Z, Z, None))
    assert got == counting.zeta_element_counts(Q8, combined, spec)


def test_mixed_domain_preconditions():
    S3 = groups.builtin("symmetric", 3)
    table = _table(S3)
    x = words.parse("x1")
    not_normal = groups.subgroup_closure(S3, [
        next(g for g in range(6) if S3.element_order(g) == 2)])
    with pytest.raises(NotNormal):
        formulas.zeta_mixed_theorem21(S3, not_normal, x, x, table)
    A3 = groups.commutator_subgroup(S3)
    with pytest.raises(NotMeasurePreserving):
        formulas.zeta_mixed_theorem21(S3, A3, x, words.wn(2), table)


def test_classify_q8():
    Q8 = groups.builtin("quaternion", 8)
    report = formulas.classify(Q8)
    assert not report.is_abelian
    assert report.nilpotency_class == 2
    assert report.is_camina_group
    assert report.is_vz
    assert report.unique_nonlinear
    assert report.cd == {1, 2}


def test_classify_s3_and_abelian():
    report = formulas.classify(groups.builtin("symmetric", 3))
    assert report.unique_nonlinear and not report.is_vz
    assert report.nilpotency_class is None
    report = formulas.classify(groups.builtin("cyclic", 12))
    assert report.is_abelian
    assert not report.gcp_targets and not report.camina_pair_targets


def test_closed_gcp_center_values():
    inv = CaminaInvariants(8, 2, 2, 8)
    assert formulas.closed_gcp_center(inv, 2, "identity") == 40
    assert formulas.closed_gcp_center(inv, 2, "nontrivial") == 24
    assert formulas.closed_gcp_center(inv, 3, "identity") == 512
    assert formulas.closed_gcp_center(inv, 3, "nontrivial") == 0


def test_closed_gcp_center_class_function():
    for spec in ["quaternion(8)", "dihedral(8)", "heisenberg(3)"]:
        G = groups.parse_builtin_spec(spec)
        table = _table(G)
        for n in (2, 3, 4):
            closed = formulas.closed_zeta_gcp_center(G, table, n)
            assert closed == formulas.zeta_wn_char(G, table, n)


def test_closed_gcp_center_rejects_non_vz():
    S3 = groups.builtin("symmetric", 3)
    with pytest.raises(PredicateFailed):
        formulas.closed_zeta_gcp_center(S3, _table(S3), 2)


def test_camina3_closed_forms():
    inv = CaminaInvariants(128, 8, 2, 0)
    assert formulas.closed_camina3(inv, 2, "identity") == 2560
    assert formulas.closed_camina3(inv, 2, "center_nontrivial") == 2304
    assert formulas.closed_camina3(inv, 2, "derived_rest") == 1920
    assert formulas.closed_camina3(inv, 3, "identity") == 1359872
    assert formulas.closed_camina3(inv, 3, "center_nontrivial") == 737280
    assert formulas.closed_camina3(inv, 3, "derived_rest") == 0
    # the published scalar identity display fails total mass; kept flagged
    assert formulas.camina3_identity_display(inv) == 1490944


def test_camina3_invariant_gates():
    with pytest.raises(PredicateFailed):
        formulas.closed_camina3(CaminaInvariants(64, 8, 2, 0), 2, "identity")
    with pytest.raises(PredicateFailed):
        formulas.camina3_parameters(CaminaInvariants(128, 8, 4, 0))


def test_tower_closed_form_total_mass():
    # shape: |G| = 2^9, |G'| = 2^4, |Z| = 2^2, |Z2| = 2^6
    inv = CaminaInvariants(512, 16, 4, 64)
    for n in (2, 3):
        vals = formulas._closed_tower_all(inv, n)
        total = (vals["identity"]
                 + (inv.center_order - 1) * vals["center_nontrivial"]
                 + (inv.derived_order - inv.center_order)
                 * vals["derived_rest"])
        assert total == inv.order ** n
    assert formulas.closed_camina_gcp_tower(inv, 3, "derived_rest") == 0


def test_tower_degenerate_z2_equals_derived():
    inv = CaminaInvariants(512, 16, 4, 16)
    v = formulas.closed_camina_gcp_tower(inv, 2, "derived_rest")
    assert v == inv.order * (inv.order - inv.z2_order) // inv.derived_order
    assert v >= 0


def test_unique_nonlinear_recursion():
    S3 = groups.builtin("symmetric", 3)
    c, zeta = formulas.unique_nonlinear_recursion(S3, _table(S3), 3)
    assert c == 15
    assert zeta.values == (162, 27, 0)
    A4 = groups.builtin("agl1", 4)
    c, zeta = formulas.unique_nonlinear_recursion(A4, _table(A4), 3)
    assert c == 44
    assert zeta.at_element(0) == 960
    c2, zeta2 = formulas.unique_nonlinear_recursion(S3, _table(S3), 2)
    assert c2 == 1
    assert zeta2.values == (18, 9, 0)


def test_unique_nonlinear_rejects_wrong_groups():
    Q8 = groups.builtin("quaternion", 8)  # unique nl but center not trivial
    with pytest.raises(PredicateFailed):
        formulas.unique_nonlinear_recursion(Q8, _table(Q8), 3)
    S4 = groups.builtin("symmetric", 4)
    with pytest.raises(PredicateFailed):
        formulas.unique_nonlinear_recursion(S4, _table(S4), 3)


def test_appl_values():
    assert formulas.appl_identity_value(6, 3, 3) == 162
    assert formulas.appl_identity_value(12, 4, 4) == 960
    assert formulas.appl_offidentity_value(6, 3, 3, 15) == 27
    assert formulas.appl_offidentity_value(12, 4, 4, 44) == 256
    # the published off-identity display disagrees (flagged, not used)
    assert formulas.appl_offidentity_display(6, 3, 3) == -18
    assert formulas.appl_offidentity_display(8, 4, 2) is None


def test_cd2_bound():
    S3 = groups.builtin("symmetric", 3)
    A3 = groups.commutator_subgroup(S3)
    report = formulas.cd2_bound_check(S3, _table(S3), A3, 3)
    assert report == [(2, Fraction(15), Fraction(24))]
    with pytest.raises(PredicateFailed):
        formulas.cd2_bound_check(S3, _table(S3), A3, 2)


def test_verify_camina_pair_structure():
    Q8 = groups.builtin("quaternion", 8)
    report = formulas.verify_camina_pair_structure(Q8, _table(Q8))
    assert report["degree"] == 2 and len(report["irr_given_center"]) == 1
    S3 = groups.builtin("symmetric", 3)
    with pytest.raises(PredicateFailed):
        formulas.verify_camina_pair_structure(S3, _table(S3))


def test_invariants_of():
    Q8 = groups.builtin("quaternion", 8)
    inv = formulas.invariants_of(Q8)
    assert (inv.order, inv.derived_order, inv.center_order, inv.z2_order) == \
        (8, 2, 2, 8)
