from fractions import Fraction

import pytest

from wordcount import groups, isoclinism
from wordcount.errors import SearchBoundExceeded, WitnessInvalid


def test_identity_witness():
    S3 = groups.builtin("symmetric", 3)
    for n in (1, 2):
        w = isoclinism.find_isoclinism(S3, S3, n)
        assert w is not None
        report = isoclinism.verify_scaling(w)
        assert report["factor"] == 1


def test_d8_q8_isoclinic():
    D8 = groups.builtin("dihedral", 8)
    Q8 = groups.builtin("quaternion", 8)
    w = isoclinism.find_isoclinism(D8, Q8, 1)
    assert w is not None
    report = isoclinism.verify_scaling(w)
    assert report["factor"] == 1
    values = {v for _, _, v in report["checked"]}
    assert values == {40, 24}


def test_q8_c8_not_isoclinic():
    Q8 = groups.builtin("quaternion", 8)
    C8 = groups.builtin("cyclic", 8)
    assert isoclinism.find_isoclinism(Q8, C8, 1) is None


def test_scaling_with_abelian_factor():
    Q8 = groups.builtin("quaternion", 8)
    big = groups.direct_product(Q8, groups.builtin("cyclic", 2))
    w = isoclinism.find_isoclinism(big, Q8, 1)
    assert w is not None
    report = isoclinism.verify_scaling(w)
    assert report["factor"] == Fraction(4)
    # zeta^{w2}_{Q8xC2} on the image of -1 is 96 = 4 * 24
    assert any(v == 96 for _, _, v in report["checked"])


def test_abelian_factors_generally_isoclinic():
    S3 = groups.builtin("symmetric", 3)
    for spec in ["cyclic(2)", "cyclic(3)", "cyclic(4)"]:
        A = groups.parse_builtin_spec(spec)
        w = isoclinism.find_isoclinism(groups.direct_product(S3, A), S3, 1)
        assert w is not None
        isoclinism.verify_scaling(w)


def test_search_bound():
    big = groups.builtin("dihedral", 24)  # trivial center: quotient order 24
    huge = groups.direct_product(big, groups.builtin("dihedral", 6))
    with pytest.raises(SearchBoundExceeded):
        isoclinism.find_isoclinism(huge, huge, 1)


def test_tampered_witness_rejected():
    D8 = groups.builtin("dihedral", 8)
    Q8 = groups.builtin("quaternion", 8)
    w = isoclinism.find_isoclinism(D8, Q8, 1)
    gamma = groups.commutator_subgroup(D8)
    nontrivial = next(g for g in gamma.members if g)
    bad_psi = dict(w.psi)
    bad_psi[nontrivial] = 0
    bad = isoclinism.IsoclinismWitness(
        w.n, w.G, w.H, w.phi, bad_psi, w.quotient_G, w.quotient_H,
        w.proj_G, w.proj_H)
    with pytest.raises(WitnessInvalid):
        isoclinism.verify_witness(bad)


def test_level_2_isoclinism():
    D16 = groups.builtin("dihedral", 16)
    w = isoclinism.find_isoclinism(
        groups.direct_product(D16, groups.builtin("cyclic", 3)), D16, 2)
    assert w is not None
    report = isoclinism.verify_scaling(w)
    assert report["factor"] == Fraction(27)
