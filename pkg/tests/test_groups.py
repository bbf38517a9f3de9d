import pytest

from wordcount import groups
from wordcount.errors import (NotAGroup, OrderLimitExceeded, UnknownFamily,
                              UnsupportedParameter)


def test_cyclic_basics():
    G = groups.builtin("cyclic", 6)
    assert G.order == 6
    assert G.op(2, 5) == 1
    assert G.inverse(2) == 4
    assert G.element_order(2) == 3
    assert G.exponent() == 6


def test_symmetric_group():
    S3 = groups.builtin("symmetric", 3)
    assert S3.order == 6
    orders = sorted(S3.element_order(g) for g in range(6))
    assert orders == [1, 2, 2, 2, 3, 3]
    assert groups.center(S3).order == 1
    assert groups.commutator_subgroup(S3).order == 3


def test_dihedral_and_quaternion():
    D8 = groups.builtin("dihedral", 8)
    Q8 = groups.builtin("quaternion", 8)
    assert D8.order == Q8.order == 8
    assert groups.center(D8).order == groups.center(Q8).order == 2
    # D8 has five involutions, Q8 exactly one
    assert sum(D8.element_order(g) == 2 for g in range(8)) == 5
    assert sum(Q8.element_order(g) == 2 for g in range(8)) == 1


def test_builtin_parameter_validation():
    with pytest.raises(UnsupportedParameter):
        groups.builtin("dihedral", 7)
    with pytest.raises(UnsupportedParameter):
        groups.builtin("quaternion", 12)
    with pytest.raises(UnknownFamily):
        groups.builtin("sporadic", 1)
    with pytest.raises(UnsupportedParameter):
        groups.builtin("agl1", 6)


def test_parse_builtin_spec():
    G = groups.parse_builtin_spec("direct_product(quaternion(8),cyclic(2))")
    assert G.order == 16
    assert groups.parse_builtin_spec("symmetric(4)").order == 24


def test_from_cayley_table_relabels_identity():
    C2 = groups.builtin("cyclic", 2)
    # swap the roles of 0 and 1 so the identity sits at index 1
    table = [[1, 0], [0, 1]]
    G = groups.from_cayley_table(table)
    assert G.op(0, 0) == 0
    assert G.order == 2


def test_from_cayley_table_rejects_non_group():
    with pytest.raises(NotAGroup):
        groups.from_cayley_table([[0, 1], [1, 1]])  # not a Latin square
    with pytest.raises(NotAGroup):
        # Latin square with identity but not associative (order 5 quasigroup)
        groups.from_cayley_table([
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ])


def test_permutation_generators():
    S3 = groups.from_permutation_generators(3, [[1, 0, 2], [1, 2, 0]])
    assert S3.order == 6
    with pytest.raises(OrderLimitExceeded):
        big = list(range(1, 25)) + [0]
        groups.from_permutation_generators(25, [big], order_cap=10)


def test_conjugacy_classes_ordering():
    S3 = groups.builtin("symmetric", 3)
    classes = groups.conjugacy_classes(S3)
    assert classes.reps[0] == 0
    assert classes.sizes == (1, 2, 3)  # identity, 3-cycles, transpositions
    assert classes.num_classes == 3
    # inverse classes are tracked
    for m in range(classes.num_classes):
        rep = classes.reps[m]
        assert classes.class_of[S3.inverse(rep)] == classes.inverse_class[m]


def test_central_series_and_nilpotency():
    D8 = groups.builtin("dihedral", 8)
    assert groups.nilpotency_class(D8) == 2
    assert groups.nilpotency_class(groups.builtin("dihedral", 16)) == 3
    assert groups.nilpotency_class(groups.builtin("symmetric", 3)) is None
    assert groups.nilpotency_class(groups.builtin("cyclic", 12)) == 1
    assert groups.nilpotency_class(groups.builtin("cyclic", 1)) == 0


def test_quotient():
    D8 = groups.builtin("dihedral", 8)
    Z = groups.center(D8)
    Q, proj = groups.quotient(D8, Z)
    assert Q.order == 4
    assert all(proj[D8.op(a, b)] == Q.op(proj[a], proj[b])
               for a in range(8) for b in range(8))
    # D8 / Z(D8) is the Klein four-group
    assert all(Q.op(q, q) == 0 for q in range(4))


def test_camina_pair():
    Q8 = groups.builtin("quaternion", 8)
    assert groups.is_camina_pair(Q8, groups.center(Q8))
    S3 = groups.builtin("symmetric", 3)
    A3 = groups.commutator_subgroup(S3)
    assert groups.is_camina_pair(S3, A3)
    C6 = groups.builtin("cyclic", 6)
    C2 = groups.subgroup_closure(C6, [3])
    assert not groups.is_camina_pair(C6, C2)


def test_normal_subgroups():
    S3 = groups.builtin("symmetric", 3)
    orders = sorted(N.order for N in groups.normal_subgroups(S3))
    assert orders == [1, 3, 6]
    Q8 = groups.builtin("quaternion", 8)
    orders = sorted(N.order for N in groups.normal_subgroups(Q8))
    assert orders == [1, 2, 4, 4, 4, 8]


def test_subgroup_materialize():
    S3 = groups.builtin("symmetric", 3)
    A3 = groups.commutator_subgroup(S3)
    sub, to_sub, to_parent = A3.materialize()
    assert sub.order == 3
    for a in A3.members:
        for b in A3.members:
            assert to_parent[sub.op(to_sub[a], to_sub[b])] == S3.op(a, b)


def test_heisenberg_and_extraspecial():
    H = groups.builtin("heisenberg", 3)
    assert H.order == 27
    assert groups.nilpotency_class(H) == 2
    assert H.exponent() == 3
    M = groups.builtin("extraspecial_minus", 3)
    assert M.order == 27
    assert M.exponent() == 9
    assert groups.builtin("extraspecial_plus", 2).order == 8


def test_agl1():
    A4 = groups.builtin("agl1", 4)
    assert A4.order == 12
    assert groups.center(A4).order == 1
    assert groups.commutator_subgroup(A4).order == 4
    F20 = groups.builtin("agl1", 5)
    assert F20.order == 20
