import numpy as np
import pytest

from dcenter.errors import GroupValidationError, PreconditionError
from dcenter.groups import (
    FiniteGroup,
    abelian_basis,
    cyclic_group,
    element_coordinates,
    pq_group,
    subgroup_view,
)


def test_trivial_group():
    g = FiniteGroup.from_multiplication_table([[0]], "1")
    assert g.order == 1
    assert len(g.conjugacy_classes()) == 1


def test_cyclic_three():
    g = cyclic_group(3)
    assert g.order == 3
    assert all(len(c.members) == 1 for c in g.conjugacy_classes())
    assert g.inv[1] == 2


def test_s3_classes(s3):
    sizes = sorted(len(c.members) for c in s3.conjugacy_classes())
    assert sizes == [1, 2, 3]


def test_validation_rejects_bad_tables():
    with pytest.raises(GroupValidationError):
        FiniteGroup.from_multiplication_table([[1, 0], [0, 1]])  # 0 not identity
    with pytest.raises(GroupValidationError):
        FiniteGroup.from_multiplication_table([[0, 1], [1, 5]])  # out of range
    # non-associative magma with identity and two-sided inverses
    bad = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupValidationError) as err:
        FiniteGroup.from_multiplication_table(bad)
    assert "associativity" in str(err.value)
    assert err.value.witness is not None


def test_pq_group_3_7():
    g = pq_group(3, 7)
    assert g.order == 21
    assert g.pq_params == (3, 7, 2)
    # b |> a = a^2: a has index 1*3 = 3, b index 1, a^2 index 6
    assert g.conjugate(1, 3) == 6


def test_pq_group_5_11():
    g = pq_group(5, 11)
    assert g.order == 55
    assert g.pq_params == (5, 11, 3)


def test_pq_group_rejects_bad_parameters():
    with pytest.raises(PreconditionError):
        pq_group(3, 5)
    with pytest.raises(PreconditionError):
        pq_group(2, 7)
    with pytest.raises(PreconditionError):
        pq_group(3, 9)


def test_pq_relations():
    p, q = 3, 7
    g = pq_group(p, q)
    a, b = p, 1  # indices of a = a^1 b^0 and b = a^0 b^1
    assert g.power(a, q) == 0
    assert g.power(b, p) == 0
    n = g.pq_params[2]
    assert g.conjugate(b, a) == g.power(a, n)


def test_pq_commutators():
    g = pq_group(3, 7)
    a, b = 3, 1
    # [a, b] = a^(1-n) = a^6 for n = 2
    assert g.commutator(a, b) == g.power(a, 6)
    # [b, a] = a^(n-1) = a
    assert g.commutator(b, a) == a


def test_commutator_inverse_identity(s3):
    for g in s3.elements():
        for h in s3.elements():
            assert s3.inv[s3.commutator(g, h)] == s3.commutator(h, g)


def test_identity_conjugation(s3):
    for h in s3.elements():
        assert s3.conjugate(0, h) == h


def test_s3_conjugating_three_cycle_gives_inverse(s3):
    # index 3 is a 3-cycle, index 1 a transposition
    three_cycle = 3
    transposition = 1
    assert s3.conjugate(transposition, three_cycle) == s3.inv[three_cycle]


@pytest.mark.parametrize("p,q,expected_sizes", [(3, 7, [1, 3, 3, 7, 7]), (5, 11, [1, 5, 5, 11, 11, 11, 11])])
def test_pq_class_structure(p, q, expected_sizes):
    g = pq_group(p, q)
    sizes = sorted(len(c.members) for c in g.conjugacy_classes())
    assert sizes == sorted(expected_sizes)


def test_class_centralizer_product(s3):
    for g in s3.elements():
        cls = s3.conjugacy_classes()[s3.class_of(g)]
        assert len(cls.members) * len(s3.centralizer(g)) == s3.order


def test_conjugation_stays_in_class():
    g = pq_group(3, 7)
    for f in g.elements():
        for h in g.elements():
            assert g.class_of(g.conjugate(f, h)) == g.class_of(h)


def test_abelian_centralizers_are_whole_group(klein):
    for g in klein.elements():
        assert klein.centralizer(g) == tuple(klein.elements())


def test_conjugator_from_representative():
    g = pq_group(3, 7)
    for x in g.elements():
        rep = g.class_representative(x)
        f = g.conjugator_from_representative(x)
        assert g.conjugate(f, rep) == x
        # minimality
        for smaller in range(f):
            assert g.conjugate(smaller, rep) != x


def test_abelian_basis_cyclic():
    g = cyclic_group(12)
    basis = abelian_basis(g)
    total = 1
    for gen, order in basis:
        assert g.element_order(gen) == order
        total *= order
    assert total == 12


def test_abelian_basis_klein(klein):
    basis = abelian_basis(klein)
    assert sorted(order for _, order in basis) == [2, 2]
    coords = element_coordinates(klein, basis)
    assert len(set(coords.values())) == 4


def test_subgroup_view():
    g = pq_group(3, 7)
    centralizer = g.centralizer(1)  # C(b) = <b>
    view, members = subgroup_view(g, centralizer)
    assert view.order == 3
    assert members == (0, 1, 2)


def test_json_roundtrip(s3):
    again = FiniteGroup.from_json_obj(s3.to_json_obj())
    assert np.array_equal(again.mul, s3.mul)
    assert again.name == s3.name
