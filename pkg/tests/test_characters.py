from fractions import Fraction

import pytest

from dcenter.characters import (
    CharacterTable,
    abelian_character_table,
    conjugated_character,
    conjugated_character_at,
    load_character_table,
    pq_character_table,
    twist_row,
)
from dcenter.cocycles import alpha, pq_cocycle, solve_coboundary, trivial_cocycle
from dcenter.cyclotomic import Cyclotomic, root_of_unity
from dcenter.errors import CharacterTableError, PreconditionError
from dcenter.groups import cyclic_group, pq_group

from conftest import S3_PERMS, s3_parity


@pytest.fixture(scope="module")
def pq37():
    return pq_group(3, 7)


def s3_table_rows(group):
    """Hand-written character table of S3: trivial, sign, standard."""
    one = Cyclotomic.one()
    trivial = [one] * 6
    sign = [Cyclotomic.from_rational(1 - 2 * s3_parity(i)) for i in range(6)]
    standard = []
    for i in range(6):
        perm = S3_PERMS[i]
        fixed = sum(1 for k in range(3) if perm[k] == k)
        standard.append(Cyclotomic.from_rational(fixed - 1))
    return [trivial, sign, standard]


def test_trivial_group_table():
    g = cyclic_group(1)
    table = abelian_character_table(g)
    assert len(table.rows) == 1
    assert table.rows[0][0] == Cyclotomic.one()


def test_cyclic_three_duality():
    g = cyclic_group(3)
    table = abelian_character_table(g).validate()
    for s in range(3):
        for j in range(3):
            assert table.rows[s][j] == root_of_unity(3, s * j)


def test_klein_table(klein):
    table = abelian_character_table(klein).validate()
    assert len(table.rows) == 4
    for row in table.rows:
        for v in row:
            assert v == Cyclotomic.from_rational(1) or v == Cyclotomic.from_rational(-1)


def test_abelian_rejects_nonabelian(s3):
    with pytest.raises(PreconditionError):
        abelian_character_table(s3)


def test_pq_table_3_7(pq37):
    table = pq_character_table(pq37).validate()
    assert sorted(table.degrees) == [1, 1, 1, 3, 3]
    assert sum(d * d for d in table.degrees) == 21


def test_pq_table_degree3_value_at_a(pq37):
    table = pq_character_table(pq37)
    # first induced row has s = 1; at a (index 3) the value is
    # zeta7 + zeta7^2 + zeta7^4
    row = table.rows[3]
    expected = root_of_unity(7, 1) + root_of_unity(7, 2) + root_of_unity(7, 4)
    assert row[3] == expected
    assert table.row_meta[3] == ("induced", 1)


def test_pq_table_5_11():
    g = pq_group(5, 11)
    table = pq_character_table(g).validate()
    assert sorted(table.degrees) == [1, 1, 1, 1, 1, 5, 5]
    assert sum(d * d for d in table.degrees) == 55


def test_load_roundtrip():
    g = cyclic_group(3)
    table = abelian_character_table(g)
    again = load_character_table(table.to_json_obj(), g)
    assert again.subgroup == table.subgroup
    for r in range(3):
        for j in range(3):
            assert again.rows[r][j] == table.rows[r][j]


def test_load_accepts_handwritten_s3(s3):
    table = CharacterTable(s3, tuple(range(6)), s3_table_rows(s3))
    obj = table.to_json_obj()
    loaded = load_character_table(obj, s3)
    assert sorted(loaded.degrees) == [1, 1, 2]


def test_load_rejects_duplicate_row(s3):
    rows = s3_table_rows(s3)
    rows[2] = list(rows[0])
    obj = CharacterTable(s3, tuple(range(6)), rows).to_json_obj()
    with pytest.raises(CharacterTableError):
        load_character_table(obj, s3)


def test_conjugated_character_at_base_point_is_identity(pq37):
    omega = pq_cocycle(3, 7, 1, pq37)
    a = alpha(omega, 1)
    table = abelian_character_table(pq37, pq37.centralizer(1))
    mu = solve_coboundary(a)
    chi = twist_row(table, 1, a, mu)
    for c in chi.centralizer:
        assert conjugated_character(chi, 1, c) == chi.value(c)


def test_conjugated_character_trivial_cocycle(pq37):
    omega = trivial_cocycle(pq37)
    a_elem = 3
    a = alpha(omega, a_elem)
    table = abelian_character_table(pq37, pq37.centralizer(a_elem))
    chi = twist_row(table, 1, a, None)  # chi_q^1 row: chi(a^j) = zeta7^j
    # x = a^2 = b |> a, c = a: chi^(x)(a) = chi(b^-1 |> a) = chi(a^4) = zeta7^4
    x = pq37.conjugate(1, a_elem)
    value = conjugated_character(chi, x, a_elem)
    assert value == root_of_unity(7, 4)


def test_conjugator_independence_exhaustive(pq37):
    for u in range(3):
        omega = pq_cocycle(3, 7, u, pq37)
        for cls in pq37.conjugacy_classes():
            g = cls.representative
            a = alpha(omega, g)
            table = abelian_character_table(pq37, pq37.centralizer(g)) if len(
                pq37.centralizer(g)
            ) < 21 else pq_character_table(pq37)
            mu = solve_coboundary(a) if not a.is_zero() else None
            chi = twist_row(table, min(1, len(table.rows) - 1), a, mu)
            for x in cls.members:
                rows = []
                for f in pq37.elements():
                    if pq37.conjugate(f, g) != x:
                        continue
                    rows.append(
                        [conjugated_character_at(chi, x, c, f) for c in pq37.centralizer(x)]
                    )
                first = rows[0]
                for other in rows[1:]:
                    assert all(u1 == u2 for u1, u2 in zip(first, other))


def test_projective_degree_positive(pq37):
    omega = pq_cocycle(3, 7, 2, pq37)
    a = alpha(omega, 1)
    table = abelian_character_table(pq37, pq37.centralizer(1))
    mu = solve_coboundary(a)
    for r in range(len(table.rows)):
        chi = twist_row(table, r, a, mu)
        assert chi.degree == 1
