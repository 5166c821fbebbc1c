import numpy as np
import pytest

from dcenter.cocycles import (
    ThreeCocycle,
    TwoCocycleOnCentralizer,
    alpha,
    alpha_exponent,
    inflate,
    pq_cocycle,
    solve_coboundary,
    trivial_cocycle,
    validate,
)
from dcenter.errors import (
    CoboundaryUnsolvableError,
    CocycleValidationError,
    PreconditionError,
)
from dcenter.groups import cyclic_group, pq_group


@pytest.fixture(scope="module")
def pq37():
    return pq_group(3, 7)


def test_trivial_cocycle_validates(s3):
    assert validate(trivial_cocycle(s3)) == []


def test_pq_cocycle_validates(pq37):
    omega = pq_cocycle(3, 7, 1, pq37)
    assert omega.modulus == 9
    assert validate(omega) == []


def test_perturbed_table_reports_violation(pq37):
    omega = pq_cocycle(3, 7, 1, pq37)
    values = omega.values.copy()
    values[5, 4, 8] = (values[5, 4, 8] + 1) % 9
    with pytest.raises(CocycleValidationError) as err:
        ThreeCocycle(pq37, 9, values)
    assert err.value.witness is not None


def test_non_normalized_rejected(s3):
    n = s3.order
    values = np.zeros((n, n, n), dtype=np.int64)
    values[0, 1, 1] = 1
    with pytest.raises(CocycleValidationError):
        ThreeCocycle(s3, 2, values)


def test_pq_cocycle_values():
    omega = pq_cocycle(3, 7, 1)
    b, b2 = 1, 2  # indices of b and b^2
    assert omega(b, b, b2) == 3
    assert omega(b, b, b) == 0


def test_pq_cocycle_additivity():
    g = pq_group(3, 7)
    tables = {u: pq_cocycle(3, 7, u, g).values for u in range(3)}
    for u in range(3):
        for v in range(3):
            expected = (tables[u] + tables[v]) % 9
            assert np.array_equal(expected, tables[(u + v) % 3])


def test_pq_cocycle_u_range():
    with pytest.raises(PreconditionError):
        pq_cocycle(3, 7, 3)


def test_alpha_trivial_for_trivial_cocycle(s3):
    omega = trivial_cocycle(s3)
    for g in s3.elements():
        assert alpha(omega, g).is_zero()


def test_alpha_identity_base_is_zero(pq37):
    omega = pq_cocycle(3, 7, 2, pq37)
    assert alpha(omega, 0).is_zero()


def test_alpha_vanishes_on_a_power_classes(pq37):
    # base elements a^l have alpha identically zero in this family
    omega = pq_cocycle(3, 7, 1, pq37)
    for l in range(1, 7):
        assert alpha(omega, l * 3).is_zero()


def test_alpha_on_b_matches_explicit_formula(pq37):
    # alpha_{b^k}(b^i, b^j) = u*k*(i + j - (i+j mod p)) at modulus p^2
    p, u = 3, 1
    omega = pq_cocycle(3, 7, u, pq37)
    for k in (1, 2):
        a = alpha(omega, k)
        for i in range(p):
            for j in range(p):
                expected = (u * k * (i + j - (i + j) % p)) % 9
                assert a(i, j) == expected


def test_alpha_two_cocycle_identity_exhaustive(pq37, s3, klein):
    for group, (p, q, u) in [(pq37, (3, 7, 1)), (pq37, (3, 7, 2))]:
        omega = pq_cocycle(p, q, u, group)
        for cls in group.conjugacy_classes():
            TwoCocycleOnCentralizer(omega, cls.representative)  # raises on failure
    # trivial cocycles on the small test groups
    for group in (s3, klein):
        omega = trivial_cocycle(group)
        for cls in group.conjugacy_classes():
            TwoCocycleOnCentralizer(omega, cls.representative)


def test_solve_coboundary_zero(klein):
    omega = trivial_cocycle(klein)
    mu = solve_coboundary(alpha(omega, 0))
    assert all(v == 0 for v in mu.values.values())


def test_solve_coboundary_pq_b_class():
    # mu(b^m) = u*k*m mod p^2 reproduces the twisting cochain
    omega = pq_cocycle(3, 7, 1)
    a = alpha(omega, 1)  # base b, centralizer <b> = {0, 1, 2}
    mu = solve_coboundary(a)
    assert mu.modulus == 9
    assert [mu(m) for m in range(3)] == [0, 1, 2]
    d = mu.coboundary(omega.group.mul)
    for x in range(3):
        for y in range(3):
            assert d[(x, y)] % 9 == a(x, y)


def test_solve_coboundary_extends_modulus():
    # Z/2 with alpha(x, x) = 1 mod 2 has no solution mod 2; mod 4 it does,
    # with mu(x) an odd multiple of 1/2 turn, i.e. odd at modulus 4.
    z2 = cyclic_group(2)
    omega = trivial_cocycle(z2, modulus=2)
    a = alpha(omega, 0)
    a.table = np.array([[0, 0], [0, 1]], dtype=np.int64)  # nontrivial at mod 2
    mu = solve_coboundary(a)
    assert mu.modulus == 4
    assert mu(0) == 0
    assert mu(1) % 2 == 1
    d = (mu(1) + mu(1) - mu(0)) % 4
    assert d == 2  # the lift of alpha(x, x) = 1 mod 2 to modulus 4


def test_solve_coboundary_rejects_nonsymmetric(klein):
    omega = trivial_cocycle(klein, modulus=2)
    a = alpha(omega, 0)
    table = np.zeros((4, 4), dtype=np.int64)
    table[1, 2] = 1  # asymmetric
    a.table = table
    with pytest.raises(CoboundaryUnsolvableError):
        solve_coboundary(a)


def test_d_solve_is_exact_exhaustive(klein):
    # random symmetric coboundaries on the Klein group round-trip exactly
    rng = np.random.default_rng(7)
    omega = trivial_cocycle(klein, modulus=6)
    base = alpha(omega, 0)
    for _ in range(10):
        nu = rng.integers(0, 6, size=4)
        nu[0] = 0
        table = np.empty((4, 4), dtype=np.int64)
        for x in range(4):
            for y in range(4):
                table[x, y] = (nu[x] + nu[y] - nu[x ^ y]) % 6
        base.table = table
        mu = solve_coboundary(base)
        for x in range(4):
            for y in range(4):
                d = (mu(x) + mu(y) - mu(x ^ y)) % mu.modulus
                scale = mu.modulus // 6
                assert d == (table[x, y] * scale) % mu.modulus


def test_inflate_identity_projection(pq37):
    omega = pq_cocycle(3, 7, 1, pq37)
    again = inflate(omega, pq37, list(range(21)))
    assert np.array_equal(again.values, omega.values)


def test_inflate_reproduces_pq_cocycle(pq37):
    p, q, u = 3, 7, 2
    base = cyclic_group(p)
    reps = np.arange(p)
    values = (
        u * reps[:, None, None] * (reps[None, :, None] + reps[None, None, :]
                                   - (reps[None, :, None] + reps[None, None, :]) % p)
    ) % (p * p)
    quotient = ThreeCocycle(base, p * p, values)
    projection = [i % p for i in range(21)]
    inflated = inflate(quotient, pq37, projection)
    assert np.array_equal(inflated.values, pq_cocycle(p, q, u, pq37).values)


def test_inflate_rejects_non_homomorphism(pq37):
    base = cyclic_group(3)
    quotient = trivial_cocycle(base)
    projection = [0] * 20 + [1]
    with pytest.raises(PreconditionError):
        inflate(quotient, pq37, projection)


def test_alpha_exponent_identity_relation(pq37):
    # alpha_{f|>g}(f, f^-1) = alpha_g(f^-1, f), a consequence of the
    # cocycle identity used by the inverse braiding.
    omega = pq_cocycle(3, 7, 1, pq37)
    g_table = pq37
    for f in g_table.elements():
        for g in g_table.elements():
            lhs = alpha_exponent(omega, f, g_table.inv[f], g_table.conjugate(f, g))
            rhs = alpha_exponent(omega, g_table.inv[f], f, g)
            assert lhs == rhs


def test_json_roundtrip(pq37):
    omega = pq_cocycle(3, 7, 1, pq37)
    again = ThreeCocycle.from_json_obj(omega.to_json_obj(), pq37)
    assert np.array_equal(again.values, omega.values)
    assert again.modulus == omega.modulus
