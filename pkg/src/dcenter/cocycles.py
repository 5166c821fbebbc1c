"""3-cocycles on finite groups and the 2-cocycles they induce on centralizers.

Cocycle values are stored additively: an integer table v with modulus e
represents the scalar-valued cocycle (x, y, z) -> exp(2*pi*i*v[x,y,z]/e).
All tables are required to be normalized (zero whenever an argument is
the identity); non-normalized input is rejected, not repaired.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import (
    CoboundaryUnsolvableError,
    CocycleValidationError,
    PreconditionError,
)
from .groups import (
    FiniteGroup,
    abelian_basis,
    cyclic_group,
    element_coordinates,
    pq_group,
    subgroup_view,
)

__all__ = [
    "OneCochain",
    "ThreeCocycle",
    "TwoCocycleOnCentralizer",
    "alpha",
    "alpha_exponent",
    "inflate",
    "pq_cocycle",
    "solve_coboundary",
    "trivial_cocycle",
]


class ThreeCocycle:
    def __init__(self, group: FiniteGroup, modulus: int, values: np.ndarray, *, _validated=False):
        values = np.asarray(values, dtype=np.int64)
        n = group.order
        if values.shape != (n, n, n):
            raise CocycleValidationError(
                f"cocycle table shape {values.shape} does not match group order {n}"
            )
        if modulus < 1:
            raise CocycleValidationError(f"modulus must be positive, got {modulus}")
        self.group = group
        self.modulus = int(modulus)
        self.values = np.mod(values, modulus)
        self.values.setflags(write=False)
        if not _validated:
            violations = validate(self)
            if violations:
                raise CocycleValidationError(
                    f"not a normalized 3-cocycle, first violation at {violations[0]}",
                    witness=violations[0],
                )

    def __call__(self, x: int, y: int, z: int) -> int:
        return int(self.values[x, y, z])

    def is_trivial(self) -> bool:
        return not self.values.any()

    def to_json_obj(self) -> dict:
        return {"modulus": self.modulus, "values": self.values.reshape(-1).tolist()}

    @classmethod
    def from_json_obj(cls, obj: dict, group: FiniteGroup) -> "ThreeCocycle":
        n = group.order
        flat = np.asarray(obj["values"], dtype=np.int64)
        if flat.size != n ** 3:
            raise CocycleValidationError(
                f"expected {n ** 3} values for a group of order {n}, got {flat.size}"
            )
        return cls(group, int(obj["modulus"]), flat.reshape(n, n, n))

    def __repr__(self):
        return f"ThreeCocycle(group={self.group.name!r}, modulus={self.modulus})"


def trivial_cocycle(group: FiniteGroup, modulus: int = 1) -> ThreeCocycle:
    n = group.order
    return ThreeCocycle(group, modulus, np.zeros((n, n, n), dtype=np.int64), _validated=True)


def validate(omega: ThreeCocycle) -> list[tuple[int, int, int, int]]:
    """Check normalization and the cocycle identity; return violations (empty if ok)."""
    v = omega.values
    e = omega.modulus
    n = omega.group.order
    out: list[tuple] = []
    if v[0].any() or v[:, 0].any() or v[:, :, 0].any():
        where = np.argwhere((v != 0))
        for x, y, z in where:
            if 0 in (x, y, z):
                out.append((int(x), int(y), int(z)))
                break
        if out:
            return out
    mul = omega.group.mul
    # d(omega)(x, y, z, w) = 0, chunked over x to bound memory at n^3.
    for x in range(n):
        t_yzw = v  # omega(y, z, w)
        t_x_yz_w = v[x][mul]  # [y, z, w] -> omega(x, y z, w)
        t_xyz = v[x][:, :, None]  # omega(x, y, z), broadcast over w
        t_xy_zw = v[mul[x]]  # [y, z, w] -> omega(x y, z, w)
        t_x_y_zw = v[x][:, mul]  # [y, z, w] -> omega(x, y, z w)
        total = (t_yzw + t_x_yz_w + t_xyz - t_xy_zw - t_x_y_zw) % e
        if total.any():
            y, z, w = np.argwhere(total)[0]
            out.append((int(x), int(y), int(z), int(w)))
            return out
    return out


def alpha_exponent(omega: ThreeCocycle, x: int, y: int, base: int) -> int:
    """The obstruction 2-cochain at ``base``: additive exponent of alpha_base(x, y).

    alpha_g(x, y) = omega(x, y, g) - omega(x, y|>g, y) + omega((xy)|>g, x, y);
    defined for all x, y in G, a genuine 2-cocycle when restricted to the
    centralizer of ``base``.
    """
    group = omega.group
    v = omega.values
    t1 = v[x, y, base]
    t2 = v[x, group.conjugate(y, base), y]
    t3 = v[group.conjugate(int(group.mul[x, y]), base), x, y]
    return int(t1 - t2 + t3) % omega.modulus


class TwoCocycleOnCentralizer:
    def __init__(self, omega: ThreeCocycle, g: int):
        self.omega = omega
        self.g = int(g)
        self.centralizer = omega.group.centralizer(g)
        self.modulus = omega.modulus
        pos = {c: i for i, c in enumerate(self.centralizer)}
        k = len(self.centralizer)
        table = np.empty((k, k), dtype=np.int64)
        conj = omega.group.conj_table
        mul = omega.group.mul
        v = omega.values
        cent = np.asarray(self.centralizer, dtype=np.int64)
        # vectorized alpha over the centralizer grid (y |> g = g there)
        t1 = v[np.ix_(cent, cent)][:, :, self.g]
        t2 = v[cent[:, None], self.g, cent[None, :]]
        t3 = v[conj[mul[np.ix_(cent, cent)], self.g], cent[:, None], cent[None, :]]
        table = (t1 - t2 + t3) % self.modulus
        self._pos = pos
        self.table = table
        self.table.setflags(write=False)
        self._check_identity()

    def _check_identity(self):
        """The 2-cocycle identity on the centralizer, exhaustively."""
        t = self.table
        view, members = subgroup_view(self.omega.group, self.centralizer)
        mul = view.mul
        lhs = (t[:, :, None] + t[mul]) % self.modulus  # alpha(x,y) + alpha(xy,z)
        rhs = (t[None, :, :] + t[:, mul]) % self.modulus  # alpha(y,z) + alpha(x,yz)
        if not np.array_equal(lhs, rhs):
            x, y, z = np.argwhere((lhs - rhs) % self.modulus)[0]
            raise CocycleValidationError(
                "2-cocycle identity fails on the centralizer",
                witness=(int(members[x]), int(members[y]), int(members[z])),
            )

    def __call__(self, x: int, y: int) -> int:
        return int(self.table[self._pos[x], self._pos[y]])

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def is_zero(self) -> bool:
        return not self.table.any()


def alpha(omega: ThreeCocycle, g: int) -> TwoCocycleOnCentralizer:
    return TwoCocycleOnCentralizer(omega, g)


@dataclass(frozen=True)
class OneCochain:
    domain: tuple[int, ...]
    modulus: int
    values: dict[int, int]

    def __call__(self, x: int) -> int:
        return self.values[x]

    def coboundary(self, group_mul) -> dict[tuple[int, int], int]:
        out = {}
        for x in self.domain:
            for y in self.domain:
                xy = int(group_mul[x, y])
                out[(x, y)] = (self.values[x] + self.values[y] - self.values[xy]) % self.modulus
        return out


def zero_cochain(domain, modulus: int) -> OneCochain:
    return OneCochain(tuple(domain), modulus, {int(x): 0 for x in domain})


def solve_coboundary(alpha2: TwoCocycleOnCentralizer) -> OneCochain:
    """Find mu with d(mu) = alpha on an abelian centralizer.

    Works for the cohomologically trivial (symmetric) case: tries the
    original modulus e first, then e*|H| where every symmetric class
    dies.  The construction goes through a cyclic-factor basis, solving
    each factor by partial sums and gluing with the mixed cocycle values;
    the result is verified exhaustively before being returned.
    """
    group = alpha2.omega.group
    members = alpha2.centralizer
    view, _ = subgroup_view(group, members)
    if not view.is_abelian:
        raise PreconditionError("solve_coboundary requires an abelian centralizer")
    if not alpha2.is_symmetric():
        raise CoboundaryUnsolvableError(
            f"alpha at base element {alpha2.g} is not symmetric; "
            "projective character data must be supplied externally"
        )
    e = alpha2.modulus
    size = len(members)
    for scale in (1, size):
        e2 = e * scale
        mu = _solve_at_modulus(view, alpha2.table * scale, e2)
        if mu is None:
            continue
        values = {members[i]: int(mu[i]) % e2 for i in range(size)}
        candidate = OneCochain(tuple(members), e2, values)
        if _coboundary_matches(view, members, mu, alpha2.table * scale, e2):
            return candidate
    raise CoboundaryUnsolvableError(
        f"no trivializing 1-cochain at modulus {e * size} for base element {alpha2.g}"
    )


def _coboundary_matches(view, members, mu, table, e2) -> bool:
    k = view.order
    d = (mu[:, None] + mu[None, :] - mu[view.mul]) % e2
    return bool(np.array_equal(d, table % e2))


def _solve_at_modulus(view: FiniteGroup, table: np.ndarray, e2: int):
    """Assemble mu from cyclic factors; None if a factor has no solution."""
    basis = abelian_basis(view)
    coords = element_coordinates(view, basis)
    k = view.order
    mu = np.zeros(k, dtype=np.int64)
    # per-factor cyclic solutions
    factor_mu: list[dict[int, int]] = []
    for gen, order in basis:
        partial = 0
        sums = [0]
        x = 0
        for _ in range(order - 1):
            partial += int(table[x, gen])
            sums.append(partial)
            x = int(view.mul[x, gen])
        norm = (partial + int(table[x, gen])) % e2
        w = _solve_linear_congruence(order, norm, e2)
        if w is None:
            return None
        factor_mu.append({j: (j * w - sums[j]) % e2 for j in range(order)})
    # glue: mu(f1 * rest) = mu1(f1) + mu(rest) - alpha(f1, rest), peeled
    # factor by factor.
    for g in view.elements():
        vec = coords[g]
        total = 0
        rem = g
        for i, (gen, _order) in enumerate(basis):
            fi = view.power(gen, vec[i])
            tail = int(view.mul[view.inv[fi], rem])
            total = (total + factor_mu[i][vec[i]] - int(table[fi, tail])) % e2
            rem = tail
        mu[g] = total % e2
    return mu


def _solve_linear_congruence(a: int, b: int, m: int):
    """Least x >= 0 with a*x = b (mod m), or None."""
    g = gcd(a, m)
    if b % g:
        return None
    a, b, m = a // g, b // g, m // g
    return (b * pow(a, -1, m)) % m if m > 1 else 0


def inflate(omega_quotient: ThreeCocycle, group: FiniteGroup, projection) -> ThreeCocycle:
    """Pull a cocycle on a quotient back along a surjective homomorphism.

    ``projection`` maps each element index of ``group`` to an element
    index of the quotient group.
    """
    proj = np.asarray(projection, dtype=np.int64)
    quotient = omega_quotient.group
    if proj.shape != (group.order,):
        raise PreconditionError("projection must assign one image per group element")
    if set(int(i) for i in proj) != set(range(quotient.order)):
        raise PreconditionError("projection is not surjective")
    expected = quotient.mul[proj[:, None], proj[None, :]]
    actual = proj[group.mul]
    if not np.array_equal(expected, actual):
        a, b = np.argwhere(expected != actual)[0]
        raise PreconditionError(
            f"projection is not a homomorphism at ({int(a)}, {int(b)})"
        )
    values = omega_quotient.values[np.ix_(proj, proj, proj)]
    return ThreeCocycle(group, omega_quotient.modulus, values, _validated=True)


def pq_cocycle(p: int, q: int, u: int, group: FiniteGroup | None = None) -> ThreeCocycle:
    """The u-th power of the generating cocycle on the order-pq group.

    On the cyclic quotient of order p the exponent at (b^i, b^j, b^k) is
    u * [i] * ([j] + [k] - [j+k]) at modulus p^2; the table is inflated
    to the full group through a^l b^k -> b^k.
    """
    if not 0 <= u < p:
        raise PreconditionError(f"u must lie in 0..{p - 1}, got {u}")
    if group is None:
        group = pq_group(p, q)
    elif group.pq_params is None or group.pq_params[:2] != (p, q):
        raise PreconditionError("supplied group was not built for these parameters")
    base = cyclic_group(p)
    reps = np.arange(p, dtype=np.int64)
    i = reps[:, None, None]
    j = reps[None, :, None]
    k = reps[None, None, :]
    values = (u * i * (j + k - (j + k) % p)) % (p * p)
    quotient_cocycle = ThreeCocycle(base, p * p, values, _validated=True)
    projection = [idx % p for idx in range(group.order)]  # index(a^l b^k) = l*p + k
    inflated = inflate(quotient_cocycle, group, projection)
    violations = validate(inflated)
    if violations:
        raise CocycleValidationError(
            f"pq cocycle failed validation at {violations[0]}", witness=violations[0]
        )
    return inflated
