"""Character tables of centralizers and projective characters.

Built-in tables cover abelian groups (by cyclic duality through a
basis) and the nonabelian order-pq family (linear rows inflated from
the cyclic quotient plus monomially induced rows of degree p); anything
else is loaded from a file and validated.  Projective characters are
ordinary rows twisted by a 1-cochain mu with d(mu) = alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cocycles import OneCochain, ThreeCocycle, TwoCocycleOnCentralizer, alpha_exponent
from .cyclotomic import Cyclotomic, root_of_unity
from .errors import CharacterTableError, PreconditionError
from .groups import FiniteGroup, abelian_basis, element_coordinates, subgroup_view

__all__ = [
    "CharacterTable",
    "ProjectiveCharacter",
    "abelian_character_table",
    "conjugated_character",
    "load_character_table",
    "pq_character_table",
]


@dataclass
class CharacterTable:
    """Rows of exact character values on a subgroup, indexed per element.

    ``subgroup`` lists member element indices of the ambient group in
    ascending order; ``rows[r][i]`` is the value of row r at
    ``subgroup[i]``.  ``row_meta`` records how each row was built, which
    the explicit-object constructor uses to recover monomial matrices.
    """

    group: FiniteGroup
    subgroup: tuple[int, ...]
    rows: list[list[Cyclotomic]]
    row_meta: list[tuple] = field(default_factory=list)

    def __post_init__(self):
        if not self.row_meta:
            self.row_meta = [("opaque",)] * len(self.rows)

    @property
    def degrees(self) -> list[int]:
        out = []
        for r, row in enumerate(self.rows):
            value = row[self.subgroup.index(0)].as_rational()
            if value is None or value <= 0 or value.denominator != 1:
                raise CharacterTableError(f"row {r} has non-positive-integer degree")
            out.append(int(value))
        return out

    def value(self, row: int, element: int) -> Cyclotomic:
        return self.rows[row][self.subgroup.index(element)]

    def validate(self):
        """Exact orthonormality and the row-count convention."""
        size = len(self.subgroup)
        view, _ = subgroup_view(self.group, self.subgroup)
        nclasses = len(view.conjugacy_classes())
        if len(self.rows) != nclasses:
            raise CharacterTableError(
                f"expected {nclasses} rows (one per class), got {len(self.rows)}"
            )
        for row in self.rows:
            if len(row) != size:
                raise CharacterTableError("row length does not match subgroup size")
        for i, chi in enumerate(self.rows):
            for j, psi in enumerate(self.rows):
                total = Cyclotomic.zero()
                for a in range(size):
                    total = total + chi[a] * psi[a].conjugate()
                expected = Cyclotomic.from_rational(size if i == j else 0)
                if total != expected:
                    raise CharacterTableError(
                        f"rows {i} and {j} are not orthonormal", witness=(i, j)
                    )
        self.degrees  # raises if any degree is invalid
        return self

    def to_json_obj(self) -> dict:
        return {
            "subgroup": list(self.subgroup),
            "rows": [[v.to_json_obj() for v in row] for row in self.rows],
        }

    @classmethod
    def from_json_obj(cls, obj: dict, group: FiniteGroup) -> "CharacterTable":
        subgroup = tuple(int(i) for i in obj["subgroup"])
        if tuple(sorted(subgroup)) != subgroup:
            raise CharacterTableError("subgroup member list must be sorted ascending")
        rows = [[Cyclotomic.from_json_obj(v) for v in row] for row in obj["rows"]]
        return cls(group, subgroup, rows)


def abelian_character_table(group: FiniteGroup, subgroup=None) -> CharacterTable:
    """All |H| linear characters of an abelian subgroup H.

    Rows are indexed by exponent tuples against the deterministic
    cyclic-factor basis, in lexicographic order; for cyclic H this is
    chi^s(c^j) = zeta_m^(s*j).
    """
    members = tuple(sorted(subgroup)) if subgroup is not None else tuple(group.elements())
    view, _ = subgroup_view(group, members)
    if not view.is_abelian:
        raise PreconditionError("abelian_character_table requires an abelian subgroup")
    basis = abelian_basis(view)
    coords = element_coordinates(view, basis)
    orders = [m for _, m in basis]
    rows: list[list[Cyclotomic]] = []
    meta: list[tuple] = []
    for flat in range(view.order):
        s = []
        rem = flat
        for m in reversed(orders):
            s.append(rem % m)
            rem //= m
        s = tuple(reversed(s))
        row = []
        for i in range(view.order):
            vec = coords[i]
            exponent_value = Cyclotomic.one()
            for mi, si, ai in zip(orders, s, vec):
                exponent_value = exponent_value * root_of_unity(mi, si * ai)
            row.append(exponent_value)
        rows.append(row)
        meta.append(("abelian", s))
    return CharacterTable(group, members, rows, meta)


def pq_character_table(group: FiniteGroup) -> CharacterTable:
    """Ordinary irreducible characters of the nonabelian order-pq group.

    p linear rows pulled back from the cyclic quotient, then (q-1)/p rows
    of degree p induced from the index-p abelian subgroup, ordered by the
    least exponent in each orbit of the twisting action.
    """
    if group.pq_params is None:
        raise PreconditionError("pq_character_table needs a group built by pq_group")
    p, q, n = group.pq_params
    members = tuple(group.elements())
    zero = Cyclotomic.zero()
    rows: list[list[Cyclotomic]] = []
    meta: list[tuple] = []
    for r in range(p):
        row = []
        for l in range(q):
            for k in range(p):
                row.append(root_of_unity(p, r * k))
        rows.append(row)
        meta.append(("linear", r))
    for s in _orbit_representatives(q, n, p):
        row = []
        for l in range(q):
            for k in range(p):
                if k != 0:
                    row.append(zero)
                elif l == 0:
                    row.append(Cyclotomic.from_rational(p))
                else:
                    total = Cyclotomic.zero()
                    for m in range(p):
                        total = total + root_of_unity(q, s * pow(n, m, q) * l)
                    row.append(total)
        rows.append(row)
        meta.append(("induced", s))
    return CharacterTable(group, members, rows, meta)


def _orbit_representatives(q: int, n: int, p: int) -> list[int]:
    """Least representatives of the orbits of <n> acting on (Z/q)^x."""
    seen = set()
    reps = []
    for s in range(1, q):
        if s in seen:
            continue
        reps.append(s)
        x = s
        for _ in range(p):
            seen.add(x)
            x = (x * n) % q
    return reps


def load_character_table(obj: dict, group: FiniteGroup) -> CharacterTable:
    table = CharacterTable.from_json_obj(obj, group)
    table.validate()
    return table


@dataclass
class ProjectiveCharacter:
    """A character row twisted into an alpha-projective character.

    ``values[i]`` is the twisted value at ``centralizer[i]``; when ``mu``
    is None the row is an ordinary (or externally supplied) character.
    """

    g: int
    centralizer: tuple[int, ...]
    values: list[Cyclotomic]
    alpha: TwoCocycleOnCentralizer
    mu: OneCochain | None = None
    source_row: int = -1
    meta: tuple = ("opaque",)

    @property
    def degree(self) -> int:
        deg = self.values[self.centralizer.index(0)].as_rational()
        if deg is None or deg.denominator != 1 or deg <= 0:
            raise CharacterTableError("projective character degree is not a positive integer")
        return int(deg)

    def value(self, element: int) -> Cyclotomic:
        return self.values[self.centralizer.index(element)]


def twist_row(
    table: CharacterTable, row: int, alpha2: TwoCocycleOnCentralizer, mu: OneCochain | None
) -> ProjectiveCharacter:
    values = list(table.rows[row])
    if mu is not None:
        values = [
            v * root_of_unity(mu.modulus, mu(c))
            for v, c in zip(values, table.subgroup)
        ]
    return ProjectiveCharacter(
        g=alpha2.g,
        centralizer=table.subgroup,
        values=values,
        alpha=alpha2,
        mu=mu,
        source_row=row,
        meta=table.row_meta[row],
    )


def conjugated_character(chi: ProjectiveCharacter, x: int, c: int) -> Cyclotomic:
    """Value at c of the character transported from the base point g to x.

    Uses the canonical conjugator f (least index with f |> g = x); the
    result is independent of that choice, which the tests exercise.
    """
    omega = chi.alpha.omega
    group = omega.group
    g = chi.g
    if group.class_of(x) != group.class_of(g):
        raise PreconditionError(f"{x} is not conjugate to the base point {g}")
    if group.conjugate(c, x) != x:
        raise PreconditionError(f"{c} does not centralize {x}")
    f = group.conjugator_from_representative(x)
    return conjugated_character_at(chi, x, c, f)


def conjugated_character_at(chi: ProjectiveCharacter, x: int, c: int, f: int) -> Cyclotomic:
    """Same as conjugated_character but with an explicit conjugator f |> g = x."""
    omega = chi.alpha.omega
    group = omega.group
    g = chi.g
    if group.conjugate(f, g) != x:
        raise PreconditionError("conjugator does not map the base point to x")
    pulled = group.conjugate(group.inv[f], c)
    exponent = alpha_exponent(omega, c, f, g) - alpha_exponent(omega, f, pulled, g)
    return root_of_unity(omega.modulus, exponent) * chi.value(pulled)
