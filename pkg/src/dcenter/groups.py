"""Finite groups as multiplication tables.

Elements are integers 0..n-1 with 0 the identity.  All derived
structure (inverses, conjugacy classes, centralizers, canonical
conjugators) is computed once and cached; instances are immutable
after construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import GroupValidationError, PreconditionError

__all__ = [
    "ConjugacyClassInfo",
    "FiniteGroup",
    "abelian_basis",
    "cyclic_group",
    "pq_group",
    "subgroup_view",
]


@dataclass(frozen=True)
class ConjugacyClassInfo:
    representative: int
    members: tuple[int, ...]


class FiniteGroup:
    def __init__(self, mul: np.ndarray, name: str = "G", *, _validated: bool = False):
        mul = np.asarray(mul, dtype=np.int64)
        if not _validated:
            _validate_table(mul)
        self.mul = mul
        self.mul.setflags(write=False)
        self.order = int(mul.shape[0])
        self.name = name
        self.inv = self._compute_inverses()
        self.pq_params: tuple[int, int, int] | None = None
        self._conj: np.ndarray | None = None
        self._comm: np.ndarray | None = None
        self._classes: list[ConjugacyClassInfo] | None = None
        self._class_of: np.ndarray | None = None
        self._conjugator: np.ndarray | None = None
        self._centralizers: dict[int, tuple[int, ...]] = {}
        self._is_abelian: bool | None = None

    @classmethod
    def from_multiplication_table(cls, table, name: str = "G") -> "FiniteGroup":
        return cls(table, name)

    def _compute_inverses(self) -> np.ndarray:
        rows, cols = np.nonzero(self.mul == 0)
        inv = np.empty(self.order, dtype=np.int64)
        inv[rows] = cols
        inv.setflags(write=False)
        return inv

    # -- basic operations ---------------------------------------------------

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def conjugate(self, g: int, h: int) -> int:
        """g |> h = g h g^-1."""
        return int(self.mul[self.mul[g, h], self.inv[g]])

    def commutator(self, g: int, h: int) -> int:
        """[g, h] = g h g^-1 h^-1."""
        return int(self.mul[self.conjugate(g, h), self.inv[h]])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv[g], -k)
        out = 0
        base = g
        while k:
            if k & 1:
                out = int(self.mul[out, base])
            base = int(self.mul[base, base])
            k >>= 1
        return out

    def element_order(self, g: int) -> int:
        order = 1
        x = g
        while x != 0:
            x = int(self.mul[x, g])
            order += 1
        return order

    @property
    def is_abelian(self) -> bool:
        if self._is_abelian is None:
            self._is_abelian = bool(np.array_equal(self.mul, self.mul.T))
        return self._is_abelian

    @property
    def exponent(self) -> int:
        out = 1
        for g in self.elements():
            o = self.element_order(g)
            out = out * o // gcd(out, o)
        return out

    # -- derived conjugation structure ---------------------------------------

    @property
    def conj_table(self) -> np.ndarray:
        """conj_table[f, g] = f g f^-1."""
        if self._conj is None:
            f = np.arange(self.order)[:, None]
            g = np.arange(self.order)[None, :]
            conj = self.mul[self.mul[f, g], self.inv[f]]
            conj.setflags(write=False)
            self._conj = conj
        return self._conj

    @property
    def comm_table(self) -> np.ndarray:
        """comm_table[g, h] = [g, h]."""
        if self._comm is None:
            h = np.arange(self.order)[None, :]
            comm = self.mul[self.conj_table, self.inv[h]]
            comm.setflags(write=False)
            self._comm = comm
        return self._comm

    def _ensure_classes(self):
        if self._classes is not None:
            return
        conj = self.conj_table
        class_of = np.full(self.order, -1, dtype=np.int64)
        classes: list[ConjugacyClassInfo] = []
        conjugator = np.zeros(self.order, dtype=np.int64)
        for g in range(self.order):
            if class_of[g] >= 0:
                continue
            members = np.unique(conj[:, g])
            idx = len(classes)
            class_of[members] = idx
            rep = int(members[0])  # members are sorted; least index is the rep
            for x in members:
                # least f with f |> rep = x, deterministic across runs
                conjugator[x] = int(np.nonzero(conj[:, rep] == x)[0][0])
            classes.append(ConjugacyClassInfo(rep, tuple(int(m) for m in members)))
        self._classes = classes
        class_of.setflags(write=False)
        conjugator.setflags(write=False)
        self._class_of = class_of
        self._conjugator = conjugator

    def conjugacy_classes(self) -> list[ConjugacyClassInfo]:
        self._ensure_classes()
        return list(self._classes)

    def class_of(self, g: int) -> int:
        self._ensure_classes()
        return int(self._class_of[g])

    def class_representative(self, g: int) -> int:
        return self.conjugacy_classes()[self.class_of(g)].representative

    def conjugator_from_representative(self, x: int) -> int:
        """The least f with f |> rep(class(x)) = x."""
        self._ensure_classes()
        return int(self._conjugator[x])

    def centralizer(self, g: int) -> tuple[int, ...]:
        cached = self._centralizers.get(g)
        if cached is None:
            mask = self.conj_table[:, g] == g
            cached = tuple(int(i) for i in np.nonzero(mask)[0])
            self._centralizers[g] = cached
        return cached

    def subgroup_closure(self, seed) -> tuple[int, ...]:
        members = {0}
        frontier = set(int(s) for s in seed) | {0}
        members |= frontier
        while frontier:
            new = set()
            for a in list(members):
                for b in frontier:
                    c = int(self.mul[a, b])
                    if c not in members:
                        new.add(c)
                    c = int(self.mul[b, a])
                    if c not in members:
                        new.add(c)
            members |= new
            frontier = new
        return tuple(sorted(members))

    # -- serialization -------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "mul": self.mul.tolist(),
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FiniteGroup":
        table = obj["mul"]
        if len(table) != int(obj["order"]):
            raise GroupValidationError(
                f"declared order {obj['order']} does not match table size {len(table)}"
            )
        return cls(table, str(obj.get("name", "G")))

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


def _validate_table(mul: np.ndarray):
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
        raise GroupValidationError(f"multiplication table must be square, got shape {mul.shape}")
    n = mul.shape[0]
    if n == 0:
        raise GroupValidationError("empty multiplication table")
    if mul.min() < 0 or mul.max() >= n:
        bad = np.argwhere((mul < 0) | (mul >= n))[0]
        raise GroupValidationError(
            f"table entry out of range at {tuple(bad)}", witness=tuple(int(v) for v in bad)
        )
    idx = np.arange(n)
    if not np.array_equal(mul[0], idx) or not np.array_equal(mul[:, 0], idx):
        raise GroupValidationError("element 0 does not act as the identity")
    for axis, kind in ((1, "row"), (0, "column")):
        sorted_lines = np.sort(mul, axis=axis)
        ok = (sorted_lines == idx[None, :] if axis == 1 else sorted_lines == idx[:, None]).all()
        if not ok:
            line = int(np.nonzero(
                ~(np.sort(mul, axis=axis) == (idx[None, :] if axis == 1 else idx[:, None])).all(
                    axis=axis
                )
            )[0][0])
            raise GroupValidationError(f"{kind} {line} is not a permutation", witness=(line,))
    if not (mul == 0).any(axis=1).all():
        g = int(np.nonzero(~(mul == 0).any(axis=1))[0][0])
        raise GroupValidationError(f"element {g} has no inverse", witness=(g,))
    # Associativity, chunked over the first index to bound memory.
    for a in range(n):
        lhs = mul[mul[a], :]          # (n, n): (a*b)*c
        rhs = mul[a, mul]             # (n, n): a*(b*c)
        if not np.array_equal(lhs, rhs):
            b, c = np.argwhere(lhs != rhs)[0]
            raise GroupValidationError(
                f"associativity fails at ({a}, {int(b)}, {int(c)})",
                witness=(a, int(b), int(c)),
            )


def cyclic_group(n: int, name: str | None = None) -> FiniteGroup:
    if n < 1:
        raise PreconditionError(f"cyclic group order must be positive, got {n}")
    idx = np.arange(n)
    mul = (idx[:, None] + idx[None, :]) % n
    return FiniteGroup(mul, name or f"Z{n}", _validated=True)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def pq_group(p: int, q: int) -> FiniteGroup:
    """The nonabelian group of order p*q, for odd primes with p | q-1.

    Presentation <a, b | a^q = b^p = 1, b a b^-1 = a^n> with n the least
    integer > 1 such that n^p = 1 (mod q); elements are enumerated as
    a^l b^k in lexicographic (l, k) order, so index(a^l b^k) = l*p + k.
    """
    if not (_is_prime(p) and _is_prime(q)) or p % 2 == 0 or q % 2 == 0:
        raise PreconditionError(f"p and q must be odd primes, got p={p}, q={q}")
    if (q - 1) % p != 0:
        raise PreconditionError(f"p must divide q-1, got p={p}, q={q}")
    n = None
    for candidate in range(2, q):
        if pow(candidate, p, q) == 1:
            n = candidate
            break
    if n is None:  # impossible when the preconditions hold
        raise PreconditionError(f"no twisting exponent found for p={p}, q={q}")
    order = p * q
    mul = np.empty((order, order), dtype=np.int64)
    npow = [pow(n, k, q) for k in range(p)]
    for l1 in range(q):
        for k1 in range(p):
            i = l1 * p + k1
            for l2 in range(q):
                for k2 in range(p):
                    # (a^l1 b^k1)(a^l2 b^k2) = a^(l1 + n^k1 l2) b^(k1+k2)
                    l3 = (l1 + npow[k1] * l2) % q
                    k3 = (k1 + k2) % p
                    mul[i, l2 * p + k2] = l3 * p + k3
    group = FiniteGroup(mul, f"pq({p},{q})", _validated=True)
    group.pq_params = (p, q, n)
    return group


def subgroup_view(parent: FiniteGroup, elems) -> tuple[FiniteGroup, tuple[int, ...]]:
    """A subgroup as its own FiniteGroup plus the member list in parent labels.

    Members are sorted ascending; the identity must be present, so it
    maps to index 0 in the view.
    """
    members = tuple(sorted(int(e) for e in elems))
    if not members or members[0] != 0:
        raise PreconditionError("subgroup must contain the identity")
    pos = {g: i for i, g in enumerate(members)}
    k = len(members)
    mul = np.empty((k, k), dtype=np.int64)
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            c = int(parent.mul[a, b])
            if c not in pos:
                raise PreconditionError(f"element set is not closed: {a}*{b} = {c}")
            mul[i, j] = pos[c]
    return FiniteGroup(mul, f"{parent.name}|sub{k}", _validated=True), members


def abelian_basis(group: FiniteGroup) -> list[tuple[int, int]]:
    """A cyclic-factor basis [(g_i, m_i)] of an abelian group.

    Every element factors uniquely as a product of powers of the g_i
    (orders m_i).  The basis is deterministic: primary components in
    ascending prime order, generators chosen greedily by (max order,
    least index).
    """
    if not group.is_abelian:
        raise PreconditionError("abelian_basis requires an abelian group")
    if group.order == 1:
        return []
    primes = sorted({f for f in _prime_factors(group.order)})
    basis: list[tuple[int, int]] = []
    for prime in primes:
        component = tuple(
            g for g in group.elements() if _is_prime_power_order(group, g, prime)
        )
        view, members = subgroup_view(group, component)
        for local_gen, order in _pgroup_basis(view):
            basis.append((members[local_gen], order))
    return basis


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_prime_power_order(group: FiniteGroup, g: int, prime: int) -> bool:
    order = group.element_order(g)
    while order % prime == 0:
        order //= prime
    return order == 1


def _pgroup_basis(group: FiniteGroup) -> list[tuple[int, int]]:
    if group.order == 1:
        return []
    orders = [group.element_order(g) for g in group.elements()]
    max_order = max(orders)
    x = orders.index(max_order)
    cyclic = group.subgroup_closure([x])
    if len(cyclic) == group.order:
        return [(x, max_order)]
    # Quotient by <x>: cosets labelled by their least member.
    coset_of = {}
    for g in group.elements():
        if g in coset_of:
            continue
        members = sorted(int(group.mul[g, c]) for c in cyclic)
        label = members[0]
        for m in members:
            coset_of[m] = label
    labels = sorted(set(coset_of.values()))
    pos = {label: i for i, label in enumerate(labels)}
    qmul = np.empty((len(labels), len(labels)), dtype=np.int64)
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            qmul[i, j] = pos[coset_of[int(group.mul[a, b])]]
    quotient = FiniteGroup(qmul, "quotient", _validated=True)
    basis = [(x, max_order)]
    cyclic_pos = {g: i for i, g in enumerate(cyclic)}
    # x generates <x> = cyclic in enumeration order of powers:
    power_of = {}
    acc = 0
    for e in range(max_order):
        power_of[acc] = e
        acc = int(group.mul[acc, x])
    for local_gen, m in _pgroup_basis(quotient):
        y = labels[local_gen]
        c = power_of[group.power(y, m)]  # y^m = x^c with m | c
        correction = group.power(x, -(c // m))
        lifted = int(group.mul[y, correction])
        basis.append((lifted, m))
    return basis


def element_coordinates(
    group: FiniteGroup, basis: list[tuple[int, int]]
) -> dict[int, tuple[int, ...]]:
    """Coordinates of every element of an abelian group in the given basis."""
    coords: dict[int, tuple[int, ...]] = {0: tuple(0 for _ in basis)}
    if not basis:
        return coords
    tails: list[tuple[int, ...]] = []
    tail: tuple[int, ...] = (0,)
    for gen, _order in reversed(basis):
        tail = group.subgroup_closure(list(tail) + [gen])
        tails.append(tail)
    tails = tails[::-1]  # tails[i] = subgroup generated by basis[i:]
    tails.append((0,))
    for g in group.elements():
        rem = g
        vec = []
        for i, (gen, order) in enumerate(basis):
            inside = set(tails[i + 1])
            for a in range(order):
                candidate = int(group.mul[group.power(gen, -a), rem])
                if candidate in inside:
                    vec.append(a)
                    rem = candidate
                    break
            else:
                raise PreconditionError("basis does not span the group")
        coords[g] = tuple(vec)
    return coords
