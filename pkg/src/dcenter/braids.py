"""Categorical gold standard: explicit simples and braid-word traces.

Simples are realized as graded vector spaces with a quasi-action of the
group; every structure map (braiding, inverse braiding, associator) is
monomial, so the trace of any 3-strand braid word is a sum of roots of
unity collected by pushing each basis vector through the composite and
keeping the fixed points.  This path never touches the summation
formulas, which makes it an independent referee for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np

from . import _kernels
from .center import SimpleObject, category_exponent
from .cocycles import ThreeCocycle, alpha_exponent
from .cyclotomic import Cyclotomic
from .errors import (
    InternalConsistencyError,
    PreconditionError,
    UnsupportedCentralizerError,
)
from .tensorpool import CycTensor, reduction_matrix

__all__ = [
    "ExplicitCollection",
    "ExplicitSimple",
    "braid_word_trace",
    "build_explicit_simples",
    "oracle_borromean_tensor",
    "oracle_s_matrix",
    "parse_braid_word",
    "verify_quasi_action",
]

BORROMEAN_WORD = "s2' s1 s2' s1 s2' s1"

_TOKENS = {"s1": 0, "s1'": 1, "s2": 2, "s2'": 3}
_SWAPS = {0: (1, 0, 2), 1: (1, 0, 2), 2: (0, 2, 1), 3: (0, 2, 1)}


def parse_braid_word(word: str) -> list[int]:
    """Token codes for a word over s1, s1', s2, s2' (written left to right)."""
    out = []
    for raw in word.replace(",", " ").split():
        code = _TOKENS.get(raw)
        if code is None:
            raise PreconditionError(f"unknown braid token {raw!r}")
        out.append(code)
    return out


def word_permutation(tokens: list[int]) -> tuple[int, int, int]:
    """Underlying strand permutation; position i holds strand perm[i]."""
    perm = (0, 1, 2)
    for tok in reversed(tokens):  # rightmost generator acts first
        swap = _SWAPS[tok]
        perm = tuple(perm[swap[i]] for i in range(3))
    return perm


@dataclass
class ExplicitSimple:
    """A simple object with monomial quasi-action data.

    ``basis`` lists (degree, fiber index) pairs; ``act_target`` and
    ``act_exp`` give, for each group element f and basis index i, the
    image index and the exponent (mod the collection conductor) of the
    scalar of f acting on basis vector i.
    """

    simple: SimpleObject
    basis: list[tuple[int, int]]
    act_target: np.ndarray
    act_exp: np.ndarray
    conductor: int

    @property
    def dim(self) -> int:
        return len(self.basis)


class ExplicitCollection:
    """All simples of one category, sharing a common scalar conductor."""

    def __init__(self, omega: ThreeCocycle, simples: list[SimpleObject], rep_matrices=None):
        self.omega = omega
        self.simples = simples
        reps = dict(rep_matrices or {})
        E = category_exponent(omega, simples)
        mono = []
        for s in simples:
            mono.append(self._monomial_rep(s, reps.get(s.label)))
            for _, scalars in mono[-1].values():
                for value in scalars:
                    root = value.as_root_of_unity()
                    if root is None:
                        raise UnsupportedCentralizerError(
                            f"representation scalar for simple {s.label} is not a root of unity"
                        )
                    E = lcm(E, root[0])
        self.E = E
        self.explicits = [
            self._build(s, m) for s, m in zip(simples, mono)
        ]
        self._arrays = None

    # -- monomial representations -----------------------------------------

    def _monomial_rep(self, s: SimpleObject, supplied):
        """element -> (targets, scalars) on the fiber over the base point."""
        degree = s.chi.degree
        if supplied is not None:
            rep = {int(c): (tuple(t), tuple(v)) for c, (t, v) in supplied.items()}
            self._validate_rep(s, rep)
            return rep
        if degree == 1:
            return {
                c: ((0,), (s.chi.value(c),))
                for c in s.chi.centralizer
            }
        group = s.chi.alpha.omega.group
        kind = s.chi.meta[0] if s.chi.meta else "opaque"
        if kind == "induced" and group.pq_params is not None and s.g == group.identity:
            # basis indexed by cosets of the index-p abelian subgroup:
            # (a^l b^k) . w_m = zeta_q^(s n^-(k+m) l) w_(k+m)
            p, q, n = group.pq_params
            sval = s.chi.meta[1]
            rep = {}
            from .cyclotomic import root_of_unity

            for l in range(q):
                for k in range(p):
                    targets = []
                    scalars = []
                    for m in range(p):
                        targets.append((k + m) % p)
                        ninv_pow = pow(n, (p - (k + m) % p) % p, q)
                        scalars.append(root_of_unity(q, sval * ninv_pow * l))
                    rep[l * p + k] = (tuple(targets), tuple(scalars))
            self._validate_rep(s, rep)
            return rep
        raise UnsupportedCentralizerError(
            f"simple {s.label} has degree {degree} and no monomial representation "
            "is built in or supplied"
        )

    def _validate_rep(self, s: SimpleObject, rep):
        """rho(c) rho(d) = zeta^alpha(c,d) rho(cd), entrywise."""
        group = s.chi.alpha.omega.group
        e = s.chi.alpha.modulus
        from .cyclotomic import root_of_unity

        cent = s.chi.centralizer
        degree = s.chi.degree
        for c in cent:
            targets, scalars = rep[c]
            if len(targets) != degree or sorted(targets) != list(range(degree)):
                raise UnsupportedCentralizerError(
                    f"representation of simple {s.label} at element {c} is not monomial"
                )
        for c in cent:
            tc, vc = rep[c]
            for d in cent:
                td, vd = rep[d]
                cd = int(group.mul[c, d])
                tcd, vcd = rep[cd]
                factor = root_of_unity(e, s.chi.alpha(c, d))
                for m in range(degree):
                    if tc[td[m]] != tcd[m]:
                        raise InternalConsistencyError(
                            f"monomial targets violate projectivity for simple {s.label}"
                        )
                    if vc[td[m]] * vd[m] != factor * vcd[m]:
                        raise InternalConsistencyError(
                            f"monomial scalars violate projectivity for simple {s.label}"
                        )

    # -- induced action ----------------------------------------------------

    def _build(self, s: SimpleObject, rep) -> ExplicitSimple:
        group = self.omega.group
        n = group.order
        e = self.omega.modulus
        scale = self.E // e
        members = s.class_members
        pos = {x: i for i, x in enumerate(members)}
        degree = s.chi.degree
        dim = len(members) * degree
        basis = [(x, m) for x in members for m in range(degree)]
        act_t = np.zeros((n, dim), dtype=np.int64)
        act_e = np.zeros((n, dim), dtype=np.int64)
        g = s.g
        fcan = [group.conjugator_from_representative(x) for x in members]
        for h in range(n):
            for xi, x in enumerate(members):
                xprime = group.conjugate(h, x)
                xpi = pos[xprime]
                f_x = fcan[xi]
                f_xp = fcan[xpi]
                c = int(group.mul[group.mul[group.inv[f_xp], h], f_x])
                base_exp = scale * (
                    alpha_exponent(self.omega, h, f_x, g)
                    - alpha_exponent(self.omega, f_xp, c, g)
                )
                targets, scalars = rep[c]
                for m in range(degree):
                    order, k = scalars[m].as_root_of_unity()
                    act_t[h, xi * degree + m] = xpi * degree + targets[m]
                    act_e[h, xi * degree + m] = (
                        base_exp + (self.E // order) * k
                    ) % self.E
        explicit = ExplicitSimple(s, basis, act_t, act_e, self.E)
        problem = verify_quasi_action(explicit, self.omega)
        if problem is not None:
            raise InternalConsistencyError(
                f"quasi-action axiom fails for simple {s.label} at {problem}"
            )
        return explicit

    # -- packed arrays -------------------------------------------------------

    def arrays(self) -> _kernels.ExplicitArrays:
        if self._arrays is None:
            group = self.omega.group
            dims = np.array([x.dim for x in self.explicits], dtype=np.int64)
            base_act = np.zeros(len(dims), dtype=np.int64)
            base_deg = np.zeros(len(dims), dtype=np.int64)
            total_act = 0
            total_deg = 0
            for i, x in enumerate(self.explicits):
                base_act[i] = total_act
                base_deg[i] = total_deg
                total_act += group.order * x.dim
                total_deg += x.dim
            act_t = np.zeros(total_act, dtype=np.int64)
            act_e = np.zeros(total_act, dtype=np.int64)
            deg = np.zeros(total_deg, dtype=np.int64)
            for i, x in enumerate(self.explicits):
                act_t[base_act[i]:base_act[i] + group.order * x.dim] = x.act_target.reshape(-1)
                act_e[base_act[i]:base_act[i] + group.order * x.dim] = x.act_exp.reshape(-1)
                deg[base_deg[i]:base_deg[i] + x.dim] = [b[0] for b in x.basis]
            self._arrays = _kernels.ExplicitArrays(
                n=group.order,
                E=self.E,
                scale=self.E // self.omega.modulus,
                mul=group.mul,
                inv=group.inv,
                conj=group.conj_table,
                omega=self.omega.values,
                dims=dims,
                base_act=base_act,
                base_deg=base_deg,
                act_t=act_t,
                act_e=act_e,
                deg=deg,
            )
        return self._arrays

    def trace_batch(
        self,
        word,
        triples,
        jobs: int | None = None,
        backend: str | None = None,
    ) -> list[Cyclotomic]:
        """Traces of the closed braid for many color triples at once."""
        tokens = parse_braid_word(word) if isinstance(word, str) else list(word)
        perm = word_permutation(tokens)
        triples = np.asarray(list(triples), dtype=np.int64).reshape(-1, 3)
        if perm != (0, 1, 2):
            for row in triples:
                if not (row[0] == row[1] == row[2]):
                    raise PreconditionError(
                        "braid word does not close strand-wise on distinct colors"
                    )
        applied = np.array(tokens[::-1], dtype=np.int64)
        arrs = self.arrays()
        red = reduction_matrix(self.E)
        chunk = 4096
        results: list[Cyclotomic] = []
        for lo in range(0, triples.shape[0], chunk):
            batch = triples[lo:lo + chunk]
            counts = _kernels.trace_batch_raw(arrs, batch, applied, backend=backend)
            canon = counts @ red
            for row in canon:
                coeffs = {k: c for k, c in enumerate(row.tolist()) if c}
                results.append(Cyclotomic(self.E, coeffs, _canonical=True))
        return results


def build_explicit_simples(
    simples: list[SimpleObject], omega: ThreeCocycle, rep_matrices=None
) -> ExplicitCollection:
    return ExplicitCollection(omega, simples, rep_matrices)


def verify_quasi_action(explicit: ExplicitSimple, omega: ThreeCocycle):
    """None if the axioms hold; otherwise the first violating datum.

    Checks: degree equivariance |f|>v| = f|>|v|, triviality of the
    identity action, and the composition law
    g |> (h |> v) = zeta^(alpha_{|v|}(g, h)) (g h) |> v.
    """
    group = omega.group
    n = group.order
    E = explicit.conductor
    scale = E // omega.modulus
    act_t, act_e = explicit.act_target, explicit.act_exp
    nb = len(explicit.basis)
    degs = np.array([b[0] for b in explicit.basis], dtype=np.int64)
    if (act_t[0] != np.arange(nb)).any() or act_e[0].any():
        return ("identity",)
    expected = group.conj_table[:, degs]
    if (degs[act_t] != expected).any():
        g, b = np.argwhere(degs[act_t] != expected)[0]
        return (int(g), int(b))
    mul = group.mul
    conj = group.conj_table
    wv = omega.values
    shape = (n, n, nb)
    G = np.broadcast_to(np.arange(n)[:, None, None], shape)
    H = np.broadcast_to(np.arange(n)[None, :, None], shape)
    B = np.broadcast_to(np.arange(nb)[None, None, :], shape)
    TH = act_t[H, B]
    GH = mul[G, H]
    if (act_t[G, TH] != act_t[GH, B]).any():
        g, h, b = np.argwhere(act_t[G, TH] != act_t[GH, B])[0]
        return (int(g), int(h), int(b))
    D = degs[B]
    a_exp = wv[G, H, D] - wv[G, conj[H, D], H] + wv[conj[GH, D], G, H]
    lhs_e = act_e[H, B] + act_e[G, TH]
    rhs_e = scale * a_exp + act_e[GH, B]
    bad = (lhs_e - rhs_e) % E
    if bad.any():
        g, h, b = np.argwhere(bad)[0]
        return (int(g), int(h), int(b))
    return None


def braid_word_trace(
    word,
    colors: tuple[SimpleObject, SimpleObject, SimpleObject] | tuple[int, int, int],
    omega: ThreeCocycle,
    collection: ExplicitCollection | None = None,
    rep_matrices=None,
) -> Cyclotomic:
    """Trace of the closed colored braid, as an exact cyclotomic value."""
    if collection is None:
        if not all(isinstance(c, SimpleObject) for c in colors):
            raise PreconditionError("pass SimpleObjects or provide a collection")
        collection = ExplicitCollection(omega, list(colors), rep_matrices)
        triple = (0, 1, 2)
    else:
        triple = tuple(
            c if isinstance(c, int) else collection.simples.index(c) for c in colors
        )
    return collection.trace_batch(word, [triple])[0]


def oracle_s_matrix(
    collection: ExplicitCollection, jobs: int | None = None, backend: str | None = None
) -> list[list[Cyclotomic]]:
    """S via traces of sigma1^2 with the third strand colored by the unit."""
    ns = len(collection.simples)
    unit = _unit_index(collection)
    triples = [(i, j, unit) for i in range(ns) for j in range(ns)]
    flat = collection.trace_batch("s1 s1", triples, jobs=jobs, backend=backend)
    return [[flat[i * ns + j] for j in range(ns)] for i in range(ns)]


def oracle_borromean_tensor(
    collection: ExplicitCollection,
    entries=None,
    jobs: int | None = None,
    backend: str | None = None,
) -> CycTensor:
    """The Borromean tensor evaluated purely by categorical traces."""
    ns = len(collection.simples)
    if entries is None:
        entries = [(i, j, k) for i in range(ns) for j in range(ns) for k in range(ns)]
    entries = list(entries)
    values = collection.trace_batch(BORROMEAN_WORD, entries, jobs=jobs, backend=backend)
    tensor = CycTensor.empty((ns, ns, ns), collection.E)
    for idx, value in zip(entries, values):
        tensor.set_entry(tuple(idx), value)
    return tensor


def _unit_index(collection: ExplicitCollection) -> int:
    for i, s in enumerate(collection.simples):
        if s.g == 0 and s.dim == 1:
            values_ok = all(v == Cyclotomic.one() for v in s.chi.values)
            if values_ok:
                return i
    raise InternalConsistencyError("no unit simple found")
