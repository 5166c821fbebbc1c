"""Deduplicated storage for tensors of exact cyclotomic values.

Invariant tensors repeat a small set of distinct values many times, so
entries are stored as int32 codes into a per-tensor value pool.  Codes
make exact equality checks during permutation matching a single integer
comparison.  Code -1 marks an entry that was deliberately not computed
(masked fills).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

from .cyclotomic import Cyclotomic, cyclotomic_polynomial

__all__ = ["CycTensor", "ValuePool", "reduction_matrix"]

MISSING = -1

_RED_CACHE: dict[int, np.ndarray] = {}


def reduction_matrix(conductor: int) -> np.ndarray:
    """Rows r[k] give x^k reduced modulo Phi_N in the power basis, as int64."""
    cached = _RED_CACHE.get(conductor)
    if cached is not None:
        return cached
    phi = cyclotomic_polynomial(conductor)
    deg = len(phi) - 1
    rows = []
    for k in range(conductor):
        if k < deg:
            row = [0] * deg
            row[k] = 1
        else:
            # x * rows[k-1], then reduce the overflow coefficient
            prev = rows[k - 1]
            row = [0] + list(prev[:-1])
            lead = prev[-1]
            if lead:
                for j in range(deg):
                    row[j] -= lead * phi[j]
        rows.append(row)
    out = np.array(rows, dtype=np.int64)
    assert int(np.abs(out).max()) < (1 << 48), "reduction coefficients too large"
    out.setflags(write=False)
    _RED_CACHE[conductor] = out
    return out


class ValuePool:
    """Interns exact values at a fixed conductor, assigning dense codes."""

    def __init__(self, conductor: int):
        self.conductor = conductor
        self.values: list[Cyclotomic] = []
        self._index: dict[tuple, int] = {}

    def add(self, value: Cyclotomic) -> int:
        if lcm(self.conductor, value.conductor) != self.conductor:
            raise ValueError(
                f"value conductor {value.conductor} does not divide pool conductor "
                f"{self.conductor}"
            )
        key = value.key_at(self.conductor)
        code = self._index.get(key)
        if code is None:
            code = len(self.values)
            self.values.append(value)
            self._index[key] = code
        return code

    def add_canonical_vector(self, coeffs, numer: int, denom: int) -> int:
        """Intern sum_k coeffs[k] * zeta^k * numer/denom, coeffs in the power basis."""
        items = []
        for k, c in enumerate(coeffs):
            if c:
                f = Fraction(int(c) * numer, denom)
                if f:
                    items.append((k, f))
        key = tuple((k, f.numerator, f.denominator) for k, f in items)
        code = self._index.get(key)
        if code is None:
            code = len(self.values)
            self.values.append(
                Cyclotomic(self.conductor, dict(items), _canonical=True)
            )
            self._index[key] = code
        return code

    def __len__(self):
        return len(self.values)


class CycTensor:
    """A dense tensor of pooled cyclotomic values."""

    def __init__(self, shape: tuple[int, ...], pool: ValuePool, codes: np.ndarray):
        self.shape = shape
        self.pool = pool
        self.codes = codes.reshape(shape).astype(np.int32)

    @classmethod
    def empty(cls, shape: tuple[int, ...], conductor: int) -> "CycTensor":
        return cls(shape, ValuePool(conductor), np.full(shape, MISSING, dtype=np.int32))

    def entry(self, *idx) -> Cyclotomic:
        code = int(self.codes[idx])
        if code == MISSING:
            raise KeyError(f"entry {idx} was not computed")
        return self.pool.values[code]

    def has_entry(self, *idx) -> bool:
        return int(self.codes[idx]) != MISSING

    def is_complete(self) -> bool:
        return bool((self.codes != MISSING).all())

    def set_entry(self, idx, value: Cyclotomic):
        self.codes[idx] = self.pool.add(value)

    def to_nested(self):
        """Nested lists of JSON objects (None for masked entries)."""
        rendered = [v.to_json_obj() for v in self.pool.values]

        def build(codes):
            if codes.ndim == 1:
                return [None if c == MISSING else rendered[c] for c in codes]
            return [build(sub) for sub in codes]

        return build(self.codes)

    @classmethod
    def from_nested(cls, nested, conductor_hint: int = 1) -> "CycTensor":
        def convert(node):
            if isinstance(node, list) and node and isinstance(node[0], list):
                return [convert(sub) for sub in node]
            return [None if item is None else Cyclotomic.from_json_obj(item) for item in node]

        def shape_of(node):
            if node and isinstance(node[0], list):
                return (len(node),) + shape_of(node[0])
            return (len(node),)

        def leaves(node):
            if node and isinstance(node[0], list):
                for sub in node:
                    yield from leaves(sub)
            else:
                yield from node

        tree = convert(nested)
        shape = shape_of(tree)
        conductor = conductor_hint
        for item in leaves(tree):
            if item is not None:
                conductor = lcm(conductor, item.conductor)
        pool = ValuePool(conductor)
        codes = np.full(shape, MISSING, dtype=np.int32)
        flat = codes.reshape(-1)
        for i, item in enumerate(leaves(tree)):
            if item is not None:
                flat[i] = pool.add(item)
        return cls(shape, pool, codes)
