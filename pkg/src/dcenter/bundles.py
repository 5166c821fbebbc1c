"""Invariant bundles: the packaged (T, S, B) data of one category.

A bundle carries the simple-object labels, the integer dimension
vector, the T vector, and optionally the S matrix and B tensor, all
indexed by one common ordering.  Bundles serialize to a canonical JSON
form (sorted keys, canonical cyclotomic terms) so equal bundles produce
byte-identical files.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from math import lcm

import numpy as np

from .center import (
    SimpleObject,
    b_tensor,
    enumerate_simples,
    s_matrix,
    t_matrix,
)
from .cocycles import ThreeCocycle
from .cyclotomic import Cyclotomic
from .errors import ValidationError
from .groups import FiniteGroup
from .tensorpool import MISSING, CycTensor

__all__ = ["InvariantBundle", "build_bundle"]


@dataclass
class InvariantBundle:
    simples: list[tuple[int, int]]
    dims: list[int]
    T: list[Cyclotomic]
    S: list[list[Cyclotomic]] | None = None
    B: CycTensor | None = None

    @property
    def size(self) -> int:
        return len(self.simples)

    def has(self, which: str) -> bool:
        return {"T": True, "S": self.S is not None, "B": self.B is not None}[which]

    def require(self, invariants) -> None:
        missing = [w for w in invariants if not self.has(w)]
        if missing:
            raise ValidationError(f"bundle lacks invariants: {', '.join(missing)}")

    def permuted(self, perm: list[int]) -> "InvariantBundle":
        """Relabel simples by perm: new index perm[i] holds old index i."""
        n = self.size
        inverse = [0] * n
        for i, p in enumerate(perm):
            inverse[p] = i
        simples = [self.simples[inverse[i]] for i in range(n)]
        dims = [self.dims[inverse[i]] for i in range(n)]
        T = [self.T[inverse[i]] for i in range(n)]
        S = None
        if self.S is not None:
            S = [[self.S[inverse[i]][inverse[j]] for j in range(n)] for i in range(n)]
        B = None
        if self.B is not None:
            idx = np.asarray(inverse, dtype=np.int64)
            codes = self.B.codes[np.ix_(idx, idx, idx)]
            B = CycTensor(self.B.shape, self.B.pool, codes)
        return InvariantBundle(simples, dims, T, S, B)

    def to_json_obj(self) -> dict:
        out = {
            "simples": [list(lbl) for lbl in self.simples],
            "dims": list(self.dims),
            "T": [v.to_json_obj() for v in self.T],
        }
        if self.S is not None:
            out["S"] = [[v.to_json_obj() for v in row] for row in self.S]
        if self.B is not None:
            out["B"] = self.B.to_nested()
        return out

    @classmethod
    def from_json_obj(cls, obj: dict) -> "InvariantBundle":
        simples = [tuple(int(x) for x in lbl) for lbl in obj["simples"]]
        dims = [int(d) for d in obj["dims"]]
        T = [Cyclotomic.from_json_obj(v) for v in obj["T"]]
        S = None
        if "S" in obj:
            S = [[Cyclotomic.from_json_obj(v) for v in row] for row in obj["S"]]
        B = None
        if "B" in obj:
            B = CycTensor.from_nested(obj["B"])
        n = len(simples)
        if len(dims) != n or len(T) != n:
            raise ValidationError("bundle containers disagree on the index count")
        if S is not None and (len(S) != n or any(len(r) != n for r in S)):
            raise ValidationError("S matrix shape does not match the simples")
        if B is not None and B.shape != (n, n, n):
            raise ValidationError("B tensor shape does not match the simples")
        return cls(simples, dims, T, S, B)

    def save(self, path: str) -> None:
        write_json_atomic(path, self.to_json_obj())

    @classmethod
    def load(cls, path: str) -> "InvariantBundle":
        with open(path, "r", encoding="utf-8") as handle:
            return cls.from_json_obj(json.load(handle))


def write_json_atomic(path: str, obj) -> None:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as handle:
        handle.write(text)
    os.replace(tmp, path)


def build_bundle(
    group: FiniteGroup,
    omega: ThreeCocycle,
    which=("T",),
    char_tables=(),
    mode: str = "general",
    variant: str = "standard",
    jobs: int | None = None,
    entries=None,
    simples: list[SimpleObject] | None = None,
) -> InvariantBundle:
    """Compute the requested invariants into a bundle."""
    if simples is None:
        simples = enumerate_simples(group, omega, tuple(char_tables))
    T = t_matrix(simples)
    S = s_matrix(simples) if "S" in which else None
    B = (
        b_tensor(omega, simples, mode=mode, variant=variant, jobs=jobs, entries=entries)
        if "B" in which
        else None
    )
    return InvariantBundle(
        simples=[s.label for s in simples],
        dims=[s.dim for s in simples],
        T=T,
        S=S,
        B=B,
    )
