"""Hot integer kernels: Borromean sums and braid-word traces.

Everything here works on integer arrays only; scalars are tracked as
additive exponents modulo a shared conductor E, and each result row is
a length-E vector counting how often each root of unity occurs.  The
exact cyclotomic value is recovered by the caller.

Two interchangeable backends exist: numba-compiled loops (the default
when numba imports) and vectorized numpy.  Set DCENTER_KERNEL=numpy to
force the fallback, DCENTER_KERNEL=numba to require the JIT.  Both
produce bit-identical outputs; benchmarks/bench_kernels.py compares
their speed.
"""

from __future__ import annotations

import os
from typing import NamedTuple

import numpy as np

__all__ = [
    "CategoryArrays",
    "ExplicitArrays",
    "active_backend",
    "borromean_batch",
    "trace_batch_raw",
]

_ENV_FLAG = "DCENTER_KERNEL"


def _resolve_backend() -> str:
    choice = os.environ.get(_ENV_FLAG, "").strip().lower()
    if choice in ("numpy", "python", "py"):
        return "numpy"
    if choice not in ("", "numba"):
        raise ValueError(f"unknown {_ENV_FLAG} value {choice!r}; use 'numba' or 'numpy'")
    try:
        import numba  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise
        return "numpy"
    return "numba"


_BACKEND = _resolve_backend()


def active_backend() -> str:
    return _BACKEND


class CategoryArrays(NamedTuple):
    """Kernel-ready view of one category (group, cocycle, characters)."""

    n: int
    E: int
    scale: int
    mul: np.ndarray
    inv: np.ndarray
    conj: np.ndarray
    comm: np.ndarray
    omega: np.ndarray
    reps: np.ndarray
    class_of_simple: np.ndarray
    class_off: np.ndarray
    class_mem: np.ndarray
    class_size: np.ndarray
    fcanon: np.ndarray
    cent_pos: np.ndarray
    chi_exp: np.ndarray
    chi_coef: np.ndarray
    chi_nt: np.ndarray
    dens: np.ndarray


class ExplicitArrays(NamedTuple):
    """Kernel-ready view of explicit simples for braid traces."""

    n: int
    E: int
    scale: int
    mul: np.ndarray
    inv: np.ndarray
    conj: np.ndarray
    omega: np.ndarray
    dims: np.ndarray      # basis size per object
    base_act: np.ndarray  # offset of each object's action table
    base_deg: np.ndarray  # offset of each object's degree table
    act_t: np.ndarray     # flat [base_act[o] + f*dims[o] + i] -> target index
    act_e: np.ndarray     # same layout -> exponent mod E
    deg: np.ndarray       # flat [base_deg[o] + i] -> degree element


# ---------------------------------------------------------------------------
# Borromean sums.  The summand at (x, y, z) is
#   Omega(x,y,z) * chi1^(x)([y,z]) * chi2^(y)([z^-1,x^-1]) * chi3^(z)([y^-1,x])
# restricted to triples where the three double commutators vanish; the
# two-variable version fixes z at the third representative and leaves the
# third character untransported.
# ---------------------------------------------------------------------------


def _borromean_impl(
    entries, variant, triple,
    E, scale,
    mul, inv, conj, comm, wv,
    reps, class_of_simple, class_off, class_mem, class_size,
    fcanon, cent_pos, chi_exp, chi_coef, chi_nt,
    out, err,
):
    nentries = entries.shape[0]
    maxt = chi_exp.shape[2]
    for t in range(nentries):
        s1 = entries[t, 0]
        s2 = entries[t, 1]
        s3 = entries[t, 2]
        g1 = reps[s1]
        g2 = reps[s2]
        g3 = reps[s3]
        c1lo = class_off[class_of_simple[s1]]
        c1hi = class_off[class_of_simple[s1] + 1]
        c2lo = class_off[class_of_simple[s2]]
        c2hi = class_off[class_of_simple[s2] + 1]
        if triple:
            c3lo = class_off[class_of_simple[s3]]
            c3hi = class_off[class_of_simple[s3] + 1]
        else:
            c3lo = 0
            c3hi = 1
        for xi in range(c1lo, c1hi):
            x = class_mem[xi]
            f1 = fcanon[x]
            f1i = inv[f1]
            for yi in range(c2lo, c2hi):
                y = class_mem[yi]
                f2 = fcanon[y]
                f2i = inv[f2]
                for zi in range(c3lo, c3hi):
                    z = class_mem[zi] if triple else g3
                    # vanishing double commutators
                    if comm[comm[inv[y], x], z] != 0:
                        continue
                    if comm[comm[z, y], x] != 0:
                        continue
                    if comm[comm[inv[z], inv[x]], y] != 0:
                        continue
                    xy = conj[x, y]
                    yz = conj[y, z]
                    zx = conj[inv[z], x]
                    zxi = inv[zx]
                    zi_ = inv[z]
                    yi_ = inv[y]
                    # alpha_base(u, v) = w(u,v,base) - w(u, v|>base, v)
                    #                   + w((uv)|>base, u, v)
                    if variant == 1:
                        base = (
                            wv[xy, z, zx] - wv[xy, x, z]
                            - (wv[z, zi_, x] - wv[z, conj[zi_, x], zi_]
                               + wv[conj[mul[z, zi_], x], z, zi_])
                            + wv[yz, zx, y] - wv[yz, xy, zx]
                            - (wv[zxi, zx, y] - wv[zxi, conj[zx, y], zx]
                               + wv[conj[mul[zxi, zx], y], zxi, zx])
                            + wv[x, y, z] - wv[x, yz, y]
                            + (wv[yi_, y, z] - wv[yi_, conj[y, z], y]
                               + wv[conj[mul[yi_, y], z], yi_, y])
                        )
                    else:
                        base = (
                            wv[xy, x, z] - wv[xy, z, zx]
                            + wv[yz, xy, zx] - wv[yz, zx, y]
                            + wv[x, yz, y] - wv[x, y, z]
                            - (wv[z, zi_, x] - wv[z, conj[zi_, x], zi_]
                               + wv[conj[mul[z, zi_], x], z, zi_])
                            + (wv[yz, zi_, x] - wv[yz, conj[zi_, x], zi_]
                               + wv[conj[mul[yz, zi_], x], yz, zi_])
                            - (wv[zx, zxi, xy] - wv[zx, conj[zxi, xy], zxi]
                               + wv[conj[mul[zx, zxi], xy], zx, zxi])
                            + (wv[zxi, x, y] - wv[zxi, conj[x, y], x]
                               + wv[conj[mul[zxi, x], y], zxi, x])
                            - (wv[y, yi_, yz] - wv[y, conj[yi_, yz], yi_]
                               + wv[conj[mul[y, yi_], yz], y, yi_])
                        )
                        if variant == 0:
                            base = base + (
                                wv[yi_, xy, z] - wv[yi_, conj[xy, z], xy]
                                + wv[conj[mul[yi_, xy], z], yi_, xy]
                            )
                    # chi1 at [y, z], transported from g1 to x
                    c1 = comm[y, z]
                    pulled1 = conj[f1i, c1]
                    p1 = cent_pos[s1, pulled1]
                    if p1 < 0:
                        err[0] = 1
                        err[1] = t
                        return
                    adj1 = (
                        (wv[c1, f1, g1] - wv[c1, conj[f1, g1], f1]
                         + wv[conj[mul[c1, f1], g1], c1, f1])
                        - (wv[f1, pulled1, g1] - wv[f1, conj[pulled1, g1], pulled1]
                           + wv[conj[mul[f1, pulled1], g1], f1, pulled1])
                    )
                    # chi2 at [z^-1, x^-1], transported from g2 to y
                    c2 = comm[zi_, inv[x]]
                    pulled2 = conj[f2i, c2]
                    p2 = cent_pos[s2, pulled2]
                    if p2 < 0:
                        err[0] = 2
                        err[1] = t
                        return
                    adj2 = (
                        (wv[c2, f2, g2] - wv[c2, conj[f2, g2], f2]
                         + wv[conj[mul[c2, f2], g2], c2, f2])
                        - (wv[f2, pulled2, g2] - wv[f2, conj[pulled2, g2], pulled2]
                           + wv[conj[mul[f2, pulled2], g2], f2, pulled2])
                    )
                    # chi3 at [y^-1, x]; transported only in the triple sum
                    c3 = comm[yi_, x]
                    if triple:
                        f3 = fcanon[z]
                        f3i = inv[f3]
                        pulled3 = conj[f3i, c3]
                        p3 = cent_pos[s3, pulled3]
                        adj3 = (
                            (wv[c3, f3, g3] - wv[c3, conj[f3, g3], f3]
                             + wv[conj[mul[c3, f3], g3], c3, f3])
                            - (wv[f3, pulled3, g3] - wv[f3, conj[pulled3, g3], pulled3]
                               + wv[conj[mul[f3, pulled3], g3], f3, pulled3])
                        )
                    else:
                        p3 = cent_pos[s3, c3]
                        adj3 = 0
                    if p3 < 0:
                        err[0] = 3
                        err[1] = t
                        return
                    tot = scale * (base + adj1 + adj2 + adj3)
                    n1 = chi_nt[s1, p1]
                    n2 = chi_nt[s2, p2]
                    n3 = chi_nt[s3, p3]
                    for a in range(n1):
                        e1 = tot + chi_exp[s1, p1, a]
                        co1 = chi_coef[s1, p1, a]
                        for b in range(n2):
                            e2 = e1 + chi_exp[s2, p2, b]
                            co2 = co1 * chi_coef[s2, p2, b]
                            for c in range(n3):
                                idx = (e2 + chi_exp[s3, p3, c]) % E
                                out[t, idx] += co2 * chi_coef[s3, p3, c]


_NUMBA_FNS: dict[str, object] = {}


def _numba_fn(name: str):
    fn = _NUMBA_FNS.get(name)
    if fn is None:
        import numba

        fn = numba.njit(cache=True, nogil=True)(globals()[name])
        _NUMBA_FNS[name] = fn
    return fn


def borromean_batch(
    cat: CategoryArrays,
    entries: np.ndarray,
    variant_code: int,
    triple_sum: bool,
    backend: str | None = None,
) -> np.ndarray:
    """Accumulated exponent counts for a batch of tensor entries."""
    backend = backend or _BACKEND
    entries = np.ascontiguousarray(entries, dtype=np.int64)
    out = np.zeros((entries.shape[0], cat.E), dtype=np.int64)
    err = np.zeros(2, dtype=np.int64)
    args = (
        entries, variant_code, triple_sum,
        cat.E, cat.scale,
        cat.mul, cat.inv, cat.conj, cat.comm, cat.omega,
        cat.reps, cat.class_of_simple, cat.class_off, cat.class_mem, cat.class_size,
        cat.fcanon, cat.cent_pos, cat.chi_exp, cat.chi_coef, cat.chi_nt,
        out, err,
    )
    if backend == "numba":
        _numba_fn("_borromean_impl")(*args)
    else:
        _borromean_numpy(cat, entries, variant_code, triple_sum, out, err)
    if err[0]:
        from .errors import InternalConsistencyError

        raise InternalConsistencyError(
            f"character argument {err[0]} left its centralizer in entry "
            f"{entries[err[1]].tolist()}"
        )
    return out


def _alpha_vec(wv, mul, conj, u, v, base):
    """Vectorized alpha_base(u, v); all args broadcastable index arrays."""
    return (
        wv[u, v, base]
        - wv[u, conj[v, base], v]
        + wv[conj[mul[u, v], base], u, v]
    )


def _borromean_numpy(cat, entries, variant, triple, out, err):
    mul, inv, conj, comm, wv = cat.mul, cat.inv, cat.conj, cat.comm, cat.omega
    E, scale = cat.E, cat.scale
    for t in range(entries.shape[0]):
        s1, s2, s3 = (int(v) for v in entries[t])
        g1, g2, g3 = (int(cat.reps[s]) for s in (s1, s2, s3))
        mem = []
        for s in (s1, s2):
            ci = cat.class_of_simple[s]
            mem.append(cat.class_mem[cat.class_off[ci]:cat.class_off[ci + 1]])
        zmem = (
            cat.class_mem[cat.class_off[cat.class_of_simple[s3]]:
                          cat.class_off[cat.class_of_simple[s3] + 1]]
            if triple
            else np.array([g3], dtype=np.int64)
        )
        x, y, z = np.meshgrid(mem[0], mem[1], zmem, indexing="ij")
        x, y, z = x.ravel(), y.ravel(), z.ravel()
        ok = (
            (comm[comm[inv[y], x], z] == 0)
            & (comm[comm[z, y], x] == 0)
            & (comm[comm[inv[z], inv[x]], y] == 0)
        )
        if not ok.any():
            continue
        x, y, z = x[ok], y[ok], z[ok]
        xy, yz = conj[x, y], conj[y, z]
        zx = conj[inv[z], x]
        zxi = inv[zx]
        zi_, yi_ = inv[z], inv[y]

        def a(u, v, base):
            return _alpha_vec(wv, mul, conj, u, v, base)

        if variant == 1:
            base = (
                wv[xy, z, zx] - wv[xy, x, z] - a(z, zi_, x)
                + wv[yz, zx, y] - wv[yz, xy, zx] - a(zxi, zx, y)
                + wv[x, y, z] - wv[x, yz, y] + a(yi_, y, z)
            )
        else:
            base = (
                wv[xy, x, z] - wv[xy, z, zx]
                + wv[yz, xy, zx] - wv[yz, zx, y]
                + wv[x, yz, y] - wv[x, y, z]
                - a(z, zi_, x) + a(yz, zi_, x)
                - a(zx, zxi, xy) + a(zxi, x, y)
                - a(y, yi_, yz)
            )
            if variant == 0:
                base = base + a(yi_, xy, z)
        f1 = cat.fcanon[x]
        c1 = comm[y, z]
        pulled1 = conj[inv[f1], c1]
        p1 = cat.cent_pos[s1, pulled1]
        adj1 = a(c1, f1, g1) - a(f1, pulled1, g1)
        f2 = cat.fcanon[y]
        c2 = comm[zi_, inv[x]]
        pulled2 = conj[inv[f2], c2]
        p2 = cat.cent_pos[s2, pulled2]
        adj2 = a(c2, f2, g2) - a(f2, pulled2, g2)
        c3 = comm[yi_, x]
        if triple:
            f3 = cat.fcanon[z]
            pulled3 = conj[inv[f3], c3]
            p3 = cat.cent_pos[s3, pulled3]
            adj3 = a(c3, f3, g3) - a(f3, pulled3, g3)
        else:
            p3 = cat.cent_pos[s3, c3]
            adj3 = np.zeros_like(base)
        for which, p in ((1, p1), (2, p2), (3, p3)):
            if (p < 0).any():
                err[0] = which
                err[1] = t
                return
        tot = scale * (base + adj1 + adj2 + adj3)
        # padded outer product over term lists; padding has coefficient 0
        e1 = cat.chi_exp[s1, p1][:, :, None, None]
        e2 = cat.chi_exp[s2, p2][:, None, :, None]
        e3 = cat.chi_exp[s3, p3][:, None, None, :]
        co = (
            cat.chi_coef[s1, p1][:, :, None, None]
            * cat.chi_coef[s2, p2][:, None, :, None]
            * cat.chi_coef[s3, p3][:, None, None, :]
        )
        idx = (tot[:, None, None, None] + e1 + e2 + e3) % E
        np.add.at(out[t], idx.ravel(), co.ravel())


# ---------------------------------------------------------------------------
# Braid-word traces on left-bracketed triple tensor products.
# Tokens (in application order): 0 = sigma1, 1 = sigma1^-1,
# 2 = sigma2, 3 = sigma2^-1.
# ---------------------------------------------------------------------------


def _trace_impl(
    triples, tokens,
    E, scale,
    mul, inv, conj, wv,
    dims, base_act, base_deg, act_t, act_e, deg,
    out,
):
    ntok = tokens.shape[0]
    for t in range(triples.shape[0]):
        si = triples[t, 0]
        sj = triples[t, 1]
        sk = triples[t, 2]
        for a in range(dims[si]):
            for b in range(dims[sj]):
                for c in range(dims[sk]):
                    o1, o2, o3 = si, sj, sk
                    i1, i2, i3 = a, b, c
                    ex = 0
                    for w in range(ntok):
                        tok = tokens[w]
                        if tok == 0:
                            f = deg[base_deg[o1] + i1]
                            slot = base_act[o2] + f * dims[o2] + i2
                            ex += act_e[slot]
                            o1, i1, o2, i2 = o2, act_t[slot], o1, i1
                        elif tok == 1:
                            dv = deg[base_deg[o2] + i2]
                            du = deg[base_deg[o1] + i1]
                            fi = inv[dv]
                            ex -= scale * (
                                wv[dv, fi, du] - wv[dv, conj[fi, du], fi]
                                + wv[conj[mul[dv, fi], du], dv, fi]
                            )
                            slot = base_act[o1] + fi * dims[o1] + i1
                            ex += act_e[slot]
                            o1, i1, o2, i2 = o2, i2, o1, act_t[slot]
                        elif tok == 2:
                            da = deg[base_deg[o1] + i1]
                            db = deg[base_deg[o2] + i2]
                            dc = deg[base_deg[o3] + i3]
                            ex += scale * wv[da, db, dc]
                            slot = base_act[o3] + db * dims[o3] + i3
                            ex += act_e[slot]
                            o2, i2, o3, i3 = o3, act_t[slot], o2, i2
                            ex -= scale * wv[da, conj[db, dc], db]
                        else:
                            da = deg[base_deg[o1] + i1]
                            db = deg[base_deg[o2] + i2]
                            dc = deg[base_deg[o3] + i3]
                            ex += scale * wv[da, db, dc]
                            fi = inv[dc]
                            ex -= scale * (
                                wv[dc, fi, db] - wv[dc, conj[fi, db], fi]
                                + wv[conj[mul[dc, fi], db], dc, fi]
                            )
                            slot = base_act[o2] + fi * dims[o2] + i2
                            ex += act_e[slot]
                            o2, i2, o3, i3 = o3, i3, o2, act_t[slot]
                            ex -= scale * wv[da, dc, conj[fi, db]]
                    if (
                        o1 == si and o2 == sj and o3 == sk
                        and i1 == a and i2 == b and i3 == c
                    ):
                        out[t, ex % E] += 1


def trace_batch_raw(
    arrs: ExplicitArrays,
    triples: np.ndarray,
    tokens: np.ndarray,
    backend: str | None = None,
) -> np.ndarray:
    """Exponent counts of closed-braid traces for a batch of color triples."""
    backend = backend or _BACKEND
    triples = np.ascontiguousarray(triples, dtype=np.int64)
    tokens = np.ascontiguousarray(tokens, dtype=np.int64)
    out = np.zeros((triples.shape[0], arrs.E), dtype=np.int64)
    if backend == "numba":
        _numba_fn("_trace_impl")(
            triples, tokens,
            arrs.E, arrs.scale,
            arrs.mul, arrs.inv, arrs.conj, arrs.omega,
            arrs.dims, arrs.base_act, arrs.base_deg, arrs.act_t, arrs.act_e, arrs.deg,
            out,
        )
    else:
        _trace_numpy(arrs, triples, tokens, out)
    return out


def _trace_numpy(arrs, triples, tokens, out):
    mul, inv, conj, wv = arrs.mul, arrs.inv, arrs.conj, arrs.omega
    E, scale = arrs.E, arrs.scale
    dims, base_act, base_deg = arrs.dims, arrs.base_act, arrs.base_deg
    act_t, act_e, deg = arrs.act_t, arrs.act_e, arrs.deg
    # one flat state table across the whole batch
    rows = []
    for t in range(triples.shape[0]):
        si, sj, sk = (int(v) for v in triples[t])
        di, dj, dk = int(dims[si]), int(dims[sj]), int(dims[sk])
        count = di * dj * dk
        grid = np.indices((di, dj, dk)).reshape(3, -1)
        rows.append(
            (
                np.full(count, t, dtype=np.int64),
                np.full(count, si, dtype=np.int64),
                np.full(count, sj, dtype=np.int64),
                np.full(count, sk, dtype=np.int64),
                grid[0],
                grid[1],
                grid[2],
            )
        )
    trip = np.concatenate([r[0] for r in rows])
    o1 = np.concatenate([r[1] for r in rows])
    o2 = np.concatenate([r[2] for r in rows])
    o3 = np.concatenate([r[3] for r in rows])
    i1 = np.concatenate([r[4] for r in rows])
    i2 = np.concatenate([r[5] for r in rows])
    i3 = np.concatenate([r[6] for r in rows])
    start = (o1.copy(), i1.copy(), o2.copy(), i2.copy(), o3.copy(), i3.copy())
    ex = np.zeros_like(i1)

    def alpha_v(u, v, base):
        return (
            wv[u, v, base]
            - wv[u, conj[v, base], v]
            + wv[conj[mul[u, v], base], u, v]
        )

    for tok in tokens:
        if tok == 0:
            f = deg[base_deg[o1] + i1]
            slot = base_act[o2] + f * dims[o2] + i2
            ex = ex + act_e[slot]
            o1, i1, o2, i2 = o2, act_t[slot], o1, i1
        elif tok == 1:
            dv = deg[base_deg[o2] + i2]
            du = deg[base_deg[o1] + i1]
            fi = inv[dv]
            ex = ex - scale * alpha_v(dv, fi, du)
            slot = base_act[o1] + fi * dims[o1] + i1
            ex = ex + act_e[slot]
            o1, i1, o2, i2 = o2, i2, o1, act_t[slot]
        elif tok == 2:
            da = deg[base_deg[o1] + i1]
            db = deg[base_deg[o2] + i2]
            dc = deg[base_deg[o3] + i3]
            ex = ex + scale * wv[da, db, dc]
            slot = base_act[o3] + db * dims[o3] + i3
            ex = ex + act_e[slot]
            o2, i2, o3, i3 = o3, act_t[slot], o2, i2
            ex = ex - scale * wv[da, conj[db, dc], db]
        else:
            da = deg[base_deg[o1] + i1]
            db = deg[base_deg[o2] + i2]
            dc = deg[base_deg[o3] + i3]
            ex = ex + scale * wv[da, db, dc]
            fi = inv[dc]
            ex = ex - scale * alpha_v(dc, fi, db)
            slot = base_act[o2] + fi * dims[o2] + i2
            ex = ex + act_e[slot]
            o2, i2, o3, i3 = o3, i3, o2, act_t[slot]
            ex = ex - scale * wv[da, dc, conj[fi, db]]
    fixed = (
        (o1 == start[0]) & (i1 == start[1])
        & (o2 == start[2]) & (i2 == start[3])
        & (o3 == start[4]) & (i3 == start[5])
    )
    np.add.at(out, (trip[fixed], ex[fixed] % E), 1)
