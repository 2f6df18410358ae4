"""Hot sweep kernels: numba-jitted loops with a pure-numpy fallback.

The exhaustive Cayley-table sweeps (gyration-automorphism, loop property,
identity suite) and the batched Mobius/Einstein residual evaluations
dominate runtime.  Each kernel exists twice: a ``_nb`` variant compiled
with ``numba.njit`` and a ``_np`` variant written with broadcast numpy.
The active backend is chosen once at import time:

* ``GYROLAB_NO_NUMBA=1`` (or ``true``/``yes``/``on``) forces the numpy path;
* otherwise numba is used when importable, numpy if not.

Both backends produce identical counts and identical witness ordering
(lexicographic in loop indices), which ``tests/test_kernels.py`` pins.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("GYROLAB_NO_NUMBA", "").strip().lower()
FORCE_NUMPY = _flag in {"1", "true", "yes", "on"}

if not FORCE_NUMPY:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not FORCE_NUMPY

WITNESS_CAP = 64


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# finite-table kernels, numpy backend
#
# gyr[a,b](z) = ldiv[op[a,b], op[a, op[b,z]]] where ldiv[t, s] solves
# t (+) w = s (inverse permutation of row t).  The fallback loops over the
# leading axis in python and broadcasts the rest, which bounds memory at
# O(n^2) per step.
# ---------------------------------------------------------------------------


def _gyr_table_np(op, ldiv):
    n = op.shape[0]
    idx = np.arange(n)
    a_bz = op[idx[:, None, None], op[None, :, :]]          # [a,b,z] -> a+(b+z)
    return ldiv[op[:, :, None], a_bz]


def _g3_sweep_np(op, ldiv, cap=WITNESS_CAP):
    n = op.shape[0]
    total = 0
    wits = []
    for a in range(n):
        ab = op[a]                                         # (n,)
        g = ldiv[ab[:, None], op[a, op]]                   # [b,z] -> gyr[a,b](z)
        lhs = g[np.arange(n)[:, None, None], op[None, :, :]]   # [b,z,w]
        rhs = op[g[:, :, None], g[:, None, :]]
        bad = lhs != rhs
        k = int(bad.sum())
        if k:
            total += k
            if len(wits) < cap:
                for b, z, w in np.argwhere(bad)[: cap - len(wits)]:
                    wits.append((a, int(b), int(z), int(w)))
    return n**4, total, np.array(wits, dtype=np.int64).reshape(-1, 4)


def _g4_sweep_np(op, ldiv, cap=WITNESS_CAP):
    n = op.shape[0]
    total = 0
    wits = []
    for x in range(n):
        xy = op[x]
        g_xy = ldiv[xy[:, None], op[x, op]]                    # [y,z]
        g_xyy = ldiv[op[xy, np.arange(n)][:, None],
                     op[xy[:, None], op[np.arange(n), :]]]     # [y,z] gyr[x+y,y]
        bad = g_xyy != g_xy
        k = int(bad.sum())
        if k:
            total += k
            if len(wits) < cap:
                for y, z in np.argwhere(bad)[: cap - len(wits)]:
                    wits.append((x, int(y), int(z)))
    return n**3, total, np.array(wits, dtype=np.int64).reshape(-1, 3)


def _identities_sweep_np(op, inv, ldiv, cap=WITNESS_CAP):
    """Five-identity sweep; returns (checked, totals[5], witnesses).

    Witness rows are (identity_index, x, y, z) with z = -1 for the
    pairwise identities (indices 1, 2, 3).
    """
    n = op.shape[0]
    idx = np.arange(n)
    gyr = _gyr_table_np(op, ldiv)
    totals = np.zeros(5, dtype=np.int64)
    wits = []

    def note(ident, rows, third=True):
        totals[ident] += len(rows)
        for r in rows:
            if len(wits) >= cap:
                break
            x, y = int(r[0]), int(r[1])
            z = int(r[2]) if third else -1
            wits.append((ident, x, y, z))

    # (i)  (-x)+y == ((-x)+z) + gyr[-x,z]((-z)+y)
    lhs = op[inv][:, :]                                        # [x,y]
    zy = op[inv, :]                                            # [z,y]
    b = gyr[inv[:, None, None], idx[None, :, None], zy[None, :, :]]  # [x,z,y]
    rhs = op[op[inv][:, :, None], b]                           # [x,z,y]
    bad = np.transpose(lhs[:, None, :] != rhs, (0, 2, 1))      # [x,y,z]
    note(0, np.argwhere(bad))

    # (ii)  -(a+b) == gyr[a,b]((-b)+(-a))
    lhs2 = inv[op]
    rhs2 = gyr[idx[:, None], idx[None, :], op[inv[:, None], inv[None, :]].T]
    note(1, np.argwhere(lhs2 != rhs2), third=False)

    # (iii)  x == (x+h) + gyr[x,h](-h)
    rhs3 = op[op, gyr[idx[:, None], idx[None, :], inv[None, :]]]
    note(2, np.argwhere(idx[:, None] != rhs3), third=False)

    # (iv)  (-a)+(a+b) == b  (left cancellation)
    rhs4 = op[inv[:, None], op]
    note(3, np.argwhere(rhs4 != idx[None, :]), third=False)

    # (v)  gyr[x+y,y] == gyr[x,y] pointwise (loop property restated)
    bad5 = gyr[op, idx[None, :], :] != gyr
    note(4, np.argwhere(bad5))

    checked = 2 * n**3 + 3 * n**2
    return checked, totals, np.array(wits, dtype=np.int64).reshape(-1, 4)


# ---------------------------------------------------------------------------
# analytic batch kernels, numpy backend
# ---------------------------------------------------------------------------


def _mob_add_np(a, b):
    return (a + b) / (1.0 + np.conj(a) * b)


def _mob_gyr_np(a, b, z):
    return ((1.0 + a * np.conj(b)) / (1.0 + np.conj(a) * b)) * z


def _mobius_axiom_resid_np(a, b, z, w):
    g1 = np.abs(_mob_add_np(0j, a) - a) + np.abs(_mob_add_np(a, 0j) - a)
    g2 = np.abs(_mob_add_np(-a, a)) + np.abs(_mob_add_np(a, -a))
    g3 = np.abs(
        _mob_gyr_np(a, b, _mob_add_np(z, w))
        - _mob_add_np(_mob_gyr_np(a, b, z), _mob_gyr_np(a, b, w))
    )
    g4 = np.abs(_mob_gyr_np(_mob_add_np(a, b), b, z) - _mob_gyr_np(a, b, z))
    return g1, g2, g3, g4


def _mobius_identity_resid_np(x, y, z):
    add, gyr = _mob_add_np, _mob_gyr_np
    nx = -x
    r1 = np.abs(add(nx, y) - add(add(nx, z), gyr(nx, z, add(-z, y))))
    r2 = np.abs(-add(x, y) - gyr(x, y, add(-y, -x)))
    r3 = np.abs(x - add(add(x, z), gyr(x, z, -z)))
    r4 = np.abs(add(nx, add(x, y)) - y)
    r5 = np.abs(gyr(add(x, y), y, z) - gyr(x, y, z))
    return r1, r2, r3, r4, r5


def _mobius_factor_dev_np(a, b):
    return np.abs(np.abs((1.0 + a * np.conj(b)) / (1.0 + np.conj(a) * b)) - 1.0)


def _mobius_closure_np(a, b):
    return np.abs(_mob_add_np(a, b))


def _ein_gamma_np(u, c):
    return 1.0 / np.sqrt(1.0 - (u * u).sum(-1) / c**2)


def _ein_add_np(u, v, c):
    dot = (u * v).sum(-1, keepdims=True)
    gu = _ein_gamma_np(u, c)[..., None]
    return (u + v / gu + (gu / (1.0 + gu)) * (dot / c**2) * u) / (1.0 + dot / c**2)


def _ein_gyr_np(u, v, w, c):
    uv = _ein_add_np(u, v, c)
    return _ein_add_np(-uv, _ein_add_np(u, _ein_add_np(v, w, c), c), c)


def _norm3(x):
    return np.sqrt((x * x).sum(-1))


def _einstein_axiom_resid_np(u, v, w, t, c):
    zero = np.zeros_like(u)
    g1 = _norm3(_ein_add_np(zero, u, c) - u) + _norm3(_ein_add_np(u, zero, c) - u)
    g2 = _norm3(_ein_add_np(-u, u, c)) + _norm3(_ein_add_np(u, -u, c))
    g3 = _norm3(
        _ein_gyr_np(u, v, _ein_add_np(w, t, c), c)
        - _ein_add_np(_ein_gyr_np(u, v, w, c), _ein_gyr_np(u, v, t, c), c)
    )
    g4 = _norm3(_ein_gyr_np(_ein_add_np(u, v, c), v, w, c) - _ein_gyr_np(u, v, w, c))
    return g1, g2, g3, g4


def _einstein_identity_resid_np(x, y, z, c):
    add = lambda a, b: _ein_add_np(a, b, c)
    gyr = lambda a, b, w: _ein_gyr_np(a, b, w, c)
    r1 = _norm3(add(-x, y) - add(add(-x, z), gyr(-x, z, add(-z, y))))
    r2 = _norm3(-add(x, y) - gyr(x, y, add(-y, -x)))
    r3 = _norm3(x - add(add(x, z), gyr(x, z, -z)))
    r4 = _norm3(add(-x, add(x, y)) - y)
    r5 = _norm3(gyr(add(x, y), y, z) - gyr(x, y, z))
    return r1, r2, r3, r4, r5


def _einstein_closure_np(u, v, c):
    return _norm3(_ein_add_np(u, v, c))


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

if USE_NUMBA:

    @njit(cache=True)
    def _gyr_table_nb(op, ldiv):
        n = op.shape[0]
        out = np.empty((n, n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                ab = op[a, b]
                for z in range(n):
                    out[a, b, z] = ldiv[ab, op[a, op[b, z]]]
        return out

    @njit(cache=True)
    def _g3_sweep_nb(op, ldiv, cap=WITNESS_CAP):
        n = op.shape[0]
        wits = np.empty((cap, 4), dtype=np.int64)
        total = 0
        for a in range(n):
            for b in range(n):
                ab = op[a, b]
                for z in range(n):
                    gz = ldiv[ab, op[a, op[b, z]]]
                    for w in range(n):
                        gw = ldiv[ab, op[a, op[b, w]]]
                        gzw = ldiv[ab, op[a, op[b, op[z, w]]]]
                        if gzw != op[gz, gw]:
                            if total < cap:
                                wits[total, 0] = a
                                wits[total, 1] = b
                                wits[total, 2] = z
                                wits[total, 3] = w
                            total += 1
        return n**4, total, wits[: min(total, cap)].copy()

    @njit(cache=True)
    def _g4_sweep_nb(op, ldiv, cap=WITNESS_CAP):
        n = op.shape[0]
        wits = np.empty((cap, 3), dtype=np.int64)
        total = 0
        for x in range(n):
            for y in range(n):
                xy = op[x, y]
                xyy = op[xy, y]
                for z in range(n):
                    lhs = ldiv[xyy, op[xy, op[y, z]]]
                    rhs = ldiv[xy, op[x, op[y, z]]]
                    if lhs != rhs:
                        if total < cap:
                            wits[total, 0] = x
                            wits[total, 1] = y
                            wits[total, 2] = z
                        total += 1
        return n**3, total, wits[: min(total, cap)].copy()

    @njit(cache=True)
    def _identities_sweep_nb(op, inv, ldiv, cap=WITNESS_CAP):
        n = op.shape[0]
        totals = np.zeros(5, dtype=np.int64)
        wits = np.empty((cap, 4), dtype=np.int64)
        filled = 0

        # (i) triples, in the same x,y,z order as the numpy backend
        for x in range(n):
            nx = inv[x]
            for y in range(n):
                lhs = op[nx, y]
                for z in range(n):
                    nxz = op[nx, z]
                    zy = op[inv[z], y]
                    g = ldiv[nxz, op[nx, op[z, zy]]]
                    if lhs != op[nxz, g]:
                        if filled < cap:
                            wits[filled, 0] = 0
                            wits[filled, 1] = x
                            wits[filled, 2] = y
                            wits[filled, 3] = z
                            filled += 1
                        totals[0] += 1
        # (ii), (iii), (iv) pairs
        for ident in range(1, 4):
            for x in range(n):
                for y in range(n):
                    xy = op[x, y]
                    if ident == 1:
                        ok = inv[xy] == ldiv[xy, op[x, op[y, op[inv[y], inv[x]]]]]
                    elif ident == 2:
                        ok = x == op[xy, ldiv[xy, op[x, op[y, inv[y]]]]]
                    else:
                        ok = op[inv[x], xy] == y
                    if not ok:
                        if filled < cap:
                            wits[filled, 0] = ident
                            wits[filled, 1] = x
                            wits[filled, 2] = y
                            wits[filled, 3] = -1
                            filled += 1
                        totals[ident] += 1
        # (v) triples
        for x in range(n):
            for y in range(n):
                xy = op[x, y]
                xyy = op[xy, y]
                for z in range(n):
                    lhs = ldiv[xyy, op[xy, op[y, z]]]
                    rhs = ldiv[xy, op[x, op[y, z]]]
                    if lhs != rhs:
                        if filled < cap:
                            wits[filled, 0] = 4
                            wits[filled, 1] = x
                            wits[filled, 2] = y
                            wits[filled, 3] = z
                            filled += 1
                        totals[4] += 1
        checked = 2 * n**3 + 3 * n**2
        return checked, totals, wits[:filled].copy()

    @njit(cache=True, inline="always")
    def _mob_add_s(a, b):
        return (a + b) / (1.0 + np.conj(a) * b)

    @njit(cache=True, inline="always")
    def _mob_gyr_s(a, b, z):
        return ((1.0 + a * np.conj(b)) / (1.0 + np.conj(a) * b)) * z

    @njit(cache=True)
    def _mobius_axiom_resid_nb(a, b, z, w):
        m = a.shape[0]
        g1 = np.empty(m)
        g2 = np.empty(m)
        g3 = np.empty(m)
        g4 = np.empty(m)
        for i in range(m):
            ai, bi, zi, wi = a[i], b[i], z[i], w[i]
            g1[i] = abs(_mob_add_s(0j, ai) - ai) + abs(_mob_add_s(ai, 0j) - ai)
            g2[i] = abs(_mob_add_s(-ai, ai)) + abs(_mob_add_s(ai, -ai))
            g3[i] = abs(
                _mob_gyr_s(ai, bi, _mob_add_s(zi, wi))
                - _mob_add_s(_mob_gyr_s(ai, bi, zi), _mob_gyr_s(ai, bi, wi))
            )
            g4[i] = abs(_mob_gyr_s(_mob_add_s(ai, bi), bi, zi) - _mob_gyr_s(ai, bi, zi))
        return g1, g2, g3, g4

    @njit(cache=True)
    def _mobius_identity_resid_nb(x, y, z):
        m = x.shape[0]
        r1 = np.empty(m)
        r2 = np.empty(m)
        r3 = np.empty(m)
        r4 = np.empty(m)
        r5 = np.empty(m)
        for i in range(m):
            xi, yi, zi = x[i], y[i], z[i]
            nx = -xi
            r1[i] = abs(
                _mob_add_s(nx, yi)
                - _mob_add_s(_mob_add_s(nx, zi), _mob_gyr_s(nx, zi, _mob_add_s(-zi, yi)))
            )
            r2[i] = abs(-_mob_add_s(xi, yi) - _mob_gyr_s(xi, yi, _mob_add_s(-yi, nx)))
            r3[i] = abs(xi - _mob_add_s(_mob_add_s(xi, zi), _mob_gyr_s(xi, zi, -zi)))
            r4[i] = abs(_mob_add_s(nx, _mob_add_s(xi, yi)) - yi)
            r5[i] = abs(_mob_gyr_s(_mob_add_s(xi, yi), yi, zi) - _mob_gyr_s(xi, yi, zi))
        return r1, r2, r3, r4, r5

    @njit(cache=True)
    def _mobius_factor_dev_nb(a, b):
        m = a.shape[0]
        out = np.empty(m)
        for i in range(m):
            out[i] = abs(abs((1.0 + a[i] * np.conj(b[i])) / (1.0 + np.conj(a[i]) * b[i])) - 1.0)
        return out

    @njit(cache=True)
    def _mobius_closure_nb(a, b):
        m = a.shape[0]
        out = np.empty(m)
        for i in range(m):
            out[i] = abs(_mob_add_s(a[i], b[i]))
        return out

    @njit(cache=True, inline="always")
    def _ein_gamma_s(u, c):
        return 1.0 / np.sqrt(1.0 - (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]) / (c * c))

    @njit(cache=True)
    def _ein_add_s(u, v, c):
        dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
        gu = _ein_gamma_s(u, c)
        f = 1.0 / (1.0 + dot / (c * c))
        coef = (gu / (1.0 + gu)) * dot / (c * c)
        out = np.empty(3)
        for k in range(3):
            out[k] = f * (u[k] + v[k] / gu + coef * u[k])
        return out

    @njit(cache=True)
    def _ein_gyr_s(u, v, w, c):
        uv = _ein_add_s(u, v, c)
        return _ein_add_s(-uv, _ein_add_s(u, _ein_add_s(v, w, c), c), c)

    @njit(cache=True, inline="always")
    def _dist3(p, q):
        return np.sqrt((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 + (p[2] - q[2]) ** 2)

    @njit(cache=True)
    def _einstein_axiom_resid_nb(u, v, w, t, c):
        m = u.shape[0]
        g1 = np.empty(m)
        g2 = np.empty(m)
        g3 = np.empty(m)
        g4 = np.empty(m)
        zero = np.zeros(3)
        for i in range(m):
            ui, vi, wi, ti = u[i], v[i], w[i], t[i]
            g1[i] = _dist3(_ein_add_s(zero, ui, c), ui) + _dist3(_ein_add_s(ui, zero, c), ui)
            g2[i] = _dist3(_ein_add_s(-ui, ui, c), zero) + _dist3(_ein_add_s(ui, -ui, c), zero)
            g3[i] = _dist3(
                _ein_gyr_s(ui, vi, _ein_add_s(wi, ti, c), c),
                _ein_add_s(_ein_gyr_s(ui, vi, wi, c), _ein_gyr_s(ui, vi, ti, c), c),
            )
            g4[i] = _dist3(
                _ein_gyr_s(_ein_add_s(ui, vi, c), vi, wi, c), _ein_gyr_s(ui, vi, wi, c)
            )
        return g1, g2, g3, g4

    @njit(cache=True)
    def _einstein_identity_resid_nb(x, y, z, c):
        m = x.shape[0]
        r1 = np.empty(m)
        r2 = np.empty(m)
        r3 = np.empty(m)
        r4 = np.empty(m)
        r5 = np.empty(m)
        for i in range(m):
            xi, yi, zi = x[i], y[i], z[i]
            r1[i] = _dist3(
                _ein_add_s(-xi, yi, c),
                _ein_add_s(
                    _ein_add_s(-xi, zi, c),
                    _ein_gyr_s(-xi, zi, _ein_add_s(-zi, yi, c), c),
                    c,
                ),
            )
            r2[i] = _dist3(
                -_ein_add_s(xi, yi, c),
                _ein_gyr_s(xi, yi, _ein_add_s(-yi, -xi, c), c),
            )
            r3[i] = _dist3(
                xi, _ein_add_s(_ein_add_s(xi, zi, c), _ein_gyr_s(xi, zi, -zi, c), c)
            )
            r4[i] = _dist3(_ein_add_s(-xi, _ein_add_s(xi, yi, c), c), yi)
            r5[i] = _dist3(
                _ein_gyr_s(_ein_add_s(xi, yi, c), yi, zi, c), _ein_gyr_s(xi, yi, zi, c)
            )
        return r1, r2, r3, r4, r5

    @njit(cache=True)
    def _einstein_closure_nb(u, v, c):
        m = u.shape[0]
        out = np.empty(m)
        for i in range(m):
            s = _ein_add_s(u[i], v[i], c)
            out[i] = np.sqrt(s[0] ** 2 + s[1] ** 2 + s[2] ** 2)
        return out


_NUMPY_IMPLS = {
    "gyr_table": _gyr_table_np,
    "g3_sweep": _g3_sweep_np,
    "g4_sweep": _g4_sweep_np,
    "identities_sweep": _identities_sweep_np,
    "mobius_axiom_resid": _mobius_axiom_resid_np,
    "mobius_identity_resid": _mobius_identity_resid_np,
    "mobius_factor_dev": _mobius_factor_dev_np,
    "mobius_closure": _mobius_closure_np,
    "einstein_axiom_resid": _einstein_axiom_resid_np,
    "einstein_identity_resid": _einstein_identity_resid_np,
    "einstein_closure": _einstein_closure_np,
}

if USE_NUMBA:
    _NUMBA_IMPLS = {
        "gyr_table": _gyr_table_nb,
        "g3_sweep": _g3_sweep_nb,
        "g4_sweep": _g4_sweep_nb,
        "identities_sweep": _identities_sweep_nb,
        "mobius_axiom_resid": _mobius_axiom_resid_nb,
        "mobius_identity_resid": _mobius_identity_resid_nb,
        "mobius_factor_dev": _mobius_factor_dev_nb,
        "mobius_closure": _mobius_closure_nb,
        "einstein_axiom_resid": _einstein_axiom_resid_nb,
        "einstein_identity_resid": _einstein_identity_resid_nb,
        "einstein_closure": _einstein_closure_nb,
    }
else:
    _NUMBA_IMPLS = None

BACKENDS = {"numpy": _NUMPY_IMPLS, "numba": _NUMBA_IMPLS}

_active = _NUMBA_IMPLS if USE_NUMBA else _NUMPY_IMPLS

gyr_table = _active["gyr_table"]
g3_sweep = _active["g3_sweep"]
g4_sweep = _active["g4_sweep"]
identities_sweep = _active["identities_sweep"]
mobius_axiom_resid = _active["mobius_axiom_resid"]
mobius_identity_resid = _active["mobius_identity_resid"]
mobius_factor_dev = _active["mobius_factor_dev"]
mobius_closure = _active["mobius_closure"]
einstein_axiom_resid = _active["einstein_axiom_resid"]
einstein_identity_resid = _active["einstein_identity_resid"]
einstein_closure = _active["einstein_closure"]
