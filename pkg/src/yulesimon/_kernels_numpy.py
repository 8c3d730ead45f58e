"""numpy backend: vectorized kernels over the counter-based stream layout.

Pure-numpy twin of ``_kernels_numba``.  Rejection samplers run masked
rounds over the still-pending variates; because each variate owns a
private substream and every attempt consumes a fixed number of words,
round ``m`` here reads exactly the words the scalar backend reads on its
``m``-th attempt.  Scalar hash arithmetic is delegated to the pure-Python
helpers in ``_streams`` (numpy warns on uint64 scalar overflow; arrays
wrap silently).
"""

import math

import numpy as np

from . import _streams
from ._streams import (DBL_MIN, INT64_CAP, MASK64, TWO53_INV, UNIT_MAX,
                       PPND16_A, PPND16_B, PPND16_C, PPND16_D, PPND16_E,
                       PPND16_F)

S11 = np.uint64(11)
S27 = np.uint64(27)
S30 = np.uint64(30)
S31 = np.uint64(31)

M1 = np.uint64(_streams.MIX_M1)
M2 = np.uint64(_streams.MIX_M2)
GOLD = np.uint64(_streams.GOLD)
GOLD2 = np.uint64(_streams.GOLD2)
LANE_A = np.uint64(_streams.LANE_A)
LANE_B = np.uint64(_streams.LANE_B)

XB_GUARD = 700.0
ADAPT_WINDOW = 200
ACCEPT_LOW = 0.15
ACCEPT_HIGH = 0.45
ADAPT_GROW = 1.25
ADAPT_SHRINK = 0.8


def mix64(z):
    """splitmix64 finalizer on a uint64 ndarray."""
    z = (z ^ (z >> S30)) * M1
    z = (z ^ (z >> S27)) * M2
    return z ^ (z >> S31)


def _call_key(key, call):
    # Scalar part of the variate address, done in Python ints.
    return _streams.mix64((int(key) + int(call) * _streams.GOLD) & MASK64)


def vkeys(key, call, index):
    """Vector of per-variate keys; ``index`` is a uint64 ndarray."""
    ck = np.uint64(_call_key(key, call))
    return mix64(ck ^ (index * GOLD2))


def draws(vk, j):
    """j-th substream word for each variate key in ``vk``."""
    return mix64(vk + j * GOLD)


def units(h):
    return ((h >> S11).astype(np.float64) + 0.5) * TWO53_INV


def _horner(coef, r):
    acc = np.full_like(r, coef[-1])
    for c in coef[-2::-1]:
        acc = acc * r + c
    return acc


def ppnd16_vec(p):
    """Standard normal quantile, elementwise on an array in (0, 1)."""
    p = np.asarray(p, dtype=np.float64)
    q = p - 0.5
    out = np.empty_like(p)

    central = np.abs(q) <= 0.425
    if central.any():
        r = 0.180625 - q[central] * q[central]
        out[central] = q[central] * _horner(PPND16_A, r) / _horner(PPND16_B, r)

    tail = ~central
    if tail.any():
        qt = q[tail]
        r = np.where(qt < 0.0, p[tail], 1.0 - p[tail])
        r = np.sqrt(-np.log(r))
        near = r <= 5.0
        z = np.empty_like(r)
        rn = r[near] - 1.6
        z[near] = _horner(PPND16_C, rn) / _horner(PPND16_D, rn)
        rf = r[~near] - 5.0
        z[~near] = _horner(PPND16_E, rf) / _horner(PPND16_F, rf)
        out[tail] = np.where(qt < 0.0, -z, z)
    return out


def std_gamma_vec(gkeys, shapes):
    """Marsaglia-Tsang draws, one per key; shapes broadcast against keys."""
    gkeys = np.atleast_1d(gkeys)
    shapes = np.broadcast_to(np.asarray(shapes, dtype=np.float64), gkeys.shape)
    n = gkeys.size
    g = np.empty(n, dtype=np.float64)

    boost = shapes < 1.0
    d = np.where(boost, shapes + 1.0, shapes) - 1.0 / 3.0
    c = 1.0 / (3.0 * np.sqrt(d))
    base_j = boost.astype(np.uint64)

    pending = np.arange(n)
    attempt = 0
    while pending.size:
        gk = gkeys[pending]
        bj = base_j[pending]
        x = ppnd16_vec(units(draws(gk, bj + np.uint64(2 * attempt))))
        u = units(draws(gk, bj + np.uint64(2 * attempt + 1)))
        dd = d[pending]
        t = 1.0 + c[pending] * x
        v = t * t * t
        pos = v > 0.0
        log_v = np.zeros_like(v)
        log_v[pos] = np.log(v[pos])
        ok = pos & (np.log(u) < 0.5 * x * x + dd - dd * v + dd * log_v)
        hit = pending[ok]
        g[hit] = d[hit] * v[ok]
        pending = pending[~ok]
        attempt += 1

    if boost.any():
        u_boost = units(draws(gkeys[boost], np.uint64(0)))
        g[boost] = g[boost] * np.exp(np.log(u_boost) / shapes[boost])
    np.maximum(g, DBL_MIN, out=g)
    return g


def beta_vec(vk, alphas, betas_param):
    g1 = std_gamma_vec(mix64(vk ^ LANE_A), alphas)
    g2 = std_gamma_vec(mix64(vk ^ LANE_B), betas_param)
    t = g1 / (g1 + g2)
    return np.clip(t, DBL_MIN, UNIT_MAX)


def _geometric_from_units(u, log1m_p):
    with np.errstate(invalid="ignore"):
        r = np.log(u) / log1m_p
    out = np.empty(u.shape, dtype=np.int64)
    huge = r >= 9.0e18
    out[huge] = INT64_CAP
    out[~huge] = np.ceil(r[~huge]).astype(np.int64)
    np.maximum(out, 1, out=out)
    return out


def _index_vec(n):
    return np.arange(n, dtype=np.uint64)


def uniforms(key, call, n):
    return units(draws(vkeys(key, call, _index_vec(n)), np.uint64(0)))


def normals(key, call, n):
    return ppnd16_vec(uniforms(key, call, n))


def gammas(key, call, shape, rate, n):
    return std_gamma_vec(vkeys(key, call, _index_vec(n)), shape) / rate


def betas(key, call, alpha, beta_param, n):
    return beta_vec(vkeys(key, call, _index_vec(n)), alpha, beta_param)


def geometrics(key, call, p, n):
    log1m_p = -math.inf if p >= 1.0 else math.log1p(-p)
    return _geometric_from_units(uniforms(key, call, n), log1m_p)


def yule_draws(key, call, rho):
    rho = np.asarray(rho, dtype=np.float64)
    vk = vkeys(key, call, _index_vec(rho.size))
    w = -np.log(units(draws(vk, np.uint64(0)))) / rho
    em = np.minimum(np.exp(-w), UNIT_MAX)
    log1m_p = np.log1p(-em)
    u = units(draws(vk, np.uint64(1)))
    return _geometric_from_units(u, log1m_p)


def iid_sweep(key, call_w, call_r, rho, k, a, b):
    n = k.shape[0]
    t = beta_vec(vkeys(key, call_w, _index_vec(n)),
                 rho + 1.0, k.astype(np.float64))
    w_sum = float(-np.log(t).sum())
    g = std_gamma_vec(vkeys(key, call_r, _index_vec(1)), a + n)[0]
    return g / (b + w_sum), w_sum


def iid_chain(key, counter0, k, a, b, iterations, rho0):
    out = np.empty(iterations, dtype=np.float64)
    rho = rho0
    kf = k.astype(np.float64)
    idx = _index_vec(k.shape[0])
    idx1 = _index_vec(1)
    c0 = int(counter0)
    a_post = a + k.shape[0]
    for t in range(iterations):
        tv = beta_vec(vkeys(key, np.uint64(c0 + 2 * t), idx), rho + 1.0, kf)
        w_sum = float(-np.log(tv).sum())
        g = std_gamma_vec(vkeys(key, np.uint64(c0 + 2 * t + 1), idx1), a_post)[0]
        rho = g / (b + w_sum)
        out[t] = rho
    return out


def _row_dot(x, beta):
    # (x * beta).sum over rows; avoids BLAS so reductions stay
    # bit-reproducible run to run.
    return (x * beta).sum(axis=1)


def reg_sweep(key, base_call, beta, k, x, scale):
    n, p = x.shape
    base = int(base_call)
    xb = _row_dot(x, beta)
    t = beta_vec(vkeys(key, np.uint64(base), _index_vec(n)),
                 np.exp(xb) + 1.0, k.astype(np.float64))
    w = -np.log(t)

    z = normals(key, np.uint64(base + 1), p)
    prop = beta + scale * z
    u = _streams.uniform_at(int(key), base + 2, 0)

    xb_prop = _row_dot(x, prop)
    accepted = np.int64(0)
    if np.abs(xb_prop).max() < XB_GUARD:
        log_cur = float((xb - np.exp(xb) * w).sum()) - 0.5 * float(beta @ beta)
        log_prop = (float((xb_prop - np.exp(xb_prop) * w).sum())
                    - 0.5 * float(prop @ prop))
        if math.log(u) < log_prop - log_cur:
            accepted = np.int64(1)
    return (prop if accepted else beta.copy()), accepted


def reg_chain(key, counter0, k, x, iterations, beta0, scale0, adapt_until):
    n, p = x.shape
    out = np.empty((iterations, p), dtype=np.float64)
    beta = beta0.copy()
    scale = scale0
    accepted_post = np.int64(0)
    window_hits = 0
    c0 = int(counter0)
    for t in range(iterations):
        beta, accepted = reg_sweep(key, np.uint64(c0 + 3 * t), beta, k, x, scale)
        out[t] = beta
        if t < adapt_until:
            window_hits += int(accepted)
            if (t + 1) % ADAPT_WINDOW == 0:
                rate = window_hits / ADAPT_WINDOW
                if rate < ACCEPT_LOW:
                    scale *= ADAPT_SHRINK
                elif rate > ACCEPT_HIGH:
                    scale *= ADAPT_GROW
                window_hits = 0
        else:
            accepted_post += accepted
    return out, accepted_post, scale


def mh_fixed_w_chain(key, counter0, w, x, iterations, beta0, scale):
    n, p = x.shape
    out = np.empty((iterations, p), dtype=np.float64)
    beta = beta0.copy()
    c0 = int(counter0)
    for t in range(iterations):
        z = normals(key, np.uint64(c0 + 2 * t), p)
        prop = beta + scale * z
        u = _streams.uniform_at(int(key), c0 + 2 * t + 1, 0)

        xb_prop = _row_dot(x, prop)
        if np.abs(xb_prop).max() < XB_GUARD:
            xb = _row_dot(x, beta)
            log_cur = float((xb - np.exp(xb) * w).sum()) - 0.5 * float(beta @ beta)
            log_prop = (float((xb_prop - np.exp(xb_prop) * w).sum())
                        - 0.5 * float(prop @ prop))
            if math.log(u) < log_prop - log_cur:
                beta = prop
        out[t] = beta
    return out
