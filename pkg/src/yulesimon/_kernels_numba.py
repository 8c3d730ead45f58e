"""numba backend: scalar JIT kernels over the counter-based stream layout.

Mirrors the public surface of ``_kernels_numpy``; the two modules must
consume identical (key, call, index, j) addresses so either backend
reproduces its own output exactly and both agree at the integer-stream
level.
"""

import math

import numpy as np
from numba import njit

from . import _streams
from ._streams import ppnd16 as _ppnd16_py

U0 = np.uint64(0)
U1 = np.uint64(1)
U2 = np.uint64(2)
U3 = np.uint64(3)
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

TWO53_INV = _streams.TWO53_INV
DBL_MIN = _streams.DBL_MIN
UNIT_MAX = _streams.UNIT_MAX
INT64_CAP = _streams.INT64_CAP

XB_GUARD = 700.0
ADAPT_WINDOW = 200
ACCEPT_LOW = 0.15
ACCEPT_HIGH = 0.45
ADAPT_GROW = 1.25
ADAPT_SHRINK = 0.8

ppnd16 = njit(cache=True)(_ppnd16_py)


@njit(cache=True)
def mix64(z):
    z = (z ^ (z >> S30)) * M1
    z = (z ^ (z >> S27)) * M2
    return z ^ (z >> S31)


@njit(cache=True)
def vkey(key, call, index):
    return mix64(mix64(key + call * GOLD) ^ (index * GOLD2))


@njit(cache=True)
def draw(vk, j):
    return mix64(vk + j * GOLD)


@njit(cache=True)
def unit(h):
    return (np.float64(h >> S11) + 0.5) * TWO53_INV


@njit(cache=True)
def std_gamma(gk, shape):
    # Marsaglia-Tsang with a boost draw at j=0 when shape < 1; every
    # rejection attempt consumes exactly two substream words so the
    # consumption pattern is data-independent given the accept path.
    if shape < 1.0:
        u_boost = unit(draw(gk, U0))
        j = U1
        d = (shape + 1.0) - 1.0 / 3.0
    else:
        u_boost = 0.0
        j = U0
        d = shape - 1.0 / 3.0
    c = 1.0 / (3.0 * math.sqrt(d))
    while True:
        x = ppnd16(unit(draw(gk, j)))
        u = unit(draw(gk, j + U1))
        j += U2
        t = 1.0 + c * x
        v = t * t * t
        if v <= 0.0:
            continue
        if math.log(u) < 0.5 * x * x + d - d * v + d * math.log(v):
            g = d * v
            break
    if shape < 1.0:
        g *= math.exp(math.log(u_boost) / shape)
    if g < DBL_MIN:
        g = DBL_MIN
    return g


@njit(cache=True)
def beta_draw(vk, alpha, beta_param):
    g1 = std_gamma(mix64(vk ^ LANE_A), alpha)
    g2 = std_gamma(mix64(vk ^ LANE_B), beta_param)
    t = g1 / (g1 + g2)
    if t < DBL_MIN:
        t = DBL_MIN
    elif t > UNIT_MAX:
        t = UNIT_MAX
    return t


@njit(cache=True)
def geometric_from_unit(u, log1m_p):
    # Inverse-CDF geometric on support {1, 2, ...}; log1m_p = log(1-p).
    # log1m_p == -inf (p == 1) gives r == 0 and the floor returns 1.
    r = math.log(u) / log1m_p
    if r >= 9.0e18:
        return INT64_CAP
    k = np.int64(math.ceil(r))
    if k < 1:
        return np.int64(1)
    return k


@njit(cache=True)
def yule_draw(vk, rho):
    # Exponential(rho) mixing weight, then geometric with p = 1 - e^{-w}.
    # e^{-w} is kept strictly below 1 so log1p stays in-domain; the
    # affected w are below one ulp and force k = 1 regardless.
    w = -math.log(unit(draw(vk, U0))) / rho
    em = math.exp(-w)
    if em > UNIT_MAX:
        em = UNIT_MAX
    log1m_p = math.log1p(-em)
    u = unit(draw(vk, U1))
    return geometric_from_unit(u, log1m_p)


@njit(cache=True)
def uniforms(key, call, n):
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = unit(draw(vkey(key, call, np.uint64(i)), U0))
    return out


@njit(cache=True)
def normals(key, call, n):
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = ppnd16(unit(draw(vkey(key, call, np.uint64(i)), U0)))
    return out


@njit(cache=True)
def gammas(key, call, shape, rate, n):
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = std_gamma(vkey(key, call, np.uint64(i)), shape) / rate
    return out


@njit(cache=True)
def betas(key, call, alpha, beta_param, n):
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = beta_draw(vkey(key, call, np.uint64(i)), alpha, beta_param)
    return out


@njit(cache=True)
def geometrics(key, call, p, n):
    log1m_p = -math.inf if p >= 1.0 else math.log1p(-p)
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        u = unit(draw(vkey(key, call, np.uint64(i)), U0))
        out[i] = geometric_from_unit(u, log1m_p)
    return out


@njit(cache=True)
def yule_draws(key, call, rho):
    n = rho.shape[0]
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        out[i] = yule_draw(vkey(key, call, np.uint64(i)), rho[i])
    return out


@njit(cache=True)
def iid_sweep(key, call_w, call_r, rho, k, a, b):
    # One data-augmentation sweep: latent t_i ~ Beta(rho+1, k_i),
    # w_i = -log t_i, then rho ~ Gamma(a + n, rate = b + sum w).
    n = k.shape[0]
    alpha = rho + 1.0
    w_sum = 0.0
    for i in range(n):
        t = beta_draw(vkey(key, call_w, np.uint64(i)), alpha, np.float64(k[i]))
        w_sum += -math.log(t)
    g = std_gamma(vkey(key, call_r, U0), a + n)
    return g / (b + w_sum), w_sum


@njit(cache=True)
def iid_chain(key, counter0, k, a, b, iterations, rho0):
    out = np.empty(iterations, dtype=np.float64)
    rho = rho0
    for t in range(iterations):
        call_w = counter0 + np.uint64(2 * t)
        rho, _ = iid_sweep(key, call_w, call_w + U1, rho, k, a, b)
        out[t] = rho
    return out


@njit(cache=True)
def reg_sweep(key, base_call, beta, k, x, scale):
    # One regression sweep: redraw all w_i at the current beta, then a
    # random-walk Metropolis update of beta against
    # L(b) = sum_i (x_i'b - exp(x_i'b) w_i) - 0.5 b'b.
    n, p = x.shape
    xb = np.empty(n, dtype=np.float64)
    for i in range(n):
        acc = 0.0
        for j in range(p):
            acc += x[i, j] * beta[j]
        xb[i] = acc

    w = np.empty(n, dtype=np.float64)
    for i in range(n):
        t = beta_draw(vkey(key, base_call, np.uint64(i)),
                      math.exp(xb[i]) + 1.0, np.float64(k[i]))
        w[i] = -math.log(t)

    prop = np.empty(p, dtype=np.float64)
    for j in range(p):
        z = ppnd16(unit(draw(vkey(key, base_call + U1, np.uint64(j)), U0)))
        prop[j] = beta[j] + scale * z
    u = unit(draw(vkey(key, base_call + U2, U0), U0))

    in_guard = True
    xb_prop = np.empty(n, dtype=np.float64)
    for i in range(n):
        acc = 0.0
        for j in range(p):
            acc += x[i, j] * prop[j]
        if abs(acc) >= XB_GUARD:
            in_guard = False
            break
        xb_prop[i] = acc

    accepted = np.int64(0)
    if in_guard:
        log_cur = 0.0
        log_prop = 0.0
        for i in range(n):
            log_cur += xb[i] - math.exp(xb[i]) * w[i]
            log_prop += xb_prop[i] - math.exp(xb_prop[i]) * w[i]
        for j in range(p):
            log_cur -= 0.5 * beta[j] * beta[j]
            log_prop -= 0.5 * prop[j] * prop[j]
        if math.log(u) < log_prop - log_cur:
            accepted = np.int64(1)
    if accepted == 1:
        return prop, accepted
    return beta.copy(), accepted


@njit(cache=True)
def reg_chain(key, counter0, k, x, iterations, beta0, scale0, adapt_until):
    n, p = x.shape
    out = np.empty((iterations, p), dtype=np.float64)
    beta = beta0.copy()
    scale = scale0
    accepted_post = np.int64(0)
    window_hits = 0
    for t in range(iterations):
        base_call = counter0 + np.uint64(3 * t)
        beta, accepted = reg_sweep(key, base_call, beta, k, x, scale)
        for j in range(p):
            out[t, j] = beta[j]
        if t < adapt_until:
            window_hits += accepted
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


@njit(cache=True)
def mh_fixed_w_chain(key, counter0, w, x, iterations, beta0, scale):
    # Metropolis on beta with the latent w held fixed; two stream calls
    # per iteration (proposal vector, accept uniform).  Exposes the MH
    # half of reg_sweep against analytically known targets.
    n, p = x.shape
    out = np.empty((iterations, p), dtype=np.float64)
    beta = beta0.copy()
    prop = np.empty(p, dtype=np.float64)
    for t in range(iterations):
        base_call = counter0 + np.uint64(2 * t)
        for j in range(p):
            z = ppnd16(unit(draw(vkey(key, base_call, np.uint64(j)), U0)))
            prop[j] = beta[j] + scale * z
        u = unit(draw(vkey(key, base_call + U1, U0), U0))

        in_guard = True
        log_cur = 0.0
        log_prop = 0.0
        for i in range(n):
            acc_c = 0.0
            acc_p = 0.0
            for j in range(p):
                acc_c += x[i, j] * beta[j]
                acc_p += x[i, j] * prop[j]
            if abs(acc_p) >= XB_GUARD:
                in_guard = False
                break
            log_cur += acc_c - math.exp(acc_c) * w[i]
            log_prop += acc_p - math.exp(acc_p) * w[i]
        if in_guard:
            for j in range(p):
                log_cur -= 0.5 * beta[j] * beta[j]
                log_prop -= 0.5 * prop[j] * prop[j]
            if math.log(u) < log_prop - log_cur:
                for j in range(p):
                    beta[j] = prop[j]
        for j in range(p):
            out[t, j] = beta[j]
    return out
