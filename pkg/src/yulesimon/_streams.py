"""Counter-based random stream layout shared by both compute backends.

Every variate drawn anywhere in the package is addressed by a triple
``(key, call, index)``:

* ``key``    -- 64-bit stream key, derived from the user seed,
* ``call``   -- which batch call on the stream (the ``RngState`` counter),
* ``index``  -- position inside the batch.

``vkey(key, call, index)`` hashes the triple into a per-variate key, and
rejection samplers walk a private substream ``draw(vkey, j)`` for
``j = 0, 1, 2, ...``.  Because the address fully determines the output,
batch calls can be evaluated scalar-by-scalar (numba backend) or as masked
array passes (numpy backend) and still consume identical substreams.

The hash is the splitmix64 finalizer.  This module keeps the pure-Python
integer implementation used for key derivation and for pinning the layout
in tests; the hot-loop copies live in the backend kernel modules.
"""

import math

MASK64 = (1 << 64) - 1

# splitmix64 finalizer multipliers/shifts and the two Weyl increments.
MIX_M1 = 0xBF58476D1CE4E5B9
MIX_M2 = 0x94D049BB133111EB
GOLD = 0x9E3779B97F4A7C15
GOLD2 = 0xC2B2AE3D27D4EB4F

# Domain-separation salts: child-stream spawning, integer sub-seeds, and
# the two gamma lanes inside a beta draw.
SALT_SPAWN = 0xA5B4C3D2E1F00F1E
SALT_SEED = 0x5851F42D4C957F2D
LANE_A = 0x8E2BD5A4C6F31B09
LANE_B = 0x6C8E944D1F5AA3B7

# Smallest positive normal double; open-unit-interval ceiling.
DBL_MIN = 2.2250738585072014e-308
UNIT_MAX = 1.0 - 2.0 ** -53
TWO53_INV = 2.0 ** -53

# ceil() results above this are clamped; keeps int64 conversion safe.
INT64_CAP = (1 << 63) - 1024


def mix64(z: int) -> int:
    """splitmix64 finalizer on plain Python integers (mod 2**64)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX_M1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_M2) & MASK64
    return z ^ (z >> 31)


def key_from_seed(seed: int) -> int:
    return mix64(seed ^ GOLD2)


def child_key(key: int, index: int) -> int:
    return mix64(key ^ mix64((SALT_SPAWN + index * GOLD) & MASK64))


def child_seed(key: int, index: int) -> int:
    return mix64(key ^ mix64((SALT_SEED + index * GOLD) & MASK64))


def vkey(key: int, call: int, index: int) -> int:
    """Per-variate key for batch ``call``, element ``index``."""
    h = mix64((key + call * GOLD) & MASK64)
    return mix64(h ^ ((index * GOLD2) & MASK64))


def draw(vk: int, j: int) -> int:
    """j-th raw 64-bit word of the variate's private substream."""
    return mix64((vk + j * GOLD) & MASK64)


def unit(h: int) -> float:
    """Map a 64-bit word to the open interval (0, 1)."""
    return ((h >> 11) + 0.5) * TWO53_INV


def uniform_at(key: int, call: int, index: int) -> float:
    return unit(draw(vkey(key, call, index), 0))


# Coefficients of the PPND16 rational approximations to the standard
# normal quantile function (Wichura's algorithm AS 241, double precision).
# Numerator/denominator pairs for the central, middle and tail regions;
# denominators carry their leading constant 1.0 so a single Horner pass
# evaluates both.
PPND16_A = (
    3.3871328727963666080e0,
    1.3314166789178437745e2,
    1.9715909503065514427e3,
    1.3731693765509461125e4,
    4.5921953931549871457e4,
    6.7265770927008700853e4,
    3.3430575583588128105e4,
    2.5090809287301226727e3,
)
PPND16_B = (
    1.0,
    4.2313330701600911252e1,
    6.8718700749205790830e2,
    5.3941960214247511077e3,
    2.1213794301586595867e4,
    3.9307895800092710610e4,
    2.8729085735721942674e4,
    5.2264952788528545610e3,
)
PPND16_C = (
    1.42343711074968357734e0,
    4.63033784615654529590e0,
    5.76949722146069140550e0,
    3.64784832476320460504e0,
    1.27045825245236838258e0,
    2.41780725177450611770e-1,
    2.27238449892691845833e-2,
    7.74545014278341407640e-4,
)
PPND16_D = (
    1.0,
    2.05319162663775882187e0,
    1.67638483018380384940e0,
    6.89767334985100004550e-1,
    1.48103976427480074590e-1,
    1.51986665636164571966e-2,
    5.47593808499534494600e-4,
    1.05075007164441684324e-9,
)
PPND16_E = (
    6.65790464350110377720e0,
    5.46378491116411436990e0,
    1.78482653991729133580e0,
    2.96560571828504891230e-1,
    2.65321895265761230930e-2,
    1.24266094738807843860e-3,
    2.71155556874348757815e-5,
    2.01033439929228813265e-7,
)
PPND16_F = (
    1.0,
    5.99832206555887937690e-1,
    1.36929880922735805310e-1,
    1.48753612908506148525e-2,
    7.86869131145613259100e-4,
    1.84631831751005468180e-5,
    1.42151175831644588870e-7,
    2.04426310338993978564e-15,
)


def ppnd16(p: float) -> float:
    """Standard normal quantile (inverse CDF) for p in (0, 1).

    Rational approximation accurate to about 1e-16; written with plain
    math calls so the numba backend can JIT this exact function.
    """
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        num = (((((((PPND16_A[7] * r + PPND16_A[6]) * r + PPND16_A[5]) * r
                   + PPND16_A[4]) * r + PPND16_A[3]) * r + PPND16_A[2]) * r
                + PPND16_A[1]) * r + PPND16_A[0])
        den = (((((((PPND16_B[7] * r + PPND16_B[6]) * r + PPND16_B[5]) * r
                   + PPND16_B[4]) * r + PPND16_B[3]) * r + PPND16_B[2]) * r
                + PPND16_B[1]) * r + PPND16_B[0])
        return q * num / den
    if q < 0.0:
        r = p
    else:
        r = 1.0 - p
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r = r - 1.6
        num = (((((((PPND16_C[7] * r + PPND16_C[6]) * r + PPND16_C[5]) * r
                   + PPND16_C[4]) * r + PPND16_C[3]) * r + PPND16_C[2]) * r
                + PPND16_C[1]) * r + PPND16_C[0])
        den = (((((((PPND16_D[7] * r + PPND16_D[6]) * r + PPND16_D[5]) * r
                   + PPND16_D[4]) * r + PPND16_D[3]) * r + PPND16_D[2]) * r
                + PPND16_D[1]) * r + PPND16_D[0])
    else:
        r = r - 5.0
        num = (((((((PPND16_E[7] * r + PPND16_E[6]) * r + PPND16_E[5]) * r
                   + PPND16_E[4]) * r + PPND16_E[3]) * r + PPND16_E[2]) * r
                + PPND16_E[1]) * r + PPND16_E[0])
        den = (((((((PPND16_F[7] * r + PPND16_F[6]) * r + PPND16_F[5]) * r
                   + PPND16_F[4]) * r + PPND16_F[3]) * r + PPND16_F[2]) * r
                + PPND16_F[1]) * r + PPND16_F[0])
    z = num / den
    if q < 0.0:
        return -z
    return z
