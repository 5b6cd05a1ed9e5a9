"""Seedable, portable random number generation.

Noise fields have to be bit-reproducible (same seed, same bytes) across
platforms, so randomness is not drawn from numpy's Generator, whose stream
is an implementation detail.  Everything derives from SplitMix64, a tiny
public-domain 64-bit generator, with normal variates via Box-Muller.

Stream definition (all arithmetic mod 2**64), i = 0, 1, 2, ...:

    z = seed + (i + 1) * 0x9E3779B97F4A7C15
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    out_i = z ^ (z >> 31)

Uniforms take the top 53 bits: u_i = (out_i >> 11) * 2**-53, in [0, 1).
Normals consume uniforms pairwise:

    r = sqrt(-2 ln(u_{2k} + 2**-53)),  phi = 2 pi u_{2k+1}
    z_{2k} = r cos(phi),  z_{2k+1} = r sin(phi)

The 2**-53 offset keeps the log argument strictly positive.
"""

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)

_U53 = 2.0 ** -53


def raw64(seed: int, n: int, offset: int = 0) -> np.ndarray:
    """First n 64-bit outputs of the SplitMix64 stream, starting at offset."""
    if n < 0:
        raise ValueError("n must be non-negative")
    idx = np.arange(offset + 1, offset + n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + idx * _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        z = z ^ (z >> np.uint64(31))
    return z


def uniforms(seed: int, n: int, offset: int = 0) -> np.ndarray:
    """n uniforms in [0, 1) from the top 53 bits of the stream."""
    return (raw64(seed, n, offset) >> np.uint64(11)).astype(np.float64) * _U53


def normals(seed: int, n: int) -> np.ndarray:
    """n standard normal variates via Box-Muller over the uniform stream."""
    pairs = (n + 1) // 2
    u = uniforms(seed, 2 * pairs)
    r = np.sqrt(-2.0 * np.log(u[0::2] + _U53))
    phi = 2.0 * np.pi * u[1::2]
    z = np.empty(2 * pairs)
    z[0::2] = r * np.cos(phi)
    z[1::2] = r * np.sin(phi)
    return z[:n]


def normal_field(seed: int, shape: tuple, sigma: float = 1.0) -> np.ndarray:
    """Field of i.i.d. normal(0, sigma^2) samples, row-major fill order."""
    return sigma * normals(seed, int(np.prod(shape))).reshape(shape)
