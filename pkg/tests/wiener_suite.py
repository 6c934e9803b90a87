"""Twenty invertible test series with known structure, shared by several tests."""

import numpy as np

from crossprod.wiener import FourierSeries as F


def _decay(rate, lo, hi, phase=0.0):
    return F({n: rate ** abs(n) * np.exp(1j * phase * n) for n in range(lo, hi + 1)})


def _random_dominant(seed, width=6):
    rng = np.random.default_rng(seed)
    c = (rng.normal(size=2 * width + 1) + 1j * rng.normal(size=2 * width + 1)) / (2 * width + 1)
    c[width] += 3.0
    return F.from_dense(-width, c)


def suite():
    z = F.monomial(1)
    zi = F.monomial(-1)
    out = {
        "2+z": 2 + z,
        "5": F.constant(5.0),
        "-3i": F.constant(-3j),
        "z^3": F.monomial(3),
        "1-0.5z": 1 - 0.5 * z,
        "1-0.9z": 1 - 0.9 * z,
        "3+z+1/z": 3 + z + zi,
        "2.1+2cos": 2.1 + z + zi,
        "(2+z)(3-1/z)": (2 + z) * (3 - zi),
        "1+0.5i z^2": 1 + 0.5j * F.monomial(2),
        "z^-2(4+z)": F.monomial(-2) * (4 + z),
        "decay0.5": _decay(0.5, -8, 8) + 0.5,
        "decay0.3twist": _decay(0.3, -10, 10, phase=0.7),
        "1+0.45(z+1/z)+0.05z^5": 1 + 0.45 * (z + zi) + 0.05 * F.monomial(5),
        "4-z^7+1/z^3": 4 - F.monomial(7) + F.monomial(-3),
        "0.2+0.1z": 0.2 + 0.1 * z,
        "1e3+z": 1000 + z,
    }
    for s in range(3):
        out[f"random{s}"] = _random_dominant(s)
    assert len(out) == 20
    return out
