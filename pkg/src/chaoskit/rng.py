"""Portable deterministic random numbers.

All sampling in the package goes through :class:`SplitMix64` so that
results are bit-for-bit reproducible across platforms and numpy
versions.  The generator is the standard splitmix64 mixer; uniform
doubles take the top 53 bits, and complex Gaussians come from the
Box-Muller transform.
"""

import math

_MASK = (1 << 64) - 1


class SplitMix64:
    """splitmix64 stream seeded by a 64-bit integer.

    Parameters
    ----------
    seed : int
        Any Python integer; it is reduced mod 2**64.
    """

    def __init__(self, seed=42):
        self._state = int(seed) & _MASK

    def next_uint64(self):
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self):
        """Uniform double in [0, 1) with 53 bits of precision."""
        return (self.next_uint64() >> 11) * (1.0 / (1 << 53))

    def normal_pair(self):
        """Two independent standard normals (Box-Muller)."""
        # u1 must be bounded away from 0 for the log
        u1 = 0.0
        while u1 <= 0.0:
            u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        return r * math.cos(2.0 * math.pi * u2), r * math.sin(2.0 * math.pi * u2)

    def complex_normal(self):
        """Standard complex Gaussian: (a + ib)/sqrt(2), a,b ~ N(0,1)."""
        a, b = self.normal_pair()
        return complex(a, b) / math.sqrt(2.0)

    def complex_normal_vector(self, n):
        """Length-n vector of independent standard complex Gaussians."""
        import numpy as np

        out = np.empty(n, dtype=complex)
        for k in range(n):
            out[k] = self.complex_normal()
        return out

    def complex_normal_matrix(self, rows, cols):
        """rows-by-cols matrix of independent standard complex Gaussians,
        filled row-major."""
        import numpy as np

        out = np.empty((rows, cols), dtype=complex)
        for i in range(rows):
            for j in range(cols):
                out[i, j] = self.complex_normal()
        return out
