"""Bit-exact pseudo random numbers: xoshiro256** seeded through splitmix64.

The stream is fully specified so that campaign reports can be reproduced on
any platform:

* seeding: the 64-bit seed is fed to splitmix64 and its first four outputs
  become the state words ``s0..s3``;
* ``next_u64`` is the reference xoshiro256** step
  (``rotl(s1 * 5, 7) * 9``);
* a double in ``[0, 1)`` is ``(u64 >> 11) * 2**-53``;
* standard normals use Box-Muller on consecutive uniform pairs
  ``(u1, u2)``: ``r = sqrt(-2 log(1 - u1))``, emitting ``r cos(2 pi u2)`` then
  ``r sin(2 pi u2)``.  A request for an odd count discards the final sine.
"""

from __future__ import annotations

import math

import numba
import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step. Returns ``(new_state, output)``."""
    state = (state + _GOLDEN) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


@numba.njit(cache=True)
def _rotl(x, k):
    return (x << np.uint64(k)) | (x >> np.uint64(64 - k))


@numba.njit(cache=True)
def _fill_u64(s, out):
    for i in range(out.shape[0]):
        s0 = s[0]
        s1 = s[1]
        s2 = s[2]
        s3 = s[3]
        out[i] = _rotl(s1 * np.uint64(5), 7) * np.uint64(9)
        t = s1 << np.uint64(17)
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        s[0] = s0
        s[1] = s1
        s[2] = s2
        s[3] = s3


class Xoshiro256:
    """xoshiro256** generator with splitmix64 seeding."""

    def __init__(self, seed: int):
        seed = int(seed) & MASK64
        self.seed = seed
        words = []
        st = seed
        for _ in range(4):
            st, out = splitmix64(st)
            words.append(out)
        self._s = np.array(words, dtype=np.uint64)

    def u64(self, size: int) -> np.ndarray:
        out = np.empty(size, dtype=np.uint64)
        _fill_u64(self._s, out)
        return out

    def next_u64(self) -> int:
        return int(self.u64(1)[0])

    def random(self, size: int | None = None):
        """Uniform doubles in [0, 1)."""
        k = 1 if size is None else size
        u = (self.u64(k) >> np.uint64(11)).astype(np.float64) * 2.0**-53
        return float(u[0]) if size is None else u

    def uniform(self, lo: float, hi: float, size: int | None = None):
        u = self.random(size)
        return lo + (hi - lo) * u

    def log_uniform(self, lo: float, hi: float, size: int | None = None):
        """Log-uniform draws on [lo, hi]; lo == hi returns lo exactly."""
        if lo == hi:
            return lo if size is None else np.full(size, float(lo))
        a, b = math.log(lo), math.log(hi)
        u = self.random(size)
        return math.exp(a + (b - a) * u) if size is None else np.exp(a + (b - a) * u)

    def normal(self, size: int) -> np.ndarray:
        m = (size + 1) // 2
        u = self.random(2 * m).reshape(m, 2)
        r = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
        ang = 2.0 * np.pi * u[:, 1]
        z = np.empty((m, 2))
        z[:, 0] = r * np.cos(ang)
        z[:, 1] = r * np.sin(ang)
        return z.reshape(-1)[:size]

    def integers(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        return min(int(self.random() * n), n - 1)

    def choice(self, items):
        return items[self.integers(len(items))]

    def spawn(self) -> "Xoshiro256":
        """Child generator seeded from the next output of this one."""
        return Xoshiro256(self.next_u64())


def as_rng(seed) -> Xoshiro256:
    """Accept an int seed or an existing generator."""
    if isinstance(seed, Xoshiro256):
        return seed
    return Xoshiro256(seed)
