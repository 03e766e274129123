"""Scalar constants: Kantorovich, generalized Kantorovich, Specht ratio."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidBounds, NonPositiveInput, OutOfRange

# K(w, alpha) is returned as exactly 1 this close to its removable singularities
GEN_SINGULAR_EPS = 1e-9
# Specht ratio switches to its Taylor expansion for |x - 1| below this
SPECHT_SERIES_EPS = 1e-6


@dataclass(frozen=True)
class SandwichBounds:
    """Scalars with ``0 < s A <= B <= t A``; ``w = t / s``."""

    s: float
    t: float

    def __post_init__(self):
        if not (self.s > 0 and self.t >= self.s):
            raise InvalidBounds(f"need 0 < s <= t, got s={self.s}, t={self.t}")

    @property
    def w(self) -> float:
        return self.t / self.s


def kantorovich(h: float) -> float:
    """Kantorovich constant ``(h + 1)^2 / (4 h)``."""
    if not h > 0:
        raise NonPositiveInput(f"h={h} must be positive")
    return (h + 1.0) ** 2 / (4.0 * h)


def kantorovich_gen(w: float, alpha: float) -> float:
    """Generalized Kantorovich constant K(w, alpha), a value in (0, 1].

    ``K(w,a) = (w^a - w) / ((a-1)(w-1)) * ((a-1)/a * (w^a - 1)/(w^a - w))^a``.
    Differences of powers go through expm1 to keep digits near w = 1.
    """
    if not w > 0:
        raise NonPositiveInput(f"w={w} must be positive")
    if not 0.0 <= alpha <= 1.0:
        raise OutOfRange(f"alpha={alpha} outside [0, 1]")
    if (
        abs(w - 1.0) < GEN_SINGULAR_EPS
        or alpha < GEN_SINGULAR_EPS
        or alpha > 1.0 - GEN_SINGULAR_EPS
    ):
        return 1.0
    lw = math.log(w)
    wa_minus_w = w * math.expm1((alpha - 1.0) * lw)
    wa_minus_1 = math.expm1(alpha * lw)
    w_minus_1 = math.expm1(lw)
    first = wa_minus_w / ((alpha - 1.0) * w_minus_1)
    inner = (alpha - 1.0) / alpha * wa_minus_1 / wa_minus_w
    return first * inner**alpha


def specht(x: float) -> float:
    """Specht ratio ``x^(1/(x-1)) / (e log x^(1/(x-1)))``; S(1) = 1."""
    if not x > 0:
        raise NonPositiveInput(f"x={x} must be positive")
    u = x - 1.0
    if abs(u) < SPECHT_SERIES_EPS:
        return 1.0 + u * u / 8.0
    ell = math.log(x) / u
    return math.exp(ell - 1.0) / ell


def reverse_constant(s: float, t: float, R: float) -> float:
    """``max(K(s)^R, K(t)^R)`` for the reverse Young inequality."""
    if not (s > 0 and t >= s):
        raise InvalidBounds(f"need 0 < s <= t, got s={s}, t={t}")
    if not 0.0 <= R <= 1.0:
        raise InvalidBounds(f"R={R} outside [0, 1]")
    return max(kantorovich(s) ** R, kantorovich(t) ** R)
