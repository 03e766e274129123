"""Seeded generators for every instance family the checkers consume.

Every generator is a pure function of its parameters and ``seed``; ``seed``
may be an int or a :class:`~loewner_lab.prng.Xoshiro256` that is advanced in
place (campaigns thread one generator through a trial).  Draw order is fixed:
orthogonal factors first (row-major Gaussian fill), then spectra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore
from .errors import (
    HypothesisUnsatisfied,
    InvalidExponent,
    InvalidRange,
    NotInvertible,
    NotPositiveDefinite,
)
from .funcatalog import FunctionDescriptor
from .prng import Xoshiro256, as_rng

DEFAULT_SPECTRUM = (0.1, 10.0)
STRADDLE_LOW = (0.2, 0.9)
STRADDLE_HIGH = (1.1, 5.0)
SCALAR_BASE_RANGE = (0.5, 2.0)
MAX_REGENERATIONS = 200


@dataclass(frozen=True)
class SandwichPair:
    """``0 < s A <= B <= t A`` with the tightest realized s and t.

    ``image_of`` names the function g when the sandwich is measured on
    ``(g(A), g(B))`` instead of ``(A, B)``.
    """

    A: np.ndarray
    B: np.ndarray
    s: float
    t: float
    image_of: str | None = None

    @property
    def w(self) -> float:
        return self.t / self.s

    @property
    def n(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class CommutingPair:
    """``A = Q diag(a) Q^T`` and ``B = Q diag(b) Q^T`` on a shared basis."""

    A: np.ndarray
    B: np.ndarray
    basis: np.ndarray
    a: np.ndarray
    b: np.ndarray

    @property
    def n(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class ScalarInstance:
    """Positive sequences with ``s <= b_i^q / a_i^p <= t`` for all i."""

    a: np.ndarray
    b: np.ndarray
    p: float
    q: float
    s: float
    t: float


def _check_range(lo, hi):
    if not (lo > 0 and hi >= lo and math.isfinite(hi)):
        raise InvalidRange(f"need 0 < lo <= hi, got ({lo}, {hi})")


def rand_orthogonal(n: int, seed) -> np.ndarray:
    """Haar orthogonal matrix: Householder QR of a Gaussian, signs fixed by R."""
    rng = as_rng(seed)
    g = rng.normal(n * n).reshape(n, n)
    q, r = np.linalg.qr(g)
    d = np.sign(np.diag(r))
    d[d == 0] = 1.0
    return q * d


def rand_spd(n: int, spectrum_range=DEFAULT_SPECTRUM, seed=0) -> np.ndarray:
    """SPD matrix with i.i.d. log-uniform eigenvalues in ``spectrum_range``."""
    lo, hi = spectrum_range
    _check_range(lo, hi)
    rng = as_rng(seed)
    Q = rand_orthogonal(n, rng)
    lam = rng.log_uniform(lo, hi, n)
    return matcore.from_spectrum(Q, lam)


def _spd_pinned(n: int, lo: float, hi: float, rng: Xoshiro256) -> np.ndarray:
    # extreme eigenvalues pinned to lo and hi so the realized bounds are the targets
    Q = rand_orthogonal(n, rng)
    lam = np.empty(n)
    lam[0] = hi
    lam[-1] = lo
    if n > 2:
        lam[1:-1] = rng.log_uniform(lo, hi, n - 2)
    return matcore.from_spectrum(Q, lam)


def measure_sandwich(A, B) -> tuple[float, float]:
    """Tightest ``(s, t)``: extreme eigenvalues of ``A^{-1/2} B A^{-1/2}``."""
    d = matcore.eig_sym(A)
    matcore.require_posdef(d, "A")
    ih = matcore.from_spectrum(d.Q, 1.0 / np.sqrt(d.lam))
    lam = matcore.eigvals_sym(ih @ matcore.as_sym(B) @ ih)
    if lam[-1] <= 0:
        raise NotPositiveDefinite("B is not strictly positive")
    return float(lam[-1]), float(lam[0])


def _congruence(A, C) -> np.ndarray:
    h = matcore.mpow(A, 0.5)
    return matcore.as_sym(h @ C @ h)


def rand_sandwich_pair(n: int, s_target: float, t_target: float, seed=0,
                       spectrum=DEFAULT_SPECTRUM) -> SandwichPair:
    """``B = A^{1/2} C A^{1/2}`` with the spectrum of C inside ``[s_target, t_target]``.

    C's extreme eigenvalues are pinned to the targets; the recorded (s, t) are
    re-measured from the constructed pair.
    """
    _check_range(s_target, t_target)
    rng = as_rng(seed)
    A = rand_spd(n, spectrum, rng)
    C = _spd_pinned(n, s_target, t_target, rng)
    B = _congruence(A, C)
    s, t = measure_sandwich(A, B)
    return SandwichPair(A, B, s, t)


def rand_sandwich_straddle(n: int, seed=0, spectrum=DEFAULT_SPECTRUM) -> SandwichPair:
    """Sandwich pair with ``s <= 1 <= t``."""
    rng = as_rng(seed)
    s_target = rng.log_uniform(*STRADDLE_LOW)
    t_target = rng.log_uniform(*STRADDLE_HIGH)
    return rand_sandwich_pair(n, s_target, t_target, rng, spectrum)


def rand_commuting_pair(n: int, seed=0, spectrum=DEFAULT_SPECTRUM,
                        b_spectrum=None) -> CommutingPair:
    rng = as_rng(seed)
    Q = rand_orthogonal(n, rng)
    a = rng.log_uniform(*spectrum, n)
    b = rng.log_uniform(*(b_spectrum or spectrum), n)
    return CommutingPair(matcore.from_spectrum(Q, a), matcore.from_spectrum(Q, b), Q, a, b)


def rand_commuting_sandwich(n: int, p: float, q: float, s_target: float, t_target: float,
                            seed=0, a_range=DEFAULT_SPECTRUM) -> CommutingPair:
    """Commuting pair whose channel ratios ``b_i^q / a_i^p`` span ``[s_target, t_target]``."""
    _check_range(s_target, t_target)
    _check_range(*a_range)
    rng = as_rng(seed)
    Q = rand_orthogonal(n, rng)
    a = rng.log_uniform(*a_range, n)
    r = np.empty(n)
    r[0] = t_target
    r[-1] = s_target
    if n > 2:
        r[1:-1] = rng.log_uniform(s_target, t_target, n - 2)
    b = (r * a**p) ** (1.0 / q)
    return CommutingPair(matcore.from_spectrum(Q, a), matcore.from_spectrum(Q, b), Q, a, b)


def commuting_power_pair(cp: CommutingPair, p: float, q: float) -> SandwichPair:
    """The sandwich pair ``(A^p, B^q)`` of a commuting pair, measured."""
    P = matcore.from_spectrum(cp.basis, cp.a**p)
    Qm = matcore.from_spectrum(cp.basis, cp.b**q)
    s, t = measure_sandwich(P, Qm)
    return SandwichPair(P, Qm, s, t)


def rand_gimage_sandwich(n: int, g: FunctionDescriptor, s_target: float, t_target: float,
                         seed=0, spectrum=DEFAULT_SPECTRUM) -> SandwichPair:
    """Pair (A, B) whose images satisfy ``s g(A) <= g(B) <= t g(A)``.

    Draws X = g(A0) and Y = X^{1/2} C X^{1/2} in image space, then maps back
    with the declared inverse.  The recorded bounds are measured on
    ``(g(A), g(B))``.
    """
    _check_range(s_target, t_target)
    if g.inverse is None or not g.increasing:
        raise NotInvertible(f"{g.name} is not declared increasing with an inverse")
    rng = as_rng(seed)
    A0 = rand_spd(n, spectrum, rng)
    X = matcore.apply_fn(A0, g)
    C = _spd_pinned(n, s_target, t_target, rng)
    Y = _congruence(X, C)
    pre = []
    for M in (X, Y):
        d = matcore.eig_sym(M)
        vals = g.invert(d.lam)
        if not (np.all(np.isfinite(vals)) and np.all(g.contains(vals)) and np.all(vals > 0)):
            raise NotInvertible(f"{g.name}^-1 undefined on the image spectrum {d.lam}")
        pre.append(matcore.from_spectrum(d.Q, vals))
    A, B = pre
    s, t = measure_sandwich(matcore.apply_fn(A, g), matcore.apply_fn(B, g))
    return SandwichPair(A, B, s, t, image_of=g.name)


def rand_probe(n: int, seed=0) -> np.ndarray:
    """Gaussian direction normalized to a unit vector."""
    rng = as_rng(seed)
    x = rng.normal(n)
    return x / np.linalg.norm(x)


def rand_probes(n: int, count: int, seed=0) -> np.ndarray:
    rng = as_rng(seed)
    return np.array([rand_probe(n, rng) for _ in range(count)])


def rand_scalar_instance(n_terms: int, p: float, seed=0, s_target: float | None = None,
                         t_target: float | None = None, rescale: bool = False,
                         force_ratio: float | None = None) -> ScalarInstance:
    """Positive sequences a, b with ratio bounds on ``b_i^q / a_i^p``.

    ``a_i`` is log-uniform on [0.5, 2] and ``b_i = (r_i a_i^p)^{1/q}`` with
    ``r_i`` log-uniform on ``[s_target, t_target]`` (drawn from the straddle
    ranges when omitted).  With ``rescale`` the head terms are shrunk so that
    ``sum_{i>=2} x_i^p >= x_1^p``, the analogue for y, and
    ``sum_{i>=2} x_i y_i >= x_1 y_1`` hold; failures of the mixed condition are
    redrawn.
    """
    if not p > 1:
        raise InvalidExponent(f"p={p} must exceed 1")
    q = p / (p - 1.0)
    rng = as_rng(seed)
    if force_ratio is None:
        if s_target is None:
            s_target = rng.log_uniform(*STRADDLE_LOW)
        if t_target is None:
            t_target = rng.log_uniform(*STRADDLE_HIGH)
        _check_range(s_target, t_target)
    if rescale and n_terms < 2:
        raise HypothesisUnsatisfied("rescaling needs at least one tail term")
    for _ in range(MAX_REGENERATIONS):
        a = rng.log_uniform(*SCALAR_BASE_RANGE, n_terms)
        if force_ratio is not None:
            r = np.full(n_terms, float(force_ratio))
        else:
            r = rng.log_uniform(s_target, t_target, n_terms)
        b = (r * a**p) ** (1.0 / q)
        if rescale:
            a[0] = min(a[0], np.sum(a[1:] ** p) ** (1.0 / p) * rng.uniform(0.2, 1.0))
            b[0] = min(b[0], np.sum(b[1:] ** q) ** (1.0 / q) * rng.uniform(0.2, 1.0))
            if np.dot(a[1:], b[1:]) < a[0] * b[0]:
                continue
        ratios = b**q / a**p
        return ScalarInstance(a, b, p, q, float(ratios.min()), float(ratios.max()))
    raise HypothesisUnsatisfied("could not draw an instance meeting the head-term conditions")


def rand_popoviciu_instance(n_terms: int, p: float, seed=0) -> tuple[np.ndarray, np.ndarray]:
    """Sequences with ``a_1^p > sum_{i>=2} a_i^p`` and ``b_1^q > sum_{i>=2} b_i^q``."""
    if not p > 1:
        raise InvalidExponent(f"p={p} must exceed 1")
    if n_terms < 2:
        raise InvalidRange("need a head and at least one tail term")
    q = p / (p - 1.0)
    rng = as_rng(seed)
    out = []
    for e in (p, q):
        x = rng.log_uniform(*SCALAR_BASE_RANGE, n_terms)
        x[0] = np.sum(x[1:] ** e) ** (1.0 / e) * (1.0 + rng.log_uniform(1e-3, 1.0))
        out.append(x)
    return out[0], out[1]
