"""Weighted arithmetic and geometric operator means."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matcore
from .errors import DimensionMismatch, NotPositiveDefinite, OutOfRange


@dataclass(frozen=True)
class MeanWeight:
    """Mean weight ``alpha`` with optional conjugate exponents.

    Built from ``(p, q)`` the weight is ``alpha = 1/q`` so that
    ``A^p #_{1/q} B^q`` is the mean used by the Aczel-type checks.
    """

    alpha: float
    p: float | None = None
    q: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise OutOfRange(f"alpha={self.alpha} outside [0, 1]")
        if (self.p is None) != (self.q is None):
            raise OutOfRange("p and q must be given together")
        if self.p is not None:
            if not (self.p > 1 and self.q > 1):
                raise OutOfRange(f"conjugate exponents must exceed 1, got {self.p}, {self.q}")
            if abs(1 / self.p + 1 / self.q - 1) > 1e-12:
                raise OutOfRange(f"1/p + 1/q != 1 for p={self.p}, q={self.q}")
            if self.alpha != 1 / self.q:
                raise OutOfRange("alpha must equal 1/q")

    @classmethod
    def from_pq(cls, p: float, q: float | None = None) -> "MeanWeight":
        if q is None:
            q = conjugate(p)
        return cls(1 / q, p, q)

    @property
    def R(self) -> float:
        return max(self.alpha, 1 - self.alpha)


def conjugate(p: float) -> float:
    """Hoelder conjugate exponent ``p / (p - 1)``."""
    if p <= 1:
        raise OutOfRange(f"p={p} must exceed 1")
    return p / (p - 1)


def _alpha(w) -> float:
    return w.alpha if isinstance(w, MeanWeight) else MeanWeight(float(w)).alpha


def _same_shape(A, B):
    a = matcore.as_sym(A)
    b = matcore.as_sym(B)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    return a, b


def amean(A, B, w) -> np.ndarray:
    """``(1 - alpha) A + alpha B``."""
    a, b = _same_shape(A, B)
    al = _alpha(w)
    return (1 - al) * a + al * b


def gmean(A, B, w) -> np.ndarray:
    """``A^{1/2} (A^{-1/2} B A^{-1/2})^alpha A^{1/2}``.

    A must be strictly positive.  B may be positive semidefinite; tiny
    negative eigenvalues of the congruence (rounding) are clipped to zero.
    """
    a, b = _same_shape(A, B)
    al = _alpha(w)
    d = matcore.eig_sym(a)
    matcore.require_posdef(d, "A")
    root = np.sqrt(d.lam)
    half = matcore.from_spectrum(d.Q, root)
    ihalf = matcore.from_spectrum(d.Q, 1.0 / root)
    c = ihalf @ b @ ihalf
    dc = matcore.eig_sym(c)
    lam = dc.lam
    floor = -1e-10 * max(1.0, abs(lam[0]))
    if lam[-1] < floor:
        raise NotPositiveDefinite(f"B is not positive semidefinite (lambda_min={lam[-1]:.3e})")
    lam = np.clip(lam, 0.0, None)
    if al == 0.0:
        inner = np.ones_like(lam)
    else:
        inner = lam**al
    m = half @ matcore.from_spectrum(dc.Q, inner) @ half
    return 0.5 * (m + m.T)


def gmean_identities_check(A, B, w, tol: float = 1e-9):
    """Verify the basic algebra of the weighted geometric mean.

    Checks ``A #_0 B = A``, ``A #_1 B = B``, ``A #_a B = B #_{1-a} A`` and
    ``A^{-1} #_a B^{-1} = (A #_a B)^{-1}``, each as a relative Frobenius
    deviation.  The returned CheckResult carries ``slack = tol - worst``.
    """
    from .checkers import CheckResult

    a, b = _same_shape(A, B)
    al = _alpha(w)

    def rel(x, y):
        return float(np.linalg.norm(x - y) / max(1.0, np.linalg.norm(y)))

    m = gmean(a, b, al)
    ainv = matcore.mpow(a, -1)
    binv = matcore.mpow(b, -1)
    devs = {
        "alpha0": rel(gmean(a, b, 0.0), a),
        "alpha1": rel(gmean(a, b, 1.0), b),
        "swap": rel(gmean(b, a, 1 - al), m),
        "inverse": rel(gmean(ainv, binv, al), matcore.mpow(m, -1)),
    }
    worst = max(devs.values())
    return CheckResult(
        check_id="gmean_identities",
        slack=tol - worst,
        raw_slack=tol - worst,
        constant_used=1.0,
        tol=0.0,
        trial_meta={"alpha": al, "n": a.shape[0]},
        parts=devs,
    )
