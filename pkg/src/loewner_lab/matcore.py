"""Dense real symmetric linear algebra.

Eigendecomposition is cyclic Jacobi (compiled with numba), eigenvalues are
always returned in descending order so ``lam[k]`` is the (k+1)-th largest.
Functional calculus, spectral powers, Loewner order tests and the eigenbasis
alignment unitary are all built on it.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numba
import numpy as np

from .errors import (
    DimensionMismatch,
    DomainViolation,
    NonConvergence,
    NotPositiveDefinite,
    NotUnitVector,
)

MAX_DIM = 32
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
LOEWNER_TOL = 1e-8
# lambda_min > POSDEF_RATIO * lambda_max counts as strictly positive
POSDEF_RATIO = 1e-12


class SpectralDecomp(NamedTuple):
    Q: np.ndarray
    lam: np.ndarray


class LoewnerResult(NamedTuple):
    holds: bool
    slack: float


def _validated(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if not 1 <= n <= MAX_DIM:
        raise DimensionMismatch(f"dimension {n} outside [1, {MAX_DIM}]")
    if not np.isfinite(a).all():
        raise ValueError("matrix has non-finite entries")
    return a


def as_sym(a) -> np.ndarray:
    """Validate a square finite matrix and return its exact symmetrization."""
    a = _validated(a)
    return 0.5 * (a + a.T)


@numba.njit(cache=True)
def _jacobi(a, tol, max_sweeps):
    n = a.shape[0]
    v = np.eye(n)
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j] * a[i, j]
    thresh = tol * np.sqrt(fro)
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        if np.sqrt(off) <= thresh:
            return v, sweep, True
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return v, max_sweeps, False


@numba.njit(cache=True)
def _eig_kernel(a, tol, max_sweeps):
    # symmetrize, diagonalize, sort descending and fix column signs
    n = a.shape[0]
    work = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            work[i, j] = 0.5 * (a[i, j] + a[j, i])
    v, sweeps, ok = _jacobi(work, tol, max_sweeps)
    d = np.empty(n)
    for i in range(n):
        d[i] = work[i, i]
    order = np.argsort(-d, kind="mergesort")
    lam = d[order]
    Q = np.empty((n, n))
    for j in range(n):
        col = order[j]
        big = 0.0
        sgn = 1.0
        for i in range(n):
            x = v[i, col]
            if abs(x) > big:
                big = abs(x)
                sgn = 1.0 if x >= 0.0 else -1.0
        for i in range(n):
            Q[i, j] = sgn * v[i, col]
    return Q, lam, ok


def eig_sym(A) -> SpectralDecomp:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi.

    Returns ``SpectralDecomp(Q, lam)`` with ``lam`` descending and the columns
    of ``Q`` the matching orthonormal eigenvectors.  Each column is signed so
    that its largest-magnitude entry is positive.

    Raises
    ------
    NonConvergence
        If the off-diagonal Frobenius norm is still above
        ``1e-13 * ||A||_F`` after 100 sweeps.
    """
    a = _validated(A)
    Q, lam, ok = _eig_kernel(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if not ok:
        raise NonConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
    return SpectralDecomp(Q, lam)


def eigvals_sym(A) -> np.ndarray:
    """Descending eigenvalues."""
    return eig_sym(A).lam


def from_spectrum(Q: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """``Q diag(lam) Q^T``, exactly symmetrized."""
    m = (Q * lam) @ Q.T
    return 0.5 * (m + m.T)


def _check_domain(lam: np.ndarray, f) -> None:
    contains = getattr(f, "contains", None)
    if contains is None:
        return
    ok = contains(lam)
    if not np.all(ok):
        bad = lam[~ok]
        raise DomainViolation(
            f"eigenvalue {bad[0]!r} outside the domain of {getattr(f, 'name', f)}"
        )


def apply_fn(A, f: Callable, decomp: SpectralDecomp | None = None) -> np.ndarray:
    """Spectral functional calculus ``Q f(diag(lam)) Q^T``.

    ``f`` is a vectorized callable; when it is a FunctionDescriptor its
    declared domain is enforced and a DomainViolation names the offending
    eigenvalue.
    """
    d = eig_sym(A) if decomp is None else decomp
    _check_domain(d.lam, f)
    vals = np.asarray(f(d.lam), dtype=np.float64)
    if not np.all(np.isfinite(vals)):
        raise DomainViolation(f"{getattr(f, 'name', f)} is not finite on the spectrum")
    return from_spectrum(d.Q, vals)


def is_strictly_positive(lam: np.ndarray) -> bool:
    lmax = lam[0]
    lmin = lam[-1]
    return bool(lmax > 0 and lmin > POSDEF_RATIO * lmax)


def require_posdef(d: SpectralDecomp, what: str = "matrix") -> None:
    if not is_strictly_positive(d.lam):
        raise NotPositiveDefinite(
            f"{what} is not strictly positive (lambda_min={d.lam[-1]:.3e}, "
            f"lambda_max={d.lam[0]:.3e})"
        )


def mpow(A, r: float, decomp: SpectralDecomp | None = None) -> np.ndarray:
    """Spectral power ``A**r``.

    Negative or fractional ``r`` requires strict positivity.  ``r == 0`` gives
    the identity and ``r == 1`` returns a symmetrized copy of ``A``.
    """
    a = as_sym(A)
    r = float(r)
    if r == 0.0:
        return np.eye(a.shape[0])
    if r == 1.0:
        return a
    d = eig_sym(a) if decomp is None else decomp
    if r < 0 or not r.is_integer():
        require_posdef(d)
    return from_spectrum(d.Q, d.lam**r)


def spectral_norm(A) -> float:
    lam = eigvals_sym(A)
    return float(max(abs(lam[0]), abs(lam[-1])))


def loewner_leq(X, Y, tol: float = LOEWNER_TOL) -> LoewnerResult:
    """Test ``X <= Y`` in Loewner order.

    ``slack = lambda_min(Y - X)``; the order holds when
    ``slack >= -tol * max(1, ||X||_2, ||Y||_2)``.
    """
    x = as_sym(X)
    y = as_sym(Y)
    if x.shape != y.shape:
        raise DimensionMismatch(f"{x.shape} vs {y.shape}")
    slack = float(eigvals_sym(y - x)[-1])
    scale = max(1.0, spectral_norm(x), spectral_norm(y))
    return LoewnerResult(slack >= -tol * scale, slack)


def aligned_unitary(X, Y) -> np.ndarray:
    """Orthogonal ``U = Q_X Q_Y^T`` mapping Y's descending eigenbasis onto X's.

    ``U Y U^T`` keeps Y's eigenvalues and shares X's eigenvectors, so
    ``X - c U Y U^T`` has eigenvalues ``lambda_k(X) - c lambda_k(Y)``.
    """
    x = as_sym(X)
    y = as_sym(Y)
    if x.shape != y.shape:
        raise DimensionMismatch(f"{x.shape} vs {y.shape}")
    return eig_sym(x).Q @ eig_sym(y).Q.T


def quad_form(A, x) -> float:
    """``x^T A x`` for a unit vector x."""
    a = as_sym(A)
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape[0] != a.shape[0]:
        raise DimensionMismatch(f"vector of length {x.shape[0]} for {a.shape} matrix")
    if abs(np.linalg.norm(x) - 1.0) > 1e-12:
        raise NotUnitVector(f"||x|| = {np.linalg.norm(x)!r}")
    return float(x @ a @ x)
