"""One executable check per inequality.

Every check returns a :class:`CheckResult` whose ``slack`` is non-negative
when the inequality holds.  Matrix inequalities ``L <= R`` report
``lambda_min(R - L) / max(1, ||L||_2, ||R||_2)``; eigenvalue chains report
``min_k (lambda_k(R) - lambda_k(L))`` over the same scale; scalar inequalities
report ``(R - L) / max(1, |L|, |R|)``.  Chains of several inequalities report
the worst link, and ``parts`` keeps every link.

Pairs for the Aczel-type checks carry the operators ``A^p`` and ``B^q``
directly in their ``A`` and ``B`` fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import matcore
from .constants import kantorovich_gen, reverse_constant
from .errors import HypothesisUnsatisfied, NotCommuting
from .funcatalog import FunctionDescriptor
from .generators import CommutingPair, ScalarInstance, SandwichPair, measure_sandwich
from .means import gmean

TOL_MATRIX = 1e-8
TOL_SCALAR = 1e-12
COMMUTATOR_TOL = 1e-10
# measured sandwich bounds of B = A land a few ulps off 1
STRADDLE_TOL = 1e-12


@dataclass
class CheckResult:
    check_id: str
    slack: float
    raw_slack: float
    constant_used: float
    tol: float
    hypotheses_met: bool = True
    trial_meta: dict[str, Any] = field(default_factory=dict)
    ratio: float | None = None
    parts: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.slack) and self.slack >= -self.tol)


# -- slack helpers ---------------------------------------------------------


def _norm(lam) -> float:
    return float(max(abs(lam[0]), abs(lam[-1])))


def _order(L, R) -> tuple[float, float]:
    """Normalized and raw ``lambda_min(R - L)``."""
    raw = float(matcore.eigvals_sym(R - L)[-1])
    scale = max(1.0, _norm(matcore.eigvals_sym(L)), _norm(matcore.eigvals_sym(R)))
    return raw / scale, raw


def _eig_chain(lam_lo, lam_hi) -> tuple[float, float]:
    """Normalized and raw ``min_k (lam_hi[k] - lam_lo[k])``."""
    raw = float(np.min(lam_hi - lam_lo))
    scale = max(1.0, float(np.max(np.abs(lam_lo))), float(np.max(np.abs(lam_hi))))
    return raw / scale, raw


def _scalar(lo: float, hi: float) -> tuple[float, float]:
    raw = float(hi - lo)
    return raw / max(1.0, abs(lo), abs(hi)), raw


def _combine(check_id, parts: dict, constant, tol, meta, ratio=None) -> CheckResult:
    key = min(parts, key=lambda k: parts[k][0])
    slack, raw = parts[key]
    return CheckResult(
        check_id=check_id,
        slack=slack,
        raw_slack=raw,
        constant_used=float(constant),
        tol=tol,
        trial_meta=meta,
        ratio=ratio,
        parts={k: v[0] for k, v in parts.items()},
    )


def _probe_rows(probes, n) -> np.ndarray:
    x = np.atleast_2d(np.asarray(probes, dtype=np.float64))
    if x.shape[1] != n:
        raise ValueError(f"probes must have length {n}")
    norms = np.linalg.norm(x, axis=1)
    if np.any(np.abs(norms - 1.0) > 1e-12):
        from .errors import NotUnitVector

        raise NotUnitVector("every probe must be a unit vector")
    return x


def _quad(M, xs) -> np.ndarray:
    return np.einsum("ij,jk,ik->i", xs, M, xs)


def _probe_parts(name, lo, hi) -> dict:
    """Worst probe of ``lo <= hi`` as a single part."""
    scale = np.maximum(1.0, np.maximum(np.abs(lo), np.abs(hi)))
    norm = (hi - lo) / scale
    k = int(np.argmin(norm))
    return {name: (float(norm[k]), float(hi[k] - lo[k]))}


def _require(cond: bool, what: str):
    if not cond:
        raise HypothesisUnsatisfied(what)


def _need_descriptor(f):
    if not isinstance(f, FunctionDescriptor):
        raise TypeError("checks need a FunctionDescriptor so hypotheses can be verified")


def _meta(pair, **kw) -> dict:
    out = {"n": int(pair.A.shape[0]) if hasattr(pair, "A") else None}
    out.update(kw)
    return out


def _reverse_c(pair, alpha) -> float:
    return reverse_constant(pair.s, pair.t, max(alpha, 1.0 - alpha))


def _fsharp(pair, f, alpha):
    return gmean(matcore.apply_fn(pair.A, f), matcore.apply_fn(pair.B, f), alpha)


# -- Young and its reverse -------------------------------------------------


def check_young(pair, alpha: float, tol: float = TOL_MATRIX) -> CheckResult:
    """``A #_a B <= A nabla_a B``."""
    A, B = pair.A, pair.B
    M = gmean(A, B, alpha)
    arith = (1 - alpha) * A + alpha * B
    return _combine("check_young", {"young": _order(M, arith)}, 1.0, tol,
                    _meta(pair, alpha=alpha))


def check_reverse_young(pair: SandwichPair, alpha: float, tol: float = TOL_MATRIX) -> CheckResult:
    """``A nabla_a B <= c (A #_a B)`` with ``c = max(K(s)^R, K(t)^R)``.

    ``ratio`` is the observed ``lambda_max(M^{-1/2} (A nabla_a B) M^{-1/2})``,
    the smallest constant that would do.
    """
    c = _reverse_c(pair, alpha)
    M = gmean(pair.A, pair.B, alpha)
    arith = (1 - alpha) * pair.A + alpha * pair.B
    d = matcore.eig_sym(M)
    ih = matcore.from_spectrum(d.Q, 1.0 / np.sqrt(d.lam))
    ratio = float(matcore.eigvals_sym(ih @ arith @ ih)[0])
    return _combine("check_reverse_young", {"reverse_young": _order(arith, c * M)}, c, tol,
                    _meta(pair, alpha=alpha, s=pair.s, t=pair.t), ratio=ratio)


# -- Kantorovich-constant lemmas ------------------------------------------


def check_lemma_gdec(pair: SandwichPair, alpha: float, g: FunctionDescriptor,
                     tol: float = TOL_MATRIX) -> CheckResult:
    """``(1/c) g(M) <= g(c M) <= g(A) #_a g(B)`` for operator monotone decreasing g."""
    _need_descriptor(g)
    _require(g.decreasing and g.operator_monotone and g.on_positive_axis,
             f"{g.name} is not operator monotone decreasing on (0, inf)")
    c = _reverse_c(pair, alpha)
    M = gmean(pair.A, pair.B, alpha)
    gM = matcore.apply_fn(M, g)
    gcM = matcore.apply_fn(c * M, g)
    right = _fsharp(pair, g, alpha)
    parts = {"scaled": _order(gM / c, gcM), "mean": _order(gcM, right)}
    return _combine("check_lemma_gdec", parts, c, tol,
                    _meta(pair, alpha=alpha, function=g.name))


def check_lemma_fmono(pair: SandwichPair, alpha: float, f: FunctionDescriptor,
                      tol: float = TOL_MATRIX) -> CheckResult:
    """``f(A) #_a f(B) <= f(c M) <= c f(M)`` for operator monotone f."""
    _need_descriptor(f)
    _require(f.increasing and f.operator_monotone and f.on_positive_axis,
             f"{f.name} is not operator monotone on (0, inf)")
    c = _reverse_c(pair, alpha)
    M = gmean(pair.A, pair.B, alpha)
    fM = matcore.apply_fn(M, f)
    fcM = matcore.apply_fn(c * M, f)
    left = _fsharp(pair, f, alpha)
    parts = {"mean": _order(left, fcM), "scaled": _order(fcM, c * fM)}
    return _combine("check_lemma_fmono", parts, c, tol,
                    _meta(pair, alpha=alpha, function=f.name))


def check_aczel_variant(pair: SandwichPair, p: float, q: float, f: FunctionDescriptor,
                        probes, tol: float = TOL_MATRIX) -> CheckResult:
    """Operator Aczel variant with the Kantorovich constant.

    ``f(A^p #_{1/q} B^q) >= (1/c) f(A^p) #_{1/q} f(B^q)`` and, for every probe,
    ``<f(A^p #_{1/q} B^q) x, x> >= (1/c) <f(A^p)x,x>^{1/p} <f(B^q)x,x>^{1/q}``.
    """
    _need_descriptor(f)
    _require(f.increasing and f.operator_monotone and f.on_positive_axis,
             f"{f.name} is not operator monotone on (0, inf)")
    alpha = 1.0 / q
    c = reverse_constant(pair.s, pair.t, max(1.0 / p, 1.0 / q))
    M = gmean(pair.A, pair.B, alpha)
    fM = matcore.apply_fn(M, f)
    fP = matcore.apply_fn(pair.A, f)
    fQ = matcore.apply_fn(pair.B, f)
    parts = {"operator": _order(gmean(fP, fQ, alpha) / c, fM)}
    xs = _probe_rows(probes, pair.n)
    lo = _quad(fP, xs) ** (1.0 / p) * _quad(fQ, xs) ** (1.0 / q) / c
    parts.update(_probe_parts("probe", lo, _quad(fM, xs)))
    return _combine("check_aczel_variant", parts, c, tol,
                    _meta(pair, p=p, q=q, function=f.name))


# -- generalized Kantorovich constant -------------------------------------


def check_scalar_sandwich(pair: SandwichPair, alpha: float, probes,
                          tol: float = TOL_MATRIX) -> CheckResult:
    """``<M x,x> <= <Ax,x>^{1-a} <Bx,x>^a <= K(w,a)^{-1} <M x,x>``."""
    k = kantorovich_gen(pair.w, alpha)
    M = gmean(pair.A, pair.B, alpha)
    xs = _probe_rows(probes, pair.n)
    qm = _quad(M, xs)
    mid = _quad(pair.A, xs) ** (1 - alpha) * _quad(pair.B, xs) ** alpha
    parts = {}
    parts.update(_probe_parts("lower", qm, mid))
    parts.update(_probe_parts("upper", mid, qm / k))
    return _combine("check_scalar_sandwich", parts, k, tol,
                    _meta(pair, alpha=alpha, w=pair.w))


def _require_doubly_concave(f):
    _need_descriptor(f)
    _require(f.increasing and f.doubly_concave and f.from_zero,
             f"{f.name} is not increasing doubly concave on [0, inf)")


def check_eig_doubly_concave(pair: SandwichPair, alpha: float, f: FunctionDescriptor,
                             tol: float = TOL_MATRIX) -> CheckResult:
    """``lambda_k(f(A)#f(B)) <= lambda_k(f(M/K)) <= lambda_k(f(M))/K`` for all k."""
    _require_doubly_concave(f)
    k = kantorovich_gen(pair.w, alpha)
    M = gmean(pair.A, pair.B, alpha)
    lam_fM = matcore.eigvals_sym(matcore.apply_fn(M, f))
    lam_fKM = matcore.eigvals_sym(matcore.apply_fn(M / k, f))
    lam_mean = matcore.eigvals_sym(_fsharp(pair, f, alpha))
    parts = {"mean": _eig_chain(lam_mean, lam_fKM), "scaled": _eig_chain(lam_fKM, lam_fM / k)}
    return _combine("check_eig_doubly_concave", parts, k, tol,
                    _meta(pair, alpha=alpha, function=f.name, w=pair.w))


def _unitary_order(X, Y, k):
    """Slack of ``k U Y U^T <= X`` with ``U = aligned_unitary(X, Y)``."""
    U = matcore.aligned_unitary(X, Y)
    return _order(k * (U @ Y @ U.T), X), U


def check_unitary_form_concave(pair: SandwichPair, alpha: float, f: FunctionDescriptor,
                               tol: float = TOL_MATRIX) -> CheckResult:
    """``f(M) >= K(w,a) U (f(A) #_a f(B)) U^T`` with the aligned unitary U."""
    _require_doubly_concave(f)
    k = kantorovich_gen(pair.w, alpha)
    X = matcore.apply_fn(gmean(pair.A, pair.B, alpha), f)
    Y = _fsharp(pair, f, alpha)
    part, _ = _unitary_order(X, Y, k)
    return _combine("check_unitary_form_concave", {"unitary": part}, k, tol,
                    _meta(pair, alpha=alpha, function=f.name, w=pair.w))


def check_aczel_gen_kantorovich(pair: SandwichPair, p: float, q: float, f: FunctionDescriptor,
                                probes, tol: float = TOL_MATRIX,
                                norm_form: bool = False) -> CheckResult:
    """Aczel-type inequality with ``K(w, 1/q)`` for a straddling sandwich.

    Checks ``f(A^p #_{1/q} B^q) >= K U (f(A^p) #_{1/q} f(B^q)) U^T`` and
    ``<f(A^p #_{1/q} B^q) Ux, Ux> >= K^2 <f(A^p)x,x>^{1/p} <f(B^q)x,x>^{1/q}``.

    With ``norm_form`` (commuting pair, ``f(t) = t - 1``, spectra above 1) the
    probe side is evaluated as
    ``||U^T (AB)^{1/2} U x||^2 - 1 >= K^2 (||A^{p/2}x||^2-1)^{1/p} (||B^{q/2}x||^2-1)^{1/q}``.
    """
    _need_descriptor(f)
    if pair.s > 1.0 + STRADDLE_TOL or pair.t < 1.0 - STRADDLE_TOL:
        raise HypothesisUnsatisfied(f"need s <= 1 <= t, got s={pair.s}, t={pair.t}")
    if norm_form:
        _require(f.name == "t-1", "the norm form is stated for f(t) = t - 1")
    else:
        _require(f.operator_monotone, f"{f.name} is not operator monotone")
        _require_doubly_concave(f)
    alpha = 1.0 / q
    k = kantorovich_gen(pair.w, alpha)
    P, Qm = pair.A, pair.B
    M = gmean(P, Qm, alpha)
    X = matcore.apply_fn(M, f)
    fP = matcore.apply_fn(P, f)
    fQ = matcore.apply_fn(Qm, f)
    Y = gmean(fP, fQ, alpha)
    op, U = _unitary_order(X, Y, k)
    parts = {"unitary": op}
    xs = _probe_rows(probes, pair.n)
    if norm_form:
        comm = P @ Qm - Qm @ P
        if np.linalg.norm(comm) > COMMUTATOR_TOL * np.linalg.norm(P) * np.linalg.norm(Qm):
            raise NotCommuting("norm form needs commuting operators")
        AB = matcore.as_sym(matcore.mpow(P, 1.0 / p) @ matcore.mpow(Qm, 1.0 / q))
        root = matcore.mpow(AB, 0.5)
        lhs = np.linalg.norm((U.T @ root @ U @ xs.T), axis=0) ** 2 - 1.0
        a_side = np.linalg.norm(matcore.mpow(P, 0.5) @ xs.T, axis=0) ** 2 - 1.0
        b_side = np.linalg.norm(matcore.mpow(Qm, 0.5) @ xs.T, axis=0) ** 2 - 1.0
        rhs = k * k * a_side ** (1.0 / p) * b_side ** (1.0 / q)
        parts.update(_probe_parts("norm", rhs, lhs))
    else:
        uxs = xs @ U.T
        lhs = _quad(X, uxs)
        rhs = k * k * _quad(fP, xs) ** (1.0 / p) * _quad(fQ, xs) ** (1.0 / q)
        parts.update(_probe_parts("probe", rhs, lhs))
    return _combine("check_aczel_gen_kantorovich", parts, k, tol,
                    _meta(pair, p=p, q=q, function=f.name, w=pair.w, norm_form=norm_form))


# -- doubly convex and decreasing geometrically convex --------------------


def _require_doubly_convex_inc(g):
    _need_descriptor(g)
    _require(g.increasing and g.doubly_convex and g.on_positive_axis,
             f"{g.name} is not increasing doubly convex on (0, inf)")


def _require_image_sandwich(pair, g):
    _require(pair.image_of == g.name,
             f"pair sandwich is measured on {pair.image_of!r}, not on {g.name} images")


def check_eig_doubly_convex(pair: SandwichPair, alpha: float, g: FunctionDescriptor,
                            tol: float = TOL_MATRIX) -> CheckResult:
    """``lambda_k(g(A #_a B)) <= K(w,a)^{-1} lambda_k(g(A) #_a g(B))``, w from the g-images."""
    _require_doubly_convex_inc(g)
    _require_image_sandwich(pair, g)
    k = kantorovich_gen(pair.w, alpha)
    lam_lo = matcore.eigvals_sym(matcore.apply_fn(gmean(pair.A, pair.B, alpha), g))
    lam_hi = matcore.eigvals_sym(_fsharp(pair, g, alpha)) / k
    return _combine("check_eig_doubly_convex", {"eigen": _eig_chain(lam_lo, lam_hi)}, k, tol,
                    _meta(pair, alpha=alpha, function=g.name, w=pair.w))


def check_reverse_aczel(pair: SandwichPair, p: float, q: float, g: FunctionDescriptor,
                        probes, tol: float = TOL_MATRIX) -> CheckResult:
    """Reverse Aczel for increasing doubly convex g.

    ``g(A^p #_{1/q} B^q) <= K^{-1} U (g(A^p) #_{1/q} g(B^q)) U^T`` and
    ``<g(A^p #_{1/q} B^q) Ux, Ux> <= K^{-1} <g(A^p)x,x>^{1/p} <g(B^q)x,x>^{1/q}``.
    """
    _require_doubly_convex_inc(g)
    _require_image_sandwich(pair, g)
    alpha = 1.0 / q
    k = kantorovich_gen(pair.w, alpha)
    X = matcore.apply_fn(gmean(pair.A, pair.B, alpha), g)
    gP = matcore.apply_fn(pair.A, g)
    gQ = matcore.apply_fn(pair.B, g)
    Y = gmean(gP, gQ, alpha)
    U = matcore.aligned_unitary(X, Y)
    parts = {"unitary": _order(X, (U @ Y @ U.T) / k)}
    xs = _probe_rows(probes, pair.n)
    lhs = _quad(X, xs @ U.T)
    rhs = _quad(gP, xs) ** (1.0 / p) * _quad(gQ, xs) ** (1.0 / q) / k
    parts.update(_probe_parts("probe", lhs, rhs))
    return _combine("check_reverse_aczel", parts, k, tol,
                    _meta(pair, p=p, q=q, function=g.name, w=pair.w))


def _require_dec_geoconvex(g, doubly: bool):
    _need_descriptor(g)
    ok = g.decreasing and g.geo_convex and g.on_positive_axis and (g.convex or not doubly)
    kind = "doubly convex" if doubly else "geometrically convex"
    _require(ok, f"{g.name} is not decreasing {kind} on (0, inf)")


def check_eig_dec_geoconvex(pair: SandwichPair, alpha: float, g: FunctionDescriptor,
                            tol: float = TOL_MATRIX) -> CheckResult:
    """``lambda_k(g(K^{-1} (A #_a B))) <= lambda_k(g(A) #_a g(B))``."""
    _require_dec_geoconvex(g, doubly=False)
    k = kantorovich_gen(pair.w, alpha)
    M = gmean(pair.A, pair.B, alpha)
    lam_lo = matcore.eigvals_sym(matcore.apply_fn(M / k, g))
    lam_hi = matcore.eigvals_sym(_fsharp(pair, g, alpha))
    return _combine("check_eig_dec_geoconvex", {"eigen": _eig_chain(lam_lo, lam_hi)}, k, tol,
                    _meta(pair, alpha=alpha, function=g.name, w=pair.w))


def check_reverse_aczel_dec(pair: SandwichPair, p: float, q: float, g: FunctionDescriptor,
                            probes, tol: float = TOL_MATRIX,
                            literal_constant: bool = False) -> CheckResult:
    """Reverse Aczel for decreasing doubly convex g, with ``alpha = 1/q``.

    Checks ``g(K^{-1} M) <= U (g(A^p) #_{1/q} g(B^q)) U^T`` and
    ``<g(K^{-1} M) Ux, Ux> <= <g(A^p)x,x>^{1/p} <g(B^q)x,x>^{1/q}`` where
    ``M = A^p #_{1/q} B^q`` and ``K = K(w, 1/q)``.  ``literal_constant=True``
    scales M by K instead of 1/K; that variant already fails for ``g = 1/t``.
    """
    _require_dec_geoconvex(g, doubly=True)
    alpha = 1.0 / q
    k = kantorovich_gen(pair.w, alpha)
    scale = k if literal_constant else 1.0 / k
    M = gmean(pair.A, pair.B, alpha)
    X = matcore.apply_fn(scale * M, g)
    gP = matcore.apply_fn(pair.A, g)
    gQ = matcore.apply_fn(pair.B, g)
    Y = gmean(gP, gQ, alpha)
    U = matcore.aligned_unitary(X, Y)
    parts = {"unitary": _order(X, U @ Y @ U.T)}
    xs = _probe_rows(probes, pair.n)
    lhs = _quad(X, xs @ U.T)
    rhs = _quad(gP, xs) ** (1.0 / p) * _quad(gQ, xs) ** (1.0 / q)
    parts.update(_probe_parts("probe", lhs, rhs))
    return _combine("check_reverse_aczel_dec", parts, k, tol,
                    _meta(pair, p=p, q=q, function=g.name, w=pair.w,
                          literal_constant=literal_constant))


# -- commuting operators ---------------------------------------------------


def check_commuting_product(pair: CommutingPair, p: float, q: float, f: FunctionDescriptor,
                            probes=None, tol: float = TOL_MATRIX) -> CheckResult:
    """``f(AB) >= (1/c) f(A^p)^{1/p} f(B^q)^{1/q}`` for commuting A, B.

    When both spectra lie above 1 and probes are given, also checks
    ``||(AB)^{1/2}x||^2 - 1 >= (1/c) (||A^{p/2}x||^2-1)^{1/p} (||B^{q/2}x||^2-1)^{1/q}``.
    """
    _need_descriptor(f)
    _require(f.increasing and f.operator_monotone and f.on_positive_axis,
             f"{f.name} is not operator monotone on (0, inf)")
    A, B = matcore.as_sym(pair.A), matcore.as_sym(pair.B)
    comm = np.linalg.norm(A @ B - B @ A)
    if comm > COMMUTATOR_TOL * np.linalg.norm(A) * np.linalg.norm(B):
        raise NotCommuting(f"||AB - BA||_F = {comm:.3e}")
    P = matcore.mpow(A, p)
    Qm = matcore.mpow(B, q)
    s, t = measure_sandwich(P, Qm)
    c = reverse_constant(s, t, max(1.0 / p, 1.0 / q))
    AB = matcore.as_sym(A @ B)
    left = matcore.mpow(matcore.apply_fn(P, f), 1.0 / p) @ matcore.mpow(matcore.apply_fn(Qm, f), 1.0 / q)
    parts = {"operator": _order(matcore.as_sym(left) / c, matcore.apply_fn(AB, f))}
    lam_a = matcore.eigvals_sym(A)
    lam_b = matcore.eigvals_sym(B)
    norm_form = bool(probes is not None and lam_a[-1] > 1.0 and lam_b[-1] > 1.0)
    if norm_form:
        xs = _probe_rows(probes, pair.n)
        lhs = np.linalg.norm(matcore.mpow(AB, 0.5) @ xs.T, axis=0) ** 2 - 1.0
        a_side = np.linalg.norm(matcore.mpow(A, p / 2) @ xs.T, axis=0) ** 2 - 1.0
        b_side = np.linalg.norm(matcore.mpow(B, q / 2) @ xs.T, axis=0) ** 2 - 1.0
        rhs = a_side ** (1.0 / p) * b_side ** (1.0 / q) / c
        parts.update(_probe_parts("norm", rhs, lhs))
    return _combine("check_commuting_product", parts, c, tol,
                    _meta(pair, p=p, q=q, function=f.name, s=s, t=t, norm_form=norm_form))


# -- scalar inequalities ---------------------------------------------------


def _head_tail(a):
    a = np.asarray(a, dtype=np.float64).ravel()
    if a.size < 2:
        raise HypothesisUnsatisfied("need a head term and at least one tail term")
    if np.any(a <= 0) or not np.all(np.isfinite(a)):
        raise HypothesisUnsatisfied("terms must be positive and finite")
    return a


def check_aczel_classic(a, b, tol: float = TOL_SCALAR) -> CheckResult:
    """``(a1 b1 - sum a_i b_i)^2 >= (a1^2 - sum a_i^2)(b1^2 - sum b_i^2)``."""
    a, b = _head_tail(a), _head_tail(b)
    da = a[0] ** 2 - np.sum(a[1:] ** 2)
    db = b[0] ** 2 - np.sum(b[1:] ** 2)
    _require(da > 0 and db > 0, "need a1^2 > sum a_i^2 and b1^2 > sum b_i^2")
    lhs = (a[0] * b[0] - np.dot(a[1:], b[1:])) ** 2
    rhs = da * db
    return _combine("check_aczel_classic", {"classic": _scalar(rhs, lhs)}, 1.0, tol,
                    {"n": int(a.size)})


def check_popoviciu(a, b, p: float, q: float, tol: float = TOL_SCALAR) -> CheckResult:
    """``a1 b1 - sum a_i b_i >= (a1^p - sum a_i^p)^{1/p} (b1^q - sum b_i^q)^{1/q}``."""
    a, b = _head_tail(a), _head_tail(b)
    _require(abs(1 / p + 1 / q - 1) <= 1e-12 and p > 1 and q > 1, "p, q must be conjugate")
    da = a[0] ** p - np.sum(a[1:] ** p)
    db = b[0] ** q - np.sum(b[1:] ** q)
    _require(da > 0 and db > 0, "need a1^p > sum a_i^p and b1^q > sum b_i^q")
    lhs = a[0] * b[0] - np.dot(a[1:], b[1:])
    rhs = da ** (1 / p) * db ** (1 / q)
    return _combine("check_popoviciu", {"popoviciu": _scalar(rhs, lhs)}, 1.0, tol,
                    {"n": int(a.size), "p": p, "q": q})


def check_sum_counterpart(inst: ScalarInstance, f: FunctionDescriptor,
                          tol: float = TOL_SCALAR) -> CheckResult:
    """``sum f(a_i b_i) >= (1/c) (sum f(a_i^p))^{1/p} (sum f(b_i^q))^{1/q}``."""
    _need_descriptor(f)
    _require(f.increasing, f"{f.name} is not increasing")
    a, b, p, q = inst.a, inst.b, inst.p, inst.q
    ratios = b**q / a**p
    s, t = float(ratios.min()), float(ratios.max())
    c = reverse_constant(s, t, max(1 / p, 1 / q))
    args = np.concatenate([a * b, a**p, b**q])
    _require(bool(np.all(f.contains(args))), f"arguments outside the domain of {f.name}")
    fab, fa, fb = f(a * b), f(a**p), f(b**q)
    _require(bool(np.all(np.concatenate([fab, fa, fb]) >= 0)), f"{f.name} is negative on the instance")
    lhs = float(np.sum(fab))
    rhs = float(np.sum(fa) ** (1 / p) * np.sum(fb) ** (1 / q) / c)
    return _combine("check_sum_counterpart", {"sum": _scalar(rhs, lhs)}, c, tol,
                    {"n": int(a.size), "p": p, "q": q, "function": f.name, "s": s, "t": t})


def check_aczel_counterpart(inst: ScalarInstance, tol: float = TOL_SCALAR) -> CheckResult:
    """``sum_{i>=2} x_i y_i - x1 y1 >= (1/c) (sum x_i^p - x1^p)^{1/p} (sum y_i^q - y1^q)^{1/q}``.

    The head terms are ``a[0]`` and ``b[0]``; c comes from the realized bounds
    of ``(y_i/y_1)^q / (x_i/x_1)^p`` over the tail.
    """
    x, y = _head_tail(inst.a), _head_tail(inst.b)
    p, q = inst.p, inst.q
    sx = np.sum(x[1:] ** p) - x[0] ** p
    sy = np.sum(y[1:] ** q) - y[0] ** q
    sxy = np.dot(x[1:], y[1:]) - x[0] * y[0]
    _require(sx >= 0 and sy >= 0 and sxy >= 0, "head-term conditions fail")
    ratios = (y[1:] / y[0]) ** q / (x[1:] / x[0]) ** p
    s, t = float(ratios.min()), float(ratios.max())
    c = reverse_constant(s, t, max(1 / p, 1 / q))
    rhs = sx ** (1 / p) * sy ** (1 / q) / c
    return _combine("check_aczel_counterpart", {"counterpart": _scalar(rhs, sxy)}, c, tol,
                    {"n": int(x.size), "p": p, "q": q, "s": s, "t": t})
