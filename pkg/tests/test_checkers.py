import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import commuting_cases as cc
from loewner_lab import checkers as ck
from loewner_lab import funcatalog as fc
from loewner_lab import generators as gen
from loewner_lab import matcore
from loewner_lab.errors import HypothesisUnsatisfied, NotCommuting
from loewner_lab.generators import CommutingPair, SandwichPair, ScalarInstance

SEEDS = st.integers(0, 2**40)


def _equal_pair(n=4, seed=1, image_of=None):
    A = gen.rand_spd(n, (0.1, 10), seed)
    return SandwichPair(A, A.copy(), 1.0, 1.0, image_of)


def _probes(n, seed=2):
    return gen.rand_probes(n, 20, seed)


def _pair(seed, n=4):
    rng = gen.as_rng(seed)
    s, t = sorted(rng.log_uniform(0.2, 5.0, 2))
    return gen.rand_sandwich_pair(n, s, t, rng)


# -- degenerate equality ----------------------------------------------------

@pytest.mark.parametrize("alpha", [0.0, 0.3, 1.0])
def test_equal_pair_young_family(alpha):
    p = _equal_pair()
    x = _probes(4)
    for r in (ck.check_young(p, alpha), ck.check_reverse_young(p, alpha),
              ck.check_scalar_sandwich(p, alpha, x)):
        assert abs(r.slack) <= 1e-10, r.check_id
    assert ck.check_reverse_young(p, alpha).constant_used == 1.0


def test_young_alpha_endpoints():
    p = _pair(3)
    assert abs(ck.check_young(p, 0.0).slack) <= 1e-12
    assert abs(ck.check_young(p, 1.0).slack) <= 1e-12


def test_equal_pair_aczel_variants():
    p = _equal_pair()
    x = _probes(4)
    assert abs(ck.check_aczel_variant(p, 2.0, 2.0, fc.get("sqrt"), x).slack) <= 1e-10
    assert abs(ck.check_aczel_gen_kantorovich(p, 2.0, 2.0, fc.get("sqrt"), x).slack) <= 1e-10
    for g in ("t^2", "t^1.5"):
        pg = _equal_pair(image_of=g)
        assert abs(ck.check_reverse_aczel(pg, 3.0, 1.5, fc.get(g), x).slack) <= 1e-10
    assert abs(ck.check_reverse_aczel_dec(p, 3.0, 1.5, fc.get("t^-1"), x).slack) <= 1e-10


@pytest.mark.parametrize("check,f", [
    (ck.check_lemma_gdec, "t^-1"),
    (ck.check_lemma_fmono, "sqrt"),
    (ck.check_eig_doubly_concave, "t"),
    (ck.check_unitary_form_concave, "sqrt"),
    (ck.check_eig_dec_geoconvex, "t^-1"),
])
def test_equal_pair_lemmas(check, f):
    assert abs(check(_equal_pair(), 0.4, fc.get(f)).slack) <= 1e-10


def test_equal_pair_doubly_convex():
    p = _equal_pair(image_of="t")
    assert abs(ck.check_eig_doubly_convex(p, 0.4, fc.get("t")).slack) <= 1e-10


def test_commuting_equal_powers():
    Q = gen.rand_orthogonal(3, 1)
    a = np.array([0.5, 2.0, 3.0])
    b = a ** (2 / 2)
    cp = CommutingPair(matcore.from_spectrum(Q, a), matcore.from_spectrum(Q, b), Q, a, b)
    assert abs(ck.check_commuting_product(cp, 2.0, 2.0, fc.get("t")).slack) <= 1e-10


# -- property tests on the statements that hold -----------------------------

@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, alpha=st.floats(0, 1), n=st.integers(2, 6))
def test_young_and_reverse(seed, alpha, n):
    p = _pair(seed, n)
    assert ck.check_young(p, alpha).passed
    r = ck.check_reverse_young(p, alpha)
    assert r.passed
    assert r.ratio <= r.constant_used * (1 + 1e-10) and r.constant_used >= 1


@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, alpha=st.floats(0, 1),
       g=st.sampled_from(["t^-1", "t^-0.5", "1/(1+t)"]),
       f=st.sampled_from(["sqrt", "t^0.3", "t/(t+1)", "log(1+t)", "t"]))
def test_kantorovich_lemmas(seed, alpha, g, f):
    p = _pair(seed)
    assert ck.check_lemma_gdec(p, alpha, fc.get(g)).passed
    assert ck.check_lemma_fmono(p, alpha, fc.get(f)).passed


@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, p=st.floats(1.2, 5), f=st.sampled_from(["sqrt", "t/(t+1)", "log(1+t)"]))
def test_aczel_variant(seed, p, f):
    q = p / (p - 1)
    assert ck.check_aczel_variant(_pair(seed), p, q, fc.get(f), _probes(4, seed)).passed


@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, alpha=st.floats(0, 1),
       f=st.sampled_from(["sqrt", "t/(t+1)", "1-exp(-t)", "t/sqrt(t+1)"]))
def test_generalized_kantorovich_family(seed, alpha, f):
    p = _pair(seed)
    assert ck.check_scalar_sandwich(p, alpha, _probes(4, seed)).passed
    e = ck.check_eig_doubly_concave(p, alpha, fc.get(f))
    u = ck.check_unitary_form_concave(p, alpha, fc.get(f))
    assert e.passed and u.passed


@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, p=st.floats(1.2, 5), f=st.sampled_from(["sqrt", "t/(t+1)", "t^0.3"]))
def test_aczel_gen_kantorovich(seed, p, f):
    pair = gen.rand_sandwich_straddle(4, seed)
    q = p / (p - 1)
    assert ck.check_aczel_gen_kantorovich(pair, p, q, fc.get(f), _probes(4, seed)).passed


@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, alpha=st.floats(0, 1), p=st.floats(1.2, 5),
       g=st.sampled_from(["t^2", "t^1.5", "t^3+t"]))
def test_doubly_convex_family(seed, alpha, p, g):
    gd = fc.get(g)
    rng = gen.as_rng(seed)
    s, t = sorted(rng.log_uniform(0.2, 5.0, 2))
    pair = gen.rand_gimage_sandwich(4, gd, s, t, rng)
    assert ck.check_eig_doubly_convex(pair, alpha, gd).passed
    assert ck.check_reverse_aczel(pair, p, p / (p - 1), gd, _probes(4, seed)).passed


@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, alpha=st.floats(0, 1), p=st.floats(1.2, 5),
       g=st.sampled_from(["t^-1", "t^-0.5"]))
def test_decreasing_family_where_it_holds(seed, alpha, p, g):
    pair = _pair(seed)
    assert ck.check_eig_dec_geoconvex(pair, alpha, fc.get(g)).passed
    assert ck.check_reverse_aczel_dec(pair, p, p / (p - 1), fc.get(g), _probes(4, seed)).passed


@settings(max_examples=40, deadline=None)
@given(seed=SEEDS, p=st.floats(1.2, 5), f=st.sampled_from(["sqrt", "t/(t+1)", "t"]))
def test_commuting_product(seed, p, f):
    q = p / (p - 1)
    rng = gen.as_rng(seed)
    s, t = sorted(rng.log_uniform(0.2, 5.0, 2))
    cp = gen.rand_commuting_sandwich(4, p, q, s, t, rng)
    assert ck.check_commuting_product(cp, p, q, fc.get(f), _probes(4, seed)).passed


def test_commuting_norm_form_engages():
    cp = gen.rand_commuting_sandwich(4, 2.0, 2.0, 0.8, 1.5, 3, a_range=(1.5, 4.0))
    r = ck.check_commuting_product(cp, 2.0, 2.0, fc.get("sqrt"), _probes(4))
    assert r.trial_meta["norm_form"] and "norm" in r.parts and r.passed


def test_gen_kantorovich_norm_form():
    p, q = 2.0, 2.0
    cp = gen.rand_commuting_sandwich(4, p, q, 0.6, 2.0, 7, a_range=(1.5, 4.0))
    pair = gen.commuting_power_pair(cp, p, q)
    r = ck.check_aczel_gen_kantorovich(pair, p, q, fc.get("t-1"), _probes(4), norm_form=True)
    assert "norm" in r.parts and r.passed


# -- invariants -------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(seed=SEEDS, alpha=st.floats(0.05, 0.95), f=st.sampled_from(["sqrt", "t/(t+1)", "t"]))
def test_unitary_form_matches_eigen_form(seed, alpha, f):
    p = _pair(seed)
    e = ck.check_eig_doubly_concave(p, alpha, fc.get(f))
    u = ck.check_unitary_form_concave(p, alpha, fc.get(f))
    assert e.passed == u.passed


def test_reverse_aczel_eigen_part_agrees_with_eig_check():
    g = fc.get("t^2")
    pair = gen.rand_gimage_sandwich(5, g, 0.4, 3.0, 9)
    p, q = 3.0, 1.5
    ra = ck.check_reverse_aczel(pair, p, q, g, _probes(5))
    ed = ck.check_eig_doubly_convex(pair, 1 / q, g)
    assert abs(ra.parts["unitary"] - ed.slack) < 1e-10


@pytest.mark.parametrize("name", cc.MATRIX_CHECKS)
def test_oracle_equivalence(name):
    assert cc.max_deviation(name, count=40, seed=5) <= 1e-9


# -- scalar checks ----------------------------------------------------------

def test_aczel_classic_hand_instances():
    assert ck.check_aczel_classic([2, 1], [2, 1]).raw_slack == 0.0
    assert ck.check_aczel_classic([2, 1], [3, 1]).raw_slack == 1.0
    # square roots of 3 are not exact, so the Popoviciu side is zero to rounding
    assert abs(ck.check_popoviciu([2, 1], [2, 1], 2.0, 2.0).raw_slack) < 1e-15


@settings(max_examples=100, deadline=None)
@given(seed=SEEDS, n=st.integers(2, 8))
def test_popoviciu_sign_agrees_with_classic(seed, n):
    a, b = gen.rand_popoviciu_instance(n, 2.0, seed)
    c = ck.check_aczel_classic(a, b)
    p = ck.check_popoviciu(a, b, 2.0, 2.0)
    assert (c.raw_slack >= 0) == (p.raw_slack >= 0)


@settings(max_examples=100, deadline=None)
@given(seed=SEEDS, n=st.integers(2, 8), p=st.floats(1.1, 6))
def test_popoviciu_holds(seed, n, p):
    a, b = gen.rand_popoviciu_instance(n, p, seed)
    assert ck.check_popoviciu(a, b, p, p / (p - 1)).passed


def test_popoviciu_single_tail_is_scalar_young():
    # a1 b1 - a2 b2 >= (a1^p - a2^p)^{1/p} (b1^q - b2^q)^{1/q}
    r = ck.check_popoviciu([2.0, 1.0], [3.0, 0.5], 3.0, 1.5)
    assert r.passed


@settings(max_examples=100, deadline=None)
@given(seed=SEEDS, n=st.integers(2, 8), p=st.floats(1.2, 5),
       f=st.sampled_from(["t", "sqrt", "t/(t+1)", "log(1+t)", "1-exp(-t)"]))
def test_sum_counterpart_concave_functions(seed, n, p, f):
    inst = gen.rand_scalar_instance(n, p, seed)
    assert ck.check_sum_counterpart(inst, fc.get(f)).passed


def test_sum_counterpart_ratio_one_identity():
    a = np.array([1.0, 2.0, 0.5])
    inst = ScalarInstance(a, a, 2.0, 2.0, 1.0, 1.0)
    r = ck.check_sum_counterpart(inst, fc.get("t"))
    assert r.constant_used == 1.0 and abs(r.slack) < 1e-15


def test_aczel_counterpart_equal_terms():
    inst = ScalarInstance(np.ones(3), np.ones(3), 2.0, 2.0, 1.0, 1.0)
    r = ck.check_aczel_counterpart(inst)
    # 2 - 1 >= (2 - 1)^{1/2} (2 - 1)^{1/2}
    assert r.raw_slack == 0.0


@settings(max_examples=50, deadline=None)
@given(seed=SEEDS, n=st.integers(3, 8), p=st.floats(1.2, 5))
def test_aczel_counterpart_symmetric(seed, n, p):
    inst = gen.rand_scalar_instance(n, p, seed, rescale=True)
    x = inst.a
    sym = ScalarInstance(x, x, 2.0, 2.0, 1.0, 1.0)
    if np.sum(x[1:] ** 2) >= x[0] ** 2:
        assert ck.check_aczel_counterpart(sym).passed


# -- hypothesis enforcement -------------------------------------------------

def test_hypotheses_enforced():
    p = _pair(1)
    with pytest.raises(HypothesisUnsatisfied):
        ck.check_lemma_gdec(p, 0.5, fc.get("t^-2"))
    with pytest.raises(HypothesisUnsatisfied):
        ck.check_lemma_fmono(p, 0.5, fc.get("t^2"))
    with pytest.raises(HypothesisUnsatisfied):
        ck.check_eig_doubly_concave(p, 0.5, fc.get("log"))
    with pytest.raises(HypothesisUnsatisfied):
        ck.check_eig_doubly_convex(p, 0.5, fc.get("t^2"))
    with pytest.raises(HypothesisUnsatisfied):
        ck.check_eig_dec_geoconvex(p, 0.5, fc.get("1/(1+t)"))
    with pytest.raises(HypothesisUnsatisfied):
        ck.check_aczel_classic([1, 2], [2, 1])
    with pytest.raises(HypothesisUnsatisfied):
        ck.check_aczel_gen_kantorovich(
            gen.rand_sandwich_pair(3, 1.2, 3.0, 1), 2.0, 2.0, fc.get("sqrt"), _probes(3))


def test_not_commuting():
    A = gen.rand_spd(3, (0.5, 2), 1)
    B = gen.rand_spd(3, (0.5, 2), 2)
    cp = CommutingPair(A, B, np.eye(3), np.ones(3), np.ones(3))
    with pytest.raises(NotCommuting):
        ck.check_commuting_product(cp, 2.0, 2.0, fc.get("sqrt"))


# -- statements that do not hold as written ---------------------------------

def test_aczel_counterpart_counterexample():
    x = np.array([1.0, 2.23155, 1.13529])
    y = np.array([1.0, 1.05004, 2.40723])
    p = 2.01736
    inst = ScalarInstance(x, y, p, p / (p - 1), 0.0, 0.0)
    r = ck.check_aczel_counterpart(inst)
    assert r.raw_slack < -0.15 and not r.passed


def test_sum_counterpart_fails_for_convex_f():
    p = 2.157
    inst = ScalarInstance(np.array([1.730, 1.026]), np.array([1.227, 1.671]), p, p / (p - 1), 0, 0)
    assert not ck.check_sum_counterpart(inst, fc.get("t^2")).passed
    # the shift t - 1/(n-1) with n = 2
    r = ck.check_sum_counterpart(inst, fc.shifted_identity(2))
    assert r.raw_slack < -0.1


def test_decreasing_t_minus_two_fails():
    worst = min(ck.check_eig_dec_geoconvex(_pair(s), 0.5, fc.get("t^-2")).slack for s in range(20))
    assert worst < -0.01


def test_literal_constant_fails_for_inverse():
    worst = min(
        ck.check_reverse_aczel_dec(_pair(s), 2.0, 2.0, fc.get("t^-1"), _probes(4, s),
                                   literal_constant=True).slack
        for s in range(20)
    )
    assert worst < -1e-3


def _diag_pair(a, b):
    a, b = np.asarray(a), np.asarray(b)
    I = np.eye(a.size)
    return CommutingPair(np.diag(a), np.diag(b), I, a, b)


def _unit_rows(rows):
    x = np.asarray(rows, dtype=float)
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def test_commuting_norm_form_counterexample():
    cp = _diag_pair([2.807715791940319, 1.2319061470636963],
                    [2.109127962816923, 1.0364311590944402])
    p = 1.6388478047613053
    x = _unit_rows([[0.24907712394301731, 0.9684836531032801],
                    [0.9290138222129581, 0.3700450217706896],
                    [0.9577473301140121, 0.2876109380038965],
                    [-0.3405497012652752, 0.9402265157759229],
                    [0.4432843411333704, -0.8963810534063924],
                    [-0.9833426812514834, 0.18176130289240208],
                    [0.38841916083316963, 0.9214828026054833],
                    [-0.694965036196635, 0.7190435302985557]])
    r = ck.check_commuting_product(cp, p, p / (p - 1), fc.get("sqrt"), x)
    assert r.parts["operator"] > 0
    assert r.parts["norm"] < -3e-3


def test_gen_kantorovich_norm_form_counterexample():
    cp = _diag_pair([1.2784537946206613, 2.7293451266223023],
                    [1.0928318764717868, 1.208230293988906])
    p = 1.2294508222056983
    q = p / (p - 1)
    pair = gen.commuting_power_pair(cp, p, q)
    x = _unit_rows([[-0.9075938079965092, -0.4198493535619601],
                    [0.8894362303454373, -0.45705928734563345],
                    [-0.9988643249858272, 0.04764514949717691],
                    [-0.7014570237885959, 0.7127117536407305]])
    r = ck.check_aczel_gen_kantorovich(pair, p, q, fc.get("t-1"), x, norm_form=True)
    assert r.parts["unitary"] > 0
    assert r.parts["norm"] < -2e-5
