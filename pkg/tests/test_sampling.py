from fractions import Fraction
from statistics import NormalDist

import numpy as np
import pytest
from hypothesis import given, strategies as st

import classical_span.sampling as sampling
from classical_span.counting import CountingContext, gaussian_binomial
from classical_span.enumeration import EmptyOrbitError, context_space, exact_phi, orbit_bases, representative
from classical_span.field import GF
from classical_span.geometry import standard_space
from classical_span.sampling import (
    derive_seed,
    estimate_phi,
    fixed_U,
    make_rng,
    q2_orthogonal_experiment,
    random_bases,
    random_subspace,
    wilson_interval,
)


def chi2_critical(df, alpha):
    # Wilson-Hilferty approximation to the chi-square quantile
    z = NormalDist().inv_cdf(1 - alpha)
    h = 2 / (9 * df)
    return df * (1 - h + z * h**0.5) ** 3


# random subspaces ------------------------------------------------------------


def test_random_subspace_edge_dimensions():
    V = standard_space("quadratic", 4, "-", GF(3))
    rng = make_rng(0)
    assert random_subspace(V, 4, rng) == V.whole()
    assert random_subspace(V, 0, rng) == V.zero()


def test_random_subspaces_of_f2_4_are_uniform():
    V = standard_space("alternating", 4, None, GF(2))
    B = random_bases(V, 2, 10**5, make_rng(2024))
    keys, counts = np.unique(B.reshape(len(B), -1), axis=0, return_counts=True)
    assert len(keys) == gaussian_binomial(4, 2, 2) == 35
    expected = len(B) / 35
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    assert chi2 < chi2_critical(34, 0.001)


def test_single_draws_cover_all_subspaces():
    V = standard_space("alternating", 4, None, GF(2))
    rng = make_rng(7)
    seen = {random_subspace(V, 2, rng) for _ in range(2000)}
    assert len(seen) == 35


# Wilson intervals --------------------------------------------------------------


@given(st.integers(1, 10**6), st.data())
def test_wilson_interval_brackets_phat(n, data):
    hits = data.draw(st.integers(0, n))
    lo, hi = wilson_interval(hits, n)
    assert 0 <= lo <= Fraction(hits, n) <= hi <= 1
    if hits == 0:
        assert lo == 0
    if hits == n:
        assert hi == 1


def test_wilson_interval_known_value():
    lo, hi = wilson_interval(50, 100)
    assert abs(float(lo) - 0.4038) < 1e-4 and abs(float(hi) - 0.5962) < 1e-4
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


# estimator -------------------------------------------------------------------


def test_symplectic_222_interval_contains_one_half():
    est = estimate_phi(CountingContext("symplectic", 2, 2, 2), 10**5, seed=11)
    assert est.contains(Fraction(1, 2))
    assert est.samples == est.accepted == 10**5


@pytest.mark.parametrize("sigma", ["+", "-"])
def test_exceptional_orthogonal_estimate_is_exactly_one(sigma):
    est = estimate_phi(CountingContext("orthogonal", 1, 1, 3, "+", sigma, sigma), 2000, seed=3)
    assert est.phat == 1 and est.hits == est.samples
    assert est.ci_high == 1


def test_unitary_223_below_nine_fifths_over_q2():
    est = estimate_phi(CountingContext("unitary", 2, 2, 3), 10**5, seed=5)
    assert est.ci_high < Fraction(1, 5)
    assert est.contains(exact_phi(CountingContext("unitary", 2, 2, 3)).phi)


def test_estimates_are_reproducible():
    ctx = CountingContext("orthogonal", 2, 3, 3, "o", "+", "-")
    a = estimate_phi(ctx, 5000, seed=99)
    b = estimate_phi(ctx, 5000, seed=99)
    assert a == b and a.to_dict() == b.to_dict()
    c = estimate_phi(ctx, 5000, seed=100)
    assert (c.hits, c.drawn) != (a.hits, a.drawn)


@pytest.mark.parametrize("ctx", [
    CountingContext("symplectic", 2, 2, 3),
    CountingContext("unitary", 1, 2, 2),
    CountingContext("orthogonal", 2, 2, 3, "-", "-", "-"),
    CountingContext("orthogonal", 1, 3, 5, "+", "-", "+"),
], ids=lambda c: c.label())
def test_acceptance_rate_matches_orbit_fraction(ctx):
    est = estimate_phi(ctx, 20000, seed=8)
    V = context_space(ctx)
    frac = Fraction(len(orbit_bases(V, ctx.nprime, ctx.sigma_prime)),
                    gaussian_binomial(V.dim, ctx.nprime, V.field.order))
    lo, hi = wilson_interval(est.accepted, est.drawn)
    assert lo <= frac <= hi
    assert est.rejection_rate + est.acceptance_rate == 1


def test_fixed_U_is_the_enumeration_representative():
    ctx = CountingContext("orthogonal", 2, 4, 3, "+", "-", "-")
    V = context_space(ctx)
    assert fixed_U(V, 2, -1) == representative(V, 2, -1)


def test_empty_orbit_is_reported(monkeypatch):
    ctx = CountingContext("symplectic", 2, 2, 2)
    real = sampling.classify_batch

    def nothing(V, B, *a, **k):
        lab = real(V, B, *a, **k)
        lab.nondegenerate = np.zeros_like(lab.nondegenerate)
        return lab

    monkeypatch.setattr(sampling, "classify_batch", nothing)
    monkeypatch.setattr(sampling, "MAX_CONSECUTIVE_REJECTIONS", 5000)
    with pytest.raises(EmptyOrbitError, match="consecutive rejections"):
        estimate_phi(ctx, 10, seed=0)


def test_sample_count_must_be_positive():
    with pytest.raises(ValueError):
        estimate_phi(CountingContext("symplectic", 2, 2, 2), 0, seed=0)


def test_derived_seeds_are_distinct_and_stable():
    seeds = [derive_seed(42, i) for i in range(200)]
    assert len(set(seeds)) == 200
    assert seeds == [derive_seed(42, i) for i in range(200)]


# q = 2 orthogonal report -------------------------------------------------------


def test_q2_experiment_rows_and_exact_comparison():
    rows = q2_orthogonal_experiment([(2, 2)], samples=3000, seed=1)
    assert len(rows) == 8
    for r in rows:
        assert r["status"] == "ok"
        assert r["ci_low"] <= r["phat"] <= r["ci_high"]
        assert r["phat_q"] == 2 * r["phat"]
        assert r["exact"] is not None and r["exact_below_1"]
        assert r["excludes_below_2"] == (r["ci_low_q"] >= 2)


def test_q2_experiment_errors_and_empty_grid():
    assert q2_orthogonal_experiment([], samples=10, seed=0) == []
    with pytest.raises(ValueError, match="even"):
        q2_orthogonal_experiment([(3, 2)], samples=10, seed=0)


def test_q2_experiment_is_reproducible():
    a = q2_orthogonal_experiment([(2, 4)], samples=500, seed=5, exact_budget=None)
    b = q2_orthogonal_experiment([(2, 4)], samples=500, seed=5, exact_budget=None)
    assert a == b
    assert all(r["exact"] is None for r in a)
