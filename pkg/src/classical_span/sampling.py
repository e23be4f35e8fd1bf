"""Monte Carlo estimates of phi with Wilson intervals.

Randomness comes from numpy's Philox4x64-10 counter-based generator seeded
with the user's 64-bit seed.  Draws happen in fixed-size batches in a fixed
order, so an estimate depends only on ``(context, seed, samples)``.

``U'`` is drawn uniformly from its orbit by rejection: a uniform
``k x N`` matrix of rank ``k`` spans a uniform k-subspace (each subspace has
the same number of bases), and keeping only the non-degenerate ones of the
right type leaves the uniform distribution on the orbit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from statistics import NormalDist
from typing import Iterable, Optional

import numpy as np

from . import linalg
from .counting import CountingContext
from .enumeration import (
    EmptyOrbitError,
    classify_batch,
    context_space,
    exact_phi,
    exact_phi_feasible,
    iterate_bases,
    meets_batch,
)
from .geometry import ClassicalSpace, Subspace

SAMPLE_BATCH = 4096
MAX_CONSECUTIVE_REJECTIONS = 10**6
Z95 = NormalDist().inv_cdf(0.975)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed) % 2**64))


def random_subspace(V: ClassicalSpace, k: int, rng: np.random.Generator) -> Subspace:
    """Uniform random k-subspace of V."""
    if k == 0:
        return V.zero()
    return Subspace(V, random_bases(V, k, 1, rng)[0], reduced=True)


def random_bases(V: ClassicalSpace, k: int, count: int, rng: np.random.Generator,
                 batch: int = SAMPLE_BATCH) -> np.ndarray:
    """RREF bases (count, k, dim) of independent uniform k-subspaces.

    Every k-subspace has the same number of full-rank k x dim representing
    matrices, so the row space of a uniform full-rank matrix is uniform.
    """
    F = V.field
    out = []
    have = 0
    while have < count:
        X = rng.integers(0, F.order, size=(min(batch, 2 * (count - have) + 8), k, V.dim), dtype=np.uint8)
        R, rk, _ = linalg.batch_eliminate(X, F)
        R = R[rk == k][: count - have]
        out.append(R)
        have += len(R)
    return np.concatenate(out) if out else np.zeros((0, k, V.dim), dtype=np.uint8)


def wilson_interval(hits: int, n: int, z: float = Z95) -> tuple[Fraction, Fraction]:
    """Wilson score interval as exact rationals of the float endpoints, clamped to [0, 1]."""
    if n <= 0:
        raise ValueError("need at least one sample")
    p = hits / n
    z2 = z * z
    denom = 1 + z2 / n
    centre = (p + z2 / (2 * n)) / denom
    half = z * np.sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom
    phat = Fraction(hits, n)
    lo = min(max(Fraction(centre - half), Fraction(0)), phat)
    hi = max(min(Fraction(centre + half), Fraction(1)), phat)
    return lo, hi


@dataclass
class PhiEstimate:
    context: CountingContext
    samples: int
    hits: int
    seed: int
    ci_low: Fraction
    ci_high: Fraction
    drawn: int  # full-rank subspaces drawn
    accepted: int

    @property
    def phat(self) -> Fraction:
        return Fraction(self.hits, self.samples)

    @property
    def rejection_rate(self) -> Fraction:
        return Fraction(self.drawn - self.accepted, self.drawn)

    @property
    def acceptance_rate(self) -> Fraction:
        return Fraction(self.accepted, self.drawn)

    def contains(self, value) -> bool:
        return self.ci_low <= value <= self.ci_high

    def to_dict(self) -> dict:
        return {
            "context": self.context.to_dict(),
            "samples": self.samples,
            "hits": self.hits,
            "phat": f"{float(self.phat):.10f}",
            "ci_low": f"{float(self.ci_low):.10f}",
            "ci_high": f"{float(self.ci_high):.10f}",
            "seed": self.seed,
            "rejection_rate": f"{float(self.rejection_rate):.10f}",
            "drawn": self.drawn,
        }


def fixed_U(V: ClassicalSpace, n: int, sigma=None) -> Subspace:
    """The first orbit member in RREF order: the same U as exact enumeration."""
    for B in iterate_bases(V, n, "nondegenerate", sigma, budget=10**30):
        return Subspace(V, B[0], reduced=True)
    raise EmptyOrbitError(f"no non-degenerate {n}-subspace of type {sigma}")


def estimate_phi(ctx: CountingContext, samples: int, seed: int,
                 batch: int = SAMPLE_BATCH) -> PhiEstimate:
    """Estimate phi from ``samples`` uniform members of the U'-orbit."""
    if samples < 1:
        raise ValueError("samples must be positive")
    V = context_space(ctx)
    F = V.field
    k = ctx.nprime
    U = fixed_U(V, ctx.n, ctx.sigma)
    A = linalg.nullspace(U.basis, F)
    rng = make_rng(seed)
    accepted = hits = drawn = 0
    since_accept = 0
    while accepted < samples:
        X = rng.integers(0, F.order, size=(batch, k, V.dim), dtype=np.uint8)
        R, rk, _ = linalg.batch_eliminate(X, F)
        R = R[rk == k]
        if len(R) == 0:
            continue
        lab = classify_batch(V, R)
        ok = lab.nondegenerate
        if ctx.sigma_prime is not None:
            ok = ok & (lab.sigma == ctx.sigma_prime)
        pos = np.flatnonzero(ok)
        need = samples - accepted
        if len(pos) > need:
            pos = pos[:need]
            used = int(pos[-1]) + 1
        else:
            used = len(R)
        if len(pos) == 0:
            since_accept += used
        else:
            since_accept = used - int(pos[-1]) - 1
        if since_accept >= MAX_CONSECUTIVE_REJECTIONS:
            raise EmptyOrbitError(
                f"{since_accept} consecutive rejections for {ctx.label()}: the U'-orbit looks empty"
            )
        drawn += used
        accepted += len(pos)
        if len(pos):
            hits += int(np.count_nonzero(meets_batch(A, R[pos], F)))
    lo, hi = wilson_interval(hits, samples)
    return PhiEstimate(ctx, samples, hits, int(seed), lo, hi, drawn, accepted)


def derive_seed(seed: int, index: int) -> int:
    """Independent child seed for the index-th grid point."""
    return int(np.random.SeedSequence([int(seed) % 2**64, index]).generate_state(1, np.uint64)[0])


def q2_orthogonal_experiment(grid: Iterable, samples: int, seed: int,
                             exact_budget: Optional[int] = 2 * 10**6) -> list:
    """Evidence for the orthogonal q = 2 problem: phat * q with CIs for each (eps, sigma, sigma').

    ``grid`` holds ``(n, n')`` pairs of even dimensions.  When the U'-orbit is
    small enough the exact phi is added.  Nothing about the conjectured
    constant is asserted; rows only flag CIs that lie entirely at or above 2/q.
    """
    rows = []
    pairs = [tuple(g) for g in grid]
    for n, n2 in pairs:
        if n % 2 or n2 % 2:
            raise ValueError(f"q = 2 orthogonal needs even n, n'; got ({n}, {n2})")
    index = 0
    for n, n2 in pairs:
        for eps in (1, -1):
            for s in (1, -1):
                for s2 in (1, -1):
                    ctx = CountingContext("orthogonal", n, n2, 2, eps, s, s2)
                    row = {"context": ctx.to_dict(), "label": ctx.label()}
                    try:
                        est = estimate_phi(ctx, samples, derive_seed(seed, index))
                    except EmptyOrbitError as exc:
                        row.update(status="empty", reason=str(exc))
                        rows.append(row)
                        index += 1
                        continue
                    row.update(
                        status="ok",
                        samples=samples,
                        hits=est.hits,
                        phat=est.phat,
                        ci_low=est.ci_low,
                        ci_high=est.ci_high,
                        phat_q=2 * est.phat,
                        ci_low_q=2 * est.ci_low,
                        ci_high_q=2 * est.ci_high,
                        excludes_below_2=2 * est.ci_low >= 2,
                        exact=None,
                    )
                    if exact_budget and exact_phi_feasible(ctx, exact_budget):
                        ex = exact_phi(ctx, budget=exact_budget, check_witt=False)
                        row.update(exact=ex.phi, exact_below_1=ex.phi < 1,
                                   ci_contains_exact=est.contains(ex.phi))
                    rows.append(row)
                    index += 1
    return rows
