"""Exhaustive enumeration of subspaces and the exact computations built on it.

Subspaces are produced in batches of RREF bases, ordered lexicographically
by pivot pattern and then by the free entries read as a base-|F| counter.
All classification (non-degeneracy, subspace type, totally isotropic) is
done per batch with table lookups, which is what makes the desk-scale
grids feasible on one core.

The fast classifier reads subspace types of odd-characteristic spaces from
discriminants.  Setting ``method="count"`` uses singular-vector counts
instead; the test suite checks that both agree with
:func:`classical_span.geometry.classify`.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterator, Optional, Union

import numpy as np

from . import linalg
from .counting import CountingContext, gaussian_binomial
from .field import FieldSpec
from .geometry import (
    ClassicalSpace,
    FormKind,
    Subspace,
    singular_count_for_type,
    standard_space,
)

DEFAULT_BUDGET = 10**7
BATCH_ROWS = 1 << 15


class BudgetExceeded(RuntimeError):
    pass


class EmptyOrbitError(ValueError):
    pass


def default_budget() -> int:
    env = os.environ.get("CLASSICAL_SPAN_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def check_budget(N: int, k: int, order: int, budget: Optional[int]) -> int:
    total = gaussian_binomial(N, k, order)
    limit = default_budget() if budget is None else budget
    if total > limit:
        raise BudgetExceeded(
            f"enumerating {k}-subspaces of GF({order})^{N} needs [{N},{k}]_{order} = {total} "
            f"subspaces, over the budget of {limit}"
        )
    return total


# --------------------------------------------------------------------------
# RREF enumeration


def iter_rref_batches(N: int, k: int, F: FieldSpec, batch_rows: int = BATCH_ROWS) -> Iterator[np.ndarray]:
    """Yield ``(M, k, N)`` uint8 stacks covering every k-subspace of F^N once."""
    q = F.order
    if k == 0:
        yield np.zeros((1, 0, N), dtype=np.uint8)
        return
    for piv in itertools.combinations(range(N), k):
        pivset = set(piv)
        free = [(i, j) for i, p in enumerate(piv) for j in range(p + 1, N) if j not in pivset]
        base = np.zeros((k, N), dtype=np.uint8)
        base[np.arange(k), piv] = 1
        f = len(free)
        total = q**f
        rows = np.array([i for i, _ in free], dtype=np.intp)
        cols = np.array([j for _, j in free], dtype=np.intp)
        for start in range(0, total, batch_rows):
            stop = min(total, start + batch_rows)
            idx = np.arange(start, stop, dtype=np.int64)
            out = np.broadcast_to(base, (stop - start, k, N)).copy()
            for t in range(f - 1, -1, -1):
                out[:, rows[t], cols[t]] = idx % q
                idx //= q
            yield out


# --------------------------------------------------------------------------
# batch classification


def _points_cache(k: int, F: FieldSpec) -> np.ndarray:
    key = (k, F.order)
    pts = _POINTS.get(key)
    if pts is None:
        pts = _POINTS[key] = linalg.projective_points(k, F)
    return pts


_POINTS: dict = {}


def quad_form_values(Qs: np.ndarray, X: np.ndarray, F: FieldSpec) -> np.ndarray:
    """Values of the upper-triangular forms ``Qs`` (M, k, k) on vectors ``X`` (p, k) -> (M, p)."""
    M, k, _ = Qs.shape
    out = np.zeros((M, X.shape[0]), dtype=np.uint8)
    for i in range(k):
        for j in range(i, k):
            coeff = Qs[:, i, j]
            if not coeff.any():
                continue
            xx = F.mul(X[:, i], X[:, j])
            out = F.add(out, F.mul_table[coeff[:, None], xx[None, :]])
    return out


def batch_intrinsic_type(Qs: np.ndarray, F: FieldSpec) -> np.ndarray:
    """Intrinsic types of non-degenerate forms, by counting singular points."""
    M, k, _ = Qs.shape
    if k == 0:
        return np.ones(M, dtype=np.int8)
    q = F.order
    pts = _points_cache(k, F)
    s = np.count_nonzero(quad_form_values(Qs, pts, F) == 0, axis=1) * (q - 1)
    out = np.zeros(M, dtype=np.int8)
    if k % 2:
        return out
    out[s == singular_count_for_type(k, 1, q)] = 1
    out[s == singular_count_for_type(k, -1, q)] = -1
    return out


def _parity_sign(x: int, q: int) -> int:
    return -1 if (x * (q - 1) // 2) % 2 else 1


@dataclass
class BatchLabels:
    nondegenerate: np.ndarray
    sigma: Optional[np.ndarray] = None
    delta: Optional[np.ndarray] = None
    isotropic: Optional[np.ndarray] = None


def classify_batch(V: ClassicalSpace, B: np.ndarray, method: str = "auto",
                   want_isotropic: bool = False) -> BatchLabels:
    """Vectorized labels of the subspaces spanned by the bases ``B`` (M, k, N).

    ``sigma`` is filled for quadratic spaces on the non-degenerate entries
    (0 elsewhere); ``delta`` for odd q.
    """
    F = V.field
    M, k, N = B.shape
    if k == 0:
        ones = np.ones(M, dtype=bool)
        return BatchLabels(ones, np.ones(M, dtype=np.int8), np.ones(M, dtype=np.int8), ones)
    G = V.restricted_gram(B)
    _, rk, _, det = linalg.batch_eliminate(G, F, det=True)
    nondeg = det != 0
    labels = BatchLabels(nondeg)
    if want_isotropic:
        iso = ~G.reshape(M, -1).any(axis=1)
        if V.kind is FormKind.QUADRATIC:
            iso &= ~V.restricted_quad(B).reshape(M, -1).any(axis=1)
        labels.isotropic = iso
    if V.kind is not FormKind.QUADRATIC:
        return labels
    q = F.order
    sigma = np.zeros(M, dtype=np.int8)
    if q % 2:
        delta = np.where(F.square_table[det], 1, -1).astype(np.int8)
        delta[~nondeg] = 0
        labels.delta = delta
    nperp = N - k
    if k % 2 == 0:
        if q % 2 and method == "auto":
            sigma = (delta * _parity_sign(k // 2, q)).astype(np.int8)
        else:
            idx = np.flatnonzero(nondeg)
            if idx.size:
                sigma[idx] = batch_intrinsic_type(V.restricted_quad(B[idx]), F)
    elif q % 2 == 0:
        pass  # odd-dimensional subspaces carry no type in even characteristic
    elif nperp == 0:
        sigma[:] = 1
    elif nperp % 2 == 0:
        if method == "auto":
            dperp = delta * V.discriminant
            sigma = (dperp * _parity_sign(nperp // 2, q)).astype(np.int8)
        else:
            idx = np.flatnonzero(nondeg)
            for start in range(0, idx.size, 4096):
                sub = idx[start:start + 4096]
                perps = np.stack([Subspace(V, B[i]).perp().basis for i in sub])
                sigma[sub] = batch_intrinsic_type(V.restricted_quad(perps), F)
    else:
        sigma = delta.copy()
    sigma[~nondeg] = 0
    labels.sigma = sigma
    return labels


def point_alpha_batch(V: ClassicalSpace, P: np.ndarray) -> np.ndarray:
    """alpha labels (+1/-1) of non-singular points ``P`` (M, N) of a quadratic space, q odd.

    0 marks singular points.  For even N this is delta(W); for odd N it is
    the type of the even-dimensional hyperplane W^perp, read from
    delta(W^perp) = delta(V) delta(W).
    """
    F = V.field
    if F.p == 2:
        raise ValueError("alpha labels need q odd")
    Qv = V.quadratic_values(P)
    bw = F.add(Qv, Qv)  # beta(w, w) = 2 Q(w)
    d = np.where(F.square_table[bw], 1, -1).astype(np.int8)
    N = V.dim
    if N % 2 == 0:
        out = d
    else:
        out = (d * V.discriminant * _parity_sign((N - 1) // 2, F.order)).astype(np.int8)
    out[Qv == 0] = 0
    return out


# --------------------------------------------------------------------------
# iteration with filters


Filter = Union[str, Callable[[Subspace], bool], None]


def _batch_mask(V, B, filt: str, sigma=None, method="auto") -> np.ndarray:
    M = B.shape[0]
    if filt in (None, "all"):
        mask = np.ones(M, dtype=bool)
        if sigma is None:
            return mask
    want_iso = filt in ("isotropic", "singular", "non-isotropic", "not-isotropic")
    lab = classify_batch(V, B, method=method, want_isotropic=want_iso)
    if filt in (None, "all"):
        mask = np.ones(M, dtype=bool)
    elif filt == "nondegenerate":
        mask = lab.nondegenerate
    elif filt == "degenerate":
        mask = ~lab.nondegenerate
    elif filt in ("isotropic", "singular"):
        mask = lab.isotropic
    elif filt in ("non-isotropic", "not-isotropic"):
        mask = ~lab.isotropic
    else:
        raise ValueError(f"unknown filter {filt!r}")
    if sigma is not None:
        if lab.sigma is None:
            raise ValueError("sigma filters apply to quadratic spaces only")
        mask = mask & lab.nondegenerate & (lab.sigma == sigma)
    return mask


def iterate_bases(V: ClassicalSpace, k: int, filt: str = "all", sigma=None,
                  budget: Optional[int] = None, method: str = "auto") -> Iterator[np.ndarray]:
    """Batches of RREF bases of the k-subspaces passing ``filt``."""
    check_budget(V.dim, k, V.field.order, budget)
    for B in iter_rref_batches(V.dim, k, V.field):
        mask = _batch_mask(V, B, filt, sigma, method)
        if mask.any():
            yield B[mask]


def iterate_subspaces(V: ClassicalSpace, k: int, filter: Filter = "all", sigma=None,
                      budget: Optional[int] = None) -> Iterator[Subspace]:
    """Every k-subspace passing ``filter`` exactly once, in canonical RREF order.

    ``filter`` is one of ``"all"``, ``"nondegenerate"``, ``"degenerate"``,
    ``"isotropic"`` (totally isotropic, totally singular for quadratic
    spaces), ``"non-isotropic"``, or a predicate on :class:`Subspace`.
    """
    if callable(filter):
        check_budget(V.dim, k, V.field.order, budget)
        for B in iter_rref_batches(V.dim, k, V.field):
            for b in B:
                S = Subspace(V, b, reduced=True)
                if filter(S):
                    yield S
        return
    for B in iterate_bases(V, k, filter, sigma, budget):
        for b in B:
            yield Subspace(V, b, reduced=True)


def collect_bases(V, k, filt="all", sigma=None, budget=None, method="auto") -> np.ndarray:
    parts = list(iterate_bases(V, k, filt, sigma, budget, method))
    if not parts:
        return np.zeros((0, k, V.dim), dtype=np.uint8)
    return np.concatenate(parts)


# --------------------------------------------------------------------------
# exact phi


def meets_batch(A_U: np.ndarray, B: np.ndarray, F: FieldSpec) -> np.ndarray:
    """``U & U' != 0`` for each U' basis in ``B``, given the annihilator ``A_U`` of U.

    ``c B`` lies in U iff ``c B A_U^T = 0``, so the intersection is non-zero
    exactly when the square matrix ``B A_U^T`` is singular.
    """
    prod = F.matmul(B, A_U.T)
    return linalg.batch_det(prod, F) == 0


def context_space(ctx: CountingContext) -> ClassicalSpace:
    return standard_space(ctx.kind, ctx.N, ctx.epsilon, ctx.field_order)


def orbit_filter(ctx: CountingContext, which: str):
    if which == "U":
        return "nondegenerate", ctx.sigma
    return "nondegenerate", ctx.sigma_prime


def representative(V: ClassicalSpace, k: int, sigma=None, budget=None) -> Subspace:
    """First non-degenerate k-subspace (of subspace type sigma) in RREF order."""
    for B in iterate_bases(V, k, "nondegenerate", sigma, budget):
        return Subspace(V, B[0], reduced=True)
    raise EmptyOrbitError(f"no non-degenerate {k}-subspace of type {sigma} exists")


def random_representative(V: ClassicalSpace, k: int, sigma=None, seed: int = 12345,
                          max_draws: int = 10**6) -> Subspace:
    """A uniformly random member of the orbit, by rejection."""
    rng = np.random.Generator(np.random.Philox(seed))
    F = V.field
    drawn = 0
    while drawn < max_draws:
        X = rng.integers(0, F.order, size=(256, k, V.dim), dtype=np.uint8)
        R, rk, _ = linalg.batch_eliminate(X, F)
        R = R[rk == k]
        drawn += 256
        if len(R) == 0:
            continue
        mask = _batch_mask(V, R, "nondegenerate", sigma)
        if mask.any():
            return Subspace(V, R[np.flatnonzero(mask)[0]], reduced=True)
    raise EmptyOrbitError(f"no non-degenerate {k}-subspace of type {sigma} found")


@dataclass
class PhiExact:
    context: CountingContext
    numerator: int
    denominator: int
    counts: dict = field(default_factory=dict)
    U: Optional[Subspace] = None

    @property
    def phi(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def to_dict(self) -> dict:
        return {
            "context": self.context.to_dict(),
            "phi": f"{self.phi.numerator}/{self.phi.denominator}",
            "numerator": self.numerator,
            "denominator": self.denominator,
            "counts": self.counts,
        }


_SCAN_CACHE: dict = {}


def orbit_bases(V: ClassicalSpace, k: int, sigma=None, budget=None) -> np.ndarray:
    """All bases of the non-degenerate k-subspaces of type sigma (cached per space)."""
    key = (V, k, sigma)
    hit = _SCAN_CACHE.get(key)
    if hit is None:
        if len(_SCAN_CACHE) > 64:
            _SCAN_CACHE.clear()
        hit = _SCAN_CACHE[key] = collect_bases(V, k, "nondegenerate", sigma, budget)
    return hit


def count_hits(U: Subspace, bases: np.ndarray) -> int:
    F = U.field
    A = linalg.nullspace(U.basis, F)
    hits = 0
    for start in range(0, len(bases), BATCH_ROWS):
        hits += int(np.count_nonzero(meets_batch(A, bases[start:start + BATCH_ROWS], F)))
    return hits


def exact_phi(ctx: CountingContext, budget: Optional[int] = None, check_witt: bool = True) -> PhiExact:
    """``|{U' : U & U' != 0}| / |U'-orbit|`` by full enumeration of the U'-orbit.

    U is the first orbit member in RREF order.  With ``check_witt`` the
    count is repeated for a random second member of the U-orbit and the two
    must agree.
    """
    V = context_space(ctx)
    check_budget(V.dim, ctx.nprime, V.field.order, budget)
    U = representative(V, ctx.n, ctx.sigma, budget=None)
    bases = orbit_bases(V, ctx.nprime, ctx.sigma_prime, budget)
    if len(bases) == 0:
        raise EmptyOrbitError(f"the U'-orbit of {ctx.label()} is empty")
    hits = count_hits(U, bases)
    counts = {"U_prime": int(len(bases)), "hits": hits}
    if check_witt:
        U2 = random_representative(V, ctx.n, ctx.sigma)
        hits2 = count_hits(U2, bases)
        if hits2 != hits:
            raise AssertionError(f"phi depends on the choice of U ({hits} vs {hits2})")
        counts["hits_second_U"] = hits2
    return PhiExact(ctx, hits, len(bases), counts, U)


def exact_phi_feasible(ctx: CountingContext, budget: Optional[int] = None) -> bool:
    limit = default_budget() if budget is None else budget
    return gaussian_binomial(ctx.N, ctx.nprime, ctx.field_order) <= limit


def point_incidences(U: Subspace, bases: np.ndarray, chunk: int = 1 << 22) -> dict:
    """``sum over U' of |P1(U & U')|`` and ``|N1(U & U')|`` for the U' bases given.

    Dividing by ``len(bases)`` gives the incidence sums that bound the
    unions over singular and non-singular points of U.
    """
    V, F = U.ambient, U.field
    pts = F.matmul(linalg.projective_points(U.dim, F), U.basis)
    if V.kind is FormKind.QUADRATIC:
        singular = V.quadratic_values(pts) == 0
    else:
        singular = V.bilinear_values(pts, pts) == 0
    if len(bases) == 0:
        return {"P1": 0, "N1": 0}
    k = bases.shape[1]
    piv = np.argmax(bases != 0, axis=-1)
    step = max(1, chunk // max(1, len(pts) * k * V.dim))
    hitP = hitN = 0
    for s in range(0, len(bases), step):
        B, P = bases[s:s + step], piv[s:s + step]
        inside = linalg.in_rowspace(pts[None], B[:, None], P[:, None], F)  # (M, points)
        hitP += int(inside[:, singular].sum())
        hitN += int(inside[:, ~singular].sum())
    return {"P1": hitP, "N1": hitN}


def bound_decomposition(ctx: CountingContext, budget: Optional[int] = None) -> dict:
    """Enumerated point-incidence sums per U' and the exact phi, for comparing with c1, c2.

    Returns ``{"phi", "P1", "N1"}`` where ``P1`` and ``N1`` are the average
    numbers of singular and non-singular points of ``U & U'``.
    """
    V = context_space(ctx)
    check_budget(V.dim, ctx.nprime, V.field.order, budget)
    U = representative(V, ctx.n, ctx.sigma)
    bases = orbit_bases(V, ctx.nprime, ctx.sigma_prime, budget)
    if len(bases) == 0:
        raise EmptyOrbitError(f"the U'-orbit of {ctx.label()} is empty")
    inc = point_incidences(U, bases)
    return {"phi": Fraction(count_hits(U, bases), len(bases)),
            "P1": Fraction(inc["P1"], len(bases)), "N1": Fraction(inc["N1"], len(bases))}


# --------------------------------------------------------------------------
# point counts and small subspace counts by enumeration


def enumerate_point_counts(V: ClassicalSpace) -> dict:
    """``P1``, ``N1`` and (quadratic, q odd, dim > 1) ``N1+``/``N1-`` by brute force."""
    F = V.field
    pts = linalg.projective_points(V.dim, F)
    out = {"P1": 0, "N1": 0}
    labels = V.kind is FormKind.QUADRATIC and F.p != 2 and V.dim > 1
    if labels:
        out["N1+"] = out["N1-"] = 0
    for s in range(0, len(pts), 1 << 20):
        P = pts[s:s + (1 << 20)]
        if V.kind is FormKind.QUADRATIC:
            singular = V.quadratic_values(P) == 0
        else:
            singular = V.bilinear_values(P, P) == 0
        out["P1"] += int(singular.sum())
        out["N1"] += int((~singular).sum())
        if labels:
            a = point_alpha_batch(V, P)
            out["N1+"] += int((a == 1).sum())
            out["N1-"] += int((a == -1).sum())
    return out


def count_oracle(kind, n: int, q: int, tau=None, budget: Optional[int] = None) -> dict:
    """Closed-form counts of a standard n-space next to brute-force counts.

    Returns ``{name: (closed, enumerated)}`` over the point counts and, for
    symplectic spaces, ``P_k``/``R_k`` with ``k <= 3``.
    """
    from .counting import closed_form_values

    kind = FormKind.parse(kind)
    order = q * q if kind is FormKind.HERMITIAN else q
    V = standard_space(kind, n, tau, order)
    closed = closed_form_values(kind, n, q, tau)
    found = enumerate_point_counts(V)
    if kind is FormKind.ALTERNATING:
        for k in (2, 3):
            if k <= n:
                found.update(enumerate_isotropic_counts(V, k, budget))
    return {name: (closed[name], found[name]) for name in closed}


def enumerate_isotropic_counts(V: ClassicalSpace, k: int, budget: Optional[int] = None) -> dict:
    """Numbers of totally isotropic (``Pk``) and other (``Rk``) k-subspaces."""
    total = check_budget(V.dim, k, V.field.order, budget)
    iso = sum(len(B) for B in iterate_bases(V, k, "isotropic", budget=budget))
    return {f"P{k}": iso, f"R{k}": total - iso}


# --------------------------------------------------------------------------
# double counting


def induced_space(U: Subspace) -> ClassicalSpace:
    """U as a classical space in its own right, coordinates relative to U.basis."""
    V = U.ambient
    quad = U.quad() if V.kind is FormKind.QUADRATIC else None
    return ClassicalSpace(U.dim, V.field, V.kind, U.gram(), quad)


@dataclass(frozen=True)
class OrbitSpec:
    """A set of subspaces: ``kind`` in {"P", "R", "N", "nondeg", "all"} and its dimension.

    ``P``: totally isotropic (singular) k-spaces, ``R``: the rest,
    ``N``: non-degenerate points (with optional ``alpha``), ``nondeg``:
    non-degenerate k-spaces (with optional ``sigma``).
    """

    kind: str
    dim: int
    sigma: Optional[int] = None
    alpha: Optional[int] = None

    def label(self) -> str:
        s = f"{self.kind}{self.dim}"
        if self.sigma is not None:
            s += f"[sigma={self.sigma:+d}]"
        if self.alpha is not None:
            s += f"[alpha={self.alpha:+d}]"
        return s


def spec_bases(V: ClassicalSpace, spec: OrbitSpec, budget=None) -> np.ndarray:
    if spec.kind == "P":
        return collect_bases(V, spec.dim, "isotropic", budget=budget)
    if spec.kind == "R":
        return collect_bases(V, spec.dim, "non-isotropic", budget=budget)
    if spec.kind == "nondeg":
        return collect_bases(V, spec.dim, "nondegenerate", spec.sigma, budget=budget)
    if spec.kind == "N":
        if spec.dim != 1:
            raise ValueError("N specs are 1-dimensional")
        B = collect_bases(V, 1, "all", budget=budget)
        P = B[:, 0, :]
        if V.kind is FormKind.QUADRATIC:
            keep = V.quadratic_values(P) != 0
            if spec.alpha is not None:
                keep &= point_alpha_batch(V, P) == spec.alpha
        else:
            keep = V.bilinear_values(P, P) != 0
        return B[keep]
    if spec.kind == "all":
        return collect_bases(V, spec.dim, "all", budget=budget)
    raise ValueError(f"unknown orbit spec {spec.kind!r}")


def containment_counts(W: np.ndarray, U: np.ndarray, F: FieldSpec, chunk: int = 1 << 22) -> np.ndarray:
    """Boolean incidence ``W_i <= U_j`` for RREF bases W (a, d, N) and U (b, k, N)."""
    a, d, N = W.shape
    b, k, _ = U.shape
    piv = np.argmax(U != 0, axis=2)  # first non-zero of each RREF row is its pivot
    out = np.zeros((a, b), dtype=bool)
    step = max(1, chunk // max(1, b * d * N))
    for s in range(0, a, step):
        w = W[s:s + step]
        ok = np.ones((len(w), b), dtype=bool)
        for r in range(d):
            vec = w[:, r][:, None, :]
            ok &= linalg.in_rowspace(vec, U[None], piv[None], F)
        out[s:s + step] = ok
    return out


@dataclass
class DoubleCountReport:
    space: str
    W_spec: str
    U_spec: str
    W_size: int
    U_size: int
    U_of_W: int
    W_of_U: int
    orbit_ok: bool
    identity_ok: bool
    diagnostic: str = ""

    @property
    def ok(self) -> bool:
        return self.orbit_ok and self.identity_ok


def verify_double_counting(V: ClassicalSpace, W_spec: OrbitSpec, U_spec: OrbitSpec,
                           budget: Optional[int] = None) -> DoubleCountReport:
    """Check ``|W| |U'(W)| = |W(U')| |U'|`` by building the full incidence."""
    F = V.field
    Wb = spec_bases(V, W_spec, budget)
    Ub = spec_bases(V, U_spec, budget)
    if len(Wb) == 0 or len(Ub) == 0:
        raise EmptyOrbitError("double counting needs non-empty sets")
    inc = containment_counts(Wb, Ub, F)
    row = inc.sum(axis=1)  # |U'(W)| for each W
    col = inc.sum(axis=0)  # |W(U')| for each U'
    orbit_ok = bool((row == row[0]).all() and (col == col[0]).all())
    diag = ""
    if not orbit_ok:
        diag = (f"not an orbit pair: |U'(W)| takes values {sorted(set(row.tolist()))}, "
                f"|W(U')| takes values {sorted(set(col.tolist()))}")
    uw, wu = int(row[0]), int(col[0])
    ok = len(Wb) * uw == wu * len(Ub)
    return DoubleCountReport(repr(V), W_spec.label(), U_spec.label(), len(Wb), len(Ub),
                             uw, wu, orbit_ok, ok, diag)


# --------------------------------------------------------------------------
# orbit intersections


def verify_orbit_intersections(V: ClassicalSpace, k: int, budget: Optional[int] = None,
                               reference: bool = False, limit: Optional[int] = None) -> dict:
    """Compare ``N1^alpha(V) & N1(U)`` with ``N1^(alpha s)(U)`` for non-degenerate k-subspaces U.

    The default pass covers every U and reads point labels from
    discriminants.  ``reference=True`` instead labels each point with
    :func:`classical_span.geometry.point_class` (singular-vector counts on
    ``W^perp & U``) and stops after ``limit`` subspaces.  Returns
    ``{"checked": int, "failures": [...]}``.
    """
    from .counting import table4_multiplier, table4_signs
    from .geometry import point_class

    if reference and k < 2:
        raise ValueError("reference labels on U need dim U >= 2 (a point carries no alpha)")
    F = V.field
    q = F.order
    n, nperp = k, V.dim - k
    m, mp = n // 2, nperp // 2
    coeffs = linalg.projective_points(k, F)
    bad = []
    checked = 0
    for B in iterate_bases(V, k, "nondegenerate", budget=budget):
        if limit is not None and checked >= limit:
            break
        if limit is not None:
            B = B[: limit - checked]
        M = len(B)
        dU = classify_batch(V, B).delta.astype(int)
        dperp = dU * V.discriminant if nperp else np.ones(M, dtype=int)
        pts = F.matmul(coeffs[None], B)  # (M, p, N)
        if not reference:
            aV = point_alpha_batch(V, pts.reshape(-1, V.dim)).reshape(M, -1)
            d = aV if V.dim % 2 == 0 else aV * V.discriminant * _parity_sign((V.dim - 1) // 2, q)
            aU = d if k % 2 == 0 else d * dU[:, None] * _parity_sign((k - 1) // 2, q)
        for i in range(M):
            signs = table4_signs(V.discriminant, int(dU[i]), int(dperp[i]), m, mp, q)
            s = table4_multiplier(n, nperp, signs)
            if reference:
                U = Subspace(V, B[i], reduced=True)
                whole = V.whole()
                av, au = [], []
                for w in pts[i]:
                    Wp = Subspace(V, w)
                    cv, cu = point_class(Wp, whole), point_class(Wp, U)
                    av.append(cv.alpha or 0)
                    au.append(cu.alpha or 0)
                av, au = np.array(av), np.array(au)
            else:
                av, au = aV[i], aU[i]
            for alpha in (1, -1):
                if not np.array_equal(av == alpha, au == alpha * s):
                    bad.append((B[i].tolist(), alpha, s))
        checked += M
    return {"checked": checked, "failures": bad}


# --------------------------------------------------------------------------
# GL baseline


def gl_brute_force(n: int, nprime: int, F: FieldSpec, budget: Optional[int] = None) -> Fraction:
    """Proportion of n'-subspaces of F^(n+n') meeting the coordinate n-space trivially."""
    N = n + nprime
    check_budget(N, nprime, F.order, budget)
    U = np.zeros((n, N), dtype=np.uint8)
    U[np.arange(n), np.arange(n)] = 1
    A = linalg.nullspace(U, F)
    total = trivial = 0
    for B in iter_rref_batches(N, nprime, F):
        total += len(B)
        trivial += int(np.count_nonzero(~meets_batch(A, B, F)))
    return Fraction(trivial, total)


# --------------------------------------------------------------------------
# symplectic inclusion-exclusion at q = 2


@dataclass
class EnumStats:
    n: int
    nprime: int
    U_prime: int
    T: int  # |{U' : U & U' != 0}|
    T1: int
    T2: int
    T3: int
    S2: int
    S3: int
    S_P: dict
    S_R: dict
    checks: dict = field(default_factory=dict)

    @property
    def M(self) -> dict:
        return {1: self.T1, 2: self.T2, 3: self.T3}

    @property
    def phi(self) -> Fraction:
        return Fraction(self.T, self.U_prime)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _gauss2(d: int, k: int) -> int:
    return gaussian_binomial(d, k, 2) if k <= d else 0


def symplectic_inclusion_exclusion(n: int, nprime: int, budget: Optional[int] = None) -> EnumStats:
    """Enumerate the q = 2 inclusion-exclusion quantities for the symplectic pair (n, n')."""
    from .counting import symplectic_isotropic_count

    if n % 2 or nprime % 2:
        raise ValueError("symplectic dimensions must be even")
    ctx = CountingContext("symplectic", n, nprime, 2)
    V = context_space(ctx)
    F = V.field
    U = representative(V, n)
    bases = orbit_bases(V, nprime, None, budget)
    A = linalg.nullspace(U.basis, F)
    # for each hit U', the intersection I = U & U' and the rank of the form on it
    stack_cache: dict = {}
    T = T1 = T2 = T3 = S2 = S3 = 0
    SP = {2: 0, 3: 0}
    for start in range(0, len(bases), BATCH_ROWS):
        Bc = bases[start:start + BATCH_ROWS]
        hit = meets_batch(A, Bc, F)
        for b in Bc[hit]:
            I = U.meet(Subspace(V, b, reduced=True))
            d = I.dim
            r = linalg.rank(I.gram(), F)
            T += 1
            p = 2**d - 1
            T1 += p
            T2 += comb(p, 2)
            T3 += comb(p, 3)
            S2 += _gauss2(d, 2)
            S3 += _gauss2(d, 3)
            key = (d, r)
            if key not in stack_cache:
                W = induced_space_degenerate(I)
                stack_cache[key] = {k: _isotropic_count(W, k) for k in (2, 3)}
            for k in (2, 3):
                SP[k] += stack_cache[key][k]
    SR = {2: S2 - SP[2], 3: S3 - SP[3]}
    Uc = len(bases)
    checks = {
        "T2 = 3 S2": T2 == 3 * S2,
        "T3 = S2 + 28 S3": T3 == S2 + 28 * S3,
        "T1 - T2 <= |T|": T1 - T2 <= T,
        "|T| <= T1 - T2 + T3": T <= T1 - T2 + T3,
        "|T| <= T1 - 2 S2 + 28 S3": T <= T1 - 2 * S2 + 28 * S3,
    }
    if min(n, nprime) >= 4:
        half = Fraction(1, 2)
        sp2_ratio = Fraction(1, 12)
        for i in range(2):
            sp2_ratio *= (1 - half ** (n - 2 * i)) * (1 - half ** (nprime - 2 * i)) / (
                1 - half ** (n + nprime - 2 * i))
        t1_ratio = (1 - half**n) * (1 - half**nprime) / (1 - half ** (n + nprime))
        checks.update({
            "T1/|U'| closed form": Fraction(T1, Uc) == t1_ratio,
            "12 S_R2 = T1": 12 * SR[2] == T1,
            "16 S_R3 = S_P2": 16 * SR[3] == SP[2],
            "S_P2/|U'| product": Fraction(SP[2], Uc) == sp2_ratio,
            "S_P3 < S_P2/112": 112 * SP[3] < SP[2],
            "S_P3 = 0 iff n = 4": (SP[3] == 0) == (n == 4),
            "phi < 5/6": Fraction(T, Uc) < Fraction(5, 6),
            "|P3(U)| = 0 iff n = 4": (symplectic_isotropic_count(n, 3, 2) == 0) == (n == 4),
        })
    return EnumStats(n, nprime, Uc, T, T1, T2, T3, S2, S3, SP, SR, checks)


def induced_space_degenerate(I: Subspace) -> tuple:
    return (I.gram(), I.field)


def _isotropic_count(W: tuple, k: int) -> int:
    """Totally isotropic k-subspaces of F^d carrying the (possibly degenerate) Gram ``W[0]``."""
    G, F = W
    d = G.shape[0]
    if k > d:
        return 0
    total = 0
    for B in iter_rref_batches(d, k, F):
        R = F.matmul(F.matmul(B, G), np.swapaxes(B, -1, -2))
        total += int(np.count_nonzero(~R.reshape(len(B), -1).any(axis=1)))
    return total
