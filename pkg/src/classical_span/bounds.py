"""Bound quantities and the theorem-verification pipeline.

The main theorem states ``phi <= c/|F|`` with ``c`` taken from ``TABLE1``.
For each kind the bound is built from intermediate quantities (``c1``,
``c2`` and the orthogonal ``X1``, ``X2``, ``Y1``, ``Z1``) and the verifier
checks those intermediate bounds too, so a wrong count shows up as a broken
inequality before it can hide under a loose final constant.

All comparisons are exact (``Fraction``).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable, Iterator, Optional

from .counting import (
    CountingContext,
    IllegalContext,
    gaussian_binomial,
    orth_gamma,
    prime_powers,
    symplectic_isotropic_count,
    theta,
    zeta,
)
from .enumeration import EmptyOrbitError, default_budget, exact_phi, exact_phi_feasible
from .geometry import FormKind

log = logging.getLogger(__name__)

TABLE1 = (
    {"case": "unitary", "form": "hermitian", "field": "q^2", "c": Fraction(9, 5),
     "conditions": "q >= 2, n, n' >= 1, (n, n', q) != (1, 1, 2)"},
    {"case": "symplectic", "form": "alternating", "field": "q", "c": Fraction(5, 3),
     "conditions": "q >= 2, and n, n' >= 2 are even"},
    {"case": "orthogonal", "form": "quadratic", "field": "q", "c": Fraction(43, 16),
     "conditions": "q >= 3, n, n' >= 1, (n, n', q) != (1, 1, 3), "
                   "if one of n, n' is odd, then q is odd"},
)

VERDICTS = ("pass", "fail", "exceptional", "inconclusive", "skipped")


def table1_constant(kind) -> Fraction:
    name = FormKind.parse(kind).case_name
    for row in TABLE1:
        if row["case"] == name:
            return row["c"]
    raise KeyError(name)


def field_size(ctx: CountingContext) -> int:
    return ctx.field_order


def _qp(q, e) -> Fraction:
    return Fraction(q) ** e


# --------------------------------------------------------------------------
# unitary


def unitary_c1_c2(n: int, nprime: int, q: int) -> dict:
    """``c1 = theta_n theta_n' / ((1+q^-1) theta_N)``, ``c2 = zeta_n zeta_n' / ((1-q^-2) zeta_N)``.

    With these, ``phi <= (c1 + c2/q) / q^2``.
    """
    if n < 1 or nprime < 1 or q < 2:
        raise ValueError("n, n' >= 1 and q >= 2 required")
    N = n + nprime
    c1 = theta(n, q) * theta(nprime, q) / ((1 + Fraction(1, q)) * theta(N, q))
    c2 = zeta(n, q) * zeta(nprime, q) / ((1 - _qp(q, -2)) * zeta(N, q))
    return {"c1": c1, "c2": c2, "total": c1 + c2 / q}


# --------------------------------------------------------------------------
# symplectic


@dataclass(frozen=True)
class SymplecticBound:
    """The symplectic bounds on phi, all strict except ``point_product``.

    ``point_product`` is the point-count ratio ``|P1(U)||P1(U')|/|P1(V)|``;
    ``lemma`` is ``(1 - q^-min)/(q - 1)``; ``inverse`` is ``1/(q - 1)``;
    ``three_halves`` is ``3/(2q)`` when it applies (q >= 3 or min = 2);
    ``five_thirds`` is ``5/(3q)``.
    """

    n: int
    nprime: int
    q: int
    point_product: Fraction
    lemma: Fraction
    inverse: Fraction
    three_halves: Optional[Fraction]
    five_thirds: Fraction

    @property
    def sharpest(self) -> Fraction:
        vals = [self.lemma, self.five_thirds]
        if self.three_halves is not None:
            vals.append(self.three_halves)
        return min(vals)

    def to_dict(self) -> dict:
        out = {k: getattr(self, k) for k in
               ("point_product", "lemma", "inverse", "three_halves", "five_thirds")}
        out["sharpest"] = self.sharpest
        return out


def symplectic_bound(n: int, nprime: int, q: int) -> SymplecticBound:
    if n % 2 or nprime % 2 or n < 2 or nprime < 2:
        raise ValueError("symplectic dimensions must be even")
    P = lambda d: symplectic_isotropic_count(d, 1, q)  # noqa: E731
    pp = Fraction(P(n) * P(nprime), P(n + nprime))
    lo = min(n, nprime)
    lemma = (1 - _qp(q, -lo)) / (q - 1)
    assert pp == (1 - _qp(q, -n)) * (1 - _qp(q, -nprime)) / ((q - 1) * (1 - _qp(q, -n - nprime)))
    assert pp < lemma
    three = Fraction(3, 2 * q) if (q >= 3 or lo == 2) else None
    return SymplecticBound(n, nprime, q, pp, lemma, Fraction(1, q - 1), three, Fraction(5, 3 * q))


# --------------------------------------------------------------------------
# orthogonal


def _pm(x: int, q: int) -> int:
    return -1 if (x * (q - 1) // 2) % 2 else 1


def X1_value(m: int, mp: int, N: int, q: int) -> Fraction:
    return (1 + _qp(q, -m)) * (1 + _qp(q, -mp)) / (1 - _qp(q, -(N // 2)))


def X2_value(m: int, mp: int, N: int, q: int) -> Fraction:
    a = 1 / (1 - Fraction(1, q))
    return ((1 - Fraction(1, q)) * (a + _qp(q, -m + 1)) * (a + _qp(q, -mp + 1))
            / (q * (1 - _qp(q, -(N // 2) + 1))))


def Y1_value(m: int, mp: int, q: int) -> Fraction:
    return (1 + _qp(q, -m)) * (1 + _qp(q, -m - 2 * mp)) / (1 - _qp(q, -2 * m - 2 * mp))


def Z1_value(m: int, mp: int, q: int) -> Fraction:
    return (1 + _qp(q, -m - mp)) / (1 - _qp(q, -m - mp - 1))


def orth_c2(n: int, nprime: int, q: int, epsilon: int, sigma: int, sigma_prime: int) -> Fraction:
    """``q^2 |P1(U)||P1(U')| / |P1(V)|`` in the gamma form."""
    tau = sigma if n % 2 == 0 else 0
    taup = sigma_prime if nprime % 2 == 0 else 0
    return (orth_gamma(n, tau, q) * orth_gamma(nprime, taup, q)
            / ((1 - Fraction(1, q)) * orth_gamma(n + nprime, epsilon, q)))


def orth_c1(n: int, nprime: int, q: int, epsilon: int, sigma: int, sigma_prime: int) -> Fraction:
    """``q * sum over W in N1(U) of |U'(W)|/|U'|``, by parity case.

    This is the incidence sum that bounds the union over non-singular
    points, so ``phi <= (c1 + c2/q)/q``.  When only ``n`` is odd the roles
    are swapped (the sum is symmetric).
    """
    if n % 2 == 1 and nprime % 2 == 0:
        n, nprime, sigma, sigma_prime = nprime, n, sigma_prime, sigma
    m, mp = n // 2, nprime // 2
    if n % 2 == 0 and nprime % 2 == 0:
        return ((1 - sigma * _qp(q, -m)) * (1 - sigma_prime * _qp(q, -mp))
                / (1 - epsilon * _qp(q, -(m + mp))))
    if q % 2 == 0:
        raise ValueError("odd dimensions need q odd")
    if n % 2 == 0:
        # gamma' = delta(U'^perp)(-1)^(m(q-1)/2) equals sigma' here
        gp = sigma_prime
        return ((1 - sigma * _qp(q, -m)) * (1 - gp * _qp(q, -m - 2 * mp))
                / (1 - _qp(q, -2 * m - 2 * mp)))
    eta = sigma * _pm(m, q)
    etap = sigma_prime * _pm(mp, q)
    return (1 + eta * etap * _qp(q, -m - mp)) / (1 - epsilon * _qp(q, -m - mp - 1))


def orth_bound_terms(ctx: CountingContext) -> dict:
    """``c1``, ``c2``, ``X1``, ``X2``, ``Y1``, ``Z1`` and the parity-appropriate c1 bound."""
    if FormKind.parse(ctx.kind) is not FormKind.QUADRATIC:
        raise ValueError("orthogonal contexts only")
    n, n2, q = ctx.n, ctx.nprime, ctx.q
    if n < 2 or n2 < 2:
        raise ValueError("n, n' >= 2 required (the n = 1 case has its own lemma)")
    eps, s, s2 = ctx.epsilon, ctx.sigma, ctx.sigma_prime
    if n % 2 == 1 and n2 % 2 == 0:
        n, n2, s, s2 = n2, n, s2, s
    m, mp, N = n // 2, n2 // 2, n + n2
    out = {
        "c1": orth_c1(n, n2, q, eps, s, s2),
        "c2": orth_c2(n, n2, q, eps, s, s2),
        "X1": X1_value(m, mp, N, q),
        "X2": X2_value(m, mp, N, q),
        "Y1": Y1_value(m, mp, q) if (n % 2 == 0 and n2 % 2 == 1) else None,
        "Z1": Z1_value(m, mp, q) if (n % 2 == 1 and n2 % 2 == 1) else None,
    }
    if n % 2 == 0 and n2 % 2 == 0:
        out["c1_bound"], out["c1_bound_name"] = out["X1"], "X1"
    elif n % 2 == 0:
        out["c1_bound"], out["c1_bound_name"] = out["Y1"], "Y1"
    else:
        out["c1_bound"], out["c1_bound_name"] = out["Z1"], "Z1"
    return out


# --------------------------------------------------------------------------
# reports


@dataclass
class BoundReport:
    context: CountingContext
    c: Fraction
    phi_bound: Fraction
    verdict: str
    mode: str = "exact"
    phi: Optional[Fraction] = None  # exact value, or the point estimate in mc mode
    ci_low: Optional[Fraction] = None
    ci_high: Optional[Fraction] = None
    strict: bool = False
    reason: str = ""
    c1: Optional[Fraction] = None
    c2: Optional[Fraction] = None
    X1: Optional[Fraction] = None
    X2: Optional[Fraction] = None
    Y1: Optional[Fraction] = None
    Z1: Optional[Fraction] = None
    checks: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)

    @property
    def margin(self) -> Optional[Fraction]:
        value = self.ci_high if self.mode == "mc" else self.phi
        return None if value is None else self.phi_bound - value

    @property
    def bound_satisfied(self) -> Optional[bool]:
        if self.phi is None or self.mode == "mc":
            return None
        return self.phi < self.phi_bound if self.strict else self.phi <= self.phi_bound

    def row(self) -> dict:
        ctx = self.context
        return {
            "kind": ctx.kind.case_name,
            "n": ctx.n,
            "nprime": ctx.nprime,
            "q": ctx.q,
            "epsilon": ctx.epsilon,
            "sigma": ctx.sigma,
            "sigma_prime": ctx.sigma_prime,
            "phi": self.phi,
            "bound": self.phi_bound,
            "margin": self.margin,
            "verdict": self.verdict,
        }

    def to_dict(self) -> dict:
        out = {"context": self.context.to_dict(), "mode": self.mode, "c": self.c,
               "phi_bound": self.phi_bound, "phi": self.phi, "margin": self.margin,
               "verdict": self.verdict, "strict": self.strict, "reason": self.reason}
        for k in ("ci_low", "ci_high", "c1", "c2", "X1", "X2", "Y1", "Z1"):
            v = getattr(self, k)
            if v is not None:
                out[k] = v
        if self.checks:
            out["checks"] = dict(self.checks)
        if self.counts:
            out["counts"] = dict(self.counts)
        return out


def _base_report(ctx: CountingContext, mode: str) -> BoundReport:
    c = table1_constant(ctx.kind)
    rep = BoundReport(ctx, c, c / ctx.field_order, "skipped", mode=mode,
                      strict=ctx.kind is FormKind.ALTERNATING)
    if ctx.kind is FormKind.HERMITIAN:
        t = unitary_c1_c2(ctx.n, ctx.nprime, ctx.q)
        rep.c1, rep.c2 = t["c1"], t["c2"]
    elif ctx.kind is FormKind.QUADRATIC and ctx.n >= 2 and ctx.nprime >= 2:
        t = orth_bound_terms(ctx)
        for k in ("c1", "c2", "X1", "X2", "Y1", "Z1"):
            setattr(rep, k, t[k])
    return rep


def intermediate_checks(ctx: CountingContext, phi: Fraction, U_prime: Optional[int] = None) -> dict:
    """The intermediate inequalities (and n = 1 identities) for an exact phi."""
    q = ctx.q
    checks = {}
    if ctx.kind is FormKind.HERMITIAN:
        t = unitary_c1_c2(ctx.n, ctx.nprime, q)
        checks["phi <= (c1 + c2/q)/q^2"] = phi <= t["total"] / q**2
        checks["phi <= 2/q^2"] = phi <= Fraction(2, q * q)
        if ctx.is_exceptional():
            checks["c1 + c2/q = 2"] = t["total"] == 2
        else:
            checks["c1 + c2/q <= 9/5"] = t["total"] <= Fraction(9, 5)
    elif ctx.kind is FormKind.ALTERNATING:
        b = symplectic_bound(ctx.n, ctx.nprime, q)
        checks["phi <= point product"] = phi <= b.point_product
        checks["phi < (1 - q^-min)/(q - 1)"] = phi < b.lemma
        if b.three_halves is not None:
            checks["phi < 3/(2q)"] = phi < b.three_halves
    else:
        eps, s, s2 = ctx.epsilon, ctx.sigma, ctx.sigma_prime
        if ctx.n == 1 and ctx.nprime == 1:
            expected = Fraction(2, q - eps) if s == s2 else Fraction(0)
            checks["phi = 2/(q - eps) or 0"] = phi == expected
            if U_prime is not None:
                checks["|U'| = (q - eps)/2"] = 2 * U_prime == q - eps
        elif min(ctx.n, ctx.nprime) == 1:
            checks["phi <= 5/(2q)"] = phi <= Fraction(5, 2 * q)
        elif q % 2 == 1 or (ctx.n % 2 == 0 and ctx.nprime % 2 == 0):
            t = orth_bound_terms(ctx)
            checks["phi <= (c1 + c2/q)/q"] = phi <= (t["c1"] + t["c2"] / q) / q
            checks[f"c1 <= {t['c1_bound_name']}"] = t["c1"] <= t["c1_bound"]
            checks[f"{t['c1_bound_name']} <= X1"] = t["c1_bound"] <= t["X1"]
            checks["c2/q <= X2"] = t["c2"] / q <= t["X2"]
    return checks


def _verdict_exact(rep: BoundReport) -> None:
    ctx, phi = rep.context, rep.phi
    if ctx.kind is FormKind.QUADRATIC and ctx.q < 3:
        rep.verdict, rep.reason = "skipped", "no bound is claimed for orthogonal q = 2"
        return
    failed = [k for k, ok in rep.checks.items() if not ok]
    if ctx.is_exceptional():
        if ctx.kind is FormKind.HERMITIAN:
            fallback = Fraction(2, ctx.q**2)
            ok = phi <= fallback
            rep.reason = f"exceptional case; fallback bound 2/q^2 = {fallback}"
        else:
            ok = phi == 1
            rep.reason = "exceptional case; phi = 1 expected"
        rep.verdict = "exceptional" if ok and not failed else "fail"
    else:
        rep.verdict = "pass" if rep.bound_satisfied and not failed else "fail"
    if failed:
        rep.reason = (rep.reason + "; " if rep.reason else "") + "failed checks: " + ", ".join(failed)


def verify_context(ctx: CountingContext, mode: str = "exact", budget: Optional[int] = None,
                   samples: int = 20000, seed: int = 0, checks: bool = True) -> BoundReport:
    """One grid point: phi, the Table 1 bound and the verdict.

    ``mode`` is ``exact``, ``mc`` or ``auto`` (exact when within budget, else
    Monte Carlo).  In mc mode the verdict is ``pass`` when the CI upper end is
    below the bound and ``inconclusive`` otherwise, never ``fail``.
    """
    if mode not in ("exact", "mc", "auto"):
        raise ValueError(f"unknown mode {mode!r}")
    budget = default_budget() if budget is None else budget
    use_exact = mode == "exact" or (mode == "auto" and exact_phi_feasible(ctx, budget))
    rep = _base_report(ctx, "exact" if use_exact else "mc")
    if use_exact:
        if not exact_phi_feasible(ctx, budget):
            count = gaussian_binomial(ctx.N, ctx.nprime, ctx.field_order)
            rep.reason = f"{count} candidate subspaces exceed the budget {budget}"
            return rep
        try:
            ex = exact_phi(ctx, budget=budget, check_witt=checks)
        except EmptyOrbitError as exc:
            rep.reason = str(exc)
            return rep
        rep.phi = ex.phi
        rep.counts = dict(ex.counts)
        if checks:
            rep.checks = intermediate_checks(ctx, ex.phi, ex.denominator)
        _verdict_exact(rep)
        return rep

    from .sampling import estimate_phi

    try:
        est = estimate_phi(ctx, samples, seed)
    except EmptyOrbitError as exc:
        rep.reason = str(exc)
        return rep
    rep.phi, rep.ci_low, rep.ci_high = est.phat, est.ci_low, est.ci_high
    rep.counts = {"samples": est.samples, "hits": est.hits}
    if ctx.kind is FormKind.QUADRATIC and ctx.q < 3:
        rep.reason = "no bound is claimed for orthogonal q = 2"
    elif ctx.is_exceptional():
        rep.verdict, rep.reason = "exceptional", "exceptional case; cross-checked in exact mode only"
    else:
        below = est.ci_high < rep.phi_bound if rep.strict else est.ci_high <= rep.phi_bound
        rep.verdict = "pass" if below else "inconclusive"
    return rep


def verify_theorems(grid: Iterable[CountingContext], mode: str = "exact", budget: Optional[int] = None,
                    samples: int = 20000, seed: int = 0, checks: bool = True) -> list:
    from .sampling import derive_seed

    reports = []
    for i, ctx in enumerate(grid):
        rep = verify_context(ctx, mode, budget, samples, derive_seed(seed, i), checks)
        if rep.verdict == "skipped":
            log.info("skipped %s: %s", ctx.label(), rep.reason)
        reports.append(rep)
    return reports


def summarize(reports: list) -> dict:
    out = {v: 0 for v in VERDICTS}
    for r in reports:
        out[r.verdict] += 1
    return out


# --------------------------------------------------------------------------
# grids


def legal_contexts(kinds=("unitary", "symplectic", "orthogonal"), qs=(2, 3, 4, 5),
                   max_total: int = 6, min_total: int = 2) -> Iterator[CountingContext]:
    """Every legal context with ``min_total <= n + n' <= max_total``, in a fixed order."""
    for kind in kinds:
        kind = FormKind.parse(kind)
        for q in qs:
            if kind is FormKind.HERMITIAN and q * q > 256:
                continue
            for N in range(min_total, max_total + 1):
                for n in range(1, N):
                    n2 = N - n
                    if kind is FormKind.ALTERNATING:
                        if n % 2 == 0 and n2 % 2 == 0:
                            yield CountingContext(kind, n, n2, q)
                        continue
                    if kind is FormKind.HERMITIAN:
                        yield CountingContext(kind, n, n2, q)
                        continue
                    if (n % 2 or n2 % 2) and q % 2 == 0:
                        continue
                    for eps in ((0,) if N % 2 else (1, -1)):
                        for s in (1, -1):
                            for s2 in (1, -1):
                                yield CountingContext(kind, n, n2, q, eps, s, s2)


def load_grids() -> dict:
    text = resources.files("classical_span").joinpath("grids.json").read_text(encoding="utf-8")
    return json.loads(text)


def expand_grid(name_or_spec) -> list:
    """Contexts of a named preset in grids.json, or of an explicit spec dict."""
    spec = load_grids()["grids"][name_or_spec] if isinstance(name_or_spec, str) else name_or_spec
    if "contexts" in spec:
        return [CountingContext(**c) for c in spec["contexts"]]
    out = []
    for part in spec.get("parts", [spec]):
        out.extend(legal_contexts(tuple(part["kinds"]), tuple(part["q"]),
                                  part["max_total"], part.get("min_total", 2)))
    return out


# --------------------------------------------------------------------------
# grid inequalities from the orthogonal proof


def verify_c1_grid(qs=None, max_m: int = 12) -> list:
    """``c1 <= (Y1 or Z1) <= X1`` and ``c2/q <= X2`` over all parities and signs."""
    qs = prime_powers(3, 16) if qs is None else qs
    bad = []
    for q in qs:
        for m in range(1, max_m + 1):
            for mp in range(1, max_m + 1):
                for dn, dn2 in ((0, 0), (0, 1), (1, 1)):
                    if (dn or dn2) and q % 2 == 0:
                        continue
                    n, n2 = 2 * m + dn, 2 * mp + dn2
                    N = n + n2
                    for eps in ((0,) if N % 2 else (1, -1)):
                        for s in (1, -1):
                            for s2 in (1, -1):
                                ctx = CountingContext("orthogonal", n, n2, q, eps, s, s2)
                                t = orth_bound_terms(ctx)
                                if not (t["c1"] <= t["c1_bound"] <= t["X1"]):
                                    bad.append((ctx.label(), "c1 chain"))
                                if not (t["c2"] / q <= t["X2"]):
                                    bad.append((ctx.label(), "c2/q <= X2"))
    return bad


def waypoint_expressions(q: int) -> dict:
    """The small-dimension upper bounds for ``q phi``, each as (first term, second term)."""
    Q = Fraction(q)
    out = {
        "m+m'>=3": ((1 + 1 / Q) * (1 + Q**-2) / (1 - Q**-3),
                    (1 - 1 / Q) * (1 / (1 - 1 / Q) + 1) * (1 / (1 - 1 / Q) + 1 / Q) / (Q * (1 - Q**-2))),
        "(2,2)": (X1_value(1, 1, 4, q),
                  orth_gamma(2, 1, q) ** 2 / (Q * (1 - 1 / Q) * orth_gamma(4, -1, q))),
    }
    if q % 2:
        out["(3,3)"] = (Z1_value(1, 1, q),
                        orth_gamma(3, 0, q) ** 2 / (Q * (1 - 1 / Q) * orth_gamma(6, -1, q)))
        out["(2,3)"] = (Y1_value(1, 1, q),
                        orth_gamma(2, 1, q) * orth_gamma(3, 0, q) / (Q * (1 - 1 / Q) * orth_gamma(5, 0, q)))
    return out


WAYPOINTS = {
    "m+m'>=3": (3, Fraction(20, 13), Fraction(55, 48)),
    "(3,3)": (3, Fraction(15, 13), Fraction(3, 7)),
    "(2,3)": (3, Fraction(7, 5), Fraction(3, 5)),
    "(2,2)": (4, Fraction(5, 3), Fraction(16, 17)),
}


def verify_waypoints(qs=None, max_m: int = 12) -> list:
    """The stated waypoint values, their monotonicity in q, and their dominance of X1 + X2 / c1 + c2/q."""
    qs = prime_powers(3, 16) if qs is None else qs
    c = Fraction(43, 16)
    bad = []
    for name, (q0, a0, b0) in WAYPOINTS.items():
        a, b = waypoint_expressions(q0)[name]
        if (a, b) != (a0, b0):
            bad.append((name, q0, "value", a, b))
        if not a0 + b0 < c:
            bad.append((name, q0, "below 43/16"))
        for q in qs:
            if q < q0:
                continue
            ex = waypoint_expressions(q)
            if name not in ex:
                continue
            a, b = ex[name]
            if not (a <= a0 and b <= b0):
                bad.append((name, q, "monotone"))
    # the generic waypoint dominates X1 + X2 whenever m + m' >= 3
    for q in qs:
        a, b = waypoint_expressions(q)["m+m'>=3"]
        for m in range(1, max_m + 1):
            for mp in range(1, max_m + 1):
                if m + mp < 3:
                    continue
                for N in (2 * m + 2 * mp, 2 * m + 2 * mp + 1, 2 * m + 2 * mp + 2):
                    if not X1_value(m, mp, N, q) + X2_value(m, mp, N, q) <= a + b:
                        bad.append(("m+m'>=3", q, m, mp, N))
    # the small cases dominate c1 + c2/q for every type
    small = {"(3,3)": (3, 3), "(2,3)": (2, 3), "(2,2)": (2, 2)}
    for name, (n, n2) in small.items():
        for q in qs:
            ex = waypoint_expressions(q)
            if name not in ex or (name == "(2,2)" and q < 4):
                continue
            a, b = ex[name]
            N = n + n2
            for eps in ((0,) if N % 2 else (1, -1)):
                for s in (1, -1):
                    for s2 in (1, -1):
                        t = orth_bound_terms(CountingContext("orthogonal", n, n2, q, eps, s, s2))
                        if not t["c1"] + t["c2"] / q <= a + b:
                            bad.append((name, q, eps, s, s2))
    return bad
