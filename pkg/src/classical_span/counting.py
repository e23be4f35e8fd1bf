"""Closed-form orbit counts and the auxiliary polynomials, in exact arithmetic.

Every value is an ``int`` or a ``fractions.Fraction``.  The inequality
lemmas are exposed as grid verifiers that return the list of failing grid
points, so an empty list is the passing outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .field import is_prime_power
from .geometry import FormKind, SignParams, parse_sign


class IllegalContext(ValueError):
    """A parameter combination outside the conditions of the main theorem table."""


def _check_q(q):
    if not isinstance(q, int) or not is_prime_power(q):
        raise IllegalContext(f"q = {q!r} is not a prime power")


def _frac_pow(q, e) -> Fraction:
    return Fraction(q) ** e


@dataclass(frozen=True)
class CountingContext:
    """Parameters ``(kind, n, n', q, epsilon, sigma, sigma')`` of one span problem.

    ``q`` is the ground parameter, so hermitian geometry lives over GF(q^2).
    Types use ``+1``/``-1``/``0``; unused labels are ``None``.
    """

    kind: FormKind
    n: int
    nprime: int
    q: int
    epsilon: Optional[int] = None
    sigma: Optional[int] = None
    sigma_prime: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", FormKind.parse(self.kind))
        for name in ("epsilon", "sigma", "sigma_prime"):
            object.__setattr__(self, name, parse_sign(getattr(self, name)))
        self._validate()

    def _validate(self):
        n, n2, q = self.n, self.nprime, self.q
        if not (isinstance(n, int) and isinstance(n2, int)) or n < 1 or n2 < 1:
            raise IllegalContext("n, n' >= 1 required")
        _check_q(q)
        if self.kind is FormKind.HERMITIAN:
            if q * q > 256:
                raise IllegalContext("unitary case needs q^2 <= 256")
            if any(v is not None for v in (self.epsilon, self.sigma, self.sigma_prime)):
                raise IllegalContext("unitary contexts take no type labels")
        elif self.kind is FormKind.ALTERNATING:
            if n % 2 or n2 % 2:
                raise IllegalContext("symplectic dimensions must be even (n, n' >= 2 even)")
            if any(v is not None for v in (self.epsilon, self.sigma, self.sigma_prime)):
                raise IllegalContext("symplectic contexts take no type labels")
        else:
            N = n + n2
            if (n % 2 or n2 % 2) and q % 2 == 0:
                raise IllegalContext("orthogonal: if one of n, n' is odd, then q must be odd")
            if self.epsilon is None:
                raise IllegalContext("orthogonal contexts need epsilon")
            if N % 2 and self.epsilon != 0:
                raise IllegalContext("odd n + n' forces epsilon = o")
            if N % 2 == 0 and self.epsilon == 0:
                raise IllegalContext("even n + n' needs epsilon in {+, -}")
            for label, value in (("sigma", self.sigma), ("sigma'", self.sigma_prime)):
                if value not in (1, -1):
                    raise IllegalContext(f"orthogonal contexts need {label} in {{+, -}}")

    @property
    def N(self) -> int:
        return self.n + self.nprime

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def m_prime(self) -> int:
        return self.nprime // 2

    @property
    def field_order(self) -> int:
        return self.q**2 if self.kind is FormKind.HERMITIAN else self.q

    @property
    def tau(self) -> Optional[int]:
        if self.kind is not FormKind.QUADRATIC:
            return None
        return self.sigma if self.n % 2 == 0 else 0

    @property
    def tau_prime(self) -> Optional[int]:
        if self.kind is not FormKind.QUADRATIC:
            return None
        return self.sigma_prime if self.nprime % 2 == 0 else 0

    def swapped(self) -> "CountingContext":
        return CountingContext(self.kind, self.nprime, self.n, self.q, self.epsilon,
                               self.sigma_prime, self.sigma)

    def theorem_applies(self) -> tuple[bool, str]:
        """Whether the main theorem's conditions hold, with the reason if not."""
        if self.kind is FormKind.HERMITIAN:
            if (self.n, self.nprime, self.q) == (1, 1, 2):
                return False, "unitary (n, n', q) = (1, 1, 2) is excluded"
            return True, ""
        if self.kind is FormKind.ALTERNATING:
            return True, ""
        if self.q < 3:
            return False, "orthogonal case needs q >= 3 (q = 2 is open)"
        if self.is_exceptional():
            return False, "orthogonal (1, 1, 3, +) with sigma = sigma' is exceptional"
        return True, ""

    def is_exceptional(self) -> bool:
        """The two hard-coded exceptions of the main theorems."""
        if self.kind is FormKind.HERMITIAN:
            return (self.n, self.nprime, self.q) == (1, 1, 2)
        if self.kind is FormKind.QUADRATIC:
            return ((self.n, self.nprime, self.q, self.epsilon) == (1, 1, 3, 1)
                    and self.sigma == self.sigma_prime)
        return False

    def label(self) -> str:
        from .geometry import sign_str

        parts = [self.kind.case_name, str(self.n), str(self.nprime), str(self.q)]
        if self.kind is FormKind.QUADRATIC:
            parts += [sign_str(self.epsilon), sign_str(self.sigma), sign_str(self.sigma_prime)]
        return "(" + ",".join(parts) + ")"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.case_name,
            "n": self.n,
            "nprime": self.nprime,
            "q": self.q,
            "epsilon": self.epsilon,
            "sigma": self.sigma,
            "sigma_prime": self.sigma_prime,
        }


@dataclass(frozen=True)
class CountReport:
    context: dict
    name: str
    value: object

    def to_dict(self) -> dict:
        v = self.value
        return {"context": self.context, "name": self.name,
                "value": v if isinstance(v, int) else str(v)}


# --------------------------------------------------------------------------
# GL and q-analogues


def gaussian_binomial(N: int, k: int, q: int) -> int:
    """Number of ``k``-subspaces of ``F_q^N``."""
    if not (0 <= k <= N) or q < 2:
        raise ValueError(f"gaussian_binomial needs 0 <= k <= N and q >= 2, got ({N}, {k}, {q})")
    num = den = 1
    for i in range(k):
        num *= q ** (N - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def gl_span_proportion(n: int, nprime: int, q: int) -> Fraction:
    """Proportion of pairs (n-space, n'-space) of ``F_q^(n+n')`` meeting trivially."""
    if n < 1 or nprime < 1:
        raise ValueError("n, n' >= 1 required")
    rho = Fraction(1)
    for i in range(1, nprime + 1):
        rho *= (1 - _frac_pow(q, -i)) / (1 - _frac_pow(q, -n - i))
    assert rho > 1 - Fraction(3, 2 * q)
    return rho


# --------------------------------------------------------------------------
# unitary


def theta(n: int, q: int) -> Fraction:
    """``1 - (-q)^(-n)``."""
    return 1 - Fraction(-q) ** (-n)


def zeta(n: int, q: int) -> Fraction:
    """``theta_(n-1) * theta_n``; vanishes at ``n = 1``."""
    if n < 1:
        raise ValueError("zeta needs n >= 1")
    return theta(n - 1, q) * theta(n, q)


def unitary_point_counts(n: int, q: int) -> dict:
    """Non-degenerate and isotropic points of a non-degenerate hermitian ``n``-space over GF(q^2)."""
    if n < 1 or q < 2:
        raise ValueError("n >= 1 and q >= 2 required")
    N1 = _frac_pow(q, 2 * n - 2) * theta(n, q) / (1 + Fraction(1, q))
    P1 = _frac_pow(q, 2 * n - 3) * zeta(n, q) / (1 - _frac_pow(q, -2))
    assert N1.denominator == 1 and P1.denominator == 1
    assert N1 + P1 == (q ** (2 * n) - 1) // (q * q - 1)
    return {"N1": int(N1), "P1": int(P1)}


# --------------------------------------------------------------------------
# symplectic


def symplectic_isotropic_count(n: int, k: int, q: int) -> int:
    """Totally isotropic ``k``-subspaces of a non-degenerate symplectic ``n``-space."""
    if n % 2:
        raise ValueError("symplectic dimension must be even")
    if k > n // 2:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - 2 * i) - 1
        den *= q ** (k - i) - 1
    return num // den


def symplectic_R2_q2(n: int) -> Fraction:
    """Non-degenerate 2-subspaces at q = 2, in product shape."""
    return _frac_pow(2, 2 * (n - 1)) * (1 - _frac_pow(2, -n)) / 3


def symplectic_R3_q2(n: int) -> Fraction:
    """Non-isotropic 3-subspaces at q = 2, in product shape."""
    return (2**n - 1) * _frac_pow(2, 2 * (n - 3)) * (1 - _frac_pow(2, -n + 2)) / 3


def symplectic_counts(n: int, k: int, q: int) -> dict:
    """``|P_1|``, ``|P_k|``, ``|R_2|`` and ``|R_3|`` of a symplectic ``n``-space.

    ``R_k`` is the complement of ``P_k`` among all ``k``-subspaces.  At q = 2 the
    subtraction results are checked against the product shapes.
    """
    if n % 2 or n < 2:
        raise ValueError("symplectic dimension must be even")
    if q < 2 or not is_prime_power(q):
        raise ValueError("q must be a prime power")
    out = {
        "P1": symplectic_isotropic_count(n, 1, q),
        "Pk": symplectic_isotropic_count(n, k, q),
        "R2": gaussian_binomial(n, 2, q) - symplectic_isotropic_count(n, 2, q),
        "R3": (gaussian_binomial(n, 3, q) - symplectic_isotropic_count(n, 3, q)) if n >= 3 else 0,
    }
    if q == 2:
        assert out["R2"] == symplectic_R2_q2(n)
        if n >= 4:
            assert out["R3"] == symplectic_R3_q2(n)
    return out


# --------------------------------------------------------------------------
# orthogonal


def _check_tau(n, tau):
    if tau not in (-1, 0, 1):
        raise ValueError(f"tau must be -1, 0 or +1, got {tau!r}")
    if (tau == 0) != (n % 2 == 1):
        raise ValueError("tau = o exactly when n is odd")


def orth_gamma(n: int, tau: int, q: int) -> Fraction:
    """``1 - tau q^(-n/2) + tau q^(-n/2+1) - q^(-n+1)``."""
    tau = parse_sign(tau)
    _check_tau(n, tau)
    g = 1 - _frac_pow(q, -n + 1)
    if tau:
        h = n // 2
        g += tau * (_frac_pow(q, -h + 1) - _frac_pow(q, -h))
        assert g == (1 + tau * _frac_pow(q, -h + 1)) * (1 - tau * _frac_pow(q, -h))
    return g


def orth_point_counts(n: int, tau, q: int, alpha=None) -> dict:
    """``|P_1|``, ``|N_1|`` and, for q odd and n > 1, ``|N_1^+|``, ``|N_1^-|``."""
    tau = parse_sign(tau)
    _check_tau(n, tau)
    if q % 2 == 0 and n % 2:
        raise ValueError("odd-dimensional orthogonal spaces need q odd")
    P1 = _frac_pow(q, n - 2) * orth_gamma(n, tau, q) / (1 - Fraction(1, q))
    N1 = _frac_pow(q, n - 1) * (1 - tau * _frac_pow(q, -(n // 2)))
    assert P1.denominator == 1 and N1.denominator == 1
    assert P1 + N1 == (q**n - 1) // (q - 1)
    out = {"P1": int(P1), "N1": int(N1)}
    if alpha is not None or (q % 2 and n > 1):
        if q % 2 == 0:
            raise ValueError("N1^alpha classes need q odd")
        if n == 1:
            raise ValueError("N1^alpha classes need n > 1")
        for a in (1, -1):
            out[f"N1{'+' if a > 0 else '-'}"] = orth_N1_alpha(n, tau, q, a)
        assert out["N1+"] + out["N1-"] == out["N1"]
        if alpha is not None:
            out["N1alpha"] = out["N1+" if parse_sign(alpha) > 0 else "N1-"]
    return out


def orth_N1_alpha(n: int, tau, q: int, alpha) -> int:
    tau, alpha = parse_sign(tau), parse_sign(alpha)
    m = n // 2
    if n % 2 == 0:
        v = _frac_pow(q, n - 1) * (1 - tau * _frac_pow(q, -m)) / 2
    else:
        v = _frac_pow(q, n - 1) * (1 + alpha * _frac_pow(q, -m)) / 2
    assert v.denominator == 1
    return int(v)


def _parity_sign(x: int, q: int) -> int:
    return -1 if (x * (q - 1) // 2) % 2 else 1


def table4_signs(delta_V=None, delta_U=None, delta_Uperp=None, m: int = 0, m_prime: int = 0,
                 q: int = 3, delta_Uprime=None, delta_Uprime_perp=None) -> SignParams:
    """The signs of the orbit-intersection table; any sign whose delta is missing is ``None``.

    ``gamma_prime = delta(U'^perp) (-1)^(m (q-1)/2)`` and
    ``eta_prime = delta(U') (-1)^(m' (q-1)/2)``.
    """
    if q % 2 == 0:
        raise ValueError("sign parameters need q odd")

    def sgn(d, x):
        return None if d is None else int(d) * _parity_sign(x, q)

    return SignParams(
        beta=sgn(delta_V, m + m_prime),
        gamma=sgn(delta_Uperp, m_prime),
        eta=sgn(delta_U, m),
        gamma_prime=sgn(delta_Uprime_perp, m),
        eta_prime=sgn(delta_Uprime, m_prime),
        m=m,
        m_prime=m_prime,
    )


def table4_multiplier(dim_U: int, dim_Uperp: int, signs: SignParams) -> int:
    """The sign ``s`` with ``N_1^alpha(V) & N_1(U) = N_1^(alpha s)(U)``."""
    if dim_U % 2 == 0 and dim_Uperp % 2 == 0:
        return 1
    if dim_U % 2 == 0:
        return signs.beta
    if dim_Uperp % 2 == 0:
        return signs.gamma
    return signs.eta


def discriminant_from_type(dim: int, tau: int, q: int) -> int:
    """``delta(W) = tau (-1)^(k (q-1)/2)`` for an even-dimensional ``W`` with ``dim = 2k``."""
    if dim % 2:
        raise ValueError("discriminant is determined by the type only in even dimension")
    return int(tau) * _parity_sign(dim // 2, q)


# --------------------------------------------------------------------------
# closed forms per kind


def closed_form_values(kind, n: int, q: int, tau=None) -> dict:
    """The point counts (and symplectic k-space counts) of one non-degenerate space."""
    kind = FormKind.parse(kind)
    if kind is FormKind.HERMITIAN:
        return unitary_point_counts(n, q)
    if kind is FormKind.ALTERNATING:
        out = {"P1": symplectic_isotropic_count(n, 1, q)}
        for k in (2, 3):
            if k <= n:
                out[f"P{k}"] = symplectic_isotropic_count(n, k, q)
                out[f"R{k}"] = gaussian_binomial(n, k, q) - out[f"P{k}"]
        return out
    return orth_point_counts(n, tau, q)


# --------------------------------------------------------------------------
# grid verifiers (witness lists, expected empty)


def verify_zeta_chain(qs=range(2, 17), max_index: int = 40) -> list:
    """``0 = zeta_1 < zeta_3 < zeta_5 < ... < 1 < ... < zeta_4 < zeta_2``."""
    bad = []
    for q in qs:
        odd = [zeta(i, q) for i in range(1, max_index + 1, 2)]
        even = [zeta(i, q) for i in range(2, max_index + 1, 2)]
        if odd[0] != 0:
            bad.append((q, "zeta_1 != 0"))
        for i in range(len(odd) - 1):
            if not odd[i] < odd[i + 1]:
                bad.append((q, f"zeta_{2 * i + 1} >= zeta_{2 * i + 3}"))
        if not odd[-1] < 1 < even[-1]:
            bad.append((q, "chain does not straddle 1"))
        for i in range(len(even) - 1):
            if not even[i + 1] < even[i]:
                bad.append((q, f"zeta_{2 * i + 4} >= zeta_{2 * i + 2}"))
    return bad


def verify_zeta_products(qs=range(2, 17), max_j: int = 20) -> list:
    """``zeta_(2i+2) zeta_(2j) < zeta_(2i) zeta_(2j+2)`` for ``1 <= i < j``."""
    bad = []
    for q in qs:
        z = {k: zeta(k, q) for k in range(2, 2 * max_j + 3)}
        for i in range(1, max_j + 1):
            for j in range(i + 1, max_j + 1):
                if not z[2 * i + 2] * z[2 * j] < z[2 * i] * z[2 * j + 2]:
                    bad.append((q, i, j))
    return bad


def verify_zeta_ratio(qs=range(2, 17), max_n: int = 40) -> list:
    """``zeta_n zeta_n' zeta_4 <= zeta_2^2 zeta_(n+n')``."""
    bad = []
    for q in qs:
        z = {k: zeta(k, q) for k in range(1, 2 * max_n + 1)}
        for n in range(1, max_n + 1):
            for n2 in range(1, max_n + 1):
                if not z[n] * z[n2] * z[4] <= z[2] ** 2 * z[n + n2]:
                    bad.append((q, n, n2))
    return bad


def verify_gamma_chain(qs=range(2, 17), max_k: int = 12) -> list:
    """``1 - q^(-k+1) < gamma_2k^- < gamma_(2k+1)^o < 1 < gamma_2k^+ < (1-q^-1)(1/(1-q^-1) + q^(-k+1))``.

    Two links degenerate to equalities at ``k = 1``: the left flank is
    ``0 = 0`` for every q, and ``gamma_2^+ = 2(1 - 1/q)`` equals 1 at q = 2.
    Those corners are checked as equalities, every other link strictly.
    """
    bad = []

    def link(ok_strict, lhs, rhs, corner, tag, q, k):
        if corner:
            if lhs != rhs:
                bad.append((q, k, tag))
        elif not ok_strict:
            bad.append((q, k, tag))

    for q in qs:
        a = 1 / (1 - Fraction(1, q))
        for k in range(1, max_k + 1):
            gm, go, gp = orth_gamma(2 * k, -1, q), orth_gamma(2 * k + 1, 0, q), orth_gamma(2 * k, 1, q)
            left = 1 - _frac_pow(q, -k + 1)
            link(left < gm, left, gm, k == 1, "left flank", q, k)
            link(gm < go, gm, go, False, "gamma^- < gamma^o", q, k)
            link(go < 1, go, 1, False, "gamma^o < 1", q, k)
            link(1 < gp, 1, gp, (q, k) == (2, 1), "1 < gamma^+", q, k)
            link(gp < (1 - Fraction(1, q)) * (a + _frac_pow(q, -k + 1)), None, None, False,
                 "right flank", q, k)
    return bad


def verify_boundprod(qs=range(2, 17), max_y: int = 20, a_values=None) -> list:
    """``(a + q^-x)(a + q^-y) <= (a + q^(-x+l))(a + q^(-y-l))`` for ``0 <= l <= x <= y``."""
    bad = []
    for q in qs:
        avals = a_values if a_values is not None else (Fraction(1), 1 / (1 - Fraction(1, q)))
        pw = {e: _frac_pow(q, -e) for e in range(-max_y, 2 * max_y + 1)}
        for a in avals:
            for y in range(max_y + 1):
                for x in range(y + 1):
                    lhs = (a + pw[x]) * (a + pw[y])
                    for ell in range(x + 1):
                        if not lhs <= (a + pw[x - ell]) * (a + pw[y + ell]):
                            bad.append((q, a, x, y, ell))
    return bad


def verify_gl_bound(qs=range(2, 17), max_total: int = 24) -> list:
    """``rho > 1 - 3/(2q)`` for all ``n + n' <= max_total``."""
    bad = []
    for q in qs:
        if not is_prime_power(q):
            continue
        for n in range(1, max_total):
            for n2 in range(1, max_total - n + 1):
                try:
                    gl_span_proportion(n, n2, q)
                except AssertionError:
                    bad.append((q, n, n2))
    return bad


def prime_powers(lo: int, hi: int) -> list:
    return [q for q in range(lo, hi + 1) if is_prime_power(q)]
