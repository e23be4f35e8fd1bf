from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from classical_span import linalg
from classical_span.counting import (
    CountingContext,
    CountReport,
    IllegalContext,
    closed_form_values,
    discriminant_from_type,
    gaussian_binomial,
    gl_span_proportion,
    orth_gamma,
    orth_point_counts,
    symplectic_counts,
    table4_multiplier,
    table4_signs,
    theta,
    unitary_point_counts,
    verify_boundprod,
    verify_gamma_chain,
    verify_gl_bound,
    verify_zeta_chain,
    verify_zeta_products,
    verify_zeta_ratio,
    zeta,
)
from classical_span.enumeration import count_oracle
from classical_span.field import GF

QS = st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 13, 16])


def _gl_order(k, q):
    out = 1
    for i in range(k):
        out *= q**k - q**i
    return out


def _brute_subspace_count(N, k, q):
    # ordered independent k-tuples divided by |GL_k(q)|
    F = GF(q)
    vs = linalg.all_vectors(N, F)
    idx = np.stack(np.meshgrid(*[np.arange(len(vs))] * k, indexing="ij"), -1).reshape(-1, k)
    ranks = linalg.batch_rank(vs[idx], F)
    return int(np.count_nonzero(ranks == k)) // _gl_order(k, q)


# gaussian binomials -----------------------------------------------------------


def test_gaussian_binomial_examples():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(4, 3, 2) == 15 == gaussian_binomial(4, 1, 2)
    for N in range(6):
        assert gaussian_binomial(N, 0, 3) == 1


@pytest.mark.parametrize("N, k, q", [(4, 2, 2), (4, 1, 2), (3, 2, 3), (4, 2, 3), (3, 1, 4), (2, 1, 5), (3, 2, 2)])
def test_gaussian_binomial_against_brute_force(N, k, q):
    assert gaussian_binomial(N, k, q) == _brute_subspace_count(N, k, q)


@given(st.integers(0, 12), st.integers(0, 12), QS)
def test_gaussian_binomial_symmetry_and_pascal(N, k, q):
    if k > N:
        with pytest.raises(ValueError):
            gaussian_binomial(N, k, q)
        return
    assert gaussian_binomial(N, k, q) == gaussian_binomial(N, N - k, q)
    if 0 < k < N:
        assert gaussian_binomial(N, k, q) == gaussian_binomial(N - 1, k - 1, q) + q**k * gaussian_binomial(N - 1, k, q)


def test_gaussian_binomial_errors():
    with pytest.raises(ValueError):
        gaussian_binomial(3, -1, 2)
    with pytest.raises(ValueError):
        gaussian_binomial(3, 1, 1)


# GL proportion ------------------------------------------------------------------


def test_gl_span_proportion_examples():
    assert gl_span_proportion(1, 1, 2) == Fraction(2, 3)
    assert gl_span_proportion(2, 2, 2) == Fraction(16, 35)


@given(st.integers(1, 10), st.integers(1, 10), QS)
def test_gl_span_proportion_counts_complements(n, n2, q):
    # a fixed n-space has q^(n n') complements among the n'-spaces
    assert gl_span_proportion(n, n2, q) == Fraction(q ** (n * n2), gaussian_binomial(n + n2, n2, q))
    assert gl_span_proportion(n, n2, q) > 1 - Fraction(3, 2 * q)


def test_gl_span_proportion_errors():
    with pytest.raises(ValueError):
        gl_span_proportion(0, 1, 2)


# theta, zeta --------------------------------------------------------------------


def test_theta_zeta_examples():
    assert theta(1, 2) == Fraction(3, 2)
    assert zeta(2, 2) == Fraction(9, 8)
    for q in range(2, 17):
        assert zeta(1, q) == 0
    with pytest.raises(ValueError):
        zeta(0, 2)


@given(st.integers(1, 40), st.integers(2, 16))
def test_zeta_is_a_theta_product(n, q):
    assert zeta(n, q) == theta(n - 1, q) * theta(n, q)
    assert theta(n, q) == 1 - Fraction(-1, q) ** n


# unitary ----------------------------------------------------------------------


def test_unitary_point_count_examples():
    assert unitary_point_counts(2, 2) == {"N1": 2, "P1": 3}
    for q in (2, 3, 4, 5, 7):
        assert unitary_point_counts(1, q) == {"N1": 1, "P1": 0}
    c = unitary_point_counts(3, 2)
    assert c["N1"] + c["P1"] == 21


@given(st.integers(1, 20), st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 13, 16]))
def test_unitary_point_counts_partition(n, q):
    c = unitary_point_counts(n, q)
    assert min(c.values()) >= 0
    assert c["N1"] + c["P1"] == (q ** (2 * n) - 1) // (q * q - 1)


def test_unitary_plane_over_gf4_by_hand():
    # beta(v, v) = x conj(y) + y conj(x) on the hyperbolic hermitian plane
    F = GF(4)
    pts = linalg.projective_points(2, F)
    x, y = pts[:, 0], pts[:, 1]
    norms = F.add(F.mul(x, F.conj(y)), F.mul(y, F.conj(x)))
    assert int(np.count_nonzero(norms == 0)) == 3
    assert len(pts) - 3 == 2


# symplectic -------------------------------------------------------------------


def test_symplectic_count_examples():
    c = symplectic_counts(4, 2, 2)
    assert c["Pk"] == 15 and c["R2"] == 20 and c["R3"] == 15
    assert c["R2"] == 2**6 * Fraction(15, 16) / 3
    assert symplectic_counts(4, 3, 2)["Pk"] == 0
    assert symplectic_counts(2, 1, 3)["P1"] == 4


@given(st.integers(1, 8), st.integers(1, 3), st.sampled_from([2, 3, 4, 5, 7]))
def test_symplectic_counts_complement(h, k, q):
    n = 2 * h
    c = symplectic_counts(n, k, q)
    assert c["P1"] == gaussian_binomial(n, 1, q)  # every point is isotropic
    assert c["R2"] == gaussian_binomial(n, 2, q) - symplectic_counts(n, 2, q)["Pk"]
    if k > h:
        assert c["Pk"] == 0


def test_symplectic_counts_errors():
    with pytest.raises(ValueError, match="even"):
        symplectic_counts(3, 1, 2)
    with pytest.raises(ValueError):
        symplectic_counts(4, 1, 6)


# orthogonal -------------------------------------------------------------------


def test_orth_gamma_examples():
    assert orth_gamma(2, 1, 3) == Fraction(4, 3)
    assert orth_gamma(3, 0, 3) == Fraction(8, 9)
    with pytest.raises(ValueError):
        orth_gamma(3, 1, 3)
    with pytest.raises(ValueError):
        orth_gamma(4, 0, 3)


@given(st.integers(1, 12), st.integers(2, 16), st.sampled_from([1, -1]))
def test_orth_gamma_factorizes(h, q, tau):
    Fq = Fraction(1, q)
    assert orth_gamma(2 * h, tau, q) == (1 + tau * Fq ** (h - 1)) * (1 - tau * Fq**h)


def test_orth_point_count_examples():
    assert orth_point_counts(3, 0, 3) == {"P1": 4, "N1": 9, "N1+": 6, "N1-": 3}
    for q in (2, 3, 4, 5, 7):
        assert orth_point_counts(2, 1, q)["P1"] == 2
    c = orth_point_counts(2, -1, 3)
    assert c["P1"] == 0 and c["N1"] == 4


def test_conic_in_pg23_by_hand():
    # x z - y^2 = 0 has q + 1 = 4 points in PG(2, 3)
    F = GF(3)
    pts = linalg.projective_points(3, F)
    vals = F.sub(F.mul(pts[:, 0], pts[:, 2]), F.mul(pts[:, 1], pts[:, 1]))
    assert int(np.count_nonzero(vals == 0)) == 4 and len(pts) - 4 == 9


@given(st.integers(1, 14), st.sampled_from([3, 5, 7, 9, 11, 13]), st.sampled_from([1, -1]))
def test_orth_point_counts_partition(n, q, t):
    tau = 0 if n % 2 else t
    c = orth_point_counts(n, tau, q, alpha=(t if n > 1 else None))
    assert c["P1"] + c["N1"] == (q**n - 1) // (q - 1)
    if n > 1:
        assert c["N1+"] + c["N1-"] == c["N1"]
        if n % 2 == 0:
            assert c["N1+"] == c["N1-"]
        else:
            m = n // 2
            assert c["N1" + ("+" if t > 0 else "-")] == q ** (n - 1) * (1 + t * Fraction(1, q) ** m) / 2


def test_orth_point_counts_errors():
    with pytest.raises(ValueError, match="q odd"):
        orth_point_counts(2, 1, 4, alpha=1)
    with pytest.raises(ValueError, match="q odd"):
        orth_point_counts(3, 0, 4)
    with pytest.raises(ValueError, match="n > 1"):
        orth_point_counts(1, 0, 3, alpha=1)


# sign table -------------------------------------------------------------------


def test_table4_sign_examples():
    s = table4_signs(delta_V=1, m=1, m_prime=1, q=3)
    assert s.beta == 1
    s = table4_signs(delta_U=-1, m=1, q=3)
    assert s.eta == 1
    assert s.gamma is None
    with pytest.raises(ValueError):
        table4_signs(1, 1, 1, 1, 1, q=4)


def test_table4_multiplier_rows():
    s = table4_signs(1, -1, 1, m=1, m_prime=1, q=3)
    assert table4_multiplier(2, 2, s) == 1
    assert table4_multiplier(2, 3, s) == s.beta
    assert table4_multiplier(3, 2, s) == s.gamma
    assert table4_multiplier(3, 3, s) == s.eta


def test_discriminant_from_type():
    assert discriminant_from_type(2, 1, 3) == -1
    assert discriminant_from_type(2, 1, 5) == 1
    assert discriminant_from_type(4, -1, 3) == -1
    with pytest.raises(ValueError):
        discriminant_from_type(3, 0, 3)


# closed forms against enumeration ------------------------------------------------


@pytest.mark.parametrize(
    "kind, n, q, tau",
    [("unitary", 2, 2, None), ("unitary", 3, 3, None), ("symplectic", 4, 2, None), ("symplectic", 4, 3, None),
     ("symplectic", 6, 2, None), ("orthogonal", 3, 3, "o"), ("orthogonal", 4, 3, "-"), ("orthogonal", 4, 2, "+"),
     ("orthogonal", 5, 5, "o"), ("orthogonal", 6, 4, "-")],
)
def test_closed_forms_match_enumeration(kind, n, q, tau):
    for name, (closed, found) in count_oracle(kind, n, q, tau).items():
        assert closed == found, name


def test_closed_form_names():
    assert set(closed_form_values("symplectic", 4, 2)) == {"P1", "P2", "R2", "P3", "R3"}
    assert set(closed_form_values("unitary", 3, 2)) == {"P1", "N1"}
    assert set(closed_form_values("orthogonal", 4, 4, "+")) == {"P1", "N1"}


# inequality suites -------------------------------------------------------------


@pytest.mark.parametrize("verifier", [verify_zeta_chain, verify_zeta_products, verify_zeta_ratio,
                                      verify_gamma_chain, verify_boundprod, verify_gl_bound])
def test_inequality_suites_have_no_witnesses(verifier):
    assert verifier() == []


def test_boundprod_detects_a_violation():
    # with a negative a the product inequality breaks, so the verifier is not vacuous
    assert verify_boundprod(qs=[2], max_y=2, a_values=[Fraction(-1)]) != []


# contexts ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "args, message",
    [
        (("symplectic", 3, 2, 2), "even"),
        (("orthogonal", 1, 2, 4, "o", "+", "+"), "q must be odd"),
        (("orthogonal", 2, 2, 3, "o", "+", "+"), "epsilon"),
        (("orthogonal", 1, 2, 3, "+", "+", "+"), "epsilon = o"),
        (("orthogonal", 2, 2, 3, "+", None, "+"), "sigma"),
        (("unitary", 1, 1, 6), "prime power"),
        (("unitary", 0, 1, 2), "n, n'"),
        (("unitary", 1, 1, 2, "+"), "no type labels"),
    ],
)
def test_illegal_contexts(args, message):
    with pytest.raises(IllegalContext, match=message):
        CountingContext(*args)


def test_context_properties():
    c = CountingContext("orthogonal", 3, 4, 5, "o", "-", "+")
    assert (c.N, c.m, c.m_prime, c.tau, c.tau_prime) == (7, 1, 2, 0, 1)
    assert c.swapped() == CountingContext("orthogonal", 4, 3, 5, "o", "+", "-")
    assert c.label() == "(orthogonal,3,4,5,o,-,+)"
    assert CountingContext("unitary", 2, 2, 3).field_order == 9
    assert CountReport(c.to_dict(), "x", Fraction(1, 3)).to_dict()["value"] == "1/3"


def test_theorem_applies_and_exceptions():
    assert CountingContext("unitary", 1, 1, 2).is_exceptional()
    assert not CountingContext("unitary", 1, 1, 2).theorem_applies()[0]
    assert CountingContext("unitary", 1, 2, 2).theorem_applies() == (True, "")
    assert CountingContext("orthogonal", 1, 1, 3, "+", "-", "-").is_exceptional()
    assert not CountingContext("orthogonal", 1, 1, 3, "+", "+", "-").is_exceptional()
    assert not CountingContext("orthogonal", 1, 1, 3, "-", "+", "+").is_exceptional()
    ok, why = CountingContext("orthogonal", 2, 2, 2, "+", "+", "+").theorem_applies()
    assert not ok and "q = 2" in why
