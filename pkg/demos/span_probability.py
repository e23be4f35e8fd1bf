# The span probability phi: the share of U' in its orbit that meet a fixed U.
# Exact values by enumeration, a seeded Monte Carlo estimate, and the bound check.

from fractions import Fraction

from classical_span import CountingContext, TABLE1, estimate_phi, exact_phi
from classical_span.bounds import verify_context

for row in TABLE1:
    print(row["case"], "c =", row["c"], "over", row["field"])

# symplectic 2 + 2 over GF(2): half of the non-degenerate planes meet U
ctx = CountingContext("symplectic", 2, 2, 2)
ex = exact_phi(ctx)
print(ctx.label(), "phi =", ex.phi, f"({ex.numerator} of {ex.denominator})")

rep = verify_context(ctx)
print("bound 5/(3q) =", rep.phi_bound, "verdict:", rep.verdict, "margin:", rep.margin)

# the same number from 20000 uniform samples; equal seeds give equal output
est = estimate_phi(ctx, 20000, seed=1)
print(f"phat = {float(est.phat):.4f}  95% CI [{float(est.ci_low):.4f}, {float(est.ci_high):.4f}]")
assert est == estimate_phi(ctx, 20000, seed=1)

# orthogonal 2 + 2 over GF(3), all (eps, sigma, sigma') against 43/(16q)
for eps in "+-":
    for s in "+-":
        for s2 in "+-":
            c = CountingContext("orthogonal", 2, 2, 3, eps, s, s2)
            phi = exact_phi(c).phi
            print(c.label(), phi, "<=", Fraction(43, 48), phi <= Fraction(43, 48))

# the flagged cases where phi exceeds c/|F|
for c in (CountingContext("unitary", 1, 1, 2), CountingContext("orthogonal", 1, 1, 3, "+", "+", "+")):
    r = verify_context(c)
    print(c.label(), "phi =", r.phi, r.verdict, "-", r.reason)
