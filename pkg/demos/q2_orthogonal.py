# Orthogonal spaces over GF(2) are outside the main theorem. This collects
# q * phat with Wilson intervals, plus exact phi where the orbit is small
# enough to enumerate. Nothing here asserts a constant.

from classical_span.sampling import q2_orthogonal_experiment

rows = q2_orthogonal_experiment([(2, 2), (2, 4), (4, 4), (4, 6)], samples=2000, seed=7)
print(f"{'context':28s} {'q*phat':>7s} {'CI for q*phi':>17s}  exact phi")
for r in rows:
    exact = "" if r["exact"] is None else str(r["exact"])
    ci = f"[{float(r['ci_low_q']):.3f}, {float(r['ci_high_q']):.3f}]"
    print(f"{r['label']:28s} {float(r['phat_q']):7.3f} {ci:>17s}  {exact}")

worst = max(float(r["ci_high_q"]) for r in rows)
print("largest upper CI end for q*phi:", round(worst, 3))
print("rows with a CI entirely >= 2:", sum(r["excludes_below_2"] for r in rows))
