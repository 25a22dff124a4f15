"""A random distribution on {0,1}^5 is almost never of dimension two.

The failure comes with a minor that can be recomputed by hand.
Run with ``python3 demos/dirichlet_vs_model.py``.
"""
from finitary import Alphabet, check_membership_gnd, random_realization, random_table

B = Alphabet(("0", "1"))

inside = random_realization(2, B, seed=0).tabulate(5)
print("table of a 2-dim generator:", check_membership_gnd(inside, 2).verdict)

outside = random_table(B, 5, seed=11)
rep = check_membership_gnd(outside, 2)
print("Dirichlet table:", rep.verdict)
cb = rep.to_dict(B)["condition_b"]
print("  offending word:", cb.get("offending_word"))
for w in rep.witnesses[:1]:
    print("  rows   :", [B.format_word(v) or "□" for v in w.row_words])
    print("  columns:", [B.format_word(v) or "□" for v in w.col_words])
    print(f"  det    : {float(w.det_value):.3e}, exact match on recompute:",
          w.recompute(outside) == w.det_value)
