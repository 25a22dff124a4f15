"""Shifts, marginals and the string length at which generators separate.

Run with ``python3 demos/lifting_and_slc.py``.
"""
from finitary import (Alphabet, QuasiRealization, check_lift_finite, extract_realization,
                      random_realization, random_table, slc_probe)

B = Alphabet(("0", "1"))

for name, t in [("generator", random_realization(2, B, seed=5).tabulate(5)),
                ("Dirichlet", random_table(B, 5, seed=5))]:
    rep = check_lift_finite(t, 2)
    print(f"{name:9}: whole={rep.whole_in_image} shifts={rep.all_shifts_in_image} "
          f"marginal={rep.marginal_in_image} -> equivalent={rep.equivalence_holds}")

g = random_realization(2, B, seed=9, nonnegative=False)
h = extract_realization(g.tabulate(3), 2)
print("\nagree up to length 3, then up to 10:", bool(slc_probe(g, h, 2, 10)))

# Dropping the marginal law breaks the guarantee.
a = QuasiRealization(B, [[[1]], [[1]]], [1], [1])
b = QuasiRealization(B, [[[2]], [[2]]], ["1/2"], [1])
res = slc_probe(a, b, 1, 2)
print("non-stochastic pair:", res.to_dict(B))
