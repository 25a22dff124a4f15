"""A two-state HMM, its table, and a realization recovered from three letters.

Run with ``python3 demos/hmm_tour.py``.
"""
from finitary import (Alphabet, HmmParams, build_partial_hankel, check_membership_gnd,
                      extract_realization, hmm_brute_force, hmm_to_realization, rank)

B = Alphabet(("0", "1"))
h = HmmParams(B, A=[["9/10", "1/10"], ["1/10", "9/10"]],
              E=[["4/5", "1/5"], ["1/5", "4/5"]], pi=["1/2", "1/2"])

r = hmm_to_realization(h)
word = (0, 0, 1)
print("p(001) by operators  :", r(word))
print("p(001) by state paths:", hmm_brute_force(h, word))

table = r.tabulate(3)
print("\nHankel block, rows |v| <= 1, columns |w| <= 1:")
H = build_partial_hankel(table, 1, 1)
print(H.to_csv())
print("rank:", rank(H).rank)

report = check_membership_gnd(table, 2)
print("dimension <= 2 consistent:", report.passed)

# Three letters pin the process down; the recovered operators predict longer words.
g = extract_realization(table, 2)
long_word = (0, 1, 1, 0, 0, 1, 1)
print(f"\np({B.format_word(long_word)}) recovered: {g(long_word)}")
print(f"p({B.format_word(long_word)}) true     : {r(long_word)}")
