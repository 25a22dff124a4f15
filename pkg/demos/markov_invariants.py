"""Markov chains satisfy rank-one determinant identities; hidden chains need not.

Run with ``python3 demos/markov_invariants.py``.
"""
from finitary import (Alphabet, HmmParams, check_markov_invariants, hmm_to_realization,
                      markov_to_table, random_markov)

B = Alphabet(("0", "1"))

chain = random_markov(B, seed=3)
t = markov_to_table(chain, 5)
rep = check_markov_invariants(t)
print("Markov chain:", rep.verdict)

sticky = HmmParams(B, [["9/10", "1/10"], ["1/10", "9/10"]], [["4/5", "1/5"], ["1/5", "4/5"]],
                   ["1/2", "1/2"])
t = hmm_to_realization(sticky).tabulate(5)
rep = check_markov_invariants(t, limit=3)
print("noisy two-state HMM:", rep.verdict)
for w in rep.witnesses:
    lab = {k: B.format_word(v) if isinstance(v, tuple) else B.symbols[v]
           for k, v in w.labels.items()}
    print("  ", lab, "det =", w.det_value)
