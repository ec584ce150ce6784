"""
Swap engines saturate the bound
===============================

A swap of two qubits gives a three-outcome law exp(S/2)/Z0 on {0, +-2a},
which is the maximal distribution with lam = 0. Two independent swaps
with half-gaps b and 3b/2 give nine outcomes and still saturate it.
"""
import numpy as np

from dftbound import bound_discrete, check_dft, mean, shannon_entropy
from dftbound.models import compose_swaps, figure3_engine, qubit_swap_pmf, swap_pmf

for a in (0.1, 1.0, 3.0):
    p = swap_pmf(a)
    b = bound_discrete(p.support, mean(p))
    print(f"a={a}: H = {shannon_entropy(p):.10f}, M = {b.bound_nats:.10f}, lam = {b.lam:.1e}")

engine = figure3_engine()
print("\nnine outcomes:", np.round(engine.values, 6))
print("probabilities:", np.round(engine.probs, 6))
b = bound_discrete(engine.support, mean(engine))
print(f"H = {shannon_entropy(engine):.10f}, M = {b.bound_nats:.10f}")

# Enumerating thermal qubit states gives a law that is still symmetric and
# maximal on its three points, but with a nonzero multiplier in general.
q = qubit_swap_pmf(0.5, 1.0, 0.4, 1.0)
bq = bound_discrete(q.support, mean(q))
print(f"\nqubit enumeration: DFT violation {check_dft(q):.1e}, lam = {bq.lam:.4f}, H - M = {shannon_entropy(q) - bq.bound_nats:.1e}")
print("composition with itself:", compose_swaps(q, q).values.size, "outcomes")
