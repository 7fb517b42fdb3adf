"""Destroying correlations with random local unitaries: the four Paulis
decorrelate a Bell pair exactly, and sampled families need about
2^{I(A:B)} members to get close."""

import numpy as np

from qinfokit import entropy, randkit, states
from qinfokit.states import State

v = np.zeros(4, dtype=complex)
v[0] = v[3] = 1 / np.sqrt(2)
bell = State((2, 2), np.outer(v, v.conj()))
print("mutual information of the Bell pair:",
      f"{entropy.mutual_info(bell):.1f} bits -> need ~2^2 = 4 unitaries")

weyl = states.unitary_error_basis(2)
fam = randkit.RandomizingFamily((0.25,) * 4, tuple(weyl))
eps = randkit.epsilon_randomizing_deviation(bell, fam)
print(f"four Weyl/Pauli unitaries: deviation = {eps:.2e} (exact)")

print("\nfewer than four never gets close (epsilon always > 0.01):")
for n_u in (1, 2, 3):
    best = min(
        randkit.sample_randomizing_family(
            bell, n_u, np.random.default_rng(seed), "haar")[1]
        for seed in range(8)
    )
    print(f"  N = {n_u}: best sampled epsilon = {best:.4f}")

print("\nachieved epsilon vs family size (Werner d=2, F=0.9; median of 15):")
rho = states.werner(2, 0.9)
for n_u in (1, 2, 4, 8, 16, 32, 64):
    vals = [
        randkit.sample_randomizing_family(
            rho, n_u, np.random.default_rng(100 + s), "haar")[1]
        for s in range(15)
    ]
    bar = "#" * int(np.median(vals) * 60)
    print(f"  N = {n_u:3d}: median eps = {np.median(vals):.4f} {bar}")
