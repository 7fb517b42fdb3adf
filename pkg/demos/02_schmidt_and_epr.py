"""Schmidt decomposition, entanglement entropy, and the EPR basis."""

import numpy as np

from qinfokit import entropy, matkit, states
from qinfokit.randkit import random_pure

rng = np.random.default_rng(1)

print("=== Schmidt data of a random 3 (x) 4 pure state ===")
psi = random_pure((3, 4), rng)
form = states.schmidt_decompose(psi)
print("coefficients:", np.round(form.coeffs, 6))
print("sum of squares:", float(np.sum(form.coeffs ** 2)))
print("Schmidt rank:", states.schmidt_rank(psi))

rho = psi.to_state()
sa = entropy.von_neumann(rho.marginal({0}))
sb = entropy.von_neumann(rho.marginal({1}))
print(f"S(rho_A) = {sa:.12f} bits")
print(f"S(rho_B) = {sb:.12f} bits  (equal for every pure bipartite state)")

print("\n=== Product states have one Schmidt coefficient ===")
prod = states.PureState((2, 2), np.kron([1, 0], [0.6, 0.8]))
print("coefficients:", np.round(states.schmidt_decompose(prod).coeffs, 6))

print("\n=== Weyl unitaries and the EPR basis (d = 3) ===")
d = 3
weyl = states.unitary_error_basis(d)
gram = np.array([[matkit.hs_inner(a, b) for b in weyl] for a in weyl])
print("HS Gram matrix equals d * identity:",
      np.linalg.norm(gram - d * np.eye(d * d)) < 1e-12)

epr = states.epr_basis(d)
overlaps = np.array([[abs(np.vdot(a.vec, b.vec)) for b in epr] for a in epr])
print("EPR states mutually orthogonal:",
      np.linalg.norm(overlaps - np.eye(d * d)) < 1e-12)
marg = matkit.partial_trace(
    np.outer(epr[5].vec, epr[5].vec.conj()), (d, d), {1}
)
print("each EPR state is maximally entangled; a marginal:")
print(np.round(marg, 6))
