"""The transpose map has operator norm 1 but its blockwise version blows up.

Builds a = sum_ij e_ij (x) e_ji (a unitary permutation, norm 1), transposes
every block, and watches the norm grow linearly with n.
"""

import numpy as np

from qinfokit import channels, matkit

print("n x n transpose map acting blockwise on M_n(M_n)")
print("norm of the block-transposed unitary a = sum e_ij (x) e_ji:\n")
for n in range(1, 6):
    ratio = channels.transpose_channel_norm_demo(n)
    print(f"  n = {n}:  ||T_n(a)|| / ||a|| = {ratio:.12f}")

print("\nThe same operator, by hand for n = 2:")
a = np.zeros((4, 4), dtype=complex)
for i in range(2):
    for j in range(2):
        e = np.zeros((2, 2))
        e[i, j] = 1.0
        a += np.kron(e, e.T)
print("a (the swap):")
print(np.real(a).astype(int))
ta = matkit.partial_transpose(a, (2, 2), 1)
print("blockwise transpose of a (rank-one, norm 2):")
print(np.real(ta).astype(int))
print("eigenvalues:", np.round(np.linalg.eigvalsh(ta), 6))
