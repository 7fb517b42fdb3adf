"""Matrix subspaces whose nonzero elements all have large rank, i.e.
subspaces of bipartite states with guaranteed Schmidt rank."""

import numpy as np

from qinfokit import entwit

print("=== Rank >= 2 inside M_4: the block construction and its complement ===")
s = entwit.rank2_subspace(2)
comp = entwit.rank2_complement(s)
print(f"dim(S) = {len(s)}, dim(S_perp) = {len(comp)},"
      f" together {len(s) + len(comp)} = dim(M_4)")
for name, sub in (("S", s), ("S_perp", comp)):
    observed, passes = entwit.verify_min_rank(sub, 1, samples=400, seed=0)
    print(f"  minimum sampled rank in {name}: {observed} (passes: {passes})")

print("\n=== Maximal subspaces with rank >= k+1 in M(m, n) ===")
print("dimension (m-k)(n-k) reached by the polynomial-diagonal construction:")
for m, n, k in [(3, 3, 1), (4, 4, 1), (4, 4, 2), (5, 6, 2)]:
    sub = entwit.min_rank_subspace(m, n, k)
    observed, passes = entwit.verify_min_rank(sub, k, samples=400, seed=1)
    print(f"  M({m},{n}), k={k}: dim={len(sub)} = ({m}-{k})({n}-{k})"
          f" = {(m - k) * (n - k)}; min sampled rank {observed}")

print("\na basis element of the m=n=3, k=1 space (zeros on short diagonals):")
print(np.round(np.real(entwit.min_rank_subspace(3, 3, 1).basis[0]), 4))
