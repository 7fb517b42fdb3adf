"""Random sampling (Haar unitaries, states, channels), matrix concentration
experiments, and epsilon-randomizing unitary families.

All samplers take an explicit numpy Generator so parallel or repeated runs
are reproducible. Tail-bound experiments report both the empirical
frequency and the analytic bound; acceptance-style checks add a 3 sigma
binomial slack so suites pass deterministically under fixed seeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import channels as chan
from . import matkit
from .errors import (
    DimensionError,
    DomainError,
    MeanNotIsotropic,
    NotHermitian,
    ProbabilityError,
    SingularA,
)
from .matkit import dagger
from .states import PureState, State, unitary_error_basis

# "X not <= A" is decided by: min eigenvalue of (A - X) < -PSD_DECISION_TOL.
PSD_DECISION_TOL = 1e-10


def haar_unitary(d: int, rng) -> np.ndarray:
    """Haar-random unitary via complex Ginibre + QR.

    The columns of Q are multiplied by the phases of R's diagonal, which
    corrects the non-uniformity of plain QR. This is the only sampling
    recipe used in the package.
    """
    if d < 1:
        raise DimensionError("haar_unitary needs d >= 1")
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    z /= math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    q = q * (diag / np.abs(diag))
    return q


def haar_unitary_batch(d: int, count: int, rng) -> np.ndarray:
    """Stacked Haar unitaries of shape (count, d, d); same recipe as above."""
    z = rng.standard_normal((count, d, d)) + 1j * rng.standard_normal((count, d, d))
    z /= math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (diag / np.abs(diag))[:, None, :]


def random_pure(dims, rng) -> PureState:
    dims = tuple(int(d) for d in dims)
    n = math.prod(dims)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return PureState(dims, v / np.linalg.norm(v))


def random_state(dims, rng, rank: int | None = None) -> State:
    """Mixed state from a normalized Wishart factor of the given rank."""
    dims = tuple(int(d) for d in dims)
    n = math.prod(dims)
    r = n if rank is None else int(rank)
    g = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
    rho = g @ dagger(g)
    return State(dims, rho / np.real(np.trace(rho)))


def random_channel(din: int, dout: int, kraus_count: int, rng) -> chan.Channel:
    """Trace-preserving channel from a Haar-random Stinespring isometry."""
    big = dout * kraus_count
    if big < din:
        raise DimensionError("dout * kraus_count must be >= din")
    g = rng.standard_normal((big, din)) + 1j * rng.standard_normal((big, din))
    q, r = np.linalg.qr(g)
    q = q * (np.diagonal(r) / np.abs(np.diagonal(r)))[None, :]
    kraus = tuple(q[i::kraus_count, :] for i in range(kraus_count))
    return chan.Channel(din, dout, kraus)


# ---------------------------------------------------------------------------
# Matrix distributions with samples in [0, I]
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatrixDistribution:
    """I.i.d. source of Hermitian samples X with 0 <= X <= I.

    kind 'bernoulli_projector': a rank-r projector in a fresh Haar basis
    with probability p = mu * dim / rank, else 0; mean mu * I.
    kind 'random_psd_bounded': uniform spectrum on a clipped interval
    around mu in a fresh Haar basis; mean mu * I.
    kind 'custom': finite support with weights; mean whatever it is.
    """

    kind: str
    dim: int
    mu: float = 0.0
    rank: int = 0
    support: tuple = field(default_factory=tuple, repr=False)
    weights: tuple = field(default_factory=tuple)

    @staticmethod
    def bernoulli_projector(dim: int, mu: float, rank: int | None = None
                            ) -> "MatrixDistribution":
        rank = dim if rank is None else int(rank)
        if not (1 <= rank <= dim):
            raise DimensionError("projector rank must be in [1, dim]")
        p = mu * dim / rank
        if not (0.0 <= p <= 1.0 + 1e-12):
            raise DomainError(f"mu={mu} unreachable with rank {rank}")
        return MatrixDistribution("bernoulli_projector", dim, mu, rank)

    @staticmethod
    def random_psd_bounded(dim: int, mu: float) -> "MatrixDistribution":
        if not (0.0 < mu < 1.0):
            raise DomainError("mu must be strictly inside (0, 1)")
        return MatrixDistribution("random_psd_bounded", dim, mu)

    @staticmethod
    def custom(matrices, weights) -> "MatrixDistribution":
        mats = tuple(matkit.asmatrix(m) for m in matrices)
        w = np.asarray(weights, dtype=float)
        if w.min() < 0 or abs(w.sum() - 1.0) > 1e-12:
            raise ProbabilityError("weights must be a probability vector")
        dim = mats[0].shape[0]
        for m in mats:
            if m.shape != (dim, dim):
                raise DimensionError("support matrices must share one shape")
            vals = np.linalg.eigvalsh((m + dagger(m)) / 2.0)
            if vals.min() < -PSD_DECISION_TOL or vals.max() > 1.0 + PSD_DECISION_TOL:
                raise DomainError("support matrices must satisfy 0 <= X <= I")
        mean = sum(wi * mi for wi, mi in zip(w, mats))
        mu = float(np.real(np.trace(mean))) / dim
        return MatrixDistribution("custom", dim, mu, 0, mats, tuple(w))

    def mean(self) -> np.ndarray:
        if self.kind == "custom":
            return sum(w * m for w, m in zip(self.weights, self.support))
        return self.mu * np.eye(self.dim, dtype=complex)

    def is_isotropic(self, tol: float = 1e-10) -> bool:
        m = self.mean()
        return bool(np.linalg.norm(m - self.mu * np.eye(self.dim)) <= tol)

    def sample_batch(self, count: int, rng) -> np.ndarray:
        """(count, dim, dim) stack of i.i.d. samples."""
        d = self.dim
        if self.kind == "bernoulli_projector":
            p = self.mu * d / self.rank
            on = rng.random(count) < p
            if self.rank == d:
                out = np.zeros((count, d, d), dtype=complex)
                out[on] = np.eye(d)
                return out
            us = haar_unitary_batch(d, count, rng)
            proj = np.zeros((d, d), dtype=complex)
            proj[: self.rank, : self.rank] = np.eye(self.rank)
            out = us @ proj @ np.conj(np.swapaxes(us, -1, -2))
            out[~on] = 0.0
            return out
        if self.kind == "random_psd_bounded":
            lo = max(0.0, 2.0 * self.mu - 1.0)
            hi = min(1.0, 2.0 * self.mu)
            eigs = rng.uniform(lo, hi, size=(count, d))
            us = haar_unitary_batch(d, count, rng)
            return (us * eigs[:, None, :]) @ np.conj(np.swapaxes(us, -1, -2))
        if self.kind == "custom":
            idx = rng.choice(len(self.support), size=count, p=self.weights)
            return np.stack(self.support)[idx]
        raise ValueError(f"unknown distribution kind {self.kind!r}")

    def sample(self, rng) -> np.ndarray:
        return self.sample_batch(1, rng)[0]


def _not_leq(x: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Batched decision of X not <= A via min eigenvalue of A - X."""
    vals = np.linalg.eigvalsh(a - x)
    return vals[..., 0] < -PSD_DECISION_TOL


def matrix_markov_check(dist: MatrixDistribution, a: np.ndarray,
                        trials: int, rng) -> tuple[float, float]:
    """Empirical frequency of {X not <= A} against the bound Tr[M A^{-1}].

    A must be positive definite; M is the distribution mean.
    """
    a = matkit.asmatrix(a)
    vals = np.linalg.eigvalsh((a + dagger(a)) / 2.0)
    if vals.min() <= 0:
        raise SingularA("threshold matrix must be positive definite")
    m = dist.mean()
    bound = float(np.real(np.trace(m @ np.linalg.inv(a))))
    xs = dist.sample_batch(trials, rng)
    empirical = float(np.mean(_not_leq(xs, a)))
    return empirical, bound


def binary_divergence(alpha: float, mu: float) -> float:
    """Relative entropy (nats) between Bernoulli(alpha) and Bernoulli(mu)."""
    if not (0.0 < mu < 1.0):
        raise DomainError("mu must be strictly inside (0, 1)")
    if not (0.0 <= alpha <= 1.0):
        raise DomainError("alpha must be in [0, 1]")
    val = 0.0
    if alpha > 0.0:
        val += alpha * math.log(alpha / mu)
    if alpha < 1.0:
        val += (1.0 - alpha) * math.log((1.0 - alpha) / (1.0 - mu))
    return val


def tail_bound_experiment(dist: MatrixDistribution, n: int, alpha: float,
                          trials: int, rng) -> dict:
    """Ahlswede-Winter tail experiment for the empirical mean of n samples.

    For alpha > mu the monitored event is (1/n) sum X_i not <= alpha I;
    for alpha < mu it is the lower-tail event (not >=). Both are bounded
    by d * exp(-n * D(alpha || mu)). Requires E[X] = mu * I.
    """
    if not dist.is_isotropic():
        raise MeanNotIsotropic("tail bound needs an isotropic mean")
    mu = dist.mu
    if alpha == mu:
        raise DomainError("alpha must differ from mu")
    d = dist.dim
    target = alpha * np.eye(d)
    hits = 0
    # Sample in chunks to keep memory under control at large trial counts.
    chunk = max(1, min(trials, 200_000 // max(1, n)))
    done = 0
    while done < trials:
        take = min(chunk, trials - done)
        xs = dist.sample_batch(take * n, rng).reshape(take, n, d, d)
        means = xs.mean(axis=1)
        if alpha > mu:
            bad = _not_leq(means, target)
        else:
            bad = _not_leq(-means, -target)
        hits += int(np.sum(bad))
        done += take
    bound = d * math.exp(-n * binary_divergence(alpha, mu))
    return {
        "empirical_prob": hits / trials,
        "aw_bound": bound,
        "d": d,
        "n": n,
        "alpha": alpha,
        "mu": mu,
        "trials": trials,
    }


def golden_thompson_check(a, b) -> tuple[float, float]:
    """(Tr[exp(A+B)], Tr[exp(A) exp(B)]) for Hermitian A, B."""
    a = matkit.asmatrix(a)
    b = matkit.asmatrix(b)
    if not (matkit.is_hermitian(a) and matkit.is_hermitian(b)):
        raise NotHermitian("golden_thompson_check needs Hermitian inputs")
    if a.shape != b.shape:
        raise DimensionError("shapes must match")
    ea = matkit.matrix_function(a, "exp")
    eb = matkit.matrix_function(b, "exp")
    eab = matkit.matrix_function((a + b + dagger(a + b)) / 2.0, "exp")
    return float(np.real(np.trace(eab))), float(np.real(np.trace(ea @ eb)))


# ---------------------------------------------------------------------------
# Destroying correlations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RandomizingFamily:
    """Weighted unitaries acting on the first factor of a bipartite state."""

    probs: tuple
    unitaries: tuple = field(repr=False)

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.min() < 0 or abs(p.sum() - 1.0) > 1e-12:
            raise ProbabilityError("probabilities must sum to 1")
        us = tuple(matkit.asmatrix(u) for u in self.unitaries)
        for u in us:
            if np.linalg.norm(dagger(u) @ u - np.eye(u.shape[0])) > 1e-10:
                raise DimensionError("family members must be unitary")
        object.__setattr__(self, "probs", tuple(float(x) for x in p))
        object.__setattr__(self, "unitaries", us)

    def __len__(self) -> int:
        return len(self.unitaries)


def epsilon_randomizing_deviation(rho_ab: State, fam: RandomizingFamily) -> float:
    """Trace-norm distance between the randomized state and the matching
    product state:

        || sum_i p_i (U_i x I) rho (U_i x I)^dag  -  rho_tilde_A x rho_B ||_1

    with rho_tilde_A the same average applied to the A marginal.
    """
    if len(rho_ab.dims) != 2:
        raise DimensionError("need a bipartite state")
    da, db = rho_ab.dims
    if fam.unitaries[0].shape != (da, da):
        raise DimensionError("unitaries must act on the A factor")
    eye_b = np.eye(db)
    mixed = np.zeros((da * db, da * db), dtype=complex)
    rho_a = matkit.partial_trace(rho_ab.rho, rho_ab.dims, {0})
    rho_b = matkit.partial_trace(rho_ab.rho, rho_ab.dims, {1})
    rho_a_twirl = np.zeros((da, da), dtype=complex)
    for p, u in zip(fam.probs, fam.unitaries):
        big = np.kron(u, eye_b)
        mixed += p * (big @ rho_ab.rho @ dagger(big))
        rho_a_twirl += p * (u @ rho_a @ dagger(u))
    return matkit.norm(mixed - np.kron(rho_a_twirl, rho_b), "trace")


def sample_randomizing_family(rho_ab: State, n_unitaries: int, rng,
                              sampler: str = "haar"
                              ) -> tuple[RandomizingFamily, float]:
    """Uniform family of sampled unitaries and its achieved deviation.

    sampler 'haar' draws i.i.d. Haar unitaries; 'weyl' draws distinct
    elements of the Weyl basis (all d^2 of them when n_unitaries = d^2,
    which randomizes exactly).
    """
    if len(rho_ab.dims) != 2:
        raise DimensionError("need a bipartite state")
    da = rho_ab.dims[0]
    if sampler == "haar":
        us = [haar_unitary(da, rng) for _ in range(n_unitaries)]
    elif sampler == "weyl":
        basis = unitary_error_basis(da)
        if n_unitaries <= len(basis):
            idx = rng.permutation(len(basis))[:n_unitaries]
        else:
            idx = rng.integers(0, len(basis), size=n_unitaries)
        us = [basis[i] for i in idx]
    else:
        raise ValueError(f"unknown sampler {sampler!r}")
    fam = RandomizingFamily(tuple([1.0 / n_unitaries] * n_unitaries), tuple(us))
    return fam, epsilon_randomizing_deviation(rho_ab, fam)
