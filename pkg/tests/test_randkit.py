import math

import numpy as np
import pytest
from scipy import stats as scipy_stats

from qinfokit import randkit, states
from qinfokit.errors import (
    DomainError,
    MeanNotIsotropic,
    NotHermitian,
    SingularA,
)
from qinfokit.states import State


def bell_state() -> State:
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1 / np.sqrt(2)
    return State((2, 2), np.outer(v, v.conj()))


# --- Haar sampling -------------------------------------------------------------

def test_haar_unitary_is_unitary():
    rng = np.random.default_rng(120)
    for d in (1, 2, 5):
        u = randkit.haar_unitary(d, rng)
        assert np.linalg.norm(u.conj().T @ u - np.eye(d)) <= 1e-12
    u1 = randkit.haar_unitary(1, rng)
    assert abs(abs(u1[0, 0]) - 1.0) <= 1e-12


def test_haar_mean_projector_depolarizes():
    rng = np.random.default_rng(121)
    d, n = 2, 10_000
    us = randkit.haar_unitary_batch(d, n, rng)
    proj = np.zeros((d, d), dtype=complex)
    proj[0, 0] = 1.0
    mean = np.einsum("nij,jk,nlk->il", us, proj, us.conj()) / n
    assert np.linalg.norm(mean - np.eye(d) / d) <= 0.05


def test_haar_eigenangle_uniformity():
    rng = np.random.default_rng(122)
    us = randkit.haar_unitary_batch(3, 4000, rng)
    angles = np.angle(np.linalg.eigvals(us)).reshape(-1)
    counts, _ = np.histogram(angles, bins=16, range=(-np.pi, np.pi))
    _, p = scipy_stats.chisquare(counts)
    assert p > 0.001


# --- matrix Markov -------------------------------------------------------------

def test_matrix_markov_scalar_reduces_to_classical():
    rng = np.random.default_rng(123)
    dist = randkit.MatrixDistribution.bernoulli_projector(1, 0.5)
    emp, bound = randkit.matrix_markov_check(
        dist, np.array([[2.0]]), 10_000, rng
    )
    assert bound == pytest.approx(0.25)
    sigma = math.sqrt(bound * (1 - bound) / 10_000)
    assert emp <= bound + 3 * sigma


def test_matrix_markov_projectors():
    rng = np.random.default_rng(124)
    dist = randkit.MatrixDistribution.bernoulli_projector(2, 0.5, rank=1)
    a = 2.0 * dist.mean() + 0.1 * np.eye(2)
    emp, bound = randkit.matrix_markov_check(dist, a, 10_000, rng)
    sigma = math.sqrt(min(bound, 1.0) * max(1 - bound, 0.0) / 10_000)
    assert emp <= bound + 3 * sigma


def test_matrix_markov_large_threshold():
    rng = np.random.default_rng(125)
    dist = randkit.MatrixDistribution.bernoulli_projector(2, 0.5)
    emp, _ = randkit.matrix_markov_check(dist, 10.0 * np.eye(2), 2000, rng)
    assert emp == 0.0


def test_matrix_markov_rejects_singular_threshold():
    rng = np.random.default_rng(126)
    dist = randkit.MatrixDistribution.bernoulli_projector(2, 0.5)
    with pytest.raises(SingularA):
        randkit.matrix_markov_check(dist, np.diag([1.0, 0.0]), 10, rng)


# --- binary divergence -----------------------------------------------------------

def test_binary_divergence_values():
    assert randkit.binary_divergence(0.5, 0.5) == 0.0
    assert randkit.binary_divergence(1.0, 0.5) == pytest.approx(math.log(2))
    a, mu = 0.7, 0.5
    want = a * math.log(a / mu) + (1 - a) * math.log((1 - a) / (1 - mu))
    assert randkit.binary_divergence(a, mu) == pytest.approx(want)


def test_binary_divergence_pinsker():
    rng = np.random.default_rng(127)
    for _ in range(50):
        mu = rng.uniform(0.05, 0.95)
        a = rng.uniform(0.0, 1.0)
        assert randkit.binary_divergence(a, mu) >= 2 * (a - mu) ** 2 - 1e-12


def test_binary_divergence_domain():
    with pytest.raises(DomainError):
        randkit.binary_divergence(0.5, 0.0)
    with pytest.raises(DomainError):
        randkit.binary_divergence(1.5, 0.5)


# --- tail bounds ----------------------------------------------------------------

def test_tail_bound_bernoulli_d1():
    rng = np.random.default_rng(128)
    dist = randkit.MatrixDistribution.bernoulli_projector(1, 0.5)
    rep = randkit.tail_bound_experiment(dist, 50, 0.7, 10_000, rng)
    sigma = math.sqrt(min(rep["aw_bound"], 1.0)
                      * max(1 - rep["aw_bound"], 0.0) / rep["trials"])
    assert rep["empirical_prob"] <= rep["aw_bound"] + 3 * sigma


def test_tail_bound_projectors_d2():
    rng = np.random.default_rng(129)
    dist = randkit.MatrixDistribution.bernoulli_projector(2, 0.5, rank=1)
    rep = randkit.tail_bound_experiment(dist, 100, 0.75, 4000, rng)
    sigma = math.sqrt(min(rep["aw_bound"], 1.0)
                      * max(1 - rep["aw_bound"], 0.0) / rep["trials"])
    assert rep["empirical_prob"] <= rep["aw_bound"] + 3 * sigma


def test_tail_bound_vacuous_near_mu():
    rng = np.random.default_rng(130)
    dist = randkit.MatrixDistribution.bernoulli_projector(2, 0.5)
    rep = randkit.tail_bound_experiment(dist, 10, 0.5001, 200, rng)
    assert rep["aw_bound"] >= 1.9  # d * exp(-n D) with D ~ 0


def test_tail_bound_lower_tail():
    rng = np.random.default_rng(131)
    dist = randkit.MatrixDistribution.bernoulli_projector(1, 0.5)
    rep = randkit.tail_bound_experiment(dist, 50, 0.3, 10_000, rng)
    sigma = math.sqrt(min(rep["aw_bound"], 1.0)
                      * max(1 - rep["aw_bound"], 0.0) / rep["trials"])
    assert rep["empirical_prob"] <= rep["aw_bound"] + 3 * sigma


def test_tail_bound_needs_isotropic_mean():
    mats = [np.diag([1.0, 0.0]), np.zeros((2, 2))]
    dist = randkit.MatrixDistribution.custom(mats, [0.5, 0.5])
    with pytest.raises(MeanNotIsotropic):
        randkit.tail_bound_experiment(dist, 10, 0.7, 10, np.random.default_rng(0))


def test_psd_bounded_distribution_isotropic():
    rng = np.random.default_rng(132)
    dist = randkit.MatrixDistribution.random_psd_bounded(3, 0.4)
    xs = dist.sample_batch(2000, rng)
    vals = np.linalg.eigvalsh(xs)
    assert vals.min() >= -1e-10 and vals.max() <= 1.0 + 1e-10
    assert np.linalg.norm(xs.mean(axis=0) - 0.4 * np.eye(3)) <= 0.05


# --- Golden-Thompson ---------------------------------------------------------------

def test_golden_thompson_commuting_equality():
    a = np.diag([0.3, -0.2, 1.0])
    b = np.diag([-1.0, 0.4, 0.2])
    lhs, rhs = randkit.golden_thompson_check(a, b)
    assert lhs == pytest.approx(rhs, abs=1e-10)


def test_golden_thompson_pauli_strict():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    z = np.diag([1.0, -1.0])
    lhs, rhs = randkit.golden_thompson_check(x, z)
    assert lhs < rhs - 1e-3


def test_golden_thompson_zero_b():
    rng = np.random.default_rng(133)
    a = rng.standard_normal((3, 3))
    a = (a + a.T) / 2
    lhs, rhs = randkit.golden_thompson_check(a, np.zeros((3, 3)))
    assert lhs == pytest.approx(rhs, abs=1e-10)


def test_golden_thompson_random_pairs():
    rng = np.random.default_rng(134)
    for _ in range(100):
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        a = (a + a.conj().T) / 2
        b = (b + b.conj().T) / 2
        lhs, rhs = randkit.golden_thompson_check(a, b)
        scale = max(abs(lhs), abs(rhs), 1.0)
        assert lhs <= rhs + 1e-9 * scale


def test_golden_thompson_rejects_nonhermitian():
    with pytest.raises(NotHermitian):
        randkit.golden_thompson_check(
            np.array([[0.0, 1.0], [0.0, 0.0]]), np.eye(2)
        )


# --- destroying correlations ---------------------------------------------------------

def test_bell_plus_weyl_randomizes_exactly():
    bell = bell_state()
    weyl = states.unitary_error_basis(2)
    fam = randkit.RandomizingFamily((0.25,) * 4, tuple(weyl))
    dev = randkit.epsilon_randomizing_deviation(bell, fam)
    assert dev <= 1e-12
    mixed = sum(
        0.25 * np.kron(u, np.eye(2)) @ bell.rho @ np.kron(u, np.eye(2)).conj().T
        for u in weyl
    )
    assert np.linalg.norm(mixed - np.eye(4) / 4) <= 1e-12


def test_single_unitary_cannot_decorrelate():
    bell = bell_state()
    fam = randkit.RandomizingFamily((1.0,), (np.eye(2),))
    assert randkit.epsilon_randomizing_deviation(bell, fam) > 0.5


def test_product_input_zero_for_any_family():
    rng = np.random.default_rng(135)
    a = randkit.random_state((2,), rng)
    b = randkit.random_state((2,), rng)
    rho = State((2, 2), np.kron(a.rho, b.rho))
    fam, eps = randkit.sample_randomizing_family(rho, 3, rng, sampler="haar")
    assert len(fam) == 3
    assert eps <= 1e-12


def test_weyl_family_depolarizes_average():
    rng = np.random.default_rng(136)
    d = 3
    rho = randkit.random_state((d,), rng).rho
    weyl = states.unitary_error_basis(d)
    avg = sum(u @ rho @ u.conj().T for u in weyl) / (d * d)
    assert np.linalg.norm(avg - np.eye(d) / d) <= 1e-12


def test_weyl_sampler_full_group_randomizes_bell():
    rng = np.random.default_rng(137)
    fam, eps = randkit.sample_randomizing_family(
        bell_state(), 4, rng, sampler="weyl"
    )
    assert len(fam) == 4
    assert eps <= 1e-12


def test_two_haar_unitaries_insufficient():
    rng = np.random.default_rng(138)
    _, eps = randkit.sample_randomizing_family(bell_state(), 2, rng, "haar")
    assert eps > 0.2


def test_small_families_never_beat_epsilon():
    # Lower-bound consistency: with fewer than 4 = 2^{I(A:B)} unitaries no
    # sampled family reaches epsilon 0.01 on the Bell state.
    bell = bell_state()
    for sampler in ("haar", "weyl"):
        for n_u in (1, 2, 3):
            for seed in range(6):
                rng = np.random.default_rng(1000 + seed)
                _, eps = randkit.sample_randomizing_family(
                    bell, n_u, rng, sampler
                )
                assert eps > 0.01


def test_epsilon_decreases_with_family_size():
    rho = states.werner(2, 0.9)
    sizes = (1, 2, 4, 8, 16, 32)
    medians = []
    for n_u in sizes:
        vals = []
        for seed in range(21):
            rng = np.random.default_rng(2000 + seed)
            _, eps = randkit.sample_randomizing_family(rho, n_u, rng, "haar")
            vals.append(eps)
        medians.append(float(np.median(vals)))
    for small, big in zip(medians, medians[1:]):
        assert big <= small + 0.01
    assert medians[-1] < medians[0]
