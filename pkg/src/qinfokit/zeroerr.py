"""Operator systems, confusability graphs, independence numbers, and the
quantum Lovasz theta machinery.

The entanglement-assisted theta of an operator system S in M_n is computed
from the pair of SDPs

    primal:  max <Phi| I (x) rho + M' |Phi>,  I (x) rho + M' >= 0,
             M' in S_perp (x) M_dc,  rho a density matrix on C^dc
    dual:    min lambda,  Y in S (x) M_dc,  Y >= |Phi><Phi|,
             lambda I >= Tr_A[Y]

with the unnormalized |Phi> = sum_i |ii> and dc = n by default. Both are
solved; the dual objective (an upper certificate) is reported as the
value.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import matkit, sdpcore
from .channels import Channel, is_tp
from .errors import (
    DimensionError,
    Infeasible,
    NotFeasibleWitness,
    NotStochastic,
    NotTracePreserving,
    NumericalBreakdown,
    SolverFailure,
    TooLarge,
)
from .matkit import dagger

INDEPENDENCE_VERTEX_CAP = 30


@dataclass(frozen=True)
class OperatorSystem:
    """Self-adjoint unital matrix subspace with an HS-orthonormal basis."""

    dim: int
    basis: tuple = field(repr=False)

    def __post_init__(self):
        ops = tuple(matkit.asmatrix(bmat) for bmat in self.basis)
        n = self.dim
        for bmat in ops:
            if bmat.shape != (n, n):
                raise DimensionError(f"basis element {bmat.shape} != ({n},{n})")
        stack = np.stack([bmat.reshape(-1) for bmat in ops], axis=1)
        gram = dagger(stack) @ stack
        if np.linalg.norm(gram - np.eye(len(ops))) > 1e-10:
            raise DimensionError("basis is not HS-orthonormal")
        # Unital: the identity must lie in the span.
        eye = np.eye(n, dtype=complex).reshape(-1)
        resid = eye - stack @ (dagger(stack) @ eye)
        if np.linalg.norm(resid) > 1e-10 * math.sqrt(n):
            raise DimensionError("operator system must contain the identity")
        # Self-adjoint: the adjoint of each basis element stays in the span.
        for bmat in ops:
            v = dagger(bmat).reshape(-1)
            if np.linalg.norm(v - stack @ (dagger(stack) @ v)) > 1e-10:
                raise DimensionError("operator system must be self-adjoint")
        object.__setattr__(self, "basis", ops)

    def __len__(self) -> int:
        return len(self.basis)

    def contains(self, x, tol: float = 1e-9) -> bool:
        v = matkit.asmatrix(x).reshape(-1)
        stack = np.stack([bmat.reshape(-1) for bmat in self.basis], axis=1)
        return bool(np.linalg.norm(v - stack @ (dagger(stack) @ v)) <= tol)

    def perp_basis(self) -> list[np.ndarray]:
        """HS-orthonormal basis of the orthogonal complement in M_n."""
        n = self.dim
        stack = np.stack([bmat.reshape(-1) for bmat in self.basis], axis=1)
        q, _ = np.linalg.qr(stack, mode="complete")
        return [q[:, k].reshape(n, n) for k in range(len(self.basis), n * n)]


def operator_system(dim: int, spanning) -> OperatorSystem:
    """Orthonormalize a spanning list into an OperatorSystem."""
    mats = [matkit.asmatrix(s) for s in spanning]
    stack = np.stack([s.reshape(-1) for s in mats], axis=1)
    basis = matkit.orthonormal_basis(stack)
    return OperatorSystem(dim, tuple(
        basis[:, k].reshape(dim, dim) for k in range(basis.shape[1])
    ))


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: vertex count plus a loop-free edge set."""

    vertices: int
    edges: frozenset

    def __post_init__(self):
        n = self.vertices
        norm_edges = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise DimensionError("graphs are loop-free")
            if not (0 <= u < n and 0 <= v < n):
                raise DimensionError(f"edge ({u},{v}) outside {n} vertices")
            norm_edges.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm_edges))

    def neighbors(self, u: int) -> set:
        return {
            b if a == u else a
            for a, b in self.edges
            if u in (a, b)
        }


def cycle_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(
        (i, j) for i in range(n) for j in range(i + 1, n)
    ))


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def op_system_from_channel(ch: Channel) -> OperatorSystem:
    """span{E_i^dag E_j} of a trace-preserving channel (contains I)."""
    if not is_tp(ch):
        raise NotTracePreserving("operator system needs a TP channel")
    spanning = [
        dagger(ei) @ ej for ei in ch.kraus for ej in ch.kraus
    ]
    return operator_system(ch.din, spanning)


def graph_op_system(g: Graph) -> OperatorSystem:
    """span{E_ij on edges} + {E_ii}; dimension = vertices + 2 |edges|."""
    n = g.vertices
    spanning = []
    for i in range(n):
        e = np.zeros((n, n))
        e[i, i] = 1.0
        spanning.append(e)
    for u, v in sorted(g.edges):
        e = np.zeros((n, n))
        e[u, v] = 1.0
        spanning.append(e)
        spanning.append(e.T.copy())
    return operator_system(n, spanning)


def confusability_graph(kernel) -> Graph:
    """Edges between inputs that can produce a common output.

    The kernel is column stochastic (columns indexed by the input); zeros
    are taken literally, with no tolerance.
    """
    kern = np.asarray(kernel, dtype=float)
    if kern.ndim != 2 or kern.min() < 0:
        raise NotStochastic("kernel must be a nonnegative matrix")
    if np.max(np.abs(kern.sum(axis=0) - 1.0)) > 1e-9:
        raise NotStochastic("kernel columns must sum to 1")
    nx = kern.shape[1]
    edges = set()
    for x in range(nx):
        for xp in range(x + 1, nx):
            if np.any((kern[:, x] > 0.0) & (kern[:, xp] > 0.0)):
                edges.add((x, xp))
    return Graph(nx, frozenset(edges))


def graph_independence(g: Graph) -> int:
    """Exact independence number by branch and bound.

    Vertices are explored max-degree-first; a greedy remaining-count bound
    prunes. Guarded at 30 vertices.
    """
    if g.vertices > INDEPENDENCE_VERTEX_CAP:
        raise TooLarge(f"exact search capped at {INDEPENDENCE_VERTEX_CAP} vertices")
    adj = {u: g.neighbors(u) for u in range(g.vertices)}
    order = sorted(range(g.vertices), key=lambda u: -len(adj[u]))
    best = 0

    def expand(candidates, size):
        nonlocal best
        if size + len(candidates) <= best:
            return
        if not candidates:
            best = max(best, size)
            return
        u = next(v for v in order if v in candidates)
        # Branch 1: take u.
        expand(candidates - adj[u] - {u}, size + 1)
        # Branch 2: skip u.
        expand(candidates - {u}, size)

    expand(set(range(g.vertices)), 0)
    return best


def verify_independent_states(s: OperatorSystem, psis) -> bool:
    """True iff |psi_m'><psi_m| is HS-orthogonal to S for every m != m'."""
    vecs = [np.asarray(p.vec if hasattr(p, "vec") else p, dtype=complex)
            for p in psis]
    for v in vecs:
        if v.shape != (s.dim,):
            raise DimensionError("states must live on the system's space")
    for a, b in itertools.permutations(range(len(vecs)), 2):
        op = np.outer(vecs[b], np.conj(vecs[a]))
        for bmat in s.basis:
            if abs(matkit.hs_inner(op, bmat)) > 1e-9:
                return False
    return True


@dataclass(frozen=True)
class ThetaResult:
    """Primal/dual objective pair for the theta SDP; value = dual."""

    primal: float
    dual: float
    gap: float

    @property
    def value(self) -> float:
        return self.dual


def _hermitian_basis(complex_basis) -> list[np.ndarray]:
    """Hermitian orthonormal basis of a self-adjoint span."""
    if not complex_basis:
        return []
    n = complex_basis[0].shape[0]
    candidates = []
    for bmat in complex_basis:
        candidates.append((bmat + dagger(bmat)) / 2.0)
        candidates.append(1j * (bmat - dagger(bmat)) / 2.0)
    stack = np.stack([c.reshape(-1) for c in candidates], axis=1)
    # Orthonormalize over the reals (real/imaginary parts as separate
    # coordinates) so every output stays Hermitian; for Hermitian A, B the
    # HS inner product equals the dot product of these embeddings.
    real_stack = np.vstack([np.real(stack), np.imag(stack)])
    u, sv, _ = np.linalg.svd(real_stack, full_matrices=False)
    rank = int(np.sum(sv > 1e-9 * (sv[0] if sv.size else 1.0)))
    out = []
    for k in range(rank):
        col = u[:, k]
        mat = (col[: n * n] + 1j * col[n * n:]).reshape(n, n)
        out.append((mat + dagger(mat)) / 2.0)
    return out


def _phi_projector(n: int, dc: int) -> np.ndarray:
    phi = np.zeros(n * dc, dtype=complex)
    for i in range(min(n, dc)):
        phi[i * dc + i] = 1.0
    return np.outer(phi, np.conj(phi))


def theta_tilde_problems(s: OperatorSystem, dc: int | None = None):
    """(primal SDPProblem, dual SDPProblem) for the theta of S."""
    n = s.dim
    dc = n if dc is None else int(dc)
    herm_dc = _hermitian_basis(_full_basis(dc))
    phi_proj = _phi_projector(n, dc)

    # Primal: variable W = I (x) rho + M'; the feasible span is
    # (C I (+) S_perp) (x) M_dc, encoded as orthogonality to the
    # traceless part of S tensored with M_dc, plus Tr W = n.
    s_herm = _hermitian_basis(list(s.basis))
    eye_n = np.eye(n, dtype=complex) / math.sqrt(n)
    traceless = []
    for h in s_herm:
        h = h - matkit.hs_inner(eye_n, h) * eye_n
        nrm = np.linalg.norm(h)
        if nrm > 1e-9:
            traceless.append(h / nrm)
    traceless = _hermitian_basis(traceless)
    cons = [((np.eye(n * dc, dtype=complex),), float(n))]
    for t in traceless:
        for h in herm_dc:
            cons.append(((np.kron(t, h),), 0.0))
    primal = sdpcore.SDPProblem((n * dc,), (phi_proj,), tuple(cons))

    # Dual: min lambda with Y = X1 + PhiPhi in S (x) M_dc,
    # X2 = lambda I - Tr_A[Y] >= 0, lambda carried as a 1x1 block.
    perp_herm = _hermitian_basis(s.perp_basis())
    tr_a_phi = matkit.partial_trace(phi_proj, (n, dc), {1})
    cons_d = []
    for t in perp_herm:
        for h in herm_dc:
            op = np.kron(t, h)
            rhs = -float(np.real(matkit.hs_inner(op, phi_proj)))
            cons_d.append((
                (op, np.zeros((dc, dc)), np.zeros((1, 1))),
                rhs,
            ))
    for h in herm_dc:
        cons_d.append((
            (
                np.kron(np.eye(n, dtype=complex), h),
                h,
                -np.real(np.trace(h)) * np.ones((1, 1)),
            ),
            -float(np.real(matkit.hs_inner(h, tr_a_phi))),
        ))
    zero_big = np.zeros((n * dc, n * dc))
    zero_dc = np.zeros((dc, dc))
    dual = sdpcore.SDPProblem(
        (n * dc, dc, 1),
        (zero_big, zero_dc, -np.ones((1, 1))),
        tuple(cons_d),
    )
    return primal, dual


def _full_basis(n: int) -> list[np.ndarray]:
    out = []
    for i in range(n):
        for j in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = 1.0
            out.append(e)
    return out


def _solve_ladder(problem, tol: float):
    """Solve at the requested tolerance, backing off when the Schur system
    degenerates first (common at the very degenerate theta optima); every
    accepted solution is verified optimal at its own tolerance."""
    last_exc = None
    t = tol
    while t <= 1e-6 + 1e-18:
        try:
            sol = sdpcore.solve(problem, tol=t)
        except (NumericalBreakdown, Infeasible) as exc:
            last_exc = exc
            t *= 10.0
            continue
        if sol.status == "optimal":
            return sol
        last_exc = SolverFailure(
            f"status {sol.status} at tol {t:g} "
            f"(last iterate {sol.history[-1] if sol.history else None})",
            solution=sol,
        )
        t *= 10.0
    raise SolverFailure(f"theta solve failed: {last_exc}", solution=None)


def theta_tilde(s: OperatorSystem, dc: int | None = None,
                tol: float = 1e-8) -> ThetaResult:
    """Entanglement-assisted Lovasz number of the operator system.

    Solves the primal and dual SDPs separately; the reported value is the
    dual optimum (an upper certificate even at loose tolerance), with the
    primal kept for gap diagnostics.
    """
    primal_prob, dual_prob = theta_tilde_problems(s, dc)
    sol_p = _solve_ladder(primal_prob, tol)
    sol_d = _solve_ladder(dual_prob, tol)
    # The max program's objective bounds theta from below; the min
    # program (solved as max of -lambda) bounds it from above.
    value_lower = sol_p.primal
    value_upper = -sol_d.primal
    gap = value_upper - value_lower
    if not abs(gap) <= 1e-6 * (1.0 + abs(value_upper)):
        raise SolverFailure(
            f"theta gap {gap:.3e} too large "
            f"(lower {value_lower:.9f}, upper {value_upper:.9f})",
            solution=(sol_p, sol_d),
        )
    return ThetaResult(primal=value_lower, dual=value_upper, gap=gap)


def theta_lower_from_witness(s: OperatorSystem, m) -> float:
    """||I + M|| for a feasible witness M: M orthogonal to S and I + M >= 0.

    Any feasible witness certifies theta(S) >= ||I + M||.
    """
    mm = matkit.asmatrix(m)
    n = s.dim
    if mm.shape != (n, n):
        raise DimensionError(f"witness {mm.shape} != ({n},{n})")
    for bmat in s.basis:
        if abs(matkit.hs_inner(bmat, mm)) > 1e-8:
            raise NotFeasibleWitness("witness is not orthogonal to S")
    vals = np.linalg.eigvalsh((mm + dagger(mm)) / 2.0 + np.eye(n))
    if vals.min() < -1e-9:
        raise NotFeasibleWitness("I + M is not PSD")
    return matkit.norm(np.eye(n) + mm, "operator")
