"""Mixed synthesis: a probabilistic mixture of Clifford+T circuits around a target.

Candidates are synthesized copies of U exp(i eps H_k) for well-spread traceless
Hermitian H_k; a linear program then picks mixing weights whose averaged Pauli
transfer matrix matches the target's in L1. First-order errors cancel in the
mixture, so the channel error drops to second order.
"""

from __future__ import annotations

import json
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .chanmetrics import choi_of_mixture, choi_of_unitary, dnorm_sdp, dnorm_unitary_pair, pauli_basis, ptm_of_unitary
from .circuit import Circuit
from .config import MixedConfig
from .mpnum import from_numpy, matrix_from_json, matrix_to_json, working_digits
from .simplex import linprog


# -- perturbations --------------------------------------------------------------


@dataclass
class PerturbationSet:
    hermitians: list[np.ndarray]
    points: np.ndarray  # (M, d^2 - 1), unit rows
    seed: int
    n: int
    min_distance_before: float = 0.0
    min_distance_after: float = 0.0

    @property
    def count(self) -> int:
        return len(self.hermitians)


def _min_pair_distance(x: np.ndarray) -> float:
    if len(x) < 2:
        return float("inf")
    diff = x[:, None, :] - x[None, :, :]
    dist = np.linalg.norm(diff, axis=-1)
    return float(dist[np.triu_indices(len(x), 1)].min())


def relax_points(x: np.ndarray, iterations: int, step: float, delta: float) -> np.ndarray:
    """Repulsion F_i = sum_j (x_i - x_j) / (|x_i - x_j|^2 + delta), moved along the sphere."""
    x = x.copy()
    for _ in range(iterations):
        diff = x[:, None, :] - x[None, :, :]
        w = 1.0 / (np.sum(diff ** 2, axis=-1) + delta)
        np.fill_diagonal(w, 0.0)
        force = np.einsum("ij,ijk->ik", w, diff)
        force -= np.sum(force * x, axis=1, keepdims=True) * x
        x += step * force
        x /= np.linalg.norm(x, axis=1, keepdims=True)
    return x


def generate_hermitians(n: int, m: int, seed: int = 0, config: MixedConfig | None = None) -> PerturbationSet:
    """M traceless Hermitians sum_a x_a P_a with x on the unit sphere S^(d^2 - 2)."""
    if m < 1:
        raise ValueError("need at least one candidate")
    cfg = config or MixedConfig()
    rng = np.random.default_rng(seed)
    dim = 4 ** n - 1
    x = rng.standard_normal((m, dim))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    before = _min_pair_distance(x)
    x = relax_points(x, cfg.repulsion_iterations, cfg.repulsion_step, cfg.repulsion_delta)
    paulis = pauli_basis(n)[1:]
    hs = [np.tensordot(row, paulis, axes=1) for row in x]
    return PerturbationSet(hs, x, seed, n, before, _min_pair_distance(x))


def _expm_hermitian(h: np.ndarray, t) -> mpmath.matrix:
    """exp(i t H) at working precision."""
    return mpmath.expm(1j * mpmath.mpf(t) * from_numpy(h))


# -- LP -------------------------------------------------------------------------


@dataclass
class MixingSolution:
    p: np.ndarray
    residual: float  # L1 PTM mismatch of the normalized p
    r: np.ndarray
    s: float
    status: str


def solve_mixing_lp(a: np.ndarray, b: np.ndarray, eps: float, s: float | None = None, tol: float = 1e-9) -> MixingSolution:
    """The scaled L1 program over PTM rows ``a`` (M x K) and target ``b`` (K,).

    min sum r  s.t.  eps * sum p = 1,  +-(a^T p - b / eps) <= r / s,  p, r >= 0;
    the returned p is renormalized to sum to 1.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.asarray(b, dtype=float).reshape(-1)
    m, k = a.shape
    eps = float(eps)
    s = 1e-2 / eps if s is None else float(s)
    if m == 1:
        p = np.ones(1)
        return MixingSolution(p, float(np.abs(a[0] - b).sum()), np.abs(a[0] - b) * s / eps, s, "optimal")
    at = a.T
    inv = np.eye(k) / s
    # variables: p (m), r (k)
    a_ub = np.block([[at, -inv], [-at, -inv]])
    b_ub = np.concatenate([b / eps, -b / eps])
    a_eq = np.concatenate([np.full(m, eps), np.zeros(k)])[None, :]
    c = np.concatenate([np.zeros(m), np.ones(k)])
    res = linprog(c, a_ub, b_ub, a_eq, [1.0], tol=tol)
    if res.status != "optimal":
        raise ArithmeticError(f"mixing LP failed: {res.status}")
    p = np.clip(res.x[:m], 0.0, None)
    p /= p.sum()
    return MixingSolution(p, float(np.abs(at @ p - b).sum()), res.x[m:], s, res.status)


# -- workflow -------------------------------------------------------------------


@dataclass
class MixedResult:
    circuits: list[Circuit]
    probabilities: np.ndarray
    pre_errors: list[float]
    post_error: float | None
    ptm_residual: float
    lemma_bound: float  # half the squared worst candidate error, plus LP tolerance
    lp: MixingSolution = field(repr=False)
    unitaries: list = field(repr=False, default_factory=list)

    @property
    def pre_error(self) -> float:
        """Typical (median) candidate error."""
        return float(np.median(self.pre_errors))

    @property
    def lemma_satisfied(self) -> bool | None:
        return None if self.post_error is None else self.post_error <= self.lemma_bound

    @property
    def expected_tcount(self) -> float:
        return float(sum(p * c.tcount() for p, c in zip(self.probabilities, self.circuits)))

    def to_json(self) -> dict:
        return {
            "circuits": [c.to_json() for c in self.circuits],
            "probabilities": [float(x) for x in self.probabilities],
            "pre_errors": self.pre_errors,
            "pre_error": self.pre_error,
            "post_error": self.post_error,
            "ptm_residual": self.ptm_residual,
            "lemma_bound": self.lemma_bound,
            "lemma_satisfied": self.lemma_satisfied,
            "expected_t_count": self.expected_tcount,
            "total_t_count": sum(c.tcount() for c in self.circuits),
        }


def _synthesize_task(args) -> str:
    """Worker body: JSON in, JSON out, so results do not depend on the pool."""
    from .pipeline import approximate_unitary

    mat_json, n, tol, dps = args
    with mpmath.workdps(dps):
        u = matrix_from_json(json.loads(mat_json))
        r = approximate_unitary(u, mpmath.mpf(tol), n=n)
        return r.circuit.dumps()


def mixed_synthesis(u: mpmath.matrix, n: int, eps, m: int | None = None, seed: int = 0, workers: int = 1,
                    sdp: bool | None = None, config: MixedConfig | None = None) -> MixedResult:
    cfg = config or MixedConfig()
    eps = mpmath.mpf(eps)
    m = 2 * 4 ** n if m is None else m
    dps = max(mpmath.mp.dps, working_digits(eps * cfg.candidate_fraction))
    with mpmath.workdps(dps):
        u = mpmath.matrix(u)
        pert = generate_hermitians(n, m, seed, cfg)
        targets = [u * _expm_hermitian(h, eps) for h in pert.hermitians]
        tol = eps * mpmath.mpf(cfg.candidate_fraction)
        tasks = [(json.dumps(matrix_to_json(t)), n, mpmath.nstr(tol, 20), dps) for t in targets]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outs = list(pool.map(_synthesize_task, tasks))
        else:
            outs = [_synthesize_task(t) for t in tasks]
        circuits = [Circuit.from_json(json.loads(o)) for o in outs]
        unitaries = [c.unitary() for c in circuits]
        pre = [float(dnorm_unitary_pair(v, u)) for v in unitaries]

    un = [np.array([[complex(v[i, j]) for j in range(v.cols)] for i in range(v.rows)]) for v in unitaries]
    target = np.array([[complex(u[i, j]) for j in range(u.cols)] for i in range(u.rows)])
    a = np.array([ptm_of_unitary(v).reshape(-1) for v in un])
    b = ptm_of_unitary(target).reshape(-1)
    sol = solve_mixing_lp(a, b, float(eps), cfg.lp_scale, cfg.lp_tol)
    use_sdp = n <= cfg.sdp_max_qubits if sdp is None else sdp
    post = None
    if use_sdp:
        if n > cfg.sdp_max_qubits:
            warnings.warn(f"diamond-norm SDP at n = {n} is slow", RuntimeWarning, stacklevel=2)
        jd = choi_of_unitary(target) - choi_of_mixture(un, sol.p)
        post = float(dnorm_sdp(jd).value)
    bound = 0.5 * max(pre) ** 2 + cfg.lp_tol
    return MixedResult(circuits, sol.p, pre, post, sol.residual, bound, sol, unitaries)
