import json

import mpmath
import numpy as np
import pytest

from tcompile.chanmetrics import choi_of_mixture, choi_of_unitary, dnorm_sdp, pauli_basis, ptm_of_unitary
from tcompile.config import MixedConfig
from tcompile.mixed import generate_hermitians, mixed_synthesis, relax_points, solve_mixing_lp
from tcompile.mpnum import random_unitary


def test_hermitians_are_traceless_and_normalized():
    ps = generate_hermitians(1, 8, seed=3)
    assert ps.count == 8
    for h in ps.hermitians:
        assert np.allclose(h, h.conj().T)
        assert abs(np.trace(h)) < 1e-12
        # coefficients on the Pauli basis lie on the unit sphere
        coeffs = np.array([np.trace(p @ h).real / 2 for p in pauli_basis(1)[1:]])
        assert np.isclose(np.linalg.norm(coeffs), 1)


def test_repulsion_spreads_points():
    rng = np.random.default_rng(0)
    x = rng.standard_normal((20, 3))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    before = np.min([np.linalg.norm(a - b) for i, a in enumerate(x) for b in x[i + 1:]])
    y = relax_points(x, 200, 0.01, 1e-6)
    after = np.min([np.linalg.norm(a - b) for i, a in enumerate(y) for b in y[i + 1:]])
    assert after > before
    assert np.allclose(np.linalg.norm(y, axis=1), 1)


def test_generation_is_deterministic():
    a = generate_hermitians(2, 5, seed=11)
    b = generate_hermitians(2, 5, seed=11)
    assert all(np.array_equal(x, y) for x, y in zip(a.hermitians, b.hermitians))


def test_lp_recovers_an_exact_mixture(rng):
    # the target PTM is a known convex combination of the candidate rows
    a = rng.normal(size=(5, 16))
    p_true = np.array([0.1, 0.4, 0.0, 0.5, 0.0])
    sol = solve_mixing_lp(a, p_true @ a, eps=1e-2)
    assert sol.residual < 1e-8
    assert np.isclose(sol.p.sum(), 1) and (sol.p >= 0).all()


def test_lp_single_candidate():
    sol = solve_mixing_lp(np.ones((1, 4)), np.zeros(4), eps=0.1)
    assert list(sol.p) == [1.0]


def test_mixing_beats_every_candidate():
    u = random_unitary(2, np.random.default_rng(5))
    r = mixed_synthesis(u, 1, "1e-2", m=8, seed=1)
    assert np.isclose(r.probabilities.sum(), 1)
    assert r.post_error < min(r.pre_errors)
    target = np.array(u.tolist(), dtype=complex)
    un = [np.array(v.tolist(), dtype=complex) for v in r.unitaries]
    check = dnorm_sdp(choi_of_unitary(target) - choi_of_mixture(un, r.probabilities)).value
    assert abs(check - r.post_error) < 1e-9
    out = json.loads(json.dumps(r.to_json()))
    assert out["total_t_count"] == sum(c.tcount() for c in r.circuits)


def test_mixed_is_reproducible():
    u = random_unitary(2, np.random.default_rng(9))
    a = mixed_synthesis(u, 1, "3e-2", m=4, seed=2)
    b = mixed_synthesis(u, 1, "3e-2", m=4, seed=2)
    assert [c.dumps() for c in a.circuits] == [c.dumps() for c in b.circuits]
    assert np.array_equal(a.probabilities, b.probabilities)


def test_sdp_skipped_for_larger_n_by_config():
    u = random_unitary(2, np.random.default_rng(1))
    r = mixed_synthesis(u, 1, "3e-2", m=2, config=MixedConfig(sdp_max_qubits=0))
    assert r.post_error is None and r.lemma_satisfied is None
