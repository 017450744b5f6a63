import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tcompile import instrument
from tcompile.chanmetrics import dnorm_unitary_pair
from tcompile.mpnum import dagger, diag, eye, max_abs, phase_align, random_unitary
from tcompile.multiqubit import (approximate_multi_qubit, block_zxz, call_counts, decompose_multiplexed_rz,
                                 demultiplex, gray, plan, plan_matrix, walsh_gray_matrix)
from tcompile.su2 import ExactBackend

seeds = st.integers(0, 2 ** 32 - 1)
TIGHT = mpmath.mpf(10) ** -45


@settings(max_examples=10)
@given(seeds, st.sampled_from([4, 8]))
def test_block_zxz_reconstructs(seed, d):
    u = random_unitary(d, np.random.default_rng(seed))
    z = block_zxz(u)
    assert max_abs(z.matrix() - u) < TIGHT
    for m in (z.a1, z.a2, z.b, z.c):
        assert max_abs(m * dagger(m) - eye(m.rows)) < TIGHT


def test_block_zxz_of_identity():
    z = block_zxz(eye(8))
    assert max_abs(z.matrix() - eye(8)) < TIGHT


@settings(max_examples=10)
@given(seeds)
def test_demultiplex(seed):
    rng = np.random.default_rng(seed)
    m1, m2 = random_unitary(4, rng), random_unitary(4, rng)
    dm = demultiplex(m1, m2)
    s = diag(dm.sqrt_d())
    assert max_abs(dm.v * s * dm.w - m1) < TIGHT
    assert max_abs(dm.v * dagger(s) * dm.w - m2) < TIGHT
    for a, r in zip(dm.alphas(), dm.sqrt_d()):
        assert abs(mpmath.expj(-a / 2) - r) < TIGHT


def test_demultiplex_z_and_identity():
    z = diag([1, -1])
    dm = demultiplex(eye(2), z)
    s = diag(dm.sqrt_d())
    assert max_abs(dm.v * s * dm.w - eye(2)) < TIGHT
    assert max_abs(dm.v * dagger(s) * dm.w - z) < TIGHT


def test_gray_code_adjacent_entries_differ_by_one_bit():
    for j in range(15):
        assert bin(gray(j) ^ gray(j + 1)).count("1") == 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_walsh_gray_is_orthogonal(k):
    m = np.array(walsh_gray_matrix(k))
    assert (m @ m.T == (1 << k) * np.eye(1 << k)).all()


def test_sign_row_for_three_controls():
    assert walsh_gray_matrix(3)[3] == [1, -1, 1, -1, -1, 1, -1, 1]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_multiplexed_rz_ladder(k, rng):
    alphas = [mpmath.mpf(x) for x in rng.uniform(-np.pi, np.pi, 1 << k)]
    thetas, circ = decompose_multiplexed_rz(alphas, k)
    # target is wire 0 (most significant): the diagonal is [e^{-i a/2}..., e^{+i a/2}...]
    vals = [mpmath.expj(-a / 2) for a in alphas]
    target = diag(vals + [mpmath.conj(v) for v in vals])
    assert max_abs(circ.unitary() - target) < TIGHT
    assert circ.counts() == {"RZ": 1 << k, "CX": 1 << k}


@pytest.mark.parametrize("n", [3, 4])
def test_plan_reconstructs(n, rng):
    u = random_unitary(1 << n, rng)
    m = plan_matrix(plan(u, list(range(n))), n)
    assert max_abs(phase_align(u, m) - u) < mpmath.mpf(10) ** -40


def test_call_count_formulas():
    assert call_counts(3) == (24, 39)
    assert call_counts(4) == (96, 171)
    assert call_counts(3, absorb=False) == (24, 48)


@pytest.mark.parametrize("absorb", [True, False])
def test_exact_backend_counts_and_error(absorb, rng):
    u = random_unitary(8, rng)
    with instrument.counting() as st_:
        r = approximate_multi_qubit(u, 3, "1e-3", absorb=absorb, backend=ExactBackend())
    assert (st_.magnitude, st_.gridsynth) == call_counts(3, absorb)
    assert r.error < TIGHT


def test_identity_costs_no_t():
    r = approximate_multi_qubit(eye(8), 3, "1e-2")
    assert r.circuit.tcount() == 0
    assert dnorm_unitary_pair(r.circuit.unitary(), eye(8)) < mpmath.mpf(10) ** -40
