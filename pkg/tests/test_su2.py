import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tcompile import instrument
from tcompile.chanmetrics import dnorm_unitary_pair
from tcompile.mpnum import max_abs, random_unitary
from tcompile.ringmat import GATES
from tcompile.su2 import (ExactBackend, approximate_one_qubit_unitary, euler_decompose, magnitude_approximate,
                          rx_matrix)
from tcompile.zrot import rz_matrix

seeds = st.integers(0, 2 ** 32 - 1)


@given(seeds)
def test_euler_reconstructs(seed):
    u = random_unitary(2, np.random.default_rng(seed))
    e = euler_decompose(u)
    assert max_abs(e.matrix() - u) < mpmath.mpf(10) ** -50
    assert 0 <= e.theta <= mpmath.pi
    for a in (e.phi1, e.phi2, e.phase):
        assert -mpmath.pi <= a < mpmath.pi


@pytest.mark.parametrize("name", ["H", "S", "T", "X"])
def test_euler_of_gates(name):
    u = GATES[name].to_mpmath()
    assert max_abs(euler_decompose(u).matrix() - u) < mpmath.mpf(10) ** -50


def test_euler_identity_convention():
    e = euler_decompose(mpmath.eye(2))
    assert e.theta == 0 and e.phi2 == 0 and abs(e.phase) < mpmath.mpf(10) ** -50


def test_euler_diagonal_and_antidiagonal():
    d = rz_matrix("0.8")
    e = euler_decompose(d)
    assert e.theta == 0 and max_abs(e.matrix() - d) < mpmath.mpf(10) ** -50
    x = rx_matrix(mpmath.pi) * rz_matrix("0.3")
    assert max_abs(euler_decompose(x).matrix() - x) < mpmath.mpf(10) ** -50


@settings(max_examples=20)
@given(st.floats(0, 3.14159), st.sampled_from(["1e-2", "1e-5"]))
def test_magnitude_approximation(theta, eps):
    r = magnitude_approximate(theta, eps)
    vm = r.unitary.to_mpmath()
    target = rz_matrix(r.res1) * rx_matrix(theta) * rz_matrix(r.res2)
    assert dnorm_unitary_pair(vm, target) <= mpmath.mpf(eps)
    assert abs(r.theta - theta) <= 2 * mpmath.asin(mpmath.mpf(eps) / 2) + mpmath.mpf(10) ** -40


@pytest.mark.parametrize("theta", [0, mpmath.pi, mpmath.pi / 2])
def test_magnitude_endpoints(theta):
    r = magnitude_approximate(theta, "1e-6")
    assert r.tcount == 0  # diagonal, anti-diagonal and H-like magnitudes are Clifford


def test_magnitude_rejects_out_of_range():
    with pytest.raises(ValueError):
        magnitude_approximate(-0.1, "1e-2")


@settings(max_examples=10)
@given(seeds, st.sampled_from(["1e-2", "1e-4", "1e-6"]))
def test_one_qubit_synthesis(seed, eps):
    u = random_unitary(2, np.random.default_rng(seed))
    with instrument.counting() as st_:
        r = approximate_one_qubit_unitary(u, eps)
    assert r.error <= mpmath.mpf(eps)
    assert dnorm_unitary_pair(r.circuit.unitary(), u) <= mpmath.mpf(eps)
    assert (st_.magnitude, st_.gridsynth) == (1, 2)
    assert r.circuit.is_clifford_t()


def test_exact_backend_is_exact(rng):
    u = random_unitary(2, rng)
    r = approximate_one_qubit_unitary(u, "1e-3", backend=ExactBackend())
    assert dnorm_unitary_pair(r.circuit.unitary(), u) < mpmath.mpf(10) ** -45


@pytest.mark.parametrize("name,tmax", [("T", 1), ("H", 0), ("S", 0), ("X", 0)])
def test_cheap_targets(name, tmax):
    r = approximate_one_qubit_unitary(GATES[name].to_mpmath(), "1e-8")
    assert r.circuit.tcount() <= tmax
