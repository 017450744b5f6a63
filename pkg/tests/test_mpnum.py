import json

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from tcompile.mpnum import (dagger, eig_unitary, is_unitary, kron, matrix_from_json, matrix_to_json, max_abs,
                            parse_angle, phase_align, random_unitary, svd, working_digits, wrap_angle)


def test_working_digits_grows_with_tolerance(monkeypatch):
    monkeypatch.delenv("TCOMPILE_PRECISION", raising=False)
    assert working_digits(1e-2) == 64
    assert working_digits("1e-100") == 282
    monkeypatch.setenv("TCOMPILE_PRECISION", "99")
    assert working_digits(1e-2) == 99


@pytest.mark.parametrize("text,coef", [("pi/4", 0.25), ("-3pi/4", -0.75), ("2*pi", 2), ("pi", 1)])
def test_parse_angle(text, coef):
    assert abs(parse_angle(text) - coef * mpmath.pi) < mpmath.mpf(10) ** -55


def test_parse_decimal_is_exact_at_working_precision():
    assert parse_angle("0.1") == mpmath.mpf("0.1")


@given(st.floats(-100, 100))
def test_wrap_angle_range(a):
    w = wrap_angle(mpmath.mpf(a))
    assert -mpmath.pi <= w < mpmath.pi
    k = (a - w) / (2 * mpmath.pi)
    assert abs(k - mpmath.nint(k)) < 1e-9


@pytest.mark.parametrize("n", [2, 4, 8])
def test_random_unitary_is_unitary(n, rng):
    assert is_unitary(random_unitary(n, rng))


def test_json_roundtrip(rng):
    u = random_unitary(4, rng)
    v = matrix_from_json(json.loads(json.dumps(matrix_to_json(u))))
    assert max_abs(u - v) < mpmath.mpf(10) ** -55


def test_json_nested_lists():
    m = matrix_from_json([["0.5+0.5j", [0, "0.25"]], [1, -2]])
    assert m[0, 0] == mpmath.mpc("0.5", "0.5") and m[0, 1] == mpmath.mpc(0, "0.25") and m[1, 1] == -2


def test_svd_reconstructs(rng):
    a = random_unitary(4, rng) * mpmath.diag([1, 2, 3, 4]) * random_unitary(4, rng)
    u, s, v = svd(a)
    recon = u * s * v
    assert max_abs(recon - a) < mpmath.mpf(10) ** -45


def test_eig_unitary(rng):
    u = random_unitary(4, rng)
    vals, vecs = eig_unitary(u)
    assert max_abs(vecs * mpmath.diag(vals) * dagger(vecs) - u) < mpmath.mpf(10) ** -45
    assert is_unitary(vecs)


def test_kron_and_phase_align(rng):
    a, b = random_unitary(2, rng), random_unitary(2, rng)
    k = kron(a, b)
    assert max_abs(k[2:4, 0:2] - a[1, 0] * b) < mpmath.mpf(10) ** -55
    shifted = k * mpmath.expj(mpmath.mpf("0.7"))
    assert max_abs(phase_align(k, shifted) - k) < mpmath.mpf(10) ** -50
