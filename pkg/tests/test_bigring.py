import mpmath
from hypothesis import given, strategies as st

from tcompile.bigring import LAMBDA, DOmega, DRoot2, ZOmega, ZRoot2, embed

small = st.integers(-50, 50)
zomegas = st.builds(ZOmega, small, small, small, small)
zroot2s = st.builds(ZRoot2, small, small)


def close(a, b, tol=1e-40):
    return abs(mpmath.mpc(a) - mpmath.mpc(b)) < tol


@given(zomegas, zomegas, zomegas)
def test_zomega_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + (-a) == ZOmega(0, 0, 0, 0)


@given(zomegas, zomegas)
def test_zomega_embedding_is_a_homomorphism(a, b):
    assert close((a * b).to_mpc(), a.to_mpc() * b.to_mpc())
    assert close((a + b).to_mpc(), a.to_mpc() + b.to_mpc())
    assert close(a.conj().to_mpc(), mpmath.conj(a.to_mpc()))


@given(zomegas, zomegas)
def test_norms_are_multiplicative(a, b):
    assert (a * b).norm() == a.norm() * b.norm()
    assert (a * b).norm_sqrt2() == a.norm_sqrt2() * b.norm_sqrt2()


@given(zomegas)
def test_omega_to_the_eighth_is_one(a):
    assert a.mul_omega(8) == a
    assert close(a.mul_omega().to_mpc(), a.to_mpc() * mpmath.expjpi(mpmath.mpf(1) / 4))


@given(zroot2s)
def test_zroot2_sign_matches_float(x):
    v = x.a + x.b * mpmath.sqrt(2)
    expected = 0 if v == 0 else (1 if v > 0 else -1)
    assert x.sign() == expected


@given(zroot2s, zroot2s)
def test_zroot2_conj_is_automorphism(x, y):
    assert (x * y).conj2() == x.conj2() * y.conj2()
    assert (x * y).norm() == x.norm() * y.norm()


@given(zomegas)
def test_sqrt2_division_roundtrips(a):
    assert a.mul_sqrt2().div_sqrt2() == a
    assert a.mul_sqrt2().divisible_by_sqrt2()


@given(zomegas, st.integers(0, 12))
def test_domega_keeps_minimal_exponent(z, k):
    d = DOmega(z, k)
    if d.k > 0:
        assert not d.z.divisible_by_sqrt2()
    assert close(d.to_mpc(), z.to_mpc() / mpmath.sqrt(2) ** k)


@given(st.integers(-6, 6))
def test_lambda_is_a_unit(n):
    u = LAMBDA ** n
    assert u * (LAMBDA ** (-n)) == ZRoot2(1, 0)
    assert abs(u.norm()) == 1


@given(zroot2s, st.integers(0, 8))
def test_droot2_value(z, k):
    d = DRoot2(z, k)
    assert close(d.to_mpf(), (z.a + z.b * mpmath.sqrt(2)) / mpmath.sqrt(2) ** k)
    assert close(embed(d), d.to_mpf())


@given(zomegas, st.sampled_from([ZOmega(0, 0, 1, 1), ZOmega(1, 0, 1, 0), ZOmega(0, 0, 0, 3)]))
def test_exact_division(a, b):
    assert (a * b).exact_div(b) == a
    assert b.divides(a * b)
