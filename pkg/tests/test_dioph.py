import math

import pytest
import sympy
from hypothesis import given, strategies as st

from tcompile.bigring import DOmega, DRoot2, ZOmega, ZRoot2
from tcompile.dioph import (FactorStatus, NormStatus, factor, gcd_zomega, is_prime, solve_norm_equation,
                            sqrt_mod)

small = st.integers(-30, 30)
zomegas = st.builds(ZOmega, small, small, small, small)


@given(st.integers(2, 10 ** 12))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


@given(st.integers(2, 10 ** 15))
def test_factor_multiplies_back(n):
    out = factor(n)
    assert out.status is FactorStatus.COMPLETE
    assert math.prod(p ** e for p, e in out.factors.items()) == n
    assert all(sympy.isprime(p) for p in out.factors)


def test_factor_budget_can_abandon():
    n = 1000000007 * 998244353
    assert factor(n, budget=1).status is not FactorStatus.COMPLETE
    assert factor(n).complete


@given(st.sampled_from([p for p in sympy.primerange(3, 2000)]), st.integers(1, 10 ** 6))
def test_sqrt_mod(p, a):
    a %= p
    if a == 0 or sympy.legendre_symbol(a, p) != 1:
        return
    r = sqrt_mod(a, p)
    assert (r * r - a) % p == 0


@given(zomegas, zomegas)
def test_gcd_divides_both(a, b):
    g = gcd_zomega(a, b)
    if g:
        assert g.divides(a) and g.divides(b)


def _hermitian_square(t: DOmega) -> DRoot2:
    return (t.conj() * t).to_droot2()


@given(zomegas, st.integers(0, 6))
def test_norm_equation_solves_known_squares(z, k):
    xi = _hermitian_square(DOmega(z, k))
    res = solve_norm_equation(xi)
    assert res.status is NormStatus.SOLVED
    assert _hermitian_square(res.t) == xi


@given(st.builds(ZRoot2, small, small), st.integers(0, 4))
def test_norm_equation_never_returns_wrong_answer(z, k):
    xi = DRoot2(z, k)
    res = solve_norm_equation(xi)
    if res.status is NormStatus.SOLVED:
        assert _hermitian_square(res.t) == xi
    if xi.sign() < 0 or xi.conj2().sign() < 0:
        assert res.status is NormStatus.NO_SOLUTION


@pytest.mark.parametrize("value", [3, 5, 7, 11, 13, 23])
def test_small_rational_primes(value):
    # 3, 5 mod 8 are norms (|1 + sqrt-2|^2, |2 + i|^2); 7 mod 8 splits into primes inert in Z[omega]
    res = solve_norm_equation(value)
    if value % 8 in (3, 5):
        assert res.status is NormStatus.SOLVED
    else:
        assert res.status is NormStatus.NO_SOLUTION


def test_zero_and_negative():
    assert solve_norm_equation(0).status is NormStatus.SOLVED
    assert solve_norm_equation(-1).status is NormStatus.NO_SOLUTION
    assert solve_norm_equation(DRoot2(ZRoot2(1, -1))).status is NormStatus.NO_SOLUTION
