import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from tcompile.gridprob import DiskRegion, EpsilonRegion, TwoDimGridSolver, solve_odgp

from oracles import odgp_brute_force

endpoint = st.floats(-8, 8, allow_nan=False)


@given(endpoint, endpoint, endpoint, endpoint)
def test_odgp_matches_brute_force(a, b, c, d):
    a_int = (min(a, b), max(a, b))
    b_int = (min(c, d), max(c, d))
    got = solve_odgp(a_int, b_int)
    assert got == odgp_brute_force(a_int, b_int)


def test_odgp_empty_and_degenerate():
    assert solve_odgp((1, 0), (0, 1)) == []
    assert [z.a for z in solve_odgp((0, 0), (0, 0))] == [0]


@pytest.mark.parametrize("a_int,b_int", [((0.0, 1.0), (0.0, 9.380137173098201e-271)),
                                          ((0.0, 1.0), (0.9375, 1.0))])
def test_odgp_extreme_rescaling(a_int, b_int):
    # width ratio 1e270 needs ~350 digits to rescale; the second has solutions on both boundaries
    assert solve_odgp(a_int, b_int) == odgp_brute_force(a_int, b_int)


def test_odgp_skewed_intervals():
    # one interval much wider than the other forces the lambda rescaling path
    a_int, b_int = (mpmath.mpf("0.001"), mpmath.mpf("0.002")), (mpmath.mpf(-500), mpmath.mpf(500))
    assert solve_odgp(a_int, b_int) == odgp_brute_force(a_int, b_int)


@pytest.mark.parametrize("theta,eps", [("0.3", "1e-3"), ("-2.5", "1e-5"), ("1.0", "1e-8")])
def test_tdgp_candidates_are_members(theta, eps):
    region = EpsilonRegion(mpmath.mpf(theta), mpmath.mpf(eps))
    solver = TwoDimGridSolver(region, DiskRegion())
    seen = 0
    for cand in solver.stream(k_max=60):
        u = cand.u
        with mpmath.workdps(2 * mpmath.mp.dps):
            z, zb = u.to_mpc(), u.conj2().to_mpc()
            assert region.margin(z.real, z.imag) >= 0
            assert abs(zb) <= 1
        seen += 1
        if seen >= 10:
            break
    assert seen > 0


def test_tdgp_lowest_k_is_complete():
    # at a coarse tolerance, compare the first nonempty k against a direct scan
    region = EpsilonRegion(mpmath.mpf("0.7"), mpmath.mpf("0.3"))
    solver = TwoDimGridSolver(region, DiskRegion())
    k = next(c.k for c in solver.stream())
    got = {u.z.coeffs() for u in solver.candidates_at(k)}
    from tcompile.bigring import DOmega, ZOmega

    s = mpmath.sqrt(2) ** k
    bound = int(mpmath.sqrt(2) * s) + 1  # every coefficient is at most sqrt2 * sqrt2^k
    brute = set()
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            for c in range(-bound, bound + 1):
                for d in range(-bound, bound + 1):
                    z = ZOmega(a, b, c, d)
                    if k > 0 and z.divisible_by_sqrt2():
                        continue
                    u = DOmega(z, k, reduce=False)
                    w, wb = u.to_mpc(), u.conj2().to_mpc()
                    if region.margin(w.real, w.imag) >= 0 and abs(wb) <= 1:
                        brute.add(z.coeffs())
    assert got == brute
