"""Gridsynth: approximate R_Z(theta) by an exact D[omega] special unitary."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from . import instrument
from .bigring import DOmega, DRoot2
from .chanmetrics import dnorm_unitary_pair
from .errors import SynthesisFailure
from .dioph import NormStatus, solve_norm_equation
from .exactsynth import decompose_domega_unitary
from .gridprob import DiskRegion, EpsilonRegion, TwoDimGridSolver
from .mpnum import working_digits
from .ringmat import GATES, DOmegaUnitary

__all__ = ["DOmegaUnitary", "GridsynthResult", "SynthesisFailure", "gridsynth", "rz_matrix", "synthesize_rz", "tcount"]


@dataclass
class GridsynthResult:
    unitary: DOmegaUnitary
    word: str
    tcount: int
    error: mpmath.mpf
    k: int
    candidates: int


def rz_matrix(theta) -> mpmath.matrix:
    h = mpmath.mpf(theta) / 2
    return mpmath.matrix([[mpmath.expj(-h), 0], [0, mpmath.expj(h)]])


def tcount(u: DOmegaUnitary) -> int:
    return decompose_domega_unitary(u, fix_phase=False).count("T")


_T = GATES["T"]


def _diagonal_shortcut(target, eps, up_to_phase: bool) -> GridsynthResult | None:
    """diag(1, omega^j) equals R_Z(j pi/4) up to phase; use it when it is close enough."""
    best = None
    for j in range(8):
        v = DOmegaUnitary.from_ut(DOmega(1), DOmega(0), j)
        err = dnorm_unitary_pair(v.to_mpmath(), target)
        if err <= eps and (best is None or (j % 2, err) < (best[0] % 2, best[1])):
            best = (j, err, v)
    if best is None:
        return None
    j, err, v = best
    w = decompose_domega_unitary(v, fix_phase=not up_to_phase)
    return GridsynthResult(v, w, w.count("T"), err, 0, 0)


def synthesize_rz(theta, eps, up_to_phase: bool = False, seed: int = 0, max_candidates: int = 1_000_000,
                  factor_budget: int | None = None) -> GridsynthResult:
    eps = mpmath.mpf(eps)
    if not 0 < eps <= 2:
        raise ValueError("epsilon must lie in (0, 2]")
    with mpmath.workdps(max(mpmath.mp.dps, working_digits(eps))):
        theta = mpmath.mpf(theta)
        target = rz_matrix(theta)
        solver = TwoDimGridSolver(EpsilonRegion(theta, eps), DiskRegion())
        st = instrument.stats()
        short = _diagonal_shortcut(target, eps, up_to_phase)
        if short is not None:
            st.gridsynth += 1
            return short
        seen = 0
        for cand in solver.stream():
            seen += 1
            if seen > max_candidates:
                raise SynthesisFailure(f"no solution among {max_candidates} candidates (theta={theta}, eps={eps})")
            u = cand.u
            xi = DRoot2(1) - u.norm_sqrt2()
            res = solve_norm_equation(xi, budget=factor_budget, seed=seed)
            if res.status is NormStatus.ABANDONED:
                st.abandoned += 1
                continue
            if res.status is not NormStatus.SOLVED:
                continue
            t = res.t
            best = None
            for v in (DOmegaUnitary.from_ut(u, t, 0), _T @ DOmegaUnitary.from_ut(u, t, 0) @ _T.dagger()):
                w = decompose_domega_unitary(v, fix_phase=not up_to_phase)
                tc = w.count("T")
                if best is None or tc < best[2]:
                    best = (v, w, tc)
            err = dnorm_unitary_pair(best[0].to_mpmath(), target)
            if err > eps:
                # the cap test is exact up to rounding; never hand back an unverified result
                continue
            st.gridsynth += 1
            st.candidates += seen
            return GridsynthResult(best[0], best[1], best[2], err, cand.k, seen)
    raise SynthesisFailure("candidate stream ended")


def gridsynth(theta, eps, **kwargs) -> DOmegaUnitary:
    return synthesize_rz(theta, eps, **kwargs).unitary
