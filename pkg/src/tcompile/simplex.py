"""Dense two-phase simplex with Bland's rule.

Small LPs only (a few thousand columns at most); the mixing LP is the one
client. Solves

    min c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class LPResult:
    x: np.ndarray
    value: float
    status: str  # "optimal", "infeasible", "unbounded", "iteration_limit"
    iterations: int


def _pivot(tab: np.ndarray, basis: list[int], row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    piv = tab[row]
    colv = tab[:, col].copy()
    colv[row] = 0.0
    tab -= np.outer(colv, piv)
    basis[row] = col


def _run(tab: np.ndarray, basis: list[int], allowed: int, tol: float, max_iter: int) -> tuple[str, int]:
    """Iterate on a tableau whose last row is the reduced cost row."""
    it = 0
    m = tab.shape[0] - 1
    while it < max_iter:
        cost = tab[-1, :allowed]
        enter = next((j for j in range(allowed) if cost[j] < -tol), None)
        if enter is None:
            return "optimal", it
        colv = tab[:m, enter]
        rhs = tab[:m, -1]
        best = None
        for i in range(m):
            if colv[i] > tol:
                ratio = rhs[i] / colv[i]
                if best is None or ratio < best[0] - tol or (abs(ratio - best[0]) <= tol and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded", it
        _pivot(tab, basis, best[1], enter)
        it += 1
    return "iteration_limit", it


def linprog(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None, tol: float = 1e-9, max_iter: int = 50_000) -> LPResult:
    c = np.asarray(c, dtype=float)
    nx = c.size
    a_ub = np.zeros((0, nx)) if a_ub is None else np.asarray(a_ub, dtype=float)
    b_ub = np.zeros(0) if b_ub is None else np.asarray(b_ub, dtype=float)
    a_eq = np.zeros((0, nx)) if a_eq is None else np.asarray(a_eq, dtype=float)
    b_eq = np.zeros(0) if b_eq is None else np.asarray(b_eq, dtype=float)
    mu, me = a_ub.shape[0], a_eq.shape[0]
    m = mu + me
    # columns: x | slacks (one per <= row) | artificials (one per row)
    nvar = nx + mu
    a = np.zeros((m, nvar))
    a[:mu, :nx] = a_ub
    a[:mu, nx:] = np.eye(mu)
    a[mu:, :nx] = a_eq
    b = np.concatenate([b_ub, b_eq])
    neg = b < 0
    a[neg] *= -1
    b[neg] *= -1

    tab = np.zeros((m + 1, nvar + m + 1))
    tab[:m, :nvar] = a
    tab[:m, nvar:nvar + m] = np.eye(m)
    tab[:m, -1] = b
    basis = list(range(nvar, nvar + m))
    # phase 1: minimize the sum of artificials
    tab[-1, :nvar] = -a.sum(axis=0)
    tab[-1, -1] = -b.sum()
    status, it1 = _run(tab, basis, nvar + m, tol, max_iter)
    if status != "optimal" or -tab[-1, -1] > 1e3 * tol * max(1.0, np.abs(b).max(initial=0.0)):
        return LPResult(np.zeros(nx), float("nan"), "infeasible" if status == "optimal" else status, it1)
    # drive artificials out of the basis; rows where that fails are redundant
    keep = []
    for i in range(m):
        if basis[i] >= nvar:
            j = next((j for j in range(nvar) if abs(tab[i, j]) > tol), None)
            if j is None:
                continue
            _pivot(tab, basis, i, j)
        keep.append(i)
    tab = np.vstack([tab[keep][:, list(range(nvar)) + [tab.shape[1] - 1]], np.zeros((1, nvar + 1))])
    basis = [basis[i] for i in keep]
    full_c = np.concatenate([c, np.zeros(mu)])
    tab[-1, :nvar] = full_c
    for i, bcol in enumerate(basis):
        tab[-1] -= full_c[bcol] * tab[i]
    status, it2 = _run(tab, basis, nvar, tol, max_iter)
    x = np.zeros(nvar)
    for i, bcol in enumerate(basis):
        x[bcol] = tab[i, -1]
    return LPResult(x[:nx], float(full_c @ x), status, it1 + it2)
