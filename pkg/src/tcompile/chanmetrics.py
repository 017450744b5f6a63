"""Channel representations (PTM, Choi) and diamond-norm distances."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .mpnum import dagger, eig_unitary, to_numpy

_PAULI_NP = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@lru_cache(maxsize=None)
def pauli_labels(n: int) -> tuple[str, ...]:
    return tuple("".join(p) for p in itertools.product("IXYZ", repeat=n))


@lru_cache(maxsize=None)
def pauli_basis(n: int) -> np.ndarray:
    """Array of shape (4^n, 2^n, 2^n), lexicographic over (I, X, Y, Z)."""
    mats = []
    for label in pauli_labels(n):
        m = np.array([[1.0 + 0j]])
        for ch in label:
            m = np.kron(m, _PAULI_NP[ch])
        mats.append(m)
    return np.array(mats)


def _as_np(u) -> np.ndarray:
    return to_numpy(u) if isinstance(u, mpmath.matrix) else np.asarray(u, dtype=complex)


def ptm_of_unitary(u) -> np.ndarray:
    """M_ji = (1/d) Tr[P_j U P_i U^dag] in double precision."""
    un = _as_np(u)
    d = un.shape[0]
    n = d.bit_length() - 1
    p = pauli_basis(n)
    conj = np.einsum("ab,ibc,dc->iad", un, p, un.conj())
    return np.real(np.einsum("jba,iab->ji", p, conj)) / d


def ptm_of_unitary_mp(u: mpmath.matrix) -> mpmath.matrix:
    """Arbitrary-precision PTM (used for precision checks)."""
    d = u.rows
    n = d.bit_length() - 1
    paulis = [_pauli_mp(lbl) for lbl in pauli_labels(n)]
    ud = dagger(u)
    out = mpmath.matrix(4 ** n, 4 ** n)
    for i, pi in enumerate(paulis):
        conj = u * pi * ud
        for j, pj in enumerate(paulis):
            tr = mpmath.fsum((pj * conj)[k, k] for k in range(d))
            out[j, i] = mpmath.re(tr) / d
    return out


def _pauli_mp(label: str) -> mpmath.matrix:
    m = mpmath.matrix([[1]])
    base = {
        "I": mpmath.matrix([[1, 0], [0, 1]]),
        "X": mpmath.matrix([[0, 1], [1, 0]]),
        "Y": mpmath.matrix([[0, -1j], [1j, 0]]),
        "Z": mpmath.matrix([[1, 0], [0, -1]]),
    }
    from .mpnum import kron

    for ch in label:
        m = kron(m, base[ch])
    return m


def choi_of_unitary(u) -> np.ndarray:
    """(I (x) U)|Omega><Omega| with unnormalized Omega; input factor first."""
    un = _as_np(u)
    v = un.T.reshape(-1)  # v[(i, a)] = U[a, i]
    return np.outer(v, v.conj())


def choi_of_mixture(unitaries, probs) -> np.ndarray:
    return sum(p * choi_of_unitary(u) for u, p in zip(unitaries, probs))


def partial_trace_out(x: np.ndarray, d: int) -> np.ndarray:
    return np.einsum("iaja->ij", x.reshape(d, d, d, d))


# -- closed form -----------------------------------------------------------

def dnorm_unitary_pair(u, v) -> mpmath.mpf:
    """Diamond distance between the channels of two unitaries.

    2 sin(span/2) where span is the smallest arc holding the eigenvalues of
    U^dag V, or 2 once that arc reaches pi. The 2x2 case avoids eigen-solvers:
    for W = M / sqrt(det M) = [[a, b], [-b*, a*]] it is 2 sqrt(Im(a)^2 + |b|^2).
    """
    if not (isinstance(u, mpmath.matrix) and isinstance(v, mpmath.matrix)):
        # double-precision input is unitary only to ~1e-16; no point in more digits
        return mpmath.mpf(dnorm_unitary_pair_np(u, v))
    m = dagger(u) * v
    if m.rows == 2:
        r = mpmath.sqrt(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
        a, b = m[0, 0] / r, m[0, 1] / r
        s = mpmath.sqrt(mpmath.im(a) ** 2 + abs(b) ** 2)
        return min(2 * s, mpmath.mpf(2))
    lam, _ = eig_unitary(m)
    return _arc_distance([mpmath.arg(x) for x in lam])


def _arc_distance(phases) -> mpmath.mpf:
    ph = sorted(phases)
    gaps = [ph[i + 1] - ph[i] for i in range(len(ph) - 1)] + [ph[0] + 2 * mpmath.pi - ph[-1]]
    span = 2 * mpmath.pi - max(gaps)
    if span >= mpmath.pi:
        return mpmath.mpf(2)
    return 2 * mpmath.sin(span / 2)


def dnorm_unitary_pair_np(u, v) -> float:
    m = _as_np(u).conj().T @ _as_np(v)
    lam = np.linalg.eigvals(m)
    ph = np.sort(np.angle(lam))
    gaps = np.diff(np.concatenate([ph, [ph[0] + 2 * np.pi]]))
    span = 2 * np.pi - gaps.max()
    return 2.0 if span >= np.pi else float(2 * np.sin(span / 2))


# -- SDP -------------------------------------------------------------------

@dataclass
class SdpResult:
    value: float
    t: float
    gap: float
    iterations: int
    converged: bool
    x: np.ndarray | None = None


@lru_cache(maxsize=None)
def _herm_basis(dim: int) -> np.ndarray:
    """Orthonormal real basis of dim x dim Hermitian matrices, shape (dim^2, dim, dim)."""
    out = []
    r = 1 / np.sqrt(2)
    for k in range(dim):
        e = np.zeros((dim, dim), complex)
        e[k, k] = 1
        out.append(e)
    for k in range(dim):
        for l in range(k + 1, dim):
            e = np.zeros((dim, dim), complex)
            e[k, l] = e[l, k] = r
            out.append(e)
            e = np.zeros((dim, dim), complex)
            e[k, l] = -1j * r
            e[l, k] = 1j * r
            out.append(e)
    return np.array(out)


def _max_step(x: np.ndarray, dx: np.ndarray) -> float:
    """Largest alpha <= 1 keeping x + alpha dx positive semidefinite."""
    ev, vec = np.linalg.eigh(x)
    ev = np.maximum(ev, 1e-300)
    li = (vec / np.sqrt(ev)).conj().T
    w = li @ dx @ li.conj().T
    lo = np.linalg.eigvalsh((w + w.conj().T) / 2).min()
    return 1.0 if lo >= 0 else min(1.0, -1.0 / lo)


def dnorm_sdp(j_delta: np.ndarray, tol: float = 1e-9, max_iter: int = 100) -> SdpResult:
    """Diamond norm of the Hermiticity-preserving map with Choi matrix J_delta.

    Solves min t s.t. X >= 0, X >= J, t I >= Tr_out X and returns 2t, with a
    dense primal-dual interior-point method (HKM direction, Mehrotra
    predictor-corrector) on the three-block standard form.
    """
    j = np.asarray(j_delta, dtype=complex)
    j = (j + j.conj().T) / 2
    big = j.shape[0]
    d = int(round(np.sqrt(big)))
    scale = np.linalg.norm(j, 2)
    if scale < 1e-300:
        return SdpResult(0.0, 0.0, 0.0, 0, True)
    j = j / scale
    basis = _herm_basis(big)
    nx = basis.shape[0]
    m = nx + 1
    eye_d = np.eye(d)
    # constraint matrices per block, index 0 is t
    a1 = np.zeros((m, big, big), complex)
    a2 = np.zeros((m, big, big), complex)
    a3 = np.zeros((m, d, d), complex)
    a3[0] = -eye_d
    a1[1:] = -basis
    a2[1:] = -basis
    a3[1:] = np.array([partial_trace_out(e, d) for e in basis])
    blocks = [a1, a2, a3]
    cs = [np.zeros((big, big), complex), -j, np.zeros((d, d), complex)]
    bvec = np.zeros(m)
    bvec[0] = -1.0
    vecs = [a.reshape(m, -1).T for a in blocks]  # columns vec(A_i)

    zs = [np.eye(big, dtype=complex), np.eye(big, dtype=complex), np.eye(d, dtype=complex)]
    ss = [np.eye(big, dtype=complex), np.eye(big, dtype=complex), np.eye(d, dtype=complex)]
    y = np.zeros(m)
    y[0] = 2.0
    ntot = 2 * big + d

    def a_op(zlist):
        return sum(np.real(v.conj().T @ z.reshape(-1)) for v, z in zip(vecs, zlist))

    def a_adj(yv):
        return [np.tensordot(yv, a, axes=1) for a in blocks]

    def herm(x):
        return (x + x.conj().T) / 2

    converged = False
    best = (np.inf, y.copy(), np.inf, 0)
    for it in range(1, max_iter + 1):
        ay = a_adj(y)
        rd = [herm(c - s - a) for c, s, a in zip(cs, ss, ay)]
        rp = bvec - a_op(zs)
        mu = sum(np.real(np.trace(z @ s)) for z, s in zip(zs, ss)) / ntot
        pobj = sum(np.real(np.trace(c @ z)) for c, z in zip(cs, zs))
        dobj = bvec @ y
        gap = abs(pobj - dobj) / (1 + abs(pobj) + abs(dobj))
        pinf = np.linalg.norm(rp) / (1 + np.linalg.norm(bvec))
        dinf = max(np.linalg.norm(r) for r in rd)
        err = max(gap, pinf, dinf)
        if err < best[0]:
            best = (err, y.copy(), gap, it)
        if err < tol:
            converged = True
            break
        if err > 1e3 * best[0] and best[0] < 1e-6:
            # rounding has taken over near the optimum; keep the best iterate
            break
        sinv = [np.linalg.inv(s) for s in ss]
        schur = np.zeros((m, m))
        for v, z, si in zip(vecs, zs, sinv):
            k = np.kron(z, si.T)
            schur += np.real(v.conj().T @ (k @ v))
        schur = (schur + schur.T) / 2

        def solve(sig_mu, corr):
            # dZ = sig_mu S^-1 - Z - Z dS S^-1 - corr S^-1, dS = Rd - A* dy
            rhs_terms = []
            for z, si, r, cr in zip(zs, sinv, rd, corr):
                rhs_terms.append(sig_mu * si - z - z @ r @ si - cr @ si)
            rhs = rp - a_op(rhs_terms)
            try:
                dy = np.linalg.solve(schur, rhs)
            except np.linalg.LinAlgError:
                dy = np.linalg.lstsq(schur, rhs, rcond=None)[0]
            ady = a_adj(dy)
            ds = [herm(r - a) for r, a in zip(rd, ady)]
            dz = [herm(t_ + z @ a @ si) for t_, z, a, si in zip(rhs_terms, zs, ady, sinv)]
            return dz, dy, ds

        zero = [np.zeros_like(z) for z in zs]
        dz_a, dy_a, ds_a = solve(0.0, zero)
        ap = min(_max_step(z, dz) for z, dz in zip(zs, dz_a))
        ad = min(_max_step(s, dd) for s, dd in zip(ss, ds_a))
        mu_aff = sum(np.real(np.trace((z + ap * dz) @ (s + ad * dd))) for z, dz, s, dd in zip(zs, dz_a, ss, ds_a)) / ntot
        sigma = min(1.0, (mu_aff / mu) ** 3) if mu > 0 else 0.0
        corr = [dz @ dd for dz, dd in zip(dz_a, ds_a)]
        dz, dy, ds = solve(sigma * mu, corr)
        ap = min(1.0, 0.95 * min(_max_step(z, x) for z, x in zip(zs, dz)))
        ad = min(1.0, 0.95 * min(_max_step(s, x) for s, x in zip(ss, ds)))
        zs = [herm(z + ap * x) for z, x in zip(zs, dz)]
        ss = [herm(s + ad * x) for s, x in zip(ss, ds)]
        y = y + ad * dy
    err, y, gap, it = best
    converged = converged or err < 1e-6
    t = y[0] * scale
    xmat = np.tensordot(y[1:], basis, axes=1) * scale
    return SdpResult(2 * t, t, float(gap), it, converged, xmat)


def dnorm_mixture(target, unitaries, probs) -> float:
    """Diamond distance between U and the mixture sum_i p_i V_i (SDP path)."""
    jd = choi_of_unitary(target) - choi_of_mixture(unitaries, probs)
    return dnorm_sdp(jd).value
