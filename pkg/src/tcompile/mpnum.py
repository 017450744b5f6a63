"""Arbitrary-precision complex matrices and the factorizations the pipeline uses."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np


def working_digits(eps: float | mpmath.mpf | str) -> int:
    """Digits of working precision for target tolerance ``eps``.

    ``TCOMPILE_PRECISION`` in the environment overrides the rule.
    """
    override = os.environ.get("TCOMPILE_PRECISION")
    if override:
        return int(override)
    with mpmath.workdps(30):
        e = mpmath.mpf(eps)
        if e <= 0:
            raise ValueError("tolerance must be positive")
        digits = -mpmath.log10(e)
    return max(64, math.ceil(2.5 * float(digits)) + 32)


def arg(z) -> mpmath.mpf:
    """Complex argument in [-pi, pi)."""
    a = mpmath.arg(z)
    if a >= mpmath.pi:
        a -= 2 * mpmath.pi
    return a


def wrap_angle(a) -> mpmath.mpf:
    """Reduce an angle into [-pi, pi)."""
    two_pi = 2 * mpmath.pi
    a = a - two_pi * mpmath.floor((a + mpmath.pi) / two_pi)
    if a >= mpmath.pi:
        a -= two_pi
    return a


def parse_angle(text: str) -> mpmath.mpf:
    """Parse decimals and expressions like ``pi/3``, ``-3pi/4``, ``2*pi``."""
    s = text.strip().replace(" ", "").replace("*", "")
    if "pi" not in s:
        return mpmath.mpf(s)
    num, _, den = s.partition("/")
    coef = num.replace("pi", "")
    if coef in ("", "+"):
        c = mpmath.mpf(1)
    elif coef == "-":
        c = mpmath.mpf(-1)
    else:
        c = mpmath.mpf(coef)
    value = c * mpmath.pi
    if den:
        value = value / mpmath.mpf(den)
    return value


# -- matrix helpers on raw mpmath matrices ---------------------------------

def mat(rows: Sequence[Sequence]) -> mpmath.matrix:
    return mpmath.matrix([[mpmath.mpc(x) for x in r] for r in rows])


def eye(n: int) -> mpmath.matrix:
    return mpmath.eye(n)


def zeros(r: int, c: int | None = None) -> mpmath.matrix:
    return mpmath.zeros(r, c if c is not None else r)


def dagger(a: mpmath.matrix) -> mpmath.matrix:
    return a.transpose_conj()


def kron(a: mpmath.matrix, b: mpmath.matrix) -> mpmath.matrix:
    ra, ca, rb, cb = a.rows, a.cols, b.rows, b.cols
    out = mpmath.zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            x = a[i, j]
            if x == 0:
                continue
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = x * b[k, l]
    return out


def direct_sum(a: mpmath.matrix, b: mpmath.matrix) -> mpmath.matrix:
    out = mpmath.zeros(a.rows + b.rows, a.cols + b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            out[i, j] = a[i, j]
    for i in range(b.rows):
        for j in range(b.cols):
            out[a.rows + i, a.cols + j] = b[i, j]
    return out


def block(m: mpmath.matrix, r0: int, r1: int, c0: int, c1: int) -> mpmath.matrix:
    out = mpmath.zeros(r1 - r0, c1 - c0)
    for i in range(r0, r1):
        for j in range(c0, c1):
            out[i - r0, j - c0] = m[i, j]
    return out


def diag(values: Sequence) -> mpmath.matrix:
    n = len(values)
    out = mpmath.zeros(n, n)
    for i, v in enumerate(values):
        out[i, i] = v
    return out


def max_abs(a: mpmath.matrix) -> mpmath.mpf:
    return max(abs(a[i, j]) for i in range(a.rows) for j in range(a.cols))


def det(a: mpmath.matrix):
    return mpmath.det(a)


def trace(a: mpmath.matrix):
    return mpmath.fsum(a[i, i] for i in range(a.rows))


def is_unitary(a: mpmath.matrix, tol=None) -> bool:
    if tol is None:
        tol = mpmath.mpf(10) ** (-mpmath.mp.dps // 2)
    return max_abs(dagger(a) * a - eye(a.rows)) < tol


def to_numpy(a: mpmath.matrix) -> np.ndarray:
    return np.array([[complex(a[i, j]) for j in range(a.cols)] for i in range(a.rows)])


def from_numpy(a: np.ndarray) -> mpmath.matrix:
    return mpmath.matrix([[mpmath.mpc(complex(x)) for x in row] for row in np.atleast_2d(a)])


def phase_align(u: mpmath.matrix, v: mpmath.matrix) -> mpmath.matrix:
    """v times the unit phase maximizing |Tr(u^dagger v)| real-positive alignment."""
    t = trace(dagger(u) * v)
    if abs(t) == 0:
        return v
    return v * (mpmath.conj(t) / abs(t))


def random_unitary(n: int, rng: np.random.Generator) -> mpmath.matrix:
    """Haar-random unitary at the current working precision."""
    z = mpmath.matrix(n, n)
    for i in range(n):
        for j in range(n):
            z[i, j] = mpmath.mpc(mpmath.mpf(rng.standard_normal()), mpmath.mpf(rng.standard_normal()))
    q, r = mpmath.qr(z)
    for j in range(n):
        ph = r[j, j] / abs(r[j, j])
        for i in range(n):
            q[i, j] *= ph
    return q


def random_special_unitary(n: int, rng: np.random.Generator) -> mpmath.matrix:
    u = random_unitary(n, rng)
    d = mpmath.det(u)
    return u * (mpmath.conj(d) / abs(d)) ** (mpmath.mpf(1) / n)


# -- tagged matrix type ----------------------------------------------------

@dataclass(frozen=True)
class MpComplexMatrix:
    data: mpmath.matrix
    precision: int

    @staticmethod
    def of(rows, precision: int | None = None) -> "MpComplexMatrix":
        p = precision or mpmath.mp.dps
        with mpmath.workdps(p):
            m = rows if isinstance(rows, mpmath.matrix) else mat(rows)
        return MpComplexMatrix(m, p)

    @property
    def rows(self) -> int:
        return self.data.rows

    @property
    def cols(self) -> int:
        return self.data.cols

    def __getitem__(self, idx):
        return self.data[idx]

    def __matmul__(self, other: "MpComplexMatrix") -> "MpComplexMatrix":
        p = min(self.precision, other.precision)
        with mpmath.workdps(p):
            return MpComplexMatrix(self.data * other.data, p)

    def dagger(self) -> "MpComplexMatrix":
        return MpComplexMatrix(dagger(self.data), self.precision)

    def to_json(self) -> dict:
        return matrix_to_json(self.data)

    @staticmethod
    def from_json(obj: dict, precision: int | None = None) -> "MpComplexMatrix":
        p = precision or mpmath.mp.dps
        with mpmath.workdps(p):
            return MpComplexMatrix(matrix_from_json(obj), p)


def matrix_to_json(m: mpmath.matrix, digits: int | None = None) -> dict:
    digits = digits or mpmath.mp.dps
    data = []
    for i in range(m.rows):
        for j in range(m.cols):
            z = mpmath.mpc(m[i, j])
            data.append([mpmath.nstr(z.real, digits), mpmath.nstr(z.imag, digits)])
    return {"rows": m.rows, "cols": m.cols, "data": data}


def matrix_from_json(obj) -> mpmath.matrix:
    """Read {"rows", "cols", "data": [[re, im], ...]} or a nested list of rows.

    Entries of a nested list may be numbers, [re, im] pairs or strings such as "0.5-0.5j".
    """
    if isinstance(obj, list):
        return mpmath.matrix([[_entry(x) for x in row] for row in obj])
    r, c = int(obj["rows"]), int(obj["cols"])
    data = obj["data"]
    if len(data) != r * c:
        raise ValueError(f"expected {r * c} entries, got {len(data)}")
    m = mpmath.matrix(r, c)
    for idx, (re, im) in enumerate(data):
        m[idx // c, idx % c] = mpmath.mpc(mpmath.mpf(str(re)), mpmath.mpf(str(im)))
    return m


def _entry(x) -> mpmath.mpc:
    if isinstance(x, (list, tuple)):
        return mpmath.mpc(mpmath.mpf(str(x[0])), mpmath.mpf(str(x[1])))
    if isinstance(x, str):
        return mpmath.mpc(mpmath.mpmathify(x.replace(" ", "")))
    return mpmath.mpc(x)


def load_matrix(path: str) -> mpmath.matrix:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))


# -- factorizations --------------------------------------------------------

def _raw(m):
    return (m.data, m.precision) if isinstance(m, MpComplexMatrix) else (m, None)


def svd(m):
    """M = U diag(S) V^dagger with S non-increasing; returns (U, S, Vh)."""
    a, p = _raw(m)
    with mpmath.workdps(p or mpmath.mp.dps):
        u, s, vh = mpmath.svd_c(a, full_matrices=True)
        n = min(a.rows, a.cols)
        sig = mpmath.zeros(a.rows, a.cols)
        for i in range(n):
            sig[i, i] = s[i]
        if p is not None:
            return MpComplexMatrix(u, p), MpComplexMatrix(sig, p), MpComplexMatrix(vh, p)
        return u, sig, vh


def _orthonormalize(v: mpmath.matrix) -> mpmath.matrix:
    q, r = mpmath.qr(v)
    for j in range(v.cols):
        if r[j, j] != 0:
            ph = r[j, j] / abs(r[j, j])
            for i in range(v.rows):
                q[i, j] *= ph
    return q


def eig_unitary(m):
    """Spectral decomposition M = V diag(lam) V^dagger of a unitary matrix.

    M is normal, so any Hermitian combination cos-part + c * sin-part shares its
    eigenvectors. A few irrational c are tried so that accidental collisions of
    distinct eigenphases do not leave a non-diagonal residue.
    """
    a, p = _raw(m)
    dps = p or mpmath.mp.dps
    with mpmath.workdps(dps + 10):
        n = a.rows
        herm = (a + dagger(a)) / 2
        anti = (a - dagger(a)) / (2j)
        best = None
        for c in (mpmath.sqrt(2) - 1 / mpmath.pi, mpmath.e / 3, mpmath.sqrt(3) / 7, mpmath.mpf(5) / mpmath.sqrt(11)):
            h = herm + c * anti
            h = (h + dagger(h)) / 2
            _, v = mpmath.eigh(h)
            v = _orthonormalize(v)
            d = dagger(v) * a * v
            lam = [d[i, i] / abs(d[i, i]) for i in range(n)]
            off = max((abs(d[i, j]) for i in range(n) for j in range(n) if i != j), default=mpmath.mpf(0))
            if best is None or off < best[0]:
                best = (off, lam, v)
            if off < mpmath.mpf(10) ** (-dps + 6):
                break
        off, lam, v = best
        if off > mpmath.mpf(10) ** (-dps // 2):
            raise ArithmeticError(f"eig_unitary failed to converge, residual {mpmath.nstr(off, 5)}")
    lam = [+x for x in lam]
    if p is not None:
        return lam, MpComplexMatrix(v, p)
    return lam, v
