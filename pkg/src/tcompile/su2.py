"""Single-qubit synthesis: Z-X-Z Euler angles, magnitude approximation of
X-rotations, and the three-way error split that joins them with gridsynth.

The synthesis routines talk to a *backend* for the two primitive requests
(approximate R_Z(theta); magnitude-approximate R_X(theta)). The Clifford+T
backend runs the real searches; ``ExactBackend`` returns the rotations
untouched, which lets the decomposition plumbing be checked on its own.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from . import instrument
from .bigring import DRoot2
from .chanmetrics import dnorm_unitary_pair
from .circuit import Circuit, Gate
from .dioph import NormStatus, solve_norm_equation
from .errors import SynthesisFailure, VerificationError
from .exactsynth import decompose_domega_unitary
from .gridprob import solve_odgp
from .mpnum import arg, det, working_digits, wrap_angle
from .ringmat import DOmegaUnitary
from .zrot import rz_matrix, synthesize_rz


def rx_matrix(theta) -> mpmath.matrix:
    h = mpmath.mpf(theta) / 2
    c, s = mpmath.cos(h), mpmath.sin(h)
    return mpmath.matrix([[c, -1j * s], [-1j * s, c]])


# -- Euler angles ------------------------------------------------------------

@dataclass
class EulerAngles:
    phase: mpmath.mpf
    phi1: mpmath.mpf
    theta: mpmath.mpf
    phi2: mpmath.mpf

    def matrix(self) -> mpmath.matrix:
        return mpmath.expj(self.phase) * (rz_matrix(self.phi1) * rx_matrix(self.theta) * rz_matrix(self.phi2))


def euler_decompose(u: mpmath.matrix) -> EulerAngles:
    """U = e^{i phase} R_Z(phi1) R_X(theta) R_Z(phi2) with phi's in [-pi, pi), theta in [0, pi]."""
    d = det(u)
    ad = arg(d)
    phase = ad / 2
    theta = 2 * mpmath.atan2(abs(u[1, 0]), abs(u[1, 1]))
    psi1 = arg(u[1, 1]) if u[1, 1] != 0 else mpmath.mpf(0)
    psi2 = arg(u[1, 0]) if u[1, 0] != 0 else mpmath.mpf(0)
    # degenerate cases: pick the free phase so that phi2 = 0
    if u[1, 0] == 0:
        psi2 = psi1 - mpmath.pi / 2
    elif u[1, 1] == 0:
        psi1 = psi2 + mpmath.pi / 2
    phi1 = wrap_angle(psi1 + psi2 - ad + mpmath.pi / 2)
    phi2 = wrap_angle(psi1 - psi2 - mpmath.pi / 2)
    e = EulerAngles(phase, phi1, theta, phi2)
    # the half-angle rotations see the 2 pi wraps as a sign; put it in the phase
    m = e.matrix()
    if abs(m[1, 1] + u[1, 1]) + abs(m[1, 0] + u[1, 0]) < abs(m[1, 1] - u[1, 1]) + abs(m[1, 0] - u[1, 0]):
        e.phase = wrap_angle(phase + mpmath.pi)
    return e


# -- magnitude approximation -------------------------------------------------

@dataclass
class MagnitudeApproxResult:
    unitary: DOmegaUnitary
    word: str
    tcount: int
    theta: mpmath.mpf  # realized X angle
    res1: mpmath.mpf  # unitary = R_Z(res1) R_X(theta) R_Z(res2) up to phase
    res2: mpmath.mpf
    error: mpmath.mpf
    k: int
    candidates: int


def _sqrt2_power(k: int):
    return mpmath.sqrt(2) ** k


def magnitude_approximate(theta, eps, seed: int = 0, max_candidates: int = 1_000_000,
                          factor_budget: int | None = None, up_to_phase: bool = False) -> MagnitudeApproxResult:
    """Exact V whose |u| is cos(theta'/2) with |theta' - theta| <= 2 arcsin(eps/2).

    Works directly for theta in [0, pi]: the interval for |u|^2 is clamped to
    [0, 1], so no reflection is needed.
    """
    eps = mpmath.mpf(eps)
    if not 0 < eps <= 2:
        raise ValueError("epsilon must lie in (0, 2]")
    with mpmath.workdps(max(mpmath.mp.dps, working_digits(eps))):
        theta = mpmath.mpf(theta)
        if not 0 <= theta <= mpmath.pi:
            raise ValueError("theta must lie in [0, pi]")
        delta = mpmath.asin(eps / 2)
        half = theta / 2
        # clamp explicitly: cos(pi/2) is not exactly 0 in floating point
        lo = mpmath.cos(half + delta) ** 2 if half + delta < mpmath.pi / 2 else mpmath.mpf(0)
        hi = mpmath.cos(half - delta) ** 2 if half > delta else mpmath.mpf(1)
        st = instrument.stats()
        seen = 0
        k = 0
        while True:
            s = _sqrt2_power(k)
            sc = (-1) ** k * s
            for r in solve_odgp((lo * s, hi * s), sorted((mpmath.mpf(0), sc))):
                if k > 0 and r.divisible_by_sqrt2():
                    continue
                seen += 1
                if seen > max_candidates:
                    raise SynthesisFailure(f"magnitude approximation: no solution among {max_candidates} candidates")
                m = DRoot2(r, k)
                ru = solve_norm_equation(m, budget=factor_budget, seed=seed)
                if ru.status is NormStatus.ABANDONED:
                    st.abandoned += 1
                if ru.status is not NormStatus.SOLVED:
                    continue
                rt = solve_norm_equation(DRoot2(1) - m, budget=factor_budget, seed=seed)
                if rt.status is NormStatus.ABANDONED:
                    st.abandoned += 1
                if rt.status is not NormStatus.SOLVED:
                    continue
                v = DOmegaUnitary.from_ut(ru.t, rt.t, 0)
                vm = v.to_mpmath()
                e = euler_decompose(vm)
                err = dnorm_unitary_pair(vm, rz_matrix(e.phi1) * rx_matrix(theta) * rz_matrix(e.phi2))
                if err > eps:
                    continue
                w = decompose_domega_unitary(v, fix_phase=not up_to_phase)
                st.magnitude += 1
                st.candidates += seen
                return MagnitudeApproxResult(v, w, w.count("T"), e.theta, e.phi1, e.phi2, err, k, seen)
            k += 1


# -- backends ------------------------------------------------------------------

@dataclass
class Piece:
    """A synthesized one-qubit fragment, gates on wire 0 in application order."""
    gates: list[Gate]
    matrix: mpmath.matrix
    exact: DOmegaUnitary | None = None
    phase_w: int = 0

    @staticmethod
    def from_exact(u: DOmegaUnitary, up_to_phase: bool = False, word: str | None = None) -> "Piece":
        """Piece for an exact unitary; ``word`` skips re-synthesis when already known."""
        if word is None:
            word = decompose_domega_unitary(u, fix_phase=not up_to_phase)
        c = Circuit(1)
        c.add_word(word, 0)
        return Piece(c.gates, u.to_mpmath(), u, c.phase_w)

    def tcount(self) -> int:
        return sum(1 for g in self.gates if g.g == "T")


@dataclass
class CliffordTBackend:
    seed: int = 0
    max_candidates: int = 1_000_000
    factor_budget: int | None = None
    up_to_phase: bool = False

    def rz(self, theta, eps) -> Piece:
        r = synthesize_rz(theta, eps, up_to_phase=self.up_to_phase, seed=self.seed,
                          max_candidates=self.max_candidates, factor_budget=self.factor_budget)
        return Piece.from_exact(r.unitary, self.up_to_phase, r.word)

    def magnitude(self, theta, eps) -> tuple[Piece, mpmath.mpf, mpmath.mpf]:
        """Piece ~ R_Z(r1) R_X(theta) R_Z(r2) up to phase, for any real theta."""
        th = wrap_angle(mpmath.mpf(theta))
        res = magnitude_approximate(abs(th), eps, seed=self.seed, max_candidates=self.max_candidates,
                                    factor_budget=self.factor_budget, up_to_phase=self.up_to_phase)
        r1, r2 = res.res1, res.res2
        if th < 0:
            # R_X(-a) = -R_Z(pi) R_X(a) R_Z(pi)
            r1, r2 = r1 - mpmath.pi, r2 - mpmath.pi
        return Piece.from_exact(res.unitary, self.up_to_phase, res.word), r1, r2


@dataclass
class ExactBackend:
    """Keeps every rotation as an explicit parametric gate (no approximation)."""

    def rz(self, theta, eps) -> Piece:
        instrument.stats().gridsynth += 1
        th = mpmath.mpf(theta)
        return Piece([Gate("RZ", (0,), th)], rz_matrix(th))

    def magnitude(self, theta, eps) -> tuple[Piece, mpmath.mpf, mpmath.mpf]:
        instrument.stats().magnitude += 1
        th = mpmath.mpf(theta)
        return Piece([Gate("RX", (0,), th)], rx_matrix(th)), mpmath.mpf(0), mpmath.mpf(0)


def default_backend() -> CliffordTBackend:
    return CliffordTBackend()


# -- one-qubit synthesis -------------------------------------------------------

@dataclass
class OneQubitResult:
    circuit: Circuit
    unitary: mpmath.matrix
    exact: DOmegaUnitary | None
    error: mpmath.mpf
    euler: EulerAngles = field(repr=False, default=None)

    def __iter__(self):
        return iter((self.circuit, self.unitary))

    @property
    def tcount(self) -> int:
        return self.circuit.tcount()


def join_pieces(pieces: list[Piece], up_to_phase: bool = False) -> Piece:
    """Concatenate pieces given in application order; exact runs are re-normalized."""
    if pieces and all(p.exact is not None for p in pieces):
        u = DOmegaUnitary.identity()
        for p in pieces:
            u = p.exact @ u
        return Piece.from_exact(u, up_to_phase)
    gates: list[Gate] = []
    m = mpmath.eye(2)
    ph = 0
    for p in pieces:
        gates += p.gates
        m = p.matrix * m
        ph += p.phase_w
    return Piece(gates, m, None, ph % 8)


def synthesize_one_qubit(u: mpmath.matrix, eps, backend=None) -> tuple[Piece, EulerAngles]:
    backend = backend or default_backend()
    e = euler_decompose(u)
    share = mpmath.mpf(eps) / 3
    vx, r1, r2 = backend.magnitude(e.theta, share)
    z1 = backend.rz(e.phi1 - r1, share)
    z2 = backend.rz(e.phi2 - r2, share)
    return join_pieces([z2, vx, z1], getattr(backend, "up_to_phase", False)), e


def approximate_one_qubit_unitary(u: mpmath.matrix, eps, backend=None, wire: int = 0, verify: bool = True) -> OneQubitResult:
    """Clifford+T circuit within diamond distance eps of the 2x2 unitary u."""
    eps = mpmath.mpf(eps)
    with mpmath.workdps(max(mpmath.mp.dps, working_digits(eps))):
        u = mpmath.matrix(u)
        piece, e = synthesize_one_qubit(u, eps, backend)
        c = Circuit(1)
        c.gates = [Gate(g.g, (wire,), g.param) for g in piece.gates]
        c.phase_w = piece.phase_w
        c.wires = wire + 1
        err = dnorm_unitary_pair(piece.matrix, u)
        if verify and err > eps:
            raise VerificationError(f"single-qubit synthesis error {mpmath.nstr(err, 5)} exceeds {mpmath.nstr(eps, 5)}")
        return OneQubitResult(c, piece.matrix, piece.exact, err, e)

