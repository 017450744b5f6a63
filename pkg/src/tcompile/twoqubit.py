"""Two-qubit synthesis on the three-CNOT template.

Layout, in application order (wire 0 is the control of every CNOT)::

    target: R_Z(-psi) . CX . (C x D) . CX . (R_X(theta) x R_Z(phi)) . CX . (A x B)

The two-CNOT core is found from the canonical (KAK) coefficients in the magic
basis once psi has made tr(gamma) real, which forces one coefficient onto a
multiple of pi/2. Partial mode skips the leading CNOT and R_Z(-psi) and leaves
a diagonal bank for the caller to absorb into a neighbouring diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .chanmetrics import dnorm_unitary_pair
from .circuit import Circuit, Gate, cx_matrix
from .errors import VerificationError
from .mpnum import dagger, det, diag, eye, kron, max_abs, svd, working_digits, wrap_angle
from .su2 import Piece, default_backend, euler_decompose, join_pieces, rx_matrix, synthesize_one_qubit
from .zrot import rz_matrix

_PAULI = {
    "X": [[0, 1], [1, 0]],
    "Y": [[0, -1j], [1j, 0]],
    "Z": [[1, 0], [0, -1]],
}


def _pauli(p: str) -> mpmath.matrix:
    return mpmath.matrix(_PAULI[p])


def _hadamard() -> mpmath.matrix:
    return mpmath.matrix([[1, 1], [1, -1]]) / mpmath.sqrt(2)


def _magic() -> mpmath.matrix:
    r = 1 / mpmath.sqrt(2)
    return mpmath.matrix([
        [r, 1j * r, 0, 0],
        [0, 0, 1j * r, r],
        [0, 0, 1j * r, -r],
        [r, -1j * r, 0, 0],
    ])


def delta(psi) -> mpmath.matrix:
    """CX (I x R_Z(psi)) CX, a diagonal."""
    h = mpmath.mpf(psi) / 2
    a, b = mpmath.expj(-h), mpmath.expj(h)
    return diag([a, b, b, a])


# -- data types --------------------------------------------------------------

@dataclass
class ThreeCnotTemplate:
    a: mpmath.matrix
    b: mpmath.matrix
    c: mpmath.matrix
    d: mpmath.matrix
    theta: mpmath.mpf
    phi: mpmath.mpf
    psi: mpmath.mpf
    phase: mpmath.mpc  # U = phase * core * ...
    partial: bool = False

    def core(self) -> mpmath.matrix:
        """(A x B) CX (R_X(theta) x R_Z(phi)) CX (C x D)."""
        cx = cx_matrix()
        mid = kron(rx_matrix(self.theta), rz_matrix(self.phi))
        return kron(self.a, self.b) * cx * mid * cx * kron(self.c, self.d)

    def matrix(self) -> mpmath.matrix:
        tail = delta(-self.psi) if self.partial else cx_matrix() * kron(eye(2), rz_matrix(-self.psi))
        return self.phase * self.core() * tail


@dataclass
class PhaseBank:
    """Diagonal left for upstream absorption: U = circuit . bank (bank acts first)."""
    phi_c: mpmath.mpf
    phi_d: mpmath.mpf
    psi: mpmath.mpf

    def matrix(self) -> mpmath.matrix:
        return kron(rz_matrix(self.phi_c), rz_matrix(self.phi_d)) * delta(-self.psi)

    def diagonal(self) -> list:
        m = self.matrix()
        return [m[i, i] for i in range(4)]


@dataclass
class TwoQubitResult:
    circuit: Circuit
    unitary: mpmath.matrix
    bank: PhaseBank | None
    error: mpmath.mpf

    def __iter__(self):
        return iter((self.circuit, self.unitary, self.bank))


# -- decomposition -----------------------------------------------------------

def extract_su2su2_prefactors(m: mpmath.matrix, tol=None) -> tuple[mpmath.matrix, mpmath.matrix]:
    """P, Q with P x Q = M, via a rank-one SVD of the reshuffled matrix."""
    tol = tol if tol is not None else mpmath.mpf(10) ** (-mpmath.mp.dps // 2)
    r = mpmath.matrix(4, 4)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    r[2 * i + j, 2 * k + l] = m[2 * i + k, 2 * j + l]
    u, s, vh = svd(r)
    if s[1, 1] > tol * max(s[0, 0], 1):
        raise ValueError(f"matrix is not a tensor product (second singular value {mpmath.nstr(s[1, 1], 5)})")
    root = mpmath.sqrt(s[0, 0])
    p = mpmath.matrix([[u[0, 0], u[1, 0]], [u[2, 0], u[3, 0]]]) * root
    q = mpmath.matrix([[vh[0, 0], vh[0, 1]], [vh[0, 2], vh[0, 3]]]) * root
    scale = mpmath.sqrt(abs(det(p)))
    p, q = p / scale, q * scale
    first = next(x for x in (p[0, 0], p[0, 1], p[1, 0], p[1, 1]) if abs(x) > tol)
    ph = abs(first) / first
    return p * ph, q / ph


def _choose_psi(u2: mpmath.matrix) -> mpmath.mpf:
    """psi making tr gamma(u2 Delta(psi)) real; the root of smaller |psi|."""
    yy = kron(_pauli("Y"), _pauli("Y"))
    g = yy * u2.T * yy * u2
    a = g[0, 0] + g[3, 3]
    b = g[1, 1] + g[2, 2]
    num = mpmath.im(a) + mpmath.im(b)
    den = mpmath.re(a) - mpmath.re(b)
    if den == 0:
        return mpmath.pi / 2 if num != 0 else mpmath.mpf(0)
    return mpmath.atan(num / den)


def _orthogonal_diagonalizer(p: mpmath.matrix) -> mpmath.matrix:
    """Real orthogonal O with O^T P O diagonal, for a symmetric unitary P."""
    re = mpmath.matrix(4, 4)
    im = mpmath.matrix(4, 4)
    for i in range(4):
        for j in range(4):
            z = (p[i, j] + p[j, i]) / 2
            re[i, j], im[i, j] = mpmath.re(z), mpmath.im(z)
    best = None
    for c in (mpmath.sqrt(2) - 1 / mpmath.pi, mpmath.e / 3, mpmath.sqrt(3) / 7):
        _, o = mpmath.eigsy(re + c * im)
        d = o.T * p * o
        off = max(abs(d[i, j]) for i in range(4) for j in range(4) if i != j)
        if best is None or off < best[0]:
            best = (off, o)
        if off < mpmath.mpf(10) ** (-mpmath.mp.dps + 15):
            break
    return best[1]


def _two_cnot_core(v: mpmath.matrix):
    """V = phase (A x B) CX (R_X(theta) x R_Z(phi)) CX (C x D) for V in SU(4) with tr gamma(V) real."""
    mb = _magic()
    mbd = dagger(mb)
    vb = mbd * v * mb
    o = _orthogonal_diagonalizer(vb.T * vb)
    if mpmath.det(o) < 0:
        for i in range(4):
            o[i, 0] = -o[i, 0]
    q2 = o.T
    d2 = q2 * vb.T * vb * o
    f = [mpmath.sqrt(d2[i, i]) for i in range(4)]
    q1 = vb * o * diag([1 / x for x in f])
    if mpmath.re(mpmath.det(q1)) < 0:
        f[0] = -f[0]
        for i in range(4):
            q1[i, 0] = -q1[i, 0]
    lam = [mpmath.arg(x) for x in f]
    names = ("X", "Y", "Z")
    diags = {}
    for p in names:
        m = mbd * kron(_pauli(p), _pauli(p)) * mb
        diags[p] = [mpmath.re(m[i, i]) for i in range(4)]
    c0 = sum(lam) / 4
    coef = {p: sum(lam[i] * diags[p][i] for i in range(4)) / 4 for p in names}
    global_phase = mpmath.expj(c0)
    # the coefficient on a multiple of pi/2 becomes a local Pauli factor
    zero = min(names, key=lambda p: abs(mpmath.sin(2 * coef[p])))
    if abs(mpmath.sin(2 * coef[zero])) > mpmath.mpf(10) ** (-mpmath.mp.dps // 3):
        raise ValueError("core is not two-CNOT reachable: no canonical coefficient on a multiple of pi/2")
    mult = int(mpmath.nint(coef[zero] / (mpmath.pi / 2)))
    pp = kron(_pauli(zero), _pauli(zero))
    local_left = mb * q1 * mbd
    local_right = mb * q2 * mbd
    extra = (1j * pp) ** (mult % 4) if mult % 4 else eye(4)
    # the leftover pair, moved onto (XX, ZZ) by a local change of basis l
    if zero == "Y":
        l = eye(4)
        a, b = coef["X"], coef["Z"]
    elif zero == "X":
        s = mpmath.matrix([[1, 0], [0, 1j]])
        l = kron(s, s)
        a, b = coef["Y"], coef["Z"]
    else:
        r = rx_matrix(mpmath.pi / 2)
        l = kron(r, r)
        # l^dag ZZ l = +-YY; the sign flips b
        sgn = mpmath.re((dagger(l) * kron(_pauli("Z"), _pauli("Z")) * l * kron(_pauli("Y"), _pauli("Y")))[0, 0])
        a, b = coef["X"], coef["Y"] * sgn
    left = local_left * extra * dagger(l)
    right = l * local_right
    pa, pb = extract_su2su2_prefactors(left)
    pc, pd = extract_su2su2_prefactors(right)
    return global_phase, pa, pb, pc, pd, -2 * a, -2 * b


def decompose_two_qubit(u: mpmath.matrix, partial: bool = False) -> ThreeCnotTemplate:
    """Three-CNOT template of a 4x4 unitary (partial: two CNOTs plus a right diagonal)."""
    u = mpmath.matrix(u)
    d = det(u)
    root = mpmath.expj(mpmath.arg(d) / 4)
    us = u / root
    if partial:
        u2 = us
        pre = mpmath.mpf(1)
    else:
        pre = mpmath.expjpi(mpmath.mpf(1) / 4)
        u2 = pre * us * cx_matrix()
    psi = _choose_psi(u2)
    v = u2 * delta(psi)
    gph, a, b, c, dd, theta, phi = _two_cnot_core(v)
    return ThreeCnotTemplate(a, b, c, dd, wrap_angle(theta), wrap_angle(phi), psi, root * gph / pre, partial)


def template_residual(u: mpmath.matrix, t: ThreeCnotTemplate) -> mpmath.mpf:
    return max_abs(t.matrix() - u)


# -- synthesis ---------------------------------------------------------------

def _place(c: Circuit, piece: Piece, wire: int) -> None:
    for g in piece.gates:
        c.gates.append(Gate(g.g, (wire,), g.param))
    c.phase_w = (c.phase_w + piece.phase_w) % 8


def _hadamard_piece() -> Piece:
    return Piece([Gate("H", (0,))], _hadamard())


def approximate_two_qubit(u: mpmath.matrix, eps, partial: bool = False, backend=None,
                          verify: bool = True) -> TwoQubitResult:
    """Clifford+T circuit for a 4x4 unitary within diamond distance eps.

    In partial mode the returned circuit realizes U only after the returned
    bank's diagonal (applied first); the error bound covers circuit . bank.
    """
    eps = mpmath.mpf(eps)
    backend = backend or default_backend()
    with mpmath.workdps(max(mpmath.mp.dps, working_digits(eps))):
        u = mpmath.matrix(u)
        t = decompose_two_qubit(u, partial)
        share = eps / (12 if partial else 15)
        upp = getattr(backend, "up_to_phase", False)

        # two-CNOT core rotations, residual Z's pushed outward
        vx, r1, r2 = backend.magnitude(t.theta, share)
        vphi, s1, s2 = backend.magnitude(t.phi, share)
        h = _hadamard()
        a2 = t.a * rz_matrix(-r1)
        c2 = rz_matrix(-r2) * t.c
        b2 = t.b * rx_matrix(-s1)
        d2 = rx_matrix(-s2) * t.d

        circ = Circuit(2)
        bank = None
        if partial:
            # C', D' = R_Z(phi1 - r1') V R_Z(phi2 - r2'): the right-hand Z joins the bank
            deferred = []
            for m, wire in ((c2, 0), (d2, 1)):
                e = euler_decompose(m)
                vm, q1, q2 = backend.magnitude(e.theta, share)
                z1 = backend.rz(e.phi1 - q1, share)
                _place(circ, join_pieces([vm, z1], upp), wire)
                deferred.append(wrap_angle(e.phi2 - q2))
            bank = PhaseBank(deferred[0], deferred[1], t.psi)
        else:
            zpsi = backend.rz(-t.psi, share)
            _place(circ, zpsi, 1)
            circ.append("CX", 0, 1)
            pc, _ = synthesize_one_qubit(c2, 3 * share, backend)
            pd, _ = synthesize_one_qubit(d2, 3 * share, backend)
            _place(circ, pc, 0)
            _place(circ, pd, 1)
        circ.append("CX", 0, 1)
        _place(circ, vx, 0)
        _place(circ, join_pieces([_hadamard_piece(), vphi, _hadamard_piece()], upp), 1)
        circ.append("CX", 0, 1)
        pa, _ = synthesize_one_qubit(a2, 3 * share, backend)
        pb, _ = synthesize_one_qubit(b2, 3 * share, backend)
        _place(circ, pa, 0)
        _place(circ, pb, 1)

        realized = circ.unitary()
        total = realized * bank.matrix() if bank is not None else realized
        err = dnorm_unitary_pair(total, u)
        if verify and err > eps:
            raise VerificationError(f"two-qubit synthesis error {mpmath.nstr(err, 5)} exceeds {mpmath.nstr(eps, 5)}")
        return TwoQubitResult(circ, realized, bank, err)
