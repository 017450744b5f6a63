"""n-qubit synthesis (n >= 3) by recursive block ZXZ decomposition.

Each level splits off the top wire:

    U = (A1 + A2) (H x I) (I + B) (H x I) (I + C)

(``+`` is the direct sum), demultiplexes the three multiplexors into
V (sqrt D + sqrt D^dag) W, expands the middle diagonals as Gray-code
ladders of CNOT and R_Z, and merges W_A, B and V_C into one multiplexor
B~. The two CNOTs next to the Hadamards cancel against a CZ folded into
B~. Recursion bottoms out at two-qubit leaves on the last two wires.

After the plan is laid out, the leaves are synthesized from last to first
in time. Each leaf but the first is done in partial mode and its diagonal
bank is pushed onto the previous leaf: nothing between two leaves touches
the last two wires except as a CNOT control, so the bank commutes through.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from . import instrument
from .chanmetrics import dnorm_unitary_pair
from .circuit import Circuit, Gate
from .errors import VerificationError
from .mpnum import dagger, diag, direct_sum, eig_unitary, eye, kron, svd, working_digits
from .su2 import default_backend
from .twoqubit import approximate_two_qubit

# -- block ZXZ -----------------------------------------------------------------


@dataclass
class BlockZXZ:
    a1: mpmath.matrix
    a2: mpmath.matrix
    b: mpmath.matrix
    c: mpmath.matrix

    def matrix(self) -> mpmath.matrix:
        m = self.b.rows
        i = eye(m)
        h = kron(mpmath.matrix([[1, 1], [1, -1]]) / mpmath.sqrt(2), i)
        return direct_sum(self.a1, self.a2) * h * direct_sum(i, self.b) * h * direct_sum(i, self.c)


def _blocks(u: mpmath.matrix):
    m = u.rows // 2
    def sub(r, c):
        out = mpmath.matrix(m, m)
        for i in range(m):
            for j in range(m):
                out[i, j] = u[r * m + i, c * m + j]
        return out
    return sub(0, 0), sub(0, 1), sub(1, 0), sub(1, 1)


def block_zxz(u: mpmath.matrix) -> BlockZXZ:
    u11, u12, u21, u22 = _blocks(mpmath.matrix(u))
    m = u11.rows
    p1, _, q1h = svd(u11)
    q1 = dagger(q1h)
    s_mat = dagger(p1) * u11 * q1  # diagonal, real up to rounding
    k = dagger(p1) * u12  # rows are sqrt(1 - s_i^2) times orthonormal rows
    tiny = mpmath.mpf(10) ** (-int(mpmath.mp.dps * 0.9))
    cos = [mpmath.re(s_mat[i, i]) for i in range(m)]
    sin = [mpmath.sqrt(sum(abs(k[i, j]) ** 2 for j in range(m))) for i in range(m)]
    rows: list[list | None] = []
    for i in range(m):
        rows.append([k[i, j] / sin[i] for j in range(m)] if sin[i] > tiny else None)
    # complete the missing rows to an orthonormal basis
    basis = [r for r in rows if r is not None]
    e = 0
    for i in range(m):
        if rows[i] is not None:
            continue
        while True:
            v = [mpmath.mpc(1 if j == e else 0) for j in range(m)]
            e += 1
            for b in basis:
                ip = sum(mpmath.conj(b[j]) * v[j] for j in range(m))
                v = [v[j] - ip * b[j] for j in range(m)]
            nv = mpmath.sqrt(sum(abs(x) ** 2 for x in v))
            if nv > mpmath.mpf("0.1"):
                break
        rows[i] = [x / nv for x in v]
        basis.append(rows[i])
    rdag = mpmath.matrix(rows)
    phases = []
    for ci, si in zip(cos, sin):
        z = mpmath.mpc(ci, si)
        phases.append(z / abs(z))
    c = -1j * q1 * rdag
    a1 = p1 * diag(phases) * dagger(q1)
    b = q1 * diag([mpmath.conj(z) ** 2 for z in phases]) * dagger(q1)
    a2 = u21 + u22 * dagger(c)
    return BlockZXZ(a1, a2, b, c)


# -- demultiplexing --------------------------------------------------------------


@dataclass
class Demultiplexed:
    """M1 = V sqrt(D) W, M2 = V sqrt(D)^dag W."""
    v: mpmath.matrix
    w: mpmath.matrix
    d: list

    def sqrt_d(self) -> list:
        return [_principal_sqrt(x) for x in self.d]

    def alphas(self) -> list:
        """Multiplexed R_Z angles: sqrt(d_b) = exp(-i alpha_b / 2)."""
        return [-2 * mpmath.arg(s) for s in self.sqrt_d()]


def _principal_sqrt(z):
    """Square root with argument in (-pi/2, pi/2]."""
    a = mpmath.arg(z)  # (-pi, pi]
    return mpmath.expj(a / 2)


def demultiplex(m1: mpmath.matrix, m2: mpmath.matrix) -> Demultiplexed:
    lam, vecs = eig_unitary(m1 * dagger(m2))
    order = sorted(range(len(lam)), key=lambda i: mpmath.arg(lam[i]))
    n = len(lam)
    v = mpmath.matrix(n, n)
    for jj, i in enumerate(order):
        for r in range(n):
            v[r, jj] = vecs[r, i]
    d = [lam[i] for i in order]
    w = diag([_principal_sqrt(x) for x in d]) * dagger(v) * m2
    return Demultiplexed(v, w, d)


# -- multiplexed R_Z ---------------------------------------------------------------


def gray(j: int) -> int:
    return j ^ (j >> 1)


def walsh_gray_matrix(k: int) -> list[list[int]]:
    """M[i][j] = (-1)^(popcount(i & gray(j)))."""
    n = 1 << k
    return [[-1 if bin(i & gray(j)).count("1") % 2 else 1 for j in range(n)] for i in range(n)]


@dataclass
class MultiplexedRz:
    alphas: list
    thetas: list
    k: int

    def matrix(self) -> mpmath.matrix:
        """Diagonal on (target, controls...), target most significant."""
        vals = [mpmath.expj(-mpmath.mpf(a) / 2) for a in self.alphas]
        return diag(vals + [mpmath.conj(x) for x in vals])

    def ladder(self, target: int, controls: list[int], mirrored: bool = False) -> list[tuple]:
        """Gate tuples ("RZ", wire, theta) / ("CX", control, target) in time order.

        The forward ladder is R_Z(theta_j) then a CNOT from the control whose
        bit flips between gray(j) and gray(j+1). Its time-mirror realizes the
        same diagonal, because every gate in the ladder is a symmetric matrix.
        """
        n = 1 << self.k
        out: list[tuple] = []
        for j in range(n):
            flip = gray(j) ^ gray((j + 1) % n)
            bit = flip.bit_length() - 1
            out.append(("RZ", target, self.thetas[j]))
            out.append(("CX", controls[self.k - 1 - bit], target))
        if mirrored:
            out.reverse()
        return out


def decompose_multiplexed_rz(alphas, k: int) -> tuple[list, Circuit]:
    """theta with M theta = alpha, plus the ladder on wires (target 0, controls 1..k)."""
    alphas = [mpmath.mpf(a) for a in alphas]
    n = 1 << k
    if len(alphas) != n:
        raise ValueError(f"expected {n} angles for {k} controls, got {len(alphas)}")
    m = walsh_gray_matrix(k)
    thetas = [sum(m[i][j] * alphas[i] for i in range(n)) / n for j in range(n)]
    mrz = MultiplexedRz(alphas, thetas, k)
    c = Circuit(k + 1)
    for item in mrz.ladder(0, list(range(1, k + 1))):
        if item[0] == "RZ":
            c.append("RZ", item[1], param=item[2])
        else:
            c.append("CX", item[1], item[2])
    return thetas, c


def _mrz(dm: Demultiplexed) -> MultiplexedRz:
    alphas = dm.alphas()
    k = (len(alphas)).bit_length() - 1
    thetas, _ = decompose_multiplexed_rz(alphas, k)
    return MultiplexedRz(alphas, thetas, k)


# -- recursive plan ----------------------------------------------------------------


@dataclass
class Leaf:
    matrix: mpmath.matrix
    wires: tuple[int, int]


def _z_on_first(m: int) -> mpmath.matrix:
    return kron(mpmath.matrix([[1, 0], [0, -1]]), eye(m // 2))


def plan(u: mpmath.matrix, wires: list[int]) -> list:
    """Time-ordered items: Leaf, ("H", w), ("CX", c, t), ("RZ", w, theta)."""
    if len(wires) == 2:
        return [Leaf(u, (wires[0], wires[1]))]
    z = block_zxz(u)
    m = z.b.rows
    top, low = wires[0], wires[1:]
    dc = demultiplex(eye(m), z.c)
    da = demultiplex(z.a1, z.a2)
    # merged middle multiplexor, with the CZ pair from the dropped CNOTs folded in
    zf = _z_on_first(m)
    b1 = da.w * dc.v
    b2 = zf * da.w * z.b * dc.v * zf
    db = demultiplex(b1, b2)
    out: list = []
    out += plan(dc.w, low)
    out += _mrz(dc).ladder(top, low)[:-1]
    out.append(("H", top))
    out += plan(db.w, low)
    out += _mrz(db).ladder(top, low)
    out += plan(db.v, low)
    out.append(("H", top))
    out += _mrz(da).ladder(top, low, mirrored=True)[1:]
    out += plan(da.v, low)
    return out


def plan_matrix(items: list, n: int) -> mpmath.matrix:
    """Numeric product of a plan (exact rotations), for checking."""
    c = Circuit(n)
    for it in items:
        if isinstance(it, Leaf):
            c.append("U4", *it.wires, param=it.matrix)
        elif it[0] == "RZ":
            c.append("RZ", it[1], param=it[2])
        else:
            c.append(it[0], *it[1:])
    return _unitary_with_blocks(c)


def _unitary_with_blocks(c: Circuit) -> mpmath.matrix:
    """Circuit.unitary extended with dense two-qubit 'U4' blocks."""
    n = c.wires
    out = eye(1 << n)
    chunk = Circuit(n)
    for g in c.gates:
        if g.g == "U4":
            if chunk.gates:
                out = chunk.unitary() * out
                chunk = Circuit(n)
            out = _embed_two(g.param, g.w, n) * out
        else:
            chunk.gates.append(g)
    if chunk.gates:
        out = chunk.unitary() * out
    return out


def _embed_two(u: mpmath.matrix, wires: tuple[int, int], n: int) -> mpmath.matrix:
    w0, w1 = wires
    dim = 1 << n
    out = mpmath.matrix(dim, dim)
    b0, b1 = n - 1 - w0, n - 1 - w1
    for col in range(dim):
        ci = ((col >> b0) & 1) * 2 + ((col >> b1) & 1)
        base = col & ~(1 << b0) & ~(1 << b1)
        for ri in range(4):
            row = base | ((ri >> 1) << b0) | ((ri & 1) << b1)
            out[row, col] = u[ri, ci]
    return out


def call_counts(n: int, absorb: bool = True) -> tuple[int, int]:
    """(magnitude, gridsynth) calls made by approximate_multi_qubit."""
    if n == 1:
        return 1, 2
    if n == 2:
        return 6, 9
    leaves = 4 ** (n - 2)
    # 3 multiplexed R_Z per block, 4^d blocks of 2^(n-1-d) angles at depth d
    rz = 3 * 2 ** (2 * n - 3) - 3 * 2 ** (n - 1)
    if absorb:
        return 6 * leaves, rz + 9 + 6 * (leaves - 1)
    return 6 * leaves, rz + 9 * leaves


# -- synthesis -----------------------------------------------------------------


@dataclass
class MultiQubitResult:
    circuit: Circuit
    unitary: mpmath.matrix
    error: mpmath.mpf
    stats: instrument.CallStats = field(default_factory=instrument.CallStats)

    def __iter__(self):
        return iter((self.circuit, self.unitary))


def approximate_multi_qubit(u: mpmath.matrix, n: int, eps, absorb: bool = True, backend=None,
                            verify: bool = True) -> MultiQubitResult:
    """Circuit within diamond distance eps of U (up to global phase)."""
    eps = mpmath.mpf(eps)
    if n < 3:
        raise ValueError("approximate_multi_qubit handles n >= 3; use su2 / twoqubit below that")
    if u.rows != 1 << n or u.cols != 1 << n:
        raise ValueError(f"expected a {1 << n}x{1 << n} matrix for {n} qubits, got {u.rows}x{u.cols}")
    backend = backend or default_backend()
    with mpmath.workdps(max(mpmath.mp.dps, working_digits(eps))), instrument.counting() as st:
        u = mpmath.matrix(u)
        items = plan(u, list(range(n)))
        mag, gs = call_counts(n, absorb)
        share = eps / (mag + gs)

        n_leaves = sum(isinstance(it, Leaf) for it in items)
        chunks: list[Circuit] = []
        bank = None
        seen_leaves = 0
        for it in reversed(items):
            c = Circuit(n)
            if isinstance(it, Leaf):
                seen_leaves += 1
                target = it.matrix if bank is None else bank * it.matrix
                partial = absorb and seen_leaves < n_leaves
                r = approximate_two_qubit(target, (12 if partial else 15) * share, partial=partial,
                                          backend=backend, verify=False)
                c.extend(r.circuit, {0: it.wires[0], 1: it.wires[1]})
                bank = r.bank.matrix() if r.bank is not None else None
            elif it[0] == "RZ":
                p = backend.rz(it[2], share)
                for g in p.gates:
                    c.gates.append(Gate(g.g, (it[1],), g.param))
                c.phase_w = p.phase_w
            else:
                c.append(it[0], *it[1:])
            chunks.append(c)
        circ = Circuit(n)
        for c in reversed(chunks):
            circ.extend(c)
        realized = circ.unitary()
        err = dnorm_unitary_pair(realized, u)
        if verify and err > eps:
            raise VerificationError(f"{n}-qubit synthesis error {mpmath.nstr(err, 5)} exceeds {mpmath.nstr(eps, 5)}")
    return MultiQubitResult(circ, realized, err, st)
