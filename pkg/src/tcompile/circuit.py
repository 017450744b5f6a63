"""Gate lists on numbered wires, with exact and numeric evaluation.

Gate order is application order: gates[0] acts first. Wire 0 is the most
significant tensor factor. ``phase_w`` is a global phase omega**phase_w.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import mpmath

from .mpnum import eye, matrix_from_json, matrix_to_json
from .ringmat import GATES, DOmegaUnitary

CLIFFORD_T = frozenset("HSTXZ")
PARAMETRIC = frozenset({"RZ", "RX", "U"})


@dataclass(frozen=True)
class Gate:
    g: str
    w: tuple[int, ...]
    param: object = None  # angle for RZ/RX, 2x2 mpmath matrix for U

    def to_json(self) -> dict:
        out: dict = {"g": self.g, "w": list(self.w)}
        if self.g in ("RZ", "RX"):
            out["theta"] = mpmath.nstr(self.param, mpmath.mp.dps)
        elif self.g == "U":
            out["matrix"] = matrix_to_json(self.param)
        return out

    @staticmethod
    def from_json(obj: dict) -> "Gate":
        g = obj["g"]
        param = None
        if g in ("RZ", "RX"):
            param = mpmath.mpf(obj["theta"])
        elif g == "U":
            param = matrix_from_json(obj["matrix"])
        return Gate(g, tuple(obj["w"]), param)


def _single_matrix(gate: Gate) -> mpmath.matrix:
    if gate.g in CLIFFORD_T:
        return GATES[gate.g].to_mpmath()
    if gate.g == "RZ":
        h = mpmath.mpf(gate.param) / 2
        return mpmath.matrix([[mpmath.expj(-h), 0], [0, mpmath.expj(h)]])
    if gate.g == "RX":
        h = mpmath.mpf(gate.param) / 2
        c, s = mpmath.cos(h), mpmath.sin(h)
        return mpmath.matrix([[c, -1j * s], [-1j * s, c]])
    if gate.g == "U":
        return gate.param
    raise ValueError(f"not a single-qubit gate: {gate.g}")


@dataclass
class Circuit:
    wires: int
    gates: list[Gate] = field(default_factory=list)
    phase_w: int = 0

    def __len__(self) -> int:
        return len(self.gates)

    def append(self, g: str, *w: int, param=None) -> None:
        self.gates.append(Gate(g, tuple(w), param))

    def add_word(self, word: str, wire: int) -> None:
        """Append a Clifford+T word (application order); W letters become global phase."""
        for ch in word:
            if ch == "W":
                self.phase_w = (self.phase_w + 1) % 8
            else:
                self.gates.append(Gate(ch, (wire,)))

    def extend(self, other: "Circuit", wire_map: dict[int, int] | None = None) -> None:
        m = wire_map or {i: i for i in range(other.wires)}
        for gt in other.gates:
            self.gates.append(Gate(gt.g, tuple(m[x] for x in gt.w), gt.param))
        self.phase_w = (self.phase_w + other.phase_w) % 8

    def tcount(self) -> int:
        return sum(1 for gt in self.gates if gt.g == "T")

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for gt in self.gates:
            out[gt.g] = out.get(gt.g, 0) + 1
        return out

    def is_clifford_t(self) -> bool:
        return all(gt.g in CLIFFORD_T or gt.g == "CX" for gt in self.gates)

    # -- evaluation ---------------------------------------------------------

    def exact_unitary(self) -> DOmegaUnitary:
        """Ring-exact matrix of a one-wire Clifford+T circuit."""
        if self.wires != 1 or not self.is_clifford_t():
            raise ValueError("exact evaluation needs a one-wire Clifford+T circuit")
        m = DOmegaUnitary.identity()
        for gt in self.gates:
            m = GATES[gt.g] @ m
        return m.scale_omega(self.phase_w)

    def unitary(self) -> mpmath.matrix:
        """Numeric matrix at the current working precision.

        Runs of single-qubit gates are multiplied as 2x2 blocks before being
        applied to the full state, which keeps long Clifford+T words cheap.
        """
        n = self.wires
        dim = 1 << n
        rows = [[mpmath.mpc(1) if i == j else mpmath.mpc(0) for j in range(dim)] for i in range(dim)]
        pending: dict[int, mpmath.matrix] = {}

        def flush(w: int) -> None:
            g = pending.pop(w, None)
            if g is not None:
                _apply_1q(rows, g, n - 1 - w)

        for gt in self.gates:
            if gt.g == "CX":
                c, t = gt.w
                flush(c)
                flush(t)
                _apply_cx(rows, n - 1 - c, n - 1 - t)
                continue
            (w,) = gt.w
            m = _single_matrix(gt)
            pending[w] = m * pending[w] if w in pending else m
        for w in list(pending):
            flush(w)
        out = mpmath.matrix(rows)
        if self.phase_w:
            out = out * mpmath.expjpi(mpmath.mpf(self.phase_w) / 4)
        return out

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"wires": self.wires, "gates": [g.to_json() for g in self.gates], "phase_w": self.phase_w}

    @staticmethod
    def from_json(obj: dict) -> "Circuit":
        return Circuit(int(obj["wires"]), [Gate.from_json(g) for g in obj["gates"]], int(obj.get("phase_w", 0)) % 8)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def word(self) -> str:
        """Gate string of a one-wire Clifford+T circuit."""
        if self.wires != 1:
            raise ValueError("word() is defined for one-wire circuits")
        return "".join(g.g for g in self.gates) + "W" * self.phase_w


def _apply_1q(rows, g: mpmath.matrix, bit: int) -> None:
    """rows <- (g on the given bit) @ rows, in place."""
    g00, g01, g10, g11 = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
    mask = 1 << bit
    for i in range(len(rows)):
        if i & mask:
            continue
        r0, r1 = rows[i], rows[i | mask]
        rows[i] = [g00 * a + g01 * b for a, b in zip(r0, r1)]
        rows[i | mask] = [g10 * a + g11 * b for a, b in zip(r0, r1)]


def _apply_cx(rows, cbit: int, tbit: int) -> None:
    cm, tm = 1 << cbit, 1 << tbit
    for i in range(len(rows)):
        if i & cm and not i & tm:
            rows[i], rows[i | tm] = rows[i | tm], rows[i]


def cx_matrix() -> mpmath.matrix:
    m = eye(4)
    m[2, 2] = m[3, 3] = 0
    m[2, 3] = m[3, 2] = 1
    return m
