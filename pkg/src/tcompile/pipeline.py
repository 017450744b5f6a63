"""One entry point for unitary synthesis at any qubit count."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import mpmath

from . import instrument
from .circuit import Circuit
from .mpnum import working_digits
from .multiqubit import approximate_multi_qubit
from .su2 import approximate_one_qubit_unitary
from .twoqubit import approximate_two_qubit


@dataclass
class SynthesisResult:
    circuit: Circuit
    unitary: mpmath.matrix
    error: mpmath.mpf
    n: int
    eps: mpmath.mpf
    stats: instrument.CallStats = field(default_factory=instrument.CallStats)
    seconds: float = 0.0

    def report(self, seed: int | None = None) -> dict:
        return {
            "n": self.n,
            "epsilon": mpmath.nstr(self.eps, 6),
            "t_count": self.circuit.tcount(),
            "gate_count": len(self.circuit),
            "magnitude_calls": self.stats.magnitude,
            "gridsynth_calls": self.stats.gridsynth,
            "error": mpmath.nstr(self.error, 6),
            "seconds": round(self.seconds, 4),
            "seed": seed,
        }


def qubit_count(u: mpmath.matrix) -> int:
    n = u.rows.bit_length() - 1
    if u.rows != u.cols or 1 << n != u.rows:
        raise ValueError(f"expected a square 2^n matrix, got {u.rows}x{u.cols}")
    return n


def approximate_unitary(u: mpmath.matrix, eps, n: int | None = None, backend=None, absorb: bool = True,
                        verify: bool = True) -> SynthesisResult:
    eps = mpmath.mpf(eps)
    n = qubit_count(u) if n is None else n
    if u.rows != 1 << n:
        raise ValueError(f"matrix is {u.rows}x{u.cols}, not {n} qubits")
    start = time.perf_counter()
    with mpmath.workdps(max(mpmath.mp.dps, working_digits(eps))), instrument.counting() as st:
        if n == 1:
            r = approximate_one_qubit_unitary(u, eps, backend=backend, verify=verify)
            circ, un, err = r.circuit, r.unitary, r.error
        elif n == 2:
            r = approximate_two_qubit(u, eps, backend=backend, verify=verify)
            circ, un, err = r.circuit, r.unitary, r.error
        else:
            r = approximate_multi_qubit(u, n, eps, absorb=absorb, backend=backend, verify=verify)
            circ, un, err = r.circuit, r.unitary, r.error
    return SynthesisResult(circ, un, err, n, eps, st, time.perf_counter() - start)
