"""Dataclass configs shared by the library, the CLI and the scripts."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class SynthesisConfig:
    seed: int = 0
    max_candidates: int = 1_000_000
    factor_budget: int | None = None  # None: max(bits^2, 2^21) up to 128 bits, bits^2 above
    up_to_phase: bool = False
    absorb: bool = True
    verify: bool = True

    def backend(self):
        from .su2 import CliffordTBackend

        return CliffordTBackend(self.seed, self.max_candidates, self.factor_budget, self.up_to_phase)


@dataclass
class MixedConfig:
    repulsion_iterations: int = 50
    repulsion_step: float = 0.01
    repulsion_delta: float = 1e-6
    candidate_fraction: float = 0.1  # candidate synthesis tolerance / eps
    lp_scale: float | None = None  # s; None means 1e-2 / eps
    lp_tol: float = 1e-9
    sdp_max_qubits: int = 2


@dataclass
class BenchConfig:
    qubits: list[int] = field(default_factory=lambda: [1])
    epsilons: list[float] = field(default_factory=lambda: [1e-2, 1e-4, 1e-6, 1e-8, 1e-10])
    trials: int = 10
    seed: int = 0
    workers: int = 1
