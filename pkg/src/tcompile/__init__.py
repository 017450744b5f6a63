"""Arbitrary-precision Clifford+T synthesis for one- and multi-qubit unitaries."""

from .chanmetrics import dnorm_sdp, dnorm_unitary_pair
from .circuit import Circuit, Gate
from .config import BenchConfig, MixedConfig, SynthesisConfig
from .errors import SynthesisFailure, VerificationError
from .exactsynth import decompose_domega_unitary
from .mixed import MixedResult, mixed_synthesis
from .multiqubit import approximate_multi_qubit, block_zxz, decompose_multiplexed_rz, demultiplex
from .pipeline import SynthesisResult, approximate_unitary
from .su2 import CliffordTBackend, ExactBackend, approximate_one_qubit_unitary, euler_decompose
from .twoqubit import approximate_two_qubit, decompose_two_qubit
from .zrot import gridsynth, synthesize_rz

__all__ = [
    "BenchConfig", "Circuit", "CliffordTBackend", "ExactBackend", "Gate", "MixedConfig", "MixedResult",
    "SynthesisConfig", "SynthesisFailure", "SynthesisResult", "VerificationError",
    "approximate_multi_qubit", "approximate_one_qubit_unitary", "approximate_two_qubit", "approximate_unitary",
    "block_zxz", "decompose_domega_unitary", "decompose_multiplexed_rz", "decompose_two_qubit", "demultiplex",
    "dnorm_sdp", "dnorm_unitary_pair", "euler_decompose", "gridsynth", "mixed_synthesis", "synthesize_rz",
]
