"""Scattering of spin-0 DKP and spinless Salpeter particles by the Hellmann potential."""

__version__ = "0.1.0"

from .dkp import (  # noqa: E402
    DkpChannel,
    dkp_bound_states,
    dkp_hyper_triple,
    dkp_normalization,
    dkp_phase_shift,
    dkp_total_cross_section,
    dkp_wave_number,
    dkp_wavefunction,
)
from .errors import (  # noqa: E402
    ComplexExponent,
    EvanescentChannel,
    HellmannError,
    PoleAtNonPositiveInteger,
)
from .model import HellmannPotential  # noqa: E402
from .results import BoundState, HyperTriple, PhaseShiftResult, RadialSolution  # noqa: E402
from .sse import (  # noqa: E402
    SseChannel,
    sse_bound_states,
    sse_hyper_triple,
    sse_normalization,
    sse_phase_shift,
    sse_total_cross_section,
    sse_wave_number,
    sse_wavefunction,
)

__all__ = [
    "BoundState",
    "ComplexExponent",
    "DkpChannel",
    "EvanescentChannel",
    "HellmannError",
    "HellmannPotential",
    "HyperTriple",
    "PhaseShiftResult",
    "PoleAtNonPositiveInteger",
    "RadialSolution",
    "SseChannel",
    "dkp_bound_states",
    "dkp_hyper_triple",
    "dkp_normalization",
    "dkp_phase_shift",
    "dkp_total_cross_section",
    "dkp_wave_number",
    "dkp_wavefunction",
    "sse_bound_states",
    "sse_hyper_triple",
    "sse_normalization",
    "sse_phase_shift",
    "sse_total_cross_section",
    "sse_wave_number",
    "sse_wavefunction",
]
