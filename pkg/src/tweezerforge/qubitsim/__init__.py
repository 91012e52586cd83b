"""Bloch-vector Monte Carlo for qubit coherence under trap and imaging light."""

from .types import (
    COOL_556,
    PROBE_399,
    FitResult,
    NoiseModel,
    Pulse,
    PulseSequence,
    TransitionSpec,
    Wait,
    scattering_rate,
)
from .bloch import hahn_echo_sequence, ramsey_sequence, simulate_sequence
from .fitting import (
    contrast_ratio,
    fit_damped_sinusoid,
    fit_stretched_exp,
    fringe_contrast,
    pi_pulse_fidelity,
)
from .presets import (
    EXTRA_399_SCATTER_RATE,
    LARMOR_HZ,
    PRESETS,
    TRAP_SCATTER_RATE,
    PresetSpec,
    preset,
)
from .curves import (
    contrast_curve,
    curve_from_csv,
    curve_to_csv,
    load_noise,
    load_sequence,
    noise_from_dict,
    noise_to_dict,
    save_noise,
    save_sequence,
    sequence_from_dict,
    sequence_to_dict,
)

__all__ = [
    "COOL_556",
    "EXTRA_399_SCATTER_RATE",
    "LARMOR_HZ",
    "PRESETS",
    "PROBE_399",
    "TRAP_SCATTER_RATE",
    "FitResult",
    "NoiseModel",
    "PresetSpec",
    "Pulse",
    "PulseSequence",
    "TransitionSpec",
    "Wait",
    "contrast_curve",
    "contrast_ratio",
    "curve_from_csv",
    "curve_to_csv",
    "fit_damped_sinusoid",
    "fit_stretched_exp",
    "fringe_contrast",
    "hahn_echo_sequence",
    "load_noise",
    "load_sequence",
    "noise_from_dict",
    "noise_to_dict",
    "pi_pulse_fidelity",
    "preset",
    "ramsey_sequence",
    "save_noise",
    "save_sequence",
    "scattering_rate",
    "sequence_from_dict",
    "sequence_to_dict",
    "simulate_sequence",
]
