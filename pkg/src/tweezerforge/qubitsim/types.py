"""Types for nuclear-spin-qubit sequence simulation."""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Union

import numpy as np


@dataclass(frozen=True)
class TransitionSpec:
    label: str
    linewidth: float              # 2*pi*Hz
    saturation_intensity: float   # mW/cm^2
    isotope_shift: float = 0.0    # 2*pi*Hz between probe target and spectator

    def __post_init__(self):
        if self.linewidth <= 0.0 or self.saturation_intensity <= 0.0:
            raise ValueError("linewidth and saturation intensity must be > 0")


# the two imaging-relevant transitions; intensities from the experimental
# operating point, isotope shift of order 1 GHz for the strong line
PROBE_399 = TransitionSpec("399", linewidth=2.0 * math.pi * 29e6,
                           saturation_intensity=60.0,
                           isotope_shift=2.0 * math.pi * 0.84e9)
COOL_556 = TransitionSpec("556", linewidth=2.0 * math.pi * 182e3,
                          saturation_intensity=0.14,
                          isotope_shift=2.0 * math.pi * 2.4e9)


def scattering_rate(intensity, detuning, linewidth):
    """Steady-state two-level photon scattering rate, events/s.

    intensity is in units of the saturation intensity; detuning and
    linewidth are angular (2*pi*Hz).
    """
    if intensity < 0.0:
        raise ValueError("intensity must be >= 0")
    s = intensity
    return (linewidth / 2.0) * s / \
        (1.0 + s + (2.0 * detuning / linewidth) ** 2)


@dataclass(frozen=True)
class NoiseModel:
    scatter_rate: float = 0.0        # Hz, during exposed waits
    trap_scatter_rate: float = 0.0   # Hz, during all waits
    quasistatic_sigma: float = 0.0   # Hz, shot-to-shot detuning spread
    larmor: float = 0.0              # Hz, Zeeman precession during waits
    # fraction of scattering events that destroy coherence
    raman_fraction: float = 1.0
    readout_infidelity: float = 0.0

    def __post_init__(self):
        for name in ("scatter_rate", "trap_scatter_rate",
                     "quasistatic_sigma", "larmor"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be >= 0")
        for name in ("raman_fraction", "readout_infidelity"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")


@dataclass(frozen=True)
class Pulse:
    phase: float                    # drive axis in the equatorial plane, rad
    area: float                     # rotation angle, rad
    rabi: Optional[float] = None    # 2*pi*Hz; None = ideal instantaneous

    def __post_init__(self):
        if self.area <= 0.0:
            raise ValueError("pulse area must be positive")
        if self.rabi is not None and self.rabi <= 0.0:
            raise ValueError("rabi must be positive when given")


@dataclass(frozen=True)
class Wait:
    duration: float                 # s
    exposed: bool = False           # imaging light on during this wait

    def __post_init__(self):
        if not math.isfinite(self.duration) or self.duration < 0.0:
            raise ValueError("wait duration must be finite and >= 0")


@dataclass
class PulseSequence:
    elements: List[Union[Pulse, Wait]] = field(default_factory=list)

    def __post_init__(self):
        for el in self.elements:
            if not isinstance(el, (Pulse, Wait)):
                raise ValueError(f"unsupported element {el!r}")

    @property
    def total_wait(self):
        return sum(el.duration for el in self.elements
                   if isinstance(el, Wait))


@dataclass
class FitResult:
    params: dict
    covariance: np.ndarray
    residual_norm: float

    def error(self, name):
        idx = list(self.params).index(name)
        return float(np.sqrt(max(self.covariance[idx, idx], 0.0)))
