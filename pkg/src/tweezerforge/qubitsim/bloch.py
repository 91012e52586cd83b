"""Monte Carlo Bloch-vector evolution through pulse sequences.

All trajectories evolve in lockstep as numpy arrays.  Each trajectory
draws one quasi-static detuning for the whole shot; waits accrue phase
at the Larmor frequency plus that detuning and may suffer scattering
events (Poisson), each of which zeroes the transverse Bloch components
(full phase randomization) while preserving the population.  Pulses are
exact rotations: ideal ones about the equatorial drive axis, finite-Rabi
ones about the detuning-tilted axis at the generalized Rabi angle.
Pulses are treated as short enough to ignore scattering and Larmor
precession within them; the drive is tuned to the qubit splitting, so
only the quasi-static offset tilts the axis.
"""

import math

import numpy as np

from .types import NoiseModel, Pulse, PulseSequence, Wait


def _rotate(x, y, z, kx, ky, kz, theta):
    """Rodrigues rotation of per-trajectory vectors about per-trajectory
    unit axes."""
    ct = np.cos(theta)
    st = np.sin(theta)
    dot = kx * x + ky * y + kz * z
    cx = ky * z - kz * y
    cy = kz * x - kx * z
    cz = kx * y - ky * x
    nx = x * ct + cx * st + kx * dot * (1.0 - ct)
    ny = y * ct + cy * st + ky * dot * (1.0 - ct)
    nz = z * ct + cz * st + kz * dot * (1.0 - ct)
    return nx, ny, nz


def _apply_pulse(state, pulse, delta_ang):
    x, y, z = state
    if pulse.rabi is None:
        kx = math.cos(pulse.phase)
        ky = math.sin(pulse.phase)
        return _rotate(x, y, z, kx, ky, 0.0, pulse.area)
    omega = pulse.rabi
    w = np.sqrt(omega ** 2 + delta_ang ** 2)
    t = pulse.area / omega
    kx = (omega / w) * math.cos(pulse.phase)
    ky = (omega / w) * math.sin(pulse.phase)
    kz = delta_ang / w
    return _rotate(x, y, z, kx, ky, kz, w * t)


def _apply_wait(state, wait, noise, delta_hz, rng):
    x, y, z = state
    theta = 2.0 * math.pi * (noise.larmor + delta_hz) * wait.duration
    ct, st = np.cos(theta), np.sin(theta)
    x, y = x * ct - y * st, x * st + y * ct
    rate = noise.trap_scatter_rate + \
        (noise.scatter_rate if wait.exposed else 0.0)
    if rate > 0.0 and wait.duration > 0.0:
        events = rng.poisson(rate * wait.duration, size=x.shape)
        if noise.raman_fraction >= 1.0:
            destroyed = events > 0
        else:
            destroyed = rng.binomial(events, noise.raman_fraction) > 0
        x = np.where(destroyed, 0.0, x)
        y = np.where(destroyed, 0.0, y)
    return x, y, z


def simulate_sequence(seq, noise=None, n_trajectories=1, seed=None):
    """Mean excited-state population after the sequence.

    Returns (P1, stderr).  The Bloch vector starts at (0, 0, -1) = |0>,
    and P1 = (1 + z)/2 at readout.
    """
    if n_trajectories < 1:
        raise ValueError("n_trajectories must be >= 1")
    if isinstance(seq, (list, tuple)):
        seq = PulseSequence(list(seq))
    noise = noise or NoiseModel()
    rng = np.random.default_rng(seed)
    n = int(n_trajectories)

    delta_hz = rng.normal(0.0, noise.quasistatic_sigma, size=n) \
        if noise.quasistatic_sigma > 0.0 else np.zeros(n)
    delta_ang = 2.0 * math.pi * delta_hz

    state = (np.zeros(n), np.zeros(n), np.full(n, -1.0))
    for el in seq.elements:
        if isinstance(el, Pulse):
            state = _apply_pulse(state, el, delta_ang)
        else:
            state = _apply_wait(state, el, noise, delta_hz, rng)

    p1 = 0.5 * (1.0 + state[2])
    eps = noise.readout_infidelity
    if eps > 0.0:
        p1 = p1 * (1.0 - eps) + (1.0 - p1) * eps
    mean = float(np.mean(p1))
    err = float(np.std(p1, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return mean, err


def ramsey_sequence(T, delta_t=0.0, exposed=True, rabi=None):
    """pi/2 - wait(T + dT) - pi/2."""
    return PulseSequence([
        Pulse(0.0, math.pi / 2.0, rabi),
        Wait(T + delta_t, exposed),
        Pulse(0.0, math.pi / 2.0, rabi),
    ])


def hahn_echo_sequence(T, delta_t=0.0, exposed=True, rabi=None):
    """pi/2 - wait(T/2) - pi - wait(T/2 + dT) - pi/2.

    The refocusing pulse cancels static detuning over the symmetric
    part; the deliberate asymmetry dT turns Larmor precession into a
    fringe.
    """
    return PulseSequence([
        Pulse(0.0, math.pi / 2.0, rabi),
        Wait(T / 2.0, exposed),
        Pulse(0.0, math.pi, rabi),
        Wait(T / 2.0 + delta_t, exposed),
        Pulse(0.0, math.pi / 2.0, rabi),
    ])
