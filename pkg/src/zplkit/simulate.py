"""Forward simulation of a dephasing two-level emitter.

Coherence decay g(t) = <exp(i*phase)> * exp(-gamma*t) under a stationary
exponentially-correlated (Gauss-Markov) frequency modulation of strength
`sigma`, plus the analytic static-limit form and an FFT route from coherence
to an emission spectrum.  Units: rates in 1/ps, times in ps, energies in meV.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigError, DomainError, InsufficientDecayError
from .fitting import Spectrum
from .physics import HBAR_MEV_PS

__all__ = ["SimulationConfig", "CoherenceTrace", "analytic_coherence",
           "spectrum_from_coherence", "mc_coherence", "simulate_spectrum"]

_PAD_FACTOR = 8  # zero padding of the symmetric trace before the FFT
_DECAY_REQUIRED = 1e-6


@dataclass(frozen=True)
class SimulationConfig:
    """Stochastic-emitter run: rates, time grid, ensemble size, seed.

    sigma is the frequency-modulation strength (1/ps), gamma the homogeneous
    decay rate (1/ps), correlation_rate the inverse correlation time of the
    modulating field (1/ps).
    """

    sigma: float
    gamma: float
    correlation_rate: float
    t_max: float
    dt: float
    n_trajectories: int
    seed: int = 0

    def __post_init__(self):
        if self.sigma < 0 or self.gamma < 0 or self.correlation_rate < 0:
            raise ConfigError("rates must be non-negative")
        if self.sigma + self.gamma <= 0:
            raise ConfigError("need a decay channel: sigma + gamma > 0")
        if not self.dt > 0:
            raise ConfigError("dt must be > 0")
        fastest = max(self.sigma, self.gamma, self.correlation_rate)
        if fastest > 0 and self.dt > 0.1 / fastest:
            raise ConfigError(
                f"dt = {self.dt} too coarse; need dt <= {0.1 / fastest:.4g} "
                "to resolve the fastest rate")
        if self.t_max < 20.0 / (self.sigma + self.gamma):
            raise ConfigError(
                f"t_max = {self.t_max} too short; need >= "
                f"{20.0 / (self.sigma + self.gamma):.4g} for full decay")
        if self.n_trajectories < 1:
            raise ConfigError("n_trajectories must be >= 1")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ConfigError("seed must fit in 64 bits")

    @property
    def n_steps(self):
        return int(round(self.t_max / self.dt))

    @property
    def t_grid(self):
        return np.arange(self.n_steps + 1) * self.dt


@dataclass(frozen=True)
class CoherenceTrace:
    """Coherence g(t) on a time grid; stderr present for Monte-Carlo traces."""

    t: np.ndarray
    g: np.ndarray
    stderr: Optional[np.ndarray] = None

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        g = np.asarray(self.g, dtype=complex)
        if t.ndim != 1 or t.size < 2 or t[0] != 0 or np.any(np.diff(t) <= 0):
            raise DomainError("time grid must start at 0 and ascend")
        if g.shape != t.shape:
            raise DomainError("g must match the time grid")
        if g[0] != 1.0:
            raise DomainError("coherence must start at exactly 1")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "g", g)
        if self.stderr is not None:
            se = np.asarray(self.stderr, dtype=float)
            if se.shape != t.shape or np.any(se < 0):
                raise DomainError("stderr must be non-negative, same shape")
            object.__setattr__(self, "stderr", se)
        bound = 1.0 if self.stderr is None else 1.0 + 3.0 * self.stderr
        if np.any(np.abs(g) > bound + 1e-12):
            raise DomainError("coherence magnitude exceeds 1 beyond its "
                              "statistical error")


def analytic_coherence(sigma, gamma, t_grid) -> CoherenceTrace:
    """Static-limit coherence exp(-sigma^2 t^2 / 2) * exp(-gamma |t|)."""
    if sigma < 0 or gamma < 0:
        raise DomainError("rates must be non-negative")
    t = np.asarray(t_grid, dtype=float)
    g = np.exp(-0.5 * (sigma * t) ** 2) * np.exp(-gamma * np.abs(t))
    return CoherenceTrace(t=t, g=g.astype(complex))


def spectrum_from_coherence(trace, center) -> Spectrum:
    """Emission spectrum as the Fourier transform of the coherence.

    Uses the even extension g(-t) = conj(g(t)), zero-pads the symmetric
    signal by x8, converts the frequency axis to meV via hbar, clips
    negative transform ripple at zero, and normalizes to unit area.

    The trace must have decayed below 1e-6 by t_max; a Monte-Carlo trace
    can never beat its own noise floor, so for those the tail only has to
    be consistent with pure ensemble noise (within 4 standard errors).
    """
    t = trace.t
    g = trace.g
    dt = t[1] - t[0]
    if not np.allclose(np.diff(t), dt, rtol=1e-9, atol=0.0):
        raise DomainError("coherence grid must be uniform for the FFT")
    tail = abs(g[-1])
    allowed = _DECAY_REQUIRED
    if trace.stderr is not None:
        allowed = max(allowed, 4.0 * float(trace.stderr[-1]))
    if tail > allowed:
        raise InsufficientDecayError(
            f"|g(t_max)| = {tail:.3e} exceeds {allowed:.3e}; "
            "extend t_max to avoid windowing error")
    n = g.size
    m = 2 * _PAD_FACTOR * n
    padded = np.zeros(m, dtype=complex)
    padded[:n] = g
    padded[m - n + 1:] = np.conj(g[1:])[::-1]
    raw = (dt * np.fft.fft(padded)).real
    omega = 2.0 * np.pi * np.fft.fftfreq(m, d=dt)
    order = np.argsort(omega)
    energy = center + HBAR_MEV_PS * omega[order]
    intensity = np.clip(raw[order], 0.0, None)
    area = np.trapezoid(intensity, energy)
    if not area > 0:
        raise DomainError("transformed spectrum has no positive weight")
    return Spectrum(energy=energy, intensity=intensity / area,
                    temperature=0.0, emitter_id="simulated")


def _trajectory_batches(n_trajectories, n_draws):
    # keep per-batch noise under ~16M doubles
    batch = max(1, min(n_trajectories, int(2e7 / max(n_draws, 1))))
    start = 0
    while start < n_trajectories:
        yield start, min(start + batch, n_trajectories)
        start += batch


def mc_coherence(config) -> CoherenceTrace:
    """Monte-Carlo coherence from exact Gauss-Markov field trajectories.

    Each trajectory evolves the unit-variance field e by the exact update
    e' = rho*e + sqrt(1-rho^2)*xi with rho = exp(-correlation_rate*dt), and
    accumulates the phase by the trapezoid rule.  Trajectory i draws from
    its own substream spawned as (seed, i), so results are independent of
    batching and scheduling.  stderr is the per-point standard error of the
    complex ensemble mean.
    """
    n_steps = config.n_steps
    n_pts = n_steps + 1
    n_traj = config.n_trajectories
    rho = np.exp(-config.correlation_rate * config.dt)
    kick = np.sqrt(max(0.0, 1.0 - rho * rho))
    half_dt_sigma = 0.5 * config.dt * config.sigma

    sum_z = np.zeros(n_pts, dtype=complex)
    sum_re2 = np.zeros(n_pts)
    sum_im2 = np.zeros(n_pts)
    for lo, hi in _trajectory_batches(n_traj, n_pts):
        noise = np.empty((hi - lo, n_pts))
        for i in range(lo, hi):
            rng = np.random.default_rng(
                np.random.SeedSequence(entropy=config.seed, spawn_key=(i,)))
            noise[i - lo] = rng.standard_normal(n_pts)
        field = noise[:, 0].copy()  # stationary start, unit variance
        phase = np.zeros(hi - lo)
        sum_z[0] += hi - lo
        sum_re2[0] += hi - lo
        for k in range(1, n_pts):
            new_field = rho * field + kick * noise[:, k]
            phase += half_dt_sigma * (field + new_field)
            field = new_field
            z = np.exp(1j * phase)
            sum_z[k] += z.sum()
            sum_re2[k] += (z.real ** 2).sum()
            sum_im2[k] += (z.imag ** 2).sum()

    mean = sum_z / n_traj
    t = config.t_grid
    damp = np.exp(-config.gamma * t)
    if n_traj > 1:
        var_re = (sum_re2 - n_traj * mean.real ** 2) / (n_traj - 1)
        var_im = (sum_im2 - n_traj * mean.imag ** 2) / (n_traj - 1)
        stderr = np.sqrt(np.clip(var_re + var_im, 0.0, None) / n_traj) * damp
    else:
        stderr = np.zeros(n_pts)
    return CoherenceTrace(t=t, g=mean * damp, stderr=stderr)


def simulate_spectrum(config, center) -> Spectrum:
    """Monte-Carlo coherence followed by the FFT route to a spectrum."""
    return spectrum_from_coherence(mc_coherence(config), center)
