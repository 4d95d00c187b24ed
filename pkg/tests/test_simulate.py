import numpy as np
import pytest

from zplkit.errors import ConfigError, DomainError, InsufficientDecayError
from zplkit.fitting import Spectrum, classify_lineshape
from zplkit.lineshape import GAUSSIAN_FWHM_FACTOR, grid_fwhm
from zplkit.physics import HBAR_MEV_PS
from zplkit.simulate import (CoherenceTrace, SimulationConfig,
                             analytic_coherence, mc_coherence,
                             simulate_spectrum, spectrum_from_coherence)


def _config(**kw):
    base = dict(sigma=1.0, gamma=0.0, correlation_rate=0.01, t_max=20.0,
                dt=0.1, n_trajectories=200, seed=0)
    base.update(kw)
    return SimulationConfig(**base)


def test_config_validation():
    _config()  # valid
    with pytest.raises(ConfigError):
        _config(sigma=-1.0)
    with pytest.raises(ConfigError):
        _config(sigma=0.0, gamma=0.0)
    with pytest.raises(ConfigError):
        _config(dt=0.0)
    with pytest.raises(ConfigError):
        _config(dt=0.5)  # coarser than 0.1/max(rates)
    with pytest.raises(ConfigError):
        _config(t_max=5.0)  # shorter than 20/(sigma+gamma)
    with pytest.raises(ConfigError):
        _config(n_trajectories=0)


def test_analytic_coherence_shapes():
    t = np.linspace(0.0, 20.0, 201)
    trace = analytic_coherence(1.0, 0.0, t)
    assert trace.g[0] == 1.0
    assert np.allclose(trace.g.real, np.exp(-0.5 * t * t))
    trace = analytic_coherence(0.0, 0.7, t)
    assert np.allclose(trace.g.real, np.exp(-0.7 * t))
    mags = np.abs(trace.g)
    assert np.all(np.diff(mags) <= 1e-15)


def test_coherence_trace_validation():
    t = np.linspace(0.0, 10.0, 11)
    with pytest.raises(DomainError):
        CoherenceTrace(t=t, g=np.full(11, 0.5, dtype=complex))  # g(0) != 1
    with pytest.raises(DomainError):
        CoherenceTrace(t=t + 1.0, g=np.ones(11, dtype=complex))


def test_spectrum_from_coherence_degenerate_limits():
    # pure exponential -> Lorentzian of FWHM 2*gamma*hbar
    gamma = 0.5
    t = np.arange(0.0, 40.0001, 0.2)
    spec = spectrum_from_coherence(analytic_coherence(0.0, gamma, t), 1800.0)
    measured = grid_fwhm(spec.energy, spec.intensity)
    assert abs(measured - 2 * gamma * HBAR_MEV_PS) / (
        2 * gamma * HBAR_MEV_PS) < 0.01
    # pure Gaussian decay -> Gaussian line
    sigma = 0.7
    t = np.arange(0.0, 30.0001, 0.1)
    spec = spectrum_from_coherence(analytic_coherence(sigma, 0.0, t), 1800.0)
    expected = GAUSSIAN_FWHM_FACTOR * sigma * HBAR_MEV_PS
    assert abs(grid_fwhm(spec.energy, spec.intensity) - expected) / expected < 0.01
    assert np.trapezoid(spec.intensity, spec.energy) == pytest.approx(
        1.0, abs=1e-6)
    assert np.all(spec.intensity >= 0)


def test_spectrum_from_coherence_requires_decay():
    t = np.linspace(0.0, 1.0, 51)
    with pytest.raises(InsufficientDecayError):
        spectrum_from_coherence(analytic_coherence(0.1, 0.1, t), 1800.0)


def test_mc_sigma_zero_is_exact():
    config = _config(sigma=0.0, gamma=0.5, correlation_rate=0.0, t_max=40.0,
                     dt=0.2, n_trajectories=37)
    trace = mc_coherence(config)
    assert np.array_equal(trace.g.real, np.exp(-0.5 * trace.t))
    assert np.all(trace.g.imag == 0.0)
    assert np.all(trace.stderr == 0.0)


def test_mc_slow_modulation_matches_static_limit():
    config = _config(n_trajectories=4000, seed=21)
    trace = mc_coherence(config)
    analytic = analytic_coherence(config.sigma, config.gamma, trace.t)
    mask = (trace.t > 0) & (trace.t <= 5.0)
    diff = np.abs(trace.g[mask] - analytic.g[mask])
    assert np.all(diff <= 3.0 * trace.stderr[mask])


def test_mc_fast_modulation_motional_narrowing():
    # correlation rate 100x the modulation strength: decay rate -> sigma^2/lam
    sigma, lam = 1.0, 100.0
    config = SimulationConfig(sigma=sigma, gamma=0.0, correlation_rate=lam,
                              t_max=20.0, dt=0.001, n_trajectories=2000,
                              seed=5)
    trace = mc_coherence(config)
    mask = trace.t >= 1.0
    slope = np.polyfit(trace.t[mask], np.log(trace.g.real[mask]), 1)[0]
    expected = -sigma ** 2 / lam
    assert abs(slope - expected) / abs(expected) < 0.10


def test_mc_determinism_and_stderr_scaling():
    a = mc_coherence(_config(n_trajectories=1000, seed=9))
    b = mc_coherence(_config(n_trajectories=1000, seed=9))
    assert np.array_equal(a.g, b.g) and np.array_equal(a.stderr, b.stderr)
    c = mc_coherence(_config(n_trajectories=2000, seed=9))
    ratio = np.mean(a.stderr[1:] / c.stderr[1:])
    assert ratio == pytest.approx(np.sqrt(2.0), rel=0.10)


def _counts_spectrum(spec):
    scale = 1e4 / spec.intensity.max()
    return Spectrum(spec.energy, spec.intensity * scale,
                    temperature=spec.temperature)


def test_simulated_pure_dephasing_classifies_lorentzian():
    config = SimulationConfig(sigma=0.0, gamma=2.0, correlation_rate=0.0,
                              t_max=10.0, dt=0.05, n_trajectories=10,
                              seed=2)
    spec = simulate_spectrum(config, center=1810.0)
    assert classify_lineshape(_counts_spectrum(spec),
                              weighted=False).label == "lorentzian"


def test_simulated_pure_diffusion_classifies_gaussian():
    sigma = 0.5
    config = SimulationConfig(sigma=sigma, gamma=0.0,
                              correlation_rate=sigma / 500.0, t_max=40.0,
                              dt=0.2, n_trajectories=3000, seed=8)
    spec = simulate_spectrum(config, center=1810.0)
    assert classify_lineshape(_counts_spectrum(spec),
                              weighted=False).label == "gaussian"


def test_simulate_spectrum_recovers_tuned_linewidths():
    # rates tuned to produce component FWHMs of 0.72 and 6.82 meV
    from zplkit.fitting import fit_voigt
    sigma = (0.72 / GAUSSIAN_FWHM_FACTOR) / HBAR_MEV_PS
    gamma = (6.82 / 2.0) / HBAR_MEV_PS
    config = SimulationConfig(sigma=sigma, gamma=gamma,
                              correlation_rate=sigma / 100.0,
                              t_max=20.0 / (sigma + gamma),
                              dt=0.01 / max(sigma, gamma),
                              n_trajectories=10000, seed=3)
    spec = simulate_spectrum(config, center=1813.5)
    fit = fit_voigt(_counts_spectrum(spec), weighted=False)
    assert abs(fit.params.gaussian_fwhm - 0.72) / 0.72 < 0.05
    assert abs(fit.params.lorentzian_fwhm - 6.82) / 6.82 < 0.05
