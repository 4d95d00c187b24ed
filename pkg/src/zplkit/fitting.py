"""Voigt fits of emission spectra, lineshape classification, and
temperature-series dephasing-model fits with AIC model comparison."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import physics
from .errors import (DomainError, InsufficientDataError, NoPeakError,
                     NotConvergedError)
from .lineshape import (GAUSSIAN_FWHM_FACTOR, VoigtParams, gamma_from_fwhm,
                        gaussian_profile, grid_fwhm, invert_voigt_fwhm,
                        sigma_from_fwhm, voigt_fwhm, voigt_profile,
                        voigt_value_and_derivatives)
from .optimize import least_squares

__all__ = [
    "Spectrum", "VoigtFit", "LineshapeClassification", "SeriesModelFit",
    "ModelComparison", "SeriesFitResult",
    "fit_voigt", "classify_lineshape", "extract_components",
    "fit_series", "compare_models", "analyze_series",
    "build_voigt_problem", "build_series_problem",
]

_FWHM_CL = 0.5346
_FWHM_CQ = 0.2166


@dataclass(frozen=True)
class Spectrum:
    """One emission spectrum: ascending energy grid, counts, temperature tag."""

    energy: np.ndarray
    intensity: np.ndarray
    temperature: float = 0.0
    emitter_id: str = ""

    def __post_init__(self):
        energy = np.asarray(self.energy, dtype=float).copy()
        intensity = np.asarray(self.intensity, dtype=float).copy()
        if energy.ndim != 1 or intensity.ndim != 1:
            raise DomainError("energy and intensity must be 1-d arrays")
        if energy.size != intensity.size:
            raise DomainError("energy and intensity lengths differ")
        if energy.size < 20:
            raise DomainError(f"need >= 20 points, got {energy.size}")
        if not np.all(np.isfinite(energy)) or not np.all(np.isfinite(intensity)):
            raise DomainError("energy and intensity must be finite")
        if np.any(np.diff(energy) <= 0):
            raise DomainError("energy grid must be strictly increasing")
        if np.any(intensity < 0):
            raise DomainError("intensities must be non-negative")
        if not (np.isfinite(self.temperature) and self.temperature >= 0):
            raise DomainError("temperature must be finite and >= 0")
        energy.setflags(write=False)
        intensity.setflags(write=False)
        object.__setattr__(self, "energy", energy)
        object.__setattr__(self, "intensity", intensity)

    @property
    def n_points(self):
        return self.energy.size


@dataclass(frozen=True)
class VoigtFit:
    """Converged Voigt fit: parameters, 1-sigma uncertainties, residual info."""

    params: VoigtParams
    uncertainties: VoigtParams
    rss: float
    n_points: int
    converged: bool
    n_iterations: int
    mode: str = "voigt"

    @property
    def total_fwhm(self):
        return voigt_fwhm(self.params.gaussian_fwhm, self.params.lorentzian_fwhm)


@dataclass(frozen=True)
class LineshapeClassification:
    label: str  # "gaussian" | "lorentzian" | "ambiguous"
    rss_gaussian: float
    rss_lorentzian: float
    rss_ratio: float
    fit_gaussian: VoigtFit
    fit_lorentzian: VoigtFit


@dataclass(frozen=True)
class SeriesModelFit:
    kind: str
    model: physics.DephasingModel
    quantity: str
    rss: float
    n_points: int
    n_free: int
    converged: bool
    n_iterations: int


@dataclass(frozen=True)
class ModelComparison:
    kind: str
    model: physics.DephasingModel
    rss: float
    n_free: int
    aic: float
    delta_aic: float


@dataclass(frozen=True)
class SeriesFitResult:
    per_temperature: tuple
    comparisons: tuple
    best_model: str
    gaussian_floor: float
    quantity: str


# ---------------------------------------------------------------------------
# per-spectrum Voigt fitting
# ---------------------------------------------------------------------------

_MODE_PARAMS = {
    "voigt": ("center", "u_g", "u_l", "amplitude", "baseline"),
    "gaussian": ("center", "u_g", "amplitude", "baseline"),
    "lorentzian": ("center", "u_l", "amplitude", "baseline"),
}


def _profile_and_grads(x, mode, u_g, u_l):
    """Density and partials wrt (x, u_g, u_l); widths enter as fwhm = u^2."""
    if mode == "gaussian":
        sigma = sigma_from_fwhm(u_g * u_g)
        if sigma == 0:
            raise DomainError("zero Gaussian width")
        value = gaussian_profile(x, sigma)
        d_dx = -(x / sigma ** 2) * value
        d_dsigma = (x * x / sigma ** 3 - 1.0 / sigma) * value
        d_ug = d_dsigma * (2.0 * u_g / GAUSSIAN_FWHM_FACTOR)
        return value, d_dx, d_ug, None
    if mode == "lorentzian":
        gamma = gamma_from_fwhm(u_l * u_l)
        if gamma == 0:
            raise DomainError("zero Lorentzian width")
        denom = x * x + gamma * gamma
        value = (gamma / np.pi) / denom
        d_dx = -2.0 * x * gamma / (np.pi * denom * denom)
        d_dgamma = (x * x - gamma * gamma) / (np.pi * denom * denom)
        return value, d_dx, None, d_dgamma * u_l
    sigma = sigma_from_fwhm(u_g * u_g)
    gamma = gamma_from_fwhm(u_l * u_l)
    value, d_dx, d_dsigma, d_dgamma = voigt_value_and_derivatives(x, sigma, gamma)
    d_ug = d_dsigma * (2.0 * u_g / GAUSSIAN_FWHM_FACTOR)
    d_ul = d_dgamma * u_l
    return value, d_dx, d_ug, d_ul


def build_voigt_problem(spectrum, mode="voigt", weighted=True):
    """Residual and Jacobian closures for the damped least-squares engine.

    Exposed so tests can verify the analytic Jacobian against central finite
    differences.  Residuals are sqrt(w) * (model - intensity) with Poisson
    weights w = 1/max(I, 1) unless `weighted` is False.
    """
    if mode not in _MODE_PARAMS:
        raise DomainError(f"unknown fit mode {mode!r}")
    energy = spectrum.energy
    intensity = spectrum.intensity
    sqrt_w = (1.0 / np.sqrt(np.maximum(intensity, 1.0)) if weighted
              else np.ones_like(intensity))

    def unpack(p):
        if mode == "voigt":
            center, u_g, u_l, amplitude, baseline = p
        elif mode == "gaussian":
            center, u_g, amplitude, baseline = p
            u_l = 0.0
        else:
            center, u_l, amplitude, baseline = p
            u_g = 0.0
        return center, u_g, u_l, amplitude, baseline

    def residual(p):
        center, u_g, u_l, amplitude, baseline = unpack(p)
        try:
            value, _, _, _ = _profile_and_grads(energy - center, mode, u_g, u_l)
        except DomainError:
            return np.full(energy.size, np.inf)
        return sqrt_w * (baseline + amplitude * value - intensity)

    def jacobian(p):
        center, u_g, u_l, amplitude, baseline = unpack(p)
        value, d_dx, d_ug, d_ul = _profile_and_grads(
            energy - center, mode, u_g, u_l)
        columns = [-amplitude * d_dx]
        if mode in ("voigt", "gaussian"):
            columns.append(amplitude * d_ug)
        if mode in ("voigt", "lorentzian"):
            columns.append(amplitude * d_ul)
        columns.append(value)
        columns.append(np.ones_like(value))
        return sqrt_w[:, None] * np.stack(columns, axis=1)

    return residual, jacobian, unpack


def _robust_outer_stats(intensity):
    k = max(2, intensity.size // 10)
    outer = np.concatenate([intensity[:k], intensity[-k:]])
    baseline = float(np.median(outer))
    noise = 1.4826 * float(np.median(np.abs(outer - baseline)))
    return baseline, noise


def _initial_guess(spectrum):
    energy = spectrum.energy
    intensity = spectrum.intensity
    baseline, noise = _robust_outer_stats(intensity)
    peak = float(intensity.max())
    if not peak > baseline + 5.0 * noise:
        raise NoPeakError(
            f"peak {peak:.4g} not above baseline {baseline:.4g} "
            f"+ 5 * noise {noise:.4g}")
    excess = np.clip(intensity - baseline, 0.0, None)
    total = float(excess.sum())
    if total <= 0:
        raise NoPeakError("no intensity above the baseline estimate")
    center = float((energy * excess).sum() / total)
    variance = float((((energy - center) ** 2) * excess).sum() / total)
    span = float(energy[-1] - energy[0])
    min_width = 4.0 * float(np.median(np.diff(energy)))
    width = float(np.clip(GAUSSIAN_FWHM_FACTOR * math.sqrt(max(variance, 0.0)),
                          min_width, span / 2.0))
    # the second moment is window-dominated for Lorentzian wings; cap it
    # with the measured FWHM when the half-max crossings are on the grid
    try:
        width = min(width, 1.5 * grid_fwhm(energy, excess))
    except DomainError:
        pass
    width = max(width, min_width)
    half = width / 2.0
    amp = (peak - baseline) / voigt_profile(
        0.0, sigma_from_fwhm(half), gamma_from_fwhm(half))
    return VoigtParams(center, half, half, float(max(amp, 1e-30)), baseline)


def _run_mode(spectrum, start, mode, weighted, max_iterations):
    """One damped fit of the given shape family; returns a VoigtFit or the
    unconverged optimizer result (flagged by converged=False)."""
    residual, jacobian, unpack = build_voigt_problem(spectrum, mode, weighted)
    names = _MODE_PARAMS[mode]
    p0 = {"center": start.center, "u_g": math.sqrt(start.gaussian_fwhm),
          "u_l": math.sqrt(start.lorentzian_fwhm),
          "amplitude": start.amplitude, "baseline": start.baseline}
    result = least_squares(residual, jacobian, [p0[k] for k in names],
                           max_iterations=max_iterations)
    center, u_g, u_l, amplitude, baseline = unpack(result.params)
    sd = np.sqrt(np.clip(np.diag(result.covariance), 0.0, None))
    errs = dict(zip(names, sd))
    params = VoigtParams(center, u_g * u_g, u_l * u_l,
                         max(amplitude, 0.0), baseline)
    # a width pinned at zero by the mode was not estimated at all: its
    # uncertainty is infinite, not zero
    uncertainties = VoigtParams(
        center=errs["center"],
        gaussian_fwhm=2.0 * abs(u_g) * errs["u_g"] if "u_g" in errs
        else math.inf,
        lorentzian_fwhm=2.0 * abs(u_l) * errs["u_l"] if "u_l" in errs
        else math.inf,
        amplitude=errs["amplitude"],
        baseline=errs["baseline"])
    return VoigtFit(params=params, uncertainties=uncertainties,
                    rss=result.rss, n_points=spectrum.n_points,
                    converged=result.converged,
                    n_iterations=result.n_iterations, mode=mode)


def fit_voigt(spectrum, init: Optional[VoigtParams] = None, weighted=True,
              mode="voigt", max_iterations=500) -> VoigtFit:
    """Fit one Voigt line (plus flat baseline) to a spectrum.

    Width parameters are optimized through a squared reparameterization so
    they stay non-negative.  `mode` restricts the shape: "gaussian" pins the
    Lorentzian FWHM to zero, "lorentzian" pins the Gaussian FWHM to zero.
    A full "voigt" fit whose solution collapses onto a pure shape is
    polished against the corresponding restricted fit, because the squared
    widths turn the boundary into a flat saddle.

    Raises NoPeakError for structureless input and NotConvergedError when
    the iteration cap is hit.
    """
    if init is None:
        init = _initial_guess(spectrum)
    total_init = init.gaussian_fwhm + init.lorentzian_fwhm
    if mode == "gaussian":
        start = VoigtParams(init.center, total_init, 0.0, init.amplitude,
                            init.baseline)
    elif mode == "lorentzian":
        start = VoigtParams(init.center, 0.0, total_init, init.amplitude,
                            init.baseline)
    else:
        start = init

    best = _run_mode(spectrum, start, mode, weighted, max_iterations)
    if mode == "voigt":
        f_g = best.params.gaussian_fwhm
        f_l = best.params.lorentzian_fwhm
        total = voigt_fwhm(f_g, f_l)
        near_boundary = total > 0 and min(f_g, f_l) < 0.02 * total
        if near_boundary or not best.converged:
            candidates = [best] if best.converged else []
            if total > 0:
                # kicked restart probes the mixed-width basin
                kicked_fg = 0.3 * total
                kicked = VoigtParams(best.params.center, kicked_fg,
                                     invert_voigt_fwhm(total, kicked_fg),
                                     max(best.params.amplitude, 1e-30),
                                     best.params.baseline)
                retry = _run_mode(spectrum, kicked, "voigt", weighted,
                                  max_iterations)
                if retry.converged:
                    candidates.append(retry)
            # boundary polish: the restricted family reaches the exact
            # boundary the full parameterization only creeps toward
            restricted_mode = "lorentzian" if f_g <= f_l else "gaussian"
            wide = max(total, total_init)
            amp0 = max(best.params.amplitude, init.amplitude)
            if restricted_mode == "lorentzian":
                restricted_start = VoigtParams(best.params.center, 0.0, wide,
                                               amp0, best.params.baseline)
            else:
                restricted_start = VoigtParams(best.params.center, wide, 0.0,
                                               amp0, best.params.baseline)
            polished = _run_mode(spectrum, restricted_start,
                                 restricted_mode, weighted, max_iterations)
            if polished.converged:
                candidates.append(polished)
            if not candidates:
                raise NotConvergedError(
                    f"Voigt fit hit the {max_iterations}-iteration cap")
            best = min(candidates, key=lambda f: f.rss)
            best = VoigtFit(params=best.params,
                            uncertainties=best.uncertainties, rss=best.rss,
                            n_points=best.n_points, converged=best.converged,
                            n_iterations=best.n_iterations, mode="voigt")
    if not best.converged:
        raise NotConvergedError(
            f"Voigt fit hit the {max_iterations}-iteration cap")
    if best.params.amplitude <= 0:
        raise NoPeakError("fit collapsed to a non-positive amplitude")
    return best


def classify_lineshape(spectrum, weighted=True, ratio_gate=1.2
                       ) -> LineshapeClassification:
    """Pure-Gaussian vs pure-Lorentzian fit comparison.

    Returns the lower-RSS class when the RSS ratio exceeds `ratio_gate`,
    otherwise "ambiguous".
    """
    fit_g = fit_voigt(spectrum, weighted=weighted, mode="gaussian")
    fit_l = fit_voigt(spectrum, weighted=weighted, mode="lorentzian")
    low = min(fit_g.rss, fit_l.rss)
    high = max(fit_g.rss, fit_l.rss)
    ratio = high / max(low, 5e-324)
    if ratio > ratio_gate:
        label = "gaussian" if fit_g.rss < fit_l.rss else "lorentzian"
    else:
        label = "ambiguous"
    return LineshapeClassification(
        label=label, rss_gaussian=fit_g.rss, rss_lorentzian=fit_l.rss,
        rss_ratio=ratio, fit_gaussian=fit_g, fit_lorentzian=fit_l)


def extract_components(fits: Sequence[tuple], mode="shared_fg"):
    """Split per-temperature fits into a Gaussian floor and Lorentzian widths.

    `fits` is a sequence of (temperature, VoigtFit).  Mode "free" reports the
    per-fit Lorentzian FWHM as-is; mode "shared_fg" imposes a single
    inverse-variance-weighted Gaussian floor and recomputes each Lorentzian
    component from the fit's total FWHM.  Returns (floor, [(T, f_L), ...]).
    """
    if len(fits) < 3:
        raise InsufficientDataError(
            f"need >= 3 temperatures, got {len(fits)}")
    ordered = sorted(fits, key=lambda tf: tf[0])
    temps = [t for t, _ in ordered]
    if any(b <= a for a, b in zip(temps, temps[1:])):
        raise DomainError("temperatures must be distinct")

    fg = np.array([f.params.gaussian_fwhm for _, f in ordered])
    sd = np.array([f.uncertainties.gaussian_fwhm for _, f in ordered])
    totals = np.array([f.total_fwhm for _, f in ordered])
    # relative uncertainty floor keeps noiseless fits equally weighted and
    # drops boundary-pinned components (infinite uncertainty) entirely
    floor_sd = 1e-6 * np.maximum(totals, 1e-12)
    weights = 1.0 / (sd ** 2 + floor_sd ** 2)
    if not weights.sum() > 0:
        raise InsufficientDataError(
            "no fit constrains the Gaussian component")
    floor = float((weights * fg).sum() / weights.sum())

    if mode == "free":
        pairs = [(t, f.params.lorentzian_fwhm) for t, f in ordered]
    elif mode == "shared_fg":
        pairs = []
        for t, f in ordered:
            total = voigt_fwhm(f.params.gaussian_fwhm, f.params.lorentzian_fwhm)
            pairs.append((t, invert_voigt_fwhm(max(total, floor), floor)))
    else:
        raise DomainError(f"unknown extraction mode {mode!r}")
    return floor, pairs


# ---------------------------------------------------------------------------
# temperature-series model fits
# ---------------------------------------------------------------------------

def _model_basis(kind, temperature, debye_temperature, phonon_energy):
    """Lorentzian FWHM of a unit-amplitude model at one temperature."""
    if kind == "acoustic_debye":
        ref = physics.debye_integral(
            physics.REFERENCE_TEMPERATURE_K, debye_temperature)
        return physics.debye_integral(temperature, debye_temperature) / ref
    if kind == "cubic_law":
        return temperature ** 3
    if kind == "optical_mode":
        n = physics.bose_einstein(phonon_energy, temperature)
        return n * (n + 1.0)
    raise DomainError(f"unknown model kind {kind!r}")


def _fwhm_partials(f_l, f_g):
    """d(total)/d(f_L) and d(total)/d(f_G) of the FWHM combination."""
    root = np.sqrt(_FWHM_CQ * f_l ** 2 + f_g ** 2)
    safe = np.where(root > 0, root, 1.0)
    d_fl = np.where(root > 0, _FWHM_CL + _FWHM_CQ * f_l / safe,
                    _FWHM_CL + math.sqrt(_FWHM_CQ))
    d_fg = np.where(root > 0, f_g / safe, 1.0)
    return d_fl, d_fg


def build_series_problem(temperatures, values, kind, *, quantity="total",
                         gaussian_floor=0.0, fit_floor=False,
                         debye_temperature=600.0, phonon_energy=18.0):
    """Residual/Jacobian closures for a linewidth-vs-temperature model fit.

    Exposed for the same reason as build_voigt_problem: the analytic
    Jacobian is part of the engine contract and is checked against central
    finite differences.  Parameters are [sqrt(amplitude)] plus
    [sqrt(floor)] when `fit_floor`.
    """
    temps = np.asarray(temperatures, dtype=float)
    y = np.asarray(values, dtype=float)
    basis = np.array([_model_basis(kind, t, debye_temperature, phonon_energy)
                      for t in temps])

    def unpack(p):
        amplitude = p[0] ** 2
        floor = p[1] ** 2 if fit_floor else gaussian_floor
        return amplitude, floor

    def residual(p):
        amplitude, floor = unpack(p)
        f_l = amplitude * basis
        if quantity == "total":
            return _FWHM_CL * f_l + np.sqrt(
                _FWHM_CQ * f_l ** 2 + floor ** 2) - y
        return f_l - y

    def jacobian(p):
        amplitude, floor = unpack(p)
        f_l = amplitude * basis
        if quantity == "total":
            d_fl, d_fg = _fwhm_partials(f_l, floor)
        else:
            d_fl, d_fg = np.ones_like(f_l), np.zeros_like(f_l)
        columns = [d_fl * basis * 2.0 * p[0]]
        if fit_floor:
            columns.append(d_fg * 2.0 * p[1])
        return np.stack(columns, axis=1)

    return residual, jacobian, unpack, basis


def fit_series(points, kind, *, quantity="total", gaussian_floor=0.0,
               fit_floor=False, debye_temperature=600.0, phonon_energy=18.0,
               max_iterations=500) -> SeriesModelFit:
    """Fit one dephasing model to (temperature, linewidth) data.

    `quantity` states explicitly what the y-values are: "total" fits the
    combined Voigt FWHM (Gaussian floor included, fixed to `gaussian_floor`
    or fitted when `fit_floor`), "lorentzian" fits the bare Lorentzian
    component.  Only amplitudes (and optionally the floor) are free; the
    Debye temperature and phonon energy are fixed inputs.
    """
    if quantity not in ("total", "lorentzian"):
        raise DomainError(f"unknown quantity {quantity!r}")
    if quantity == "lorentzian" and fit_floor:
        raise DomainError("the Gaussian floor does not enter a bare "
                          "Lorentzian-component fit")
    pts = sorted((float(t), float(y)) for t, y in points)
    n = len(pts)
    n_free = 1 + int(fit_floor)
    if n < 3 or n <= n_free:
        raise InsufficientDataError(
            f"{n} points cannot constrain {n_free} free parameter(s); "
            "need at least 3 points and more points than parameters")
    temps = np.array([t for t, _ in pts])
    y = np.array([v for _, v in pts])
    if np.any(temps < 0):
        raise DomainError("temperatures must be >= 0")

    residual, jacobian, unpack, basis = build_series_problem(
        temps, y, kind, quantity=quantity, gaussian_floor=gaussian_floor,
        fit_floor=fit_floor, debye_temperature=debye_temperature,
        phonon_energy=phonon_energy)

    if fit_floor and not gaussian_floor > 0:
        floor0 = float(y.min())  # lowest-T total width approximates the floor
    else:
        floor0 = float(gaussian_floor)
    i_ref = int(np.argmax(basis))
    if basis[i_ref] <= 0:
        raise DomainError("model basis vanishes at every temperature")
    if quantity == "total":
        y_ref = max(y[i_ref], floor0)
        amp0 = invert_voigt_fwhm(y_ref, min(floor0, y_ref)) / basis[i_ref]
    else:
        amp0 = y[i_ref] / basis[i_ref]
    amp0 = max(amp0, 1e-12)

    p0 = [math.sqrt(amp0)]
    if fit_floor:
        p0.append(math.sqrt(max(floor0, 1e-12)))
    result = least_squares(residual, jacobian, p0,
                           max_iterations=max_iterations)
    if not result.converged:
        raise NotConvergedError(
            f"series fit hit the {max_iterations}-iteration cap")
    amplitude, floor = unpack(result.params)
    model = physics.make_model(kind, amplitude, gaussian_floor=floor,
                               debye_temperature=debye_temperature,
                               phonon_energy=phonon_energy)
    return SeriesModelFit(kind=kind, model=model, quantity=quantity,
                          rss=result.rss, n_points=n, n_free=n_free,
                          converged=True, n_iterations=result.n_iterations)


def compare_models(points, kinds=physics.MODEL_KINDS, **fit_kwargs):
    """Fit each candidate model to the same data and rank by AIC.

    AIC = n*ln(rss/n) + 2k.  Ties break toward fewer parameters, then
    declaration order.  Returns ModelComparison rows, best first.
    """
    kinds = tuple(kinds)
    if not kinds:
        raise InsufficientDataError("need at least one candidate model")
    points = [(float(t), float(y)) for t, y in points]
    n = len(points)
    rows = []
    for index, kind in enumerate(kinds):
        fit = fit_series(points, kind, **fit_kwargs)
        aic = (n * math.log(fit.rss / n) + 2 * fit.n_free
               if fit.rss > 0 else -math.inf)
        rows.append((aic, fit.n_free, index, fit))
    rows.sort(key=lambda row: row[:3])
    best_aic = rows[0][0]
    out = []
    for aic, n_free, _, fit in rows:
        delta = 0.0 if aic == best_aic else aic - best_aic
        out.append(ModelComparison(kind=fit.kind, model=fit.model,
                                   rss=fit.rss, n_free=n_free, aic=aic,
                                   delta_aic=delta))
    return out


def analyze_series(series, *, quantity="total", gaussian_floor=None,
                   debye_temperature=600.0, phonon_energy=18.0,
                   weighted=True, kinds=physics.MODEL_KINDS) -> SeriesFitResult:
    """Full pipeline on (temperature, Spectrum) pairs.

    Per-spectrum Voigt fits, shared-floor component extraction, then all
    candidate models fitted and ranked on the requested quantity.  Pass
    `gaussian_floor` to override the estimated shared floor.
    """
    ordered = sorted(series, key=lambda ts: ts[0])
    fits = tuple((t, fit_voigt(s, weighted=weighted)) for t, s in ordered)
    floor_est, lorentzian_pairs = extract_components(fits, mode="shared_fg")
    floor = floor_est if gaussian_floor is None else float(gaussian_floor)
    if quantity == "total":
        points = [(t, f.total_fwhm) for t, f in fits]
    elif quantity == "lorentzian":
        if gaussian_floor is None:
            points = lorentzian_pairs
        else:
            points = [(t, invert_voigt_fwhm(max(f.total_fwhm, floor), floor))
                      for t, f in fits]
    else:
        raise DomainError(f"unknown quantity {quantity!r}")
    comparisons = tuple(compare_models(
        points, kinds=kinds, quantity=quantity, gaussian_floor=floor,
        debye_temperature=debye_temperature, phonon_energy=phonon_energy))
    return SeriesFitResult(per_temperature=fits, comparisons=comparisons,
                           best_model=comparisons[0].kind,
                           gaussian_floor=floor, quantity=quantity)
