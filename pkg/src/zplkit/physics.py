"""Phonon statistics and linewidth-vs-temperature dephasing models.

Units are fixed package-wide: energies in meV, temperatures in K, times in
ps.  Rates such as the output of `debye_integral` therefore carry (1/ps)^3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import DomainError
from .lineshape import voigt_fwhm
from .numerics import adaptive_gauss_kronrod

__all__ = [
    "BOLTZMANN_MEV_PER_K", "HBAR_MEV_PS", "REFERENCE_TEMPERATURE_K",
    "bose_einstein", "reduced_debye_integral", "debye_integral",
    "cubic_asymptote", "AcousticDebye", "CubicLaw", "OpticalMode",
    "DephasingModel", "MODEL_KINDS", "make_model",
]

BOLTZMANN_MEV_PER_K = 8.617333262e-2   # CODATA 2018
HBAR_MEV_PS = 6.582119569e-1           # CODATA 2018

# The acoustic model amplitude is defined as the Lorentzian FWHM at this
# temperature, which makes fitted amplitudes directly readable in meV.
REFERENCE_TEMPERATURE_K = 270.0

# x^2 e^x/(e^x-1)^2 < 4e-23 beyond this; the remainder is bounded
# analytically instead of integrated.
_TAIL_CUTOFF = 60.0


def bose_einstein(energy, temperature):
    """Thermal occupation 1/(exp(E/kT) - 1); exactly 0 at T = 0."""
    if not energy > 0:
        raise DomainError(f"energy must be > 0, got {energy}")
    if temperature < 0:
        raise DomainError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0:
        return 0.0
    x = energy / (BOLTZMANN_MEV_PER_K * temperature)
    if x > 700.0:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def _reduced_integrand(x):
    # x^2 e^x/(e^x - 1)^2, with its x -> 0 limit of 1 and the asymptote
    # x^2 e^-x beyond x = 350 (keeps expm1(x)^2 finite on the exact branch;
    # the switch error is ~e^-350).  The (x/expm1(x))^2 form avoids
    # underflow of x^2 for tiny arguments.
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    large = x > 350.0
    mid = (x > 0) & ~large
    e = np.expm1(x[mid])
    ratio = x[mid] / e
    out[mid] = ratio * ratio * (e + 1.0)
    out[large] = x[large] ** 2 * np.exp(-x[large])
    return out


@lru_cache(maxsize=None)
def _reduced_debye_cached(x_max, rel_tol):
    x_cut = min(x_max, _TAIL_CUTOFF)
    value, err = adaptive_gauss_kronrod(
        _reduced_integrand, 0.0, x_cut, rel_tol=rel_tol, abs_tol=1e-30,
        initial_intervals=8)
    if x_max > x_cut:
        # integrand <= x^2 e^-x / (1 - e^-60)^2 there; integrate the bound
        c = _TAIL_CUTOFF
        tail = math.exp(-c) * (c * c + 2.0 * c + 2.0) / (1.0 - math.exp(-c)) ** 2
        err += tail
    return value, err


def reduced_debye_integral(x_max, rel_tol=1e-10):
    """Dimensionless integral of x^2 e^x/(e^x-1)^2 from 0 to x_max.

    Returns (value, error_bound).  Tends to pi^2/3 as x_max -> infinity.
    """
    if not x_max > 0:
        raise DomainError(f"upper limit must be > 0, got {x_max}")
    return _reduced_debye_cached(float(x_max), float(rel_tol))


def debye_integral(temperature, debye_temperature, rel_tol=1e-10):
    """Acoustic dephasing integral over the phonon band, in (1/ps)^3.

    Equals (kT/hbar)^3 times the reduced integral up to x_D = theta_D / T;
    zero at T = 0.
    """
    if temperature < 0:
        raise DomainError(f"temperature must be >= 0, got {temperature}")
    if not debye_temperature > 0:
        raise DomainError(
            f"Debye temperature must be > 0, got {debye_temperature}")
    if temperature == 0:
        return 0.0
    value, _ = reduced_debye_integral(debye_temperature / temperature, rel_tol)
    rate = BOLTZMANN_MEV_PER_K * temperature / HBAR_MEV_PS
    return rate ** 3 * value


def cubic_asymptote(temperature):
    """Infinite-band limit of debye_integral: (kT/hbar)^3 * pi^2/3."""
    if temperature < 0:
        raise DomainError(f"temperature must be >= 0, got {temperature}")
    rate = BOLTZMANN_MEV_PER_K * temperature / HBAR_MEV_PS
    return rate ** 3 * (math.pi ** 2 / 3.0)


def _check_common(amplitude, gaussian_floor):
    if amplitude < 0:
        raise DomainError("amplitude must be non-negative")
    if gaussian_floor < 0:
        raise DomainError("gaussian_floor must be non-negative")


@dataclass(frozen=True)
class AcousticDebye:
    """Acoustic-band dephasing with a finite Debye cutoff.

    `amplitude` is the Lorentzian FWHM (meV) the model produces at the
    270 K reference temperature.
    """

    amplitude: float
    debye_temperature: float = 600.0
    gaussian_floor: float = 0.0

    kind = "acoustic_debye"

    def __post_init__(self):
        _check_common(self.amplitude, self.gaussian_floor)
        if not self.debye_temperature > 0:
            raise DomainError("debye_temperature must be > 0")

    def lorentzian_fwhm(self, temperature):
        ref = debye_integral(REFERENCE_TEMPERATURE_K, self.debye_temperature)
        return self.amplitude * debye_integral(
            temperature, self.debye_temperature) / ref

    def total_fwhm(self, temperature):
        return voigt_fwhm(self.gaussian_floor, self.lorentzian_fwhm(temperature))


@dataclass(frozen=True)
class CubicLaw:
    """Low-temperature limit: Lorentzian FWHM = amplitude * T^3 (meV/K^3)."""

    amplitude: float
    gaussian_floor: float = 0.0

    kind = "cubic_law"

    def __post_init__(self):
        _check_common(self.amplitude, self.gaussian_floor)

    def lorentzian_fwhm(self, temperature):
        if temperature < 0:
            raise DomainError(f"temperature must be >= 0, got {temperature}")
        return self.amplitude * temperature ** 3

    def total_fwhm(self, temperature):
        return voigt_fwhm(self.gaussian_floor, self.lorentzian_fwhm(temperature))


@dataclass(frozen=True)
class OpticalMode:
    """Single optical-phonon dephasing: FWHM = amplitude * n(E0)[n(E0)+1]."""

    amplitude: float
    phonon_energy: float = 18.0
    gaussian_floor: float = 0.0

    kind = "optical_mode"

    def __post_init__(self):
        _check_common(self.amplitude, self.gaussian_floor)
        if not self.phonon_energy > 0:
            raise DomainError("phonon_energy must be > 0")

    def lorentzian_fwhm(self, temperature):
        n = bose_einstein(self.phonon_energy, temperature)
        return self.amplitude * n * (n + 1.0)

    def total_fwhm(self, temperature):
        return voigt_fwhm(self.gaussian_floor, self.lorentzian_fwhm(temperature))


DephasingModel = Union[AcousticDebye, CubicLaw, OpticalMode]

MODEL_KINDS = ("acoustic_debye", "cubic_law", "optical_mode")


def make_model(kind, amplitude, *, gaussian_floor=0.0, debye_temperature=600.0,
               phonon_energy=18.0) -> DephasingModel:
    """Construct a dephasing model by kind name."""
    if kind == "acoustic_debye":
        return AcousticDebye(amplitude, debye_temperature, gaussian_floor)
    if kind == "cubic_law":
        return CubicLaw(amplitude, gaussian_floor)
    if kind == "optical_mode":
        return OpticalMode(amplitude, phonon_energy, gaussian_floor)
    raise DomainError(f"unknown model kind {kind!r}")
