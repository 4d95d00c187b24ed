import math

import pytest

from oracles import simpson_reduced_debye
from zplkit.errors import DomainError
from zplkit.physics import (BOLTZMANN_MEV_PER_K, HBAR_MEV_PS, AcousticDebye,
                            CubicLaw, OpticalMode, bose_einstein,
                            cubic_asymptote, debye_integral, make_model,
                            reduced_debye_integral)

# golden value pinned with an arbitrary-precision oracle (40 digits)
BOSE_18MEV_300K = 0.9937813313789182
# golden reduced integral at x_D = 1, Simpson oracle at 1e6 panels
REDUCED_AT_1 = 0.9730325613551701


def test_constants_stored_exactly():
    assert BOLTZMANN_MEV_PER_K == 8.617333262e-2
    assert HBAR_MEV_PS == 6.582119569e-1


def test_bose_einstein_values():
    assert bose_einstein(18.0, 0.0) == 0.0
    assert bose_einstein(18.0, 300.0) == pytest.approx(BOSE_18MEV_300K,
                                                       rel=5e-15)
    with pytest.raises(DomainError):
        bose_einstein(0.0, 300.0)
    with pytest.raises(DomainError):
        bose_einstein(18.0, -1.0)


def test_bose_einstein_high_energy_asymptote():
    for x in (30.0, 50.0, 200.0, 710.0):
        t = 100.0
        energy = x * BOLTZMANN_MEV_PER_K * t
        n = bose_einstein(energy, t)
        assert n == pytest.approx(math.exp(-x), rel=1e-12)


def test_reduced_debye_matches_simpson_oracle():
    for x_max, panels in ((1.0, 400_000), (5.0, 400_000), (12.0, 400_000)):
        oracle = simpson_reduced_debye(x_max, panels)
        value, err = reduced_debye_integral(x_max)
        assert value == pytest.approx(oracle, rel=1e-9)
    value, _ = reduced_debye_integral(1.0)
    assert value == pytest.approx(REDUCED_AT_1, rel=1e-10)


def test_debye_integral_golden_and_zero():
    assert debye_integral(0.0, 600.0) == 0.0
    rate_cubed = (BOLTZMANN_MEV_PER_K * 600.0 / HBAR_MEV_PS) ** 3
    assert debye_integral(600.0, 600.0) == pytest.approx(
        rate_cubed * REDUCED_AT_1, rel=1e-9)
    with pytest.raises(DomainError):
        debye_integral(-1.0, 600.0)
    with pytest.raises(DomainError):
        debye_integral(10.0, 0.0)


def test_cubic_asymptote_scaling():
    assert cubic_asymptote(0.0) == 0.0
    for t in (1.0, 37.5, 300.0):
        assert cubic_asymptote(2 * t) == 8 * cubic_asymptote(t)
    with pytest.raises(DomainError):
        cubic_asymptote(-5.0)


def test_debye_approaches_cubic_at_low_temperature():
    for t in (1.0, 3.0, 6.0):  # T <= theta/100
        ratio = debye_integral(t, 600.0) / cubic_asymptote(t)
        assert abs(ratio - 1.0) < 5e-3
    # within 1% up to theta/20
    assert abs(debye_integral(30.0, 600.0) / cubic_asymptote(30.0) - 1) < 0.01


def test_debye_bounded_and_monotonic():
    temps = [1.0, 5.0, 20.0, 60.0, 120.0, 270.0, 450.0, 600.0]
    values = [debye_integral(t, 600.0) for t in temps]
    for t, v in zip(temps, values):
        assert v < cubic_asymptote(t)
    assert all(b > a for a, b in zip(values, values[1:]))
    # ratio to the cubic decreases strictly once the band edge is resolved
    # (below ~theta/60 the truncation difference is under machine epsilon)
    ratio_temps = [20.0, 60.0, 120.0, 270.0, 450.0, 600.0]
    ratios = [debye_integral(t, 600.0) / cubic_asymptote(t)
              for t in ratio_temps]
    assert all(b < a for a, b in zip(ratios, ratios[1:]))


def test_quadrature_tolerance_robustness():
    loose, err_loose = reduced_debye_integral(5.0, rel_tol=1e-10)
    tight, _ = reduced_debye_integral(5.0, rel_tol=5e-11)
    assert abs(loose - tight) <= err_loose


def test_model_evaluators_pure_and_zero_at_zero():
    models = (AcousticDebye(6.82, 600.0, gaussian_floor=0.72),
              CubicLaw(3.5e-7, gaussian_floor=0.72),
              OpticalMode(30.0, 18.0, gaussian_floor=0.72))
    for model in models:
        assert model.lorentzian_fwhm(0.0) == 0.0
        first = model.lorentzian_fwhm(150.0)
        assert model.lorentzian_fwhm(150.0) == first  # bit-identical repeat


def test_acoustic_amplitude_anchor():
    model = AcousticDebye(6.82, 600.0)
    assert model.lorentzian_fwhm(270.0) == 6.82
    # low-temperature Lorentzian component is buried under a 0.72 floor
    floored = AcousticDebye(6.82, 600.0, gaussian_floor=0.72)
    assert floored.total_fwhm(10.0) == pytest.approx(0.72, abs=1e-3)
    assert floored.lorentzian_fwhm(10.0) < 1e-3


def test_total_fwhm_composition():
    model = CubicLaw(1e-6, gaussian_floor=0.72)
    assert model.total_fwhm(0.0) == 0.72  # pure floor
    bare = CubicLaw(1e-6, gaussian_floor=0.0)
    t = 200.0
    f_l = bare.lorentzian_fwhm(t)
    assert bare.total_fwhm(t) == pytest.approx(f_l, rel=3.1e-6)


def test_optical_mode_occupation_form():
    model = OpticalMode(30.0, 18.0)
    n = bose_einstein(18.0, 200.0)
    assert model.lorentzian_fwhm(200.0) == pytest.approx(30.0 * n * (n + 1))


def test_model_validation():
    with pytest.raises(DomainError):
        AcousticDebye(-1.0, 600.0)
    with pytest.raises(DomainError):
        AcousticDebye(1.0, 0.0)
    with pytest.raises(DomainError):
        OpticalMode(1.0, 0.0)
    with pytest.raises(DomainError):
        CubicLaw(1.0, gaussian_floor=-0.1)
    with pytest.raises(DomainError):
        make_model("nope", 1.0)


def test_make_model_kinds():
    assert isinstance(make_model("acoustic_debye", 1.0), AcousticDebye)
    assert isinstance(make_model("cubic_law", 1.0), CubicLaw)
    assert isinstance(make_model("optical_mode", 1.0), OpticalMode)
