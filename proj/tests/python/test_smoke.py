import math

import pytest

import wgqed

GUIDE = wgqed.WaveguideGeometry.from_aspect(1.2, 1.5)


def test_cutoffs():
    modes = wgqed.lowest_modes(GUIDE, 4)
    assert [m.label for m in modes] == ["TM11", "TM31", "TM13", "TM51"]
    assert modes[0].cutoff == pytest.approx(0.943270364813299, rel=1e-13)
    assert modes[1].cutoff == pytest.approx(1.75497434018225, rel=1e-13)


def test_scatter_is_unitary():
    em = wgqed.EmitterParams(1.3, 1.1, 0.1, 0.1)
    for omega in (1.0, 1.2, 2.0, 2.5):
        res = wgqed.scatter(em, GUIDE, wgqed.make_css(GUIDE, omega))
        assert res.R + res.T == pytest.approx(1.0, abs=1e-12)
        assert res.R == pytest.approx(wgqed.closed_form_R(em, GUIDE, omega), abs=1e-12)


def test_dark_state_is_transparent():
    em = wgqed.EmitterParams(2.0, 1.8, 0.05, 0.05)
    res = wgqed.scatter(em, GUIDE, wgqed.make_dark(GUIDE, 2.0))
    assert res.R < 1e-20


def test_conditions():
    em = wgqed.EmitterParams(1.3, 1.1, 0.1, 0.1)
    window = wgqed.channel_window(GUIDE, 1)
    report = wgqed.analyze_conditions(em, GUIDE, window)
    assert report.regime == wgqed.Regime.iii
    assert report.eit == pytest.approx(1.18344827586207, rel=1e-12)
    assert len(report.fano) == 2
    assert abs(wgqed.f_eval(em, GUIDE, report.eit).imag) < 1e-10


def test_oracle_agrees_with_closed_form():
    em = wgqed.EmitterParams(1.2, 1.0, 0.1, 0.0)
    mode = wgqed.lowest_modes(GUIDE, 1)[0]
    h = wgqed.h_numeric_oracle(em, 1, mode, 1.5)
    assert h.real == pytest.approx(wgqed.lamb_shift(em, 1, mode, 1.5), rel=1e-8)
    assert -h.imag == pytest.approx(wgqed.decay_rate(em, 1, mode, 1.5), rel=1e-10)


def test_errors_map_to_python_exceptions():
    em = wgqed.EmitterParams(1.3, 1.1, 0.1, 0.1)
    omega2 = wgqed.lowest_modes(GUIDE, 2)[1].cutoff
    with pytest.raises(wgqed.BoundaryError):
        wgqed.f_eval(em, GUIDE, omega2 * (1 + 1e-12))
    with pytest.raises(wgqed.DomainError):
        wgqed.make_single_mode(GUIDE, 1.0, 2)
    with pytest.raises(ValueError):
        wgqed.EmitterParams(1.0, 1.0, -0.1, 0.0)
    assert issubclass(wgqed.BoundaryError, wgqed.Error)


def test_critical_size_round_trip():
    b = wgqed.critical_size(0.943, 1.5, 1, 1)
    assert b == pytest.approx(1.2, rel=1e-3)
    assert wgqed.classify_region(wgqed.WaveguideGeometry.from_aspect(b * 1.01, 1.5), 0.943).kind == wgqed.RegionKind.single_mode
    assert math.isclose(wgqed.lambda_from_dipole(0.0, GUIDE), 0.0)
