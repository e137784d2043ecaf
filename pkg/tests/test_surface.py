import pytest

from peakon_lab import DomainError, FPoint, FStats
from peakon_lab.lab import SURFACE_COLUMNS, tabulate_surface

PEAKON_POINT = FPoint(1.0, 23 / 26)


def test_peakon_surface_peaks_at_the_peakon():
    table = tabulate_surface(
        FStats.peakon(),
        (0.9, 1.1),
        (PEAKON_POINT.m - 0.1, PEAKON_POINT.m + 0.1),
        points=41,
    )
    assert list(table.frame.columns) == SURFACE_COLUMNS
    assert (table.frame["M"] >= table.frame["m"]).all()
    peak = table.argmax
    assert peak.M == pytest.approx(1.0, abs=1e-9)
    assert peak.m == pytest.approx(PEAKON_POINT.m, abs=1e-9)
    assert table.max_value == pytest.approx(0.0, abs=1e-10)
    assert table.value_at(PEAKON_POINT) == pytest.approx(0.0, abs=1e-10)


def test_constant_surface_vanishes_at_the_constant():
    table = tabulate_surface(FStats.constant(2.0), (1.5, 2.5), (1.5, 2.5), points=41)
    assert table.value_at(FPoint(2.0, 2.0)) == pytest.approx(0.0, abs=1e-10)


def test_rectangle_outside_the_domain():
    with pytest.raises(DomainError):
        tabulate_surface(FStats.peakon(), (0.1, 0.2), (0.5, 0.6))
    with pytest.raises(DomainError):
        tabulate_surface(FStats.peakon(), (1.0, 2.0), (-1.0, 0.0))


def test_needs_two_points():
    with pytest.raises(ValueError):
        tabulate_surface(FStats.peakon(), (0.9, 1.1), (0.8, 0.9), points=1)
