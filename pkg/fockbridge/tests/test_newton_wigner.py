import numpy as np
import pytest
from numpy.testing import assert_allclose

from fockbridge.continuum.newton_wigner import (
    SINC_HALF_MAX,
    Picture,
    chi_overlap,
    chi_overlap_oracle,
    chi_overlap_profile,
    decay_points,
    default_grid,
    half_maximum_width,
    localization_width,
    measure_consistency_check,
    nw_chi_amplitude,
    nw_chi_oracle,
    nw_orthogonality_deviation,
    nw_profile,
)
from fockbridge.continuum.quadrature import build_quadrature, gaussian_wavefunction
from fockbridge.schemas.continuum import QuadratureSpec


@pytest.fixture(scope="module")
def grid():
    return default_grid()


@pytest.mark.parametrize("separation", [0.1, 0.5, 1.0, 2.0, 5.0])
def test_chi_overlap_follows_bessel_k0(grid, separation):
    value = chi_overlap(grid, 0.0, separation)
    assert value == pytest.approx(chi_overlap_oracle(grid, 0.0, separation), rel=0.01)


def test_chi_states_are_not_orthogonal(grid):
    coincident = chi_overlap(grid, 0.0, 0.0)
    assert coincident == pytest.approx(2 * np.arcsinh(40.0))
    ratio = chi_overlap(grid, 0.0, 1.0) / coincident
    assert 0.01 < ratio < 1
    assert abs(chi_overlap(grid, 0.0, 20.0)) < 1e-6


def test_overlap_profile_columns(grid):
    rows = chi_overlap_profile(grid, np.array([0.5, 1.0, 2.0]))
    assert rows.shape == (3, 3)
    assert np.all(np.diff(rows[:, 1]) < 0)
    assert_allclose(rows[:, 1], rows[:, 2], rtol=0.01)


def test_x_route_keeps_the_invariant_norm(grid):
    report = measure_consistency_check(grid, grid.mass)
    assert report.x_deviation <= 1e-6
    assert report.chi_deviation > 0.01


def test_routes_agree_for_slow_packets(grid):
    report = measure_consistency_check(grid, 0.03 * grid.mass)
    assert report.x_deviation <= 1e-3
    assert report.chi_deviation <= 1e-3


def test_chi_amplitude_matches_bessel_closed_form(grid):
    points = decay_points(grid)
    assert_allclose(nw_chi_amplitude(grid, points), nw_chi_oracle(1.0, 1.0, points), rtol=1e-3)


def test_chi_amplitude_window_part_is_the_chi_representation():
    fine = build_quadrature(QuadratureSpec(cutoff_factor=20.0, node_count=8001))
    points = np.array([0.5, 1.0, 2.0])
    window = nw_chi_amplitude(fine, points, complete_tail=False)
    assert_allclose(nw_profile(fine, Picture.CHI, points)[:, 1], window, atol=1e-5)
    assert np.abs(nw_chi_amplitude(fine, points) - window).max() > 1e-4


def test_chi_amplitude_diverges_at_origin(grid):
    with pytest.raises(ValueError):
        nw_chi_amplitude(grid, np.array([0.0]))


def test_localization_width_ignores_the_cutoff():
    at_40 = localization_width(1.0, Picture.CHI, QuadratureSpec(cutoff_factor=40.0))
    at_80 = localization_width(1.0, Picture.CHI, QuadratureSpec(cutoff_factor=80.0))
    assert at_40 == pytest.approx(at_80, rel=1e-3)


def test_localization_scales_with_compton_length_at_fixed_cutoff():
    wide = localization_width(1.0, Picture.CHI, cutoff=80.0)
    narrow = localization_width(2.0, Picture.CHI, cutoff=80.0)
    assert wide / narrow == pytest.approx(2.0, rel=0.01)
    assert wide == pytest.approx(1.0, abs=0.05)


def test_x_picture_width_is_cutoff_limited():
    for factor in (40.0, 80.0):
        width = localization_width(1.0, Picture.X, QuadratureSpec(cutoff_factor=factor))
        assert width == pytest.approx(2 * SINC_HALF_MAX / factor, rel=0.01)


def test_nw_states_are_orthogonal_at_commensurate_points(grid):
    assert nw_orthogonality_deviation(grid) <= 0.05


def test_chi_profile_is_even(grid):
    points = np.linspace(-0.5, 0.5, 101)
    rows = nw_profile(grid, Picture.CHI, points)
    assert rows.shape == (101, 4)
    assert_allclose(rows[:, 3], rows[::-1, 3], rtol=1e-9, atol=1e-12)


def test_half_maximum_needs_a_drop():
    points = np.linspace(0, 1, 11)
    with pytest.raises(ValueError):
        half_maximum_width(points, np.ones(11))
    assert half_maximum_width(points, 1 - points) == pytest.approx(1.0)


def test_quadrature_requires_odd_node_count():
    with pytest.raises(ValueError):
        build_quadrature(QuadratureSpec(node_count=400))


def test_gaussian_invariant_norm(grid):
    # sqrt(omega) cancels the 1/omega of the measure
    psi = gaussian_wavefunction(grid, 1.0)
    assert psi.norm() == pytest.approx(np.sqrt(np.pi))
