import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from fockbridge.continuum.lorentz import (
    OneParticleAmplitude,
    boost_amplitude,
    boost_momentum,
    boost_vector,
    four_momentum_expectation,
    gaussian_amplitude,
    lorentz_report,
    parity,
    position_expectation,
    spectral_derivative,
)
from fockbridge.continuum.quadrature import build_quadrature
from fockbridge.core.exceptions import GridTooCoarseError, SupportEscapeError
from fockbridge.schemas.continuum import BoostParams, QuadratureSpec

rapidities = st.floats(min_value=-1.5, max_value=1.5, allow_nan=False)


@pytest.fixture(scope="module")
def grid():
    return build_quadrature(QuadratureSpec())


@pytest.fixture(scope="module")
def packet(grid):
    return gaussian_amplitude(grid, width=1.0, center=0.5, position=0.3)


@given(rapidities, st.floats(min_value=-20, max_value=20))
def test_boosted_momenta_stay_on_shell(rapidity, k):
    k_boosted, omega_boosted = boost_momentum(k, BoostParams(rapidity=rapidity), 1.0)
    assert omega_boosted ** 2 - k_boosted ** 2 == pytest.approx(1.0, rel=1e-9, abs=1e-9)


@given(rapidities, rapidities)
def test_boost_vectors_compose(first, second):
    a, b = BoostParams(rapidity=first), BoostParams(rapidity=second)
    once = boost_vector(*boost_vector(2.0, 0.5, a), b)
    assert_allclose(once, boost_vector(2.0, 0.5, a.compose(b)), rtol=1e-12, atol=1e-12)
    assert_allclose(boost_vector(*boost_vector(2.0, 0.5, a), a.inverse()), (2.0, 0.5), atol=1e-12)


def test_zero_rapidity_is_identity(packet):
    assert boost_amplitude(packet, BoostParams()) is packet


@pytest.mark.parametrize("rapidity", [0.2, 0.5, 1.0, -0.5])
def test_boost_report(packet, rapidity):
    report = lorentz_report(packet, BoostParams(rapidity=rapidity))
    assert report.norm_deviation <= 1e-6
    assert report.four_vector_deviation <= 1e-6
    assert report.commutator_deviation <= 1e-5
    assert report.group_deviation <= 2e-5
    assert report.round_trip_deviation <= 1e-5
    assert report.parity_deviation <= 1e-12


@pytest.mark.parametrize("first,second", [(0.3, 0.7), (0.7, 0.3), (-0.4, 0.9)])
def test_unequal_boosts_compose(packet, first, second):
    a, b = BoostParams(rapidity=first), BoostParams(rapidity=second)
    composed = boost_amplitude(boost_amplitude(packet, a), b).values
    direct = boost_amplitude(packet, a.compose(b)).values
    assert np.linalg.norm(composed - direct) / np.linalg.norm(direct) <= 2e-5


def test_boost_moves_the_packet(packet):
    energy, momentum = four_momentum_expectation(packet)
    boosted = boost_amplitude(packet, BoostParams(rapidity=0.5))
    assert four_momentum_expectation(boosted)[1] > momentum
    assert energy > abs(momentum)


def test_parity_flips_position(packet):
    assert position_expectation(parity(packet)) == pytest.approx(-position_expectation(packet), abs=1e-10)
    assert position_expectation(packet) == pytest.approx(0.3, rel=1e-6)


def test_escaping_boost_reports_required_cutoff(packet, grid):
    with pytest.raises(SupportEscapeError) as excinfo:
        boost_amplitude(packet, BoostParams(rapidity=6.0))
    assert excinfo.value.required_cutoff > grid.cutoff


def test_spectral_derivative_refuses_unresolved_amplitudes(grid, rng):
    noise = rng.normal(size=grid.size) + 0j
    with pytest.raises(GridTooCoarseError):
        spectral_derivative(grid, noise)


def test_spectral_derivative_of_resolved_gaussian(grid):
    values = np.exp(-grid.nodes ** 2 / 2) + 0j
    assert_allclose(spectral_derivative(grid, values).real, -grid.nodes * values.real, atol=1e-9)


def test_support_interval(grid):
    amplitude = OneParticleAmplitude(grid, np.where(np.abs(grid.nodes) < 2, 1.0, 0.0) + 0j)
    low, high = amplitude.support_interval()
    assert -2 < low < -1.9
    assert 1.9 < high < 2
