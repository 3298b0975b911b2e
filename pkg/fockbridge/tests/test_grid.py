import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from pydantic import ValidationError

from fockbridge.lattice.grid import Direction, build_grid, mode_site_transform
from fockbridge.schemas.lattice import LatticeSpec, Statistics

odd_sizes = st.integers(min_value=1, max_value=10).map(lambda n: 2 * n + 1)
lengths = st.floats(min_value=0.5, max_value=50.0)
masses = st.floats(min_value=0.1, max_value=5.0)


@given(odd_sizes, lengths, masses)
def test_grid_invariants(size, length, mass):
    grid = build_grid(LatticeSpec(mode_count=size, box_length=length, mass=mass))
    assert grid.momenta[grid.zero_mode] == 0
    assert_allclose(grid.frequencies, grid.frequencies[::-1])
    assert grid.frequencies.min() == pytest.approx(mass)
    assert np.count_nonzero(grid.frequencies == grid.frequencies.min()) == 1
    assert grid.dk * grid.dx * size == pytest.approx(2 * np.pi)


@given(odd_sizes)
def test_mode_site_transform_is_unitary(size):
    grid = build_grid(LatticeSpec(mode_count=size))
    f = grid.to_site_matrix()
    assert_allclose(f.conj().T @ f, np.eye(size), atol=1e-12)
    j = grid.zero_mode + 1
    expected = np.exp(1j * grid.momenta[j] * grid.sites) / np.sqrt(size)
    assert_allclose(f[:, j], expected, atol=1e-12)


def test_transform_works_along_first_axis(rng):
    grid = build_grid(LatticeSpec(mode_count=7))
    block = rng.normal(size=(7, 3)) + 1j * rng.normal(size=(7, 3))
    sites = mode_site_transform(grid, block, Direction.TO_SITE)
    assert_allclose(sites, grid.to_site_matrix() @ block, atol=1e-12)
    assert_allclose(mode_site_transform(grid, sites, Direction.TO_MODE), block, atol=1e-12)


def test_transform_rejects_wrong_length():
    grid = build_grid(LatticeSpec(mode_count=5))
    with pytest.raises(ValueError):
        mode_site_transform(grid, np.ones(4), Direction.TO_SITE)


def test_spec_rejects_even_mode_count_and_bad_mass():
    with pytest.raises(ValidationError):
        LatticeSpec(mode_count=4)
    with pytest.raises(ValidationError):
        LatticeSpec(mass=0.0)


def test_spec_rejects_fermi_truncation_above_mode_count():
    with pytest.raises(ValidationError):
        LatticeSpec(mode_count=3, n_max=4, statistics=Statistics.FERMI)
    assert LatticeSpec(mode_count=3, n_max=4).with_statistics(Statistics.FERMI).n_max == 3


def test_spectral_gradient_is_real_antisymmetric():
    grid = build_grid(LatticeSpec(mode_count=9))
    gradient = grid.spectral_gradient()
    assert np.isrealobj(gradient)
    assert_allclose(gradient, -gradient.T, atol=1e-12)
    wave = np.sin(grid.momenta[grid.zero_mode + 2] * grid.sites)
    expected = grid.momenta[grid.zero_mode + 2] * np.cos(grid.momenta[grid.zero_mode + 2] * grid.sites)
    assert_allclose(gradient @ wave, expected, atol=1e-12)
