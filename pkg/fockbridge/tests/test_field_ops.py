import numpy as np
import pytest
from numpy.testing import assert_allclose

from fockbridge.core.exceptions import StatisticsMismatchError
from fockbridge.lattice.field_ops import (
    FieldOperatorBuilder,
    Route,
    WKernel,
    apply_W,
    anticommutator_kernel,
    classical_energy,
    classical_evolve,
    classical_number_functional,
    commutator_check_XP,
    fermi_field_anticommutators,
    lift_homomorphism_deviation,
    mode_amplitude_from_fields,
    wavepacket_commutator_deviation,
    wavepacket_velocity_deviation,
)
from fockbridge.lattice.fock import annihilators, enumerate_basis
from fockbridge.lattice.grid import build_grid
from fockbridge.lattice.sparse_tools import commutator, max_abs
from fockbridge.schemas.lattice import LatticeSpec, Statistics


@pytest.fixture
def builder(bose_spec):
    return FieldOperatorBuilder(build_grid(bose_spec), enumerate_basis(bose_spec))


@pytest.fixture
def fermi_builder():
    spec = LatticeSpec(mode_count=5, box_length=5.0, n_max=5, statistics=Statistics.FERMI)
    return FieldOperatorBuilder(build_grid(spec), enumerate_basis(spec))


def test_w_kernel_powers_compose(rng):
    grid = build_grid(LatticeSpec(mode_count=7))
    values = rng.normal(size=7)
    half = WKernel(grid, 0.5)
    assert_allclose(half.apply(WKernel(grid, -0.5).apply(values)), values, atol=1e-12)
    assert_allclose(half.compose(half).site_matrix(), WKernel(grid, 1).site_matrix(), atol=1e-12)
    assert_allclose(WKernel(grid, 1).site_matrix(), WKernel(grid, 1).site_matrix().T, atol=1e-12)


def test_apply_w_vector_branch_matches_mode_multiplier(rng):
    grid = build_grid(LatticeSpec(mode_count=7))
    values = rng.normal(size=7) + 1j * rng.normal(size=7)
    for exponent in (-1, -0.5, 0.5, 1, 2):
        kernel = WKernel(grid, exponent)
        assert_allclose(apply_W(kernel, values), kernel.apply(values), atol=1e-12)
        assert_allclose(apply_W(kernel, values), kernel.apply_site(values), atol=1e-12)


def test_apply_w_operator_rows_compose(builder):
    grid = builder.grid
    phi = builder.fields.phi
    stacked = np.stack([op.toarray() for op in phi])
    for exponent in (-1, 0.5, 1):
        kernel = WKernel(grid, exponent)
        rows = apply_W(kernel, phi)
        assert len(rows) == grid.size
        # entry by entry, the operator branch is the vector branch
        assert_allclose(np.stack([op.toarray() for op in rows]), kernel.apply(stacked), atol=1e-12)

    half, quarter = WKernel(grid, 0.5), WKernel(grid, 0.25)
    twice = apply_W(half, apply_W(quarter, phi))
    once = apply_W(WKernel(grid, 0.75), phi)
    for left, right in zip(twice, once):
        assert max_abs(left - right) <= 1e-12


def test_canonical_field_commutators(builder):
    assert builder.canonical_field_deviation() <= 1e-10


def test_mode_amplitudes_are_recovered_from_fields(builder):
    recovered = mode_amplitude_from_fields(builder.grid, builder.fields)
    for a_rebuilt, a in zip(recovered, annihilators(builder.basis)):
        assert max_abs(a_rebuilt - a) <= 1e-10


@pytest.mark.parametrize("name", ["H", "P", "N", "X"])
def test_field_and_mode_routes_agree_below_truncation(builder, name):
    assert builder.route_deviation(name, margin=2) <= 1e-10


@pytest.mark.parametrize("name", ["H", "P", "N"])
def test_position_mode_route(builder, name):
    build = getattr(builder, f"build_{name}")
    assert max_abs(build(Route.POSITION_MODE).matrix - build(Route.MODE).matrix) <= 1e-10


def test_building_block_lifts(builder):
    assert max_abs(builder.lift_building_block(0, 1).matrix - builder.build_P().matrix) <= 1e-12
    assert max_abs(builder.lift_building_block(0, 0).matrix - builder.build_N().matrix) <= 1e-12
    assert max_abs(builder.build_N().matrix - builder.basis.number_operator()) <= 1e-12


def test_observables_are_hermitian_and_conserved(builder):
    h, p, n, x = builder.build_H(), builder.build_P(), builder.build_N(), builder.build_X()
    for op in (h, p, n, x):
        assert op.hermiticity_defect() <= 1e-12
    assert max_abs(commutator(n.matrix, h.matrix)) == 0
    assert max_abs(commutator(p.matrix, h.matrix)) == 0
    assert abs(builder.build_H(Route.FIELD).matrix[0, 0]) <= 1e-10


def test_field_forms_refuse_fermi_statistics(fermi_builder):
    with pytest.raises(StatisticsMismatchError):
        fermi_builder.build_H(Route.FIELD)
    assert fermi_builder.build_H(Route.MODE).hermiticity_defect() <= 1e-12


def test_velocity_lift(builder):
    assert builder.velocity_commutator_deviation(margin=2) <= 1e-10
    one_particle = builder.heisenberg_velocity().matrix.diagonal()[builder.basis.sector_slice(1)]
    assert np.abs(one_particle).max() < 1


def test_lattice_velocity_is_not_the_k_over_omega_lift(builder):
    grid = builder.grid
    exact = commutator(grid.position_operator(), grid.energy_operator()) / (1j * grid.hbar)
    bulk = np.diag(grid.momenta / grid.frequencies)
    # the periodic position operator makes the two differ well beyond rounding
    assert np.abs(exact - bulk).max() > 0.1
    mask = builder.basis.sector_mask(builder.basis.n_max - 2)
    assert max_abs(builder.lift(exact) - builder.heisenberg_velocity().matrix, mask) > 0.1


def test_wavepacket_velocity_and_commutator():
    assert wavepacket_velocity_deviation(build_grid(LatticeSpec(mode_count=81, box_length=40.0))) <= 1e-6
    assert wavepacket_commutator_deviation(build_grid(LatticeSpec(mode_count=41))) <= 1e-6


@pytest.mark.parametrize("statistics", list(Statistics))
def test_lift_is_a_lie_homomorphism(rng, statistics):
    spec = LatticeSpec(mode_count=3, n_max=3).with_statistics(statistics)
    builder = FieldOperatorBuilder(build_grid(spec), enumerate_basis(spec))
    assert lift_homomorphism_deviation(builder, rng, pairs=5) <= 1e-12


@pytest.mark.parametrize("statistics", list(Statistics))
def test_xp_commutator_levels(rng, statistics):
    spec = LatticeSpec(mode_count=3, n_max=3).with_statistics(statistics)
    builder = FieldOperatorBuilder(build_grid(spec), enumerate_basis(spec))
    report = commutator_check_XP(builder, rng, pairs=3, packet_grid=build_grid(LatticeSpec(mode_count=41)))
    assert report.homomorphism <= 1e-12
    assert report.vacuum == 0.0
    assert report.wavepacket <= 1e-6


def test_fermi_field_anticommutators(fermi_builder):
    report = fermi_field_anticommutators(fermi_builder)
    assert report.phi_pi <= 1e-12
    assert report.phi_phi <= 1e-10
    assert report.pi_pi <= 1e-10
    assert report.witness > 1e-6


def test_fermi_anticommutators_need_fermi_basis(builder):
    with pytest.raises(StatisticsMismatchError):
        fermi_field_anticommutators(builder)


def test_anticommutator_kernel_is_nonlocal():
    grid = build_grid(LatticeSpec(mode_count=21, box_length=5.0))
    separations, values = anticommutator_kernel(grid)
    assert separations.shape == values.shape
    assert abs(values[grid.size // 2]) > 1e-6


def test_classical_invariants(rng):
    grid = build_grid(LatticeSpec(mode_count=9))
    phi, pi = rng.normal(size=9), rng.normal(size=9)
    number = classical_number_functional(grid, phi, pi)
    energy = classical_energy(grid, phi, pi)
    for t in (0.0, 1.7, 10.0):
        phi_t, pi_t = classical_evolve(grid, phi, pi, t)
        assert classical_number_functional(grid, phi_t, pi_t) == pytest.approx(number, rel=1e-12)
        assert classical_energy(grid, phi_t, pi_t) == pytest.approx(energy, rel=1e-12)
    assert_allclose(classical_evolve(grid, phi, pi, 0.0)[0], phi, atol=1e-12)


def test_single_mode_number_and_period():
    grid = build_grid(LatticeSpec(mode_count=9))
    j = grid.zero_mode + 1
    k, omega = grid.momenta[j], grid.frequencies[j]
    phi, pi = 0.5 * np.cos(k * grid.sites), 0.5 * omega * np.sin(k * grid.sites)
    expected = grid.spec.box_length * 0.25 * omega / (2 * grid.hbar)
    assert classical_number_functional(grid, phi, pi) == pytest.approx(expected, rel=1e-12)
    phi_t, pi_t = classical_evolve(grid, phi, pi, 2 * np.pi / omega)
    assert_allclose(phi_t, phi, atol=1e-12)
    assert_allclose(pi_t, pi, atol=1e-12)
