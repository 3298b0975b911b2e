import numpy as np
import pytest
import scipy.sparse as sps

from fockbridge.core.exceptions import MemoryCapError, StatisticsMismatchError
from fockbridge.lattice.complex_field import ComplexFieldBuilder, build_complex_field_ops, single_occupation
from fockbridge.lattice.grid import build_grid
from fockbridge.lattice.sparse_tools import max_abs
from fockbridge.schemas.lattice import LatticeSpec, Statistics


@pytest.fixture
def grid():
    return build_grid(LatticeSpec(mode_count=3, n_max=2))


def test_charge_and_conservation(grid):
    builder, modes, report = build_complex_field_ops(grid, 2, 2, charge=1.0, margin=1)
    assert report.charge_identity <= 1e-10
    assert report.conservation == 0
    assert report.pair_charge == 0
    assert report.pair_number == 2
    assert report.checked_states > 0
    assert report.route_deviation <= 1e-10


def test_single_quanta(grid):
    builder, modes, _ = build_complex_field_ops(grid, 2, 2, charge=2.0)
    empty = (0,) * grid.size
    mode = grid.zero_mode + 1
    particle = builder.state_index(single_occupation(grid.size, mode), empty)
    antiparticle = builder.state_index(empty, single_occupation(grid.size, mode))
    q, h = modes["Q"].matrix, modes["H"].matrix
    assert q[particle, particle] == pytest.approx(2.0)
    assert q[antiparticle, antiparticle] == pytest.approx(-2.0)
    assert h[particle, particle] == pytest.approx(grid.hbar * grid.frequencies[mode])
    assert h[antiparticle, antiparticle] == pytest.approx(grid.hbar * grid.frequencies[mode])
    vacuum = builder.state_index(empty, empty)
    assert abs(h[vacuum, vacuum]) == 0


def test_field_forms_match_mode_forms(grid):
    builder = ComplexFieldBuilder(grid, 2, 2)
    modes, fields = builder.mode_forms(), builder.field_forms()
    mask = builder.safe_mask(margin=1)
    for name in ("N_a", "N_b", "Q", "H", "P", "X"):
        assert max_abs(fields[name].matrix - modes[name].matrix, mask) <= 1e-10


def test_fermi_families_have_no_field_forms():
    grid = build_grid(LatticeSpec(mode_count=3, n_max=2, statistics=Statistics.FERMI))
    builder = ComplexFieldBuilder(grid, 2, 2)
    assert max_abs(builder.mode_forms()["Q"].matrix - builder.mode_forms()["Q"].matrix.conj().T) == 0
    with pytest.raises(StatisticsMismatchError):
        builder.field_forms()


def test_memory_cap(grid):
    with pytest.raises(MemoryCapError):
        ComplexFieldBuilder(grid, 3, 3, memory_cap=50)


def test_field_form_charge_holds_on_full_space(grid):
    builder = ComplexFieldBuilder(grid, 2, 2, charge=1.5)
    n_a, n_b = builder.particle_numbers()
    expected = sps.diags(1.5 * (n_a - n_b) + 0j)
    # includes the states at n_max, where the safe mask would cut
    assert not np.all(builder.safe_mask(margin=1))
    assert max_abs(builder.field_forms()["Q"].matrix - expected) <= 1e-10


def test_fermi_report_leaves_charge_identity_unset():
    grid = build_grid(LatticeSpec(mode_count=3, n_max=1, statistics=Statistics.FERMI))
    _, _, report = build_complex_field_ops(grid, 1, 1)
    assert report.charge_identity is None
