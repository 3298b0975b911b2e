"""
Complex Klein-Gordon field on F_a (x) F_b.

phi = sum_j sqrt(hbar/(2 w L)) (a_j e^{ikx} + b_j^+ e^{-ikx}),
pi  = sum_j i sqrt(hbar w/(2 L)) (a_j^+ e^{-ikx} - b_j e^{ikx}),
phibar = phi^+, pibar = pi^+.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np
import scipy.sparse as sps

from ..core.config import settings
from ..core.exceptions import MemoryCapError, StatisticsMismatchError
from ..schemas.lattice import Statistics
from .fock import annihilators, basis_dimension, creators, enumerate_basis
from .field_ops import CompositeOperator, Route, WKernel, apply_W, site_sum, smear
from .grid import ModeGrid
from .sparse_tools import commutator, linear_combination, max_abs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ComplexFieldSet:
    phi: List[sps.csr_matrix]
    phibar: List[sps.csr_matrix]
    pi: List[sps.csr_matrix]
    pibar: List[sps.csr_matrix]


class ComplexFieldBuilder:
    def __init__(self, grid: ModeGrid, n_max_a: int, n_max_b: int, charge: float = 1.0, memory_cap: int = None):
        cap = settings.FOCKBRIDGE_MEMORY_CAP if memory_cap is None else memory_cap
        statistics = grid.spec.statistics
        size = basis_dimension(grid.size, n_max_a, statistics) * basis_dimension(grid.size, n_max_b, statistics)
        if size > cap:
            logger.error(f"Product Fock space of {size} states exceeds cap {cap}")
            raise MemoryCapError("particle (x) antiparticle Fock space", size, cap)

        self.grid = grid
        self.charge = charge
        self.basis_a = enumerate_basis(grid.spec.model_copy(update={"n_max": n_max_a}), memory_cap=cap)
        self.basis_b = enumerate_basis(grid.spec.model_copy(update={"n_max": n_max_b}), memory_cap=cap)
        self.dimension = self.basis_a.dimension * self.basis_b.dimension

        identity_a = sps.identity(self.basis_a.dimension, dtype=complex, format="csr")
        identity_b = sps.identity(self.basis_b.dimension, dtype=complex, format="csr")
        # Jordan-Wigner string across the two families: b operators see the a parity
        string_a = self.basis_a.parity_operator() if statistics == Statistics.FERMI else identity_a

        self.a = [sps.kron(op, identity_b, format="csr") for op in annihilators(self.basis_a)]
        self.a_dag = [sps.kron(op, identity_b, format="csr") for op in creators(self.basis_a)]
        self.b = [sps.kron(string_a, op, format="csr") for op in annihilators(self.basis_b)]
        self.b_dag = [sps.kron(string_a, op, format="csr") for op in creators(self.basis_b)]
        self._fields = None

        logger.debug(f"Complex field space: {self.basis_a.dimension} x {self.basis_b.dimension} states")

    def particle_numbers(self):
        n_a = np.repeat(self.basis_a.particle_numbers(), self.basis_b.dimension)
        n_b = np.tile(self.basis_b.particle_numbers(), self.basis_a.dimension)
        return n_a, n_b

    def safe_mask(self, margin: int = 2) -> np.ndarray:
        n_a, n_b = self.particle_numbers()
        return (n_a <= self.basis_a.n_max - margin) & (n_b <= self.basis_b.n_max - margin)

    def state_index(self, occupation_a, occupation_b) -> int:
        return self.basis_a.lookup(occupation_a) * self.basis_b.dimension + self.basis_b.lookup(occupation_b)

    def _family_lift(self, one_particle: np.ndarray, lowered, raised):
        t = np.asarray(one_particle, dtype=complex)
        total = sps.csr_matrix((self.dimension, self.dimension), dtype=complex)
        for j, row in enumerate(t):
            for l, value in enumerate(row):
                if value != 0:
                    total = total + value * (raised[j] @ lowered[l])
        return total

    def lift_pair(self, one_particle: np.ndarray):
        return self._family_lift(one_particle, self.a, self.a_dag) + self._family_lift(one_particle, self.b, self.b_dag)

    @property
    def fields(self) -> ComplexFieldSet:
        if self._fields is None:
            grid = self.grid
            length = grid.spec.box_length
            phases = np.exp(1j * np.outer(grid.sites, grid.momenta))
            phi_weight = np.sqrt(grid.hbar / (2 * grid.frequencies * length))
            pi_weight = np.sqrt(grid.hbar * grid.frequencies / (2 * length))
            phi, pi = [], []
            for row in phases:
                phi.append(
                    linear_combination(phi_weight * row, self.a, self.dimension)
                    + linear_combination(phi_weight * row.conj(), self.b_dag, self.dimension)
                )
                pi.append(
                    linear_combination(1j * pi_weight * row.conj(), self.a_dag, self.dimension)
                    - linear_combination(1j * pi_weight * row, self.b, self.dimension)
                )
            self._fields = ComplexFieldSet(
                phi=phi,
                phibar=[op.conj().T.tocsr() for op in phi],
                pi=pi,
                pibar=[op.conj().T.tocsr() for op in pi],
            )
        return self._fields

    def mode_forms(self) -> Dict[str, CompositeOperator]:
        grid = self.grid
        eye = np.eye(grid.size)
        n_a = self._family_lift(eye, self.a, self.a_dag)
        n_b = self._family_lift(eye, self.b, self.b_dag)
        operators = {
            "N_a": n_a,
            "N_b": n_b,
            "N": n_a + n_b,
            "Q": self.charge * (n_a - n_b),
            "H": self.lift_pair(grid.energy_operator()),
            "P": self.lift_pair(grid.momentum_operator()),
            "X": self.lift_pair(grid.position_operator()),
        }
        return {name: CompositeOperator(name, matrix, Route.MODE) for name, matrix in operators.items()}

    def field_forms(self) -> Dict[str, CompositeOperator]:
        grid = self.grid
        if grid.spec.statistics == Statistics.FERMI:
            raise StatisticsMismatchError("complex field forms are identities only for Bose families")

        f = self.fields
        hbar, dx = grid.hbar, grid.dx
        w, w_inv = WKernel(grid, 1), WKernel(grid, -1)
        w_half, w_inv_half = WKernel(grid, 0.5), WKernel(grid, -0.5)
        gradient = grid.spectral_gradient()

        w_phi, w_phibar = apply_W(w, f.phi), apply_W(w, f.phibar)
        w_pi, w_pibar = apply_W(w, f.pi), apply_W(w, f.pibar)
        winv_pi, winv_pibar = apply_W(w_inv, f.pi), apply_W(w_inv, f.pibar)

        n_a = (dx / (2 * hbar)) * (
            site_sum(f.phibar, w_phi)
            + 1j * site_sum(f.phibar, f.pibar)
            - 1j * site_sum(f.pi, f.phi)
            + site_sum(f.pi, winv_pibar)
        )
        n_b = (dx / (2 * hbar)) * (
            site_sum(f.phi, w_phibar)
            + 1j * site_sum(f.phi, f.pi)
            - 1j * site_sum(f.pibar, f.phibar)
            + site_sum(f.pibar, winv_pi)
        )

        grad_phi, grad_phibar = smear(gradient, f.phi), smear(gradient, f.phibar)
        grad_pi, grad_pibar = smear(gradient, f.pi), smear(gradient, f.pibar)
        mass_sq = grid.spec.mass ** 2
        hamiltonian = 0.5 * dx * (
            site_sum(f.pi, f.pibar)
            + site_sum(f.pibar, f.pi)
            + site_sum(grad_phibar, grad_phi)
            + site_sum(grad_phi, grad_phibar)
            + mass_sq * (site_sum(f.phibar, f.phi) + site_sum(f.phi, f.phibar))
            + 1j * (
                site_sum(f.phibar, w_pibar)
                - site_sum(f.pi, w_phi)
                + site_sum(f.phi, w_pi)
                - site_sum(f.pibar, w_phibar)
            )
        )

        momentum = 0.5 * dx * (
            -site_sum(grad_phibar, f.pibar)
            - site_sum(f.pi, grad_phi)
            + 1j * (site_sum(grad_phibar, w_phi) + site_sum(grad_pi, winv_pibar))
            - site_sum(grad_phi, f.pi)
            - site_sum(f.pibar, grad_phibar)
            + 1j * (site_sum(grad_phi, w_phibar) + site_sum(grad_pibar, winv_pi))
        )

        u, ubar = apply_W(w_half, f.phi), apply_W(w_half, f.phibar)
        v, vbar = apply_W(w_inv_half, f.pi), apply_W(w_inv_half, f.pibar)
        x = grid.sites
        position = (dx / (2 * hbar)) * (
            site_sum(ubar, u, x)
            + 1j * site_sum(ubar, vbar, x)
            - 1j * site_sum(v, u, x)
            + site_sum(v, vbar, x)
            + site_sum(u, ubar, x)
            + 1j * site_sum(u, v, x)
            - 1j * site_sum(vbar, ubar, x)
            + site_sum(vbar, v, x)
        )

        operators = {
            "N_a": n_a,
            "N_b": n_b,
            "N": n_a + n_b,
            "Q": self.charge * (n_a - n_b),
            "H": hamiltonian,
            "P": momentum,
            "X": position,
        }
        return {name: CompositeOperator(name, matrix, Route.FIELD) for name, matrix in operators.items()}


@dataclass(frozen=True)
class ComplexFieldReport:
    charge_identity: Optional[float]
    conservation: float
    route_deviation: float
    pair_charge: float
    pair_number: float
    checked_states: int


def build_complex_field_ops(grid: ModeGrid, n_max_a: int, n_max_b: int, charge: float = 1.0, margin: int = 2):
    """Mode-form operator set plus the consistency report for the antiparticle sector."""
    builder = ComplexFieldBuilder(grid, n_max_a, n_max_b, charge=charge)
    modes = builder.mode_forms()
    hamiltonian = modes["H"].matrix

    n_a, n_b = builder.particle_numbers()
    expected_charge = sps.diags(charge * (n_a - n_b) + 0j)

    conservation = max(
        max_abs(commutator(modes[name].matrix, hamiltonian)) for name in ("Q", "N_a", "N_b")
    )

    mask = builder.safe_mask(margin)
    charge_identity, route_deviation = None, 0.0
    if grid.spec.statistics == Statistics.BOSE:
        fields = builder.field_forms()
        # the field-form charge is exact on the whole truncated space
        charge_identity = max_abs(fields["Q"].matrix - expected_charge)
        route_deviation = max(
            max_abs(fields[name].matrix - modes[name].matrix, mask) for name in modes
        )

    pair = builder.state_index(
        single_occupation(grid.size, grid.zero_mode), single_occupation(grid.size, grid.zero_mode)
    ) if builder.basis_a.n_max >= 1 and builder.basis_b.n_max >= 1 else 0
    report = ComplexFieldReport(
        charge_identity=charge_identity,
        conservation=conservation,
        route_deviation=route_deviation,
        pair_charge=float(modes["Q"].matrix[pair, pair].real),
        pair_number=float(modes["N"].matrix[pair, pair].real),
        checked_states=int(mask.sum()),
    )
    return builder, modes, report


def single_occupation(mode_count: int, mode: int):
    occupation = [0] * mode_count
    occupation[mode] = 1
    return tuple(occupation)
