"""
Discretized Klein-Gordon field operators at t = 0 and the composite
operators built from them.

Continuum to lattice: a_k -> a_j / sqrt(dk), a_x -> b_n / sqrt(dx),
so every discrete ladder is Kronecker normalized. Field forms are assembled
as sparse products of phi_n and pi_n with W^s insertions; on the truncated
space they agree with the mode forms on sectors N <= n_max - 2.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sps

from ..core.exceptions import StatisticsMismatchError
from .fock import FockBasis, annihilators, creators
from .grid import Direction, ModeGrid, mode_site_transform
from .sparse_tools import anticommutator, commutator, identity, linear_combination, max_abs

logger = logging.getLogger(__name__)


class Route(str, Enum):
    MODE = "mode"
    FIELD = "field"
    POSITION_MODE = "position_mode"


@dataclass(frozen=True)
class CompositeOperator:
    name: str
    matrix: sps.csr_matrix
    route: Route

    def hermiticity_defect(self) -> float:
        return max_abs(self.matrix - self.matrix.conj().T)


class WKernel:
    """W^n = (m^2 - d^2/dx^2)^{n/2}: multiplies mode j by omega_j^n."""

    def __init__(self, grid: ModeGrid, exponent: float):
        self.grid = grid
        self.exponent = float(exponent)
        self.multiplier = grid.frequencies ** self.exponent

    def apply(self, site_values: np.ndarray) -> np.ndarray:
        modes = mode_site_transform(self.grid, site_values, Direction.TO_MODE)
        scaled = self.multiplier.reshape((-1,) + (1,) * (modes.ndim - 1)) * modes
        return mode_site_transform(self.grid, scaled, Direction.TO_SITE)

    def site_matrix(self) -> np.ndarray:
        """Discrete B(x_n - x_m); real and symmetric because omega is even in k."""
        return self.grid.site_kernel(self.multiplier).real

    def apply_site(self, site_values: np.ndarray) -> np.ndarray:
        return self.site_matrix() @ np.asarray(site_values)

    def compose(self, other: "WKernel") -> "WKernel":
        return WKernel(self.grid, self.exponent + other.exponent)


def smear(kernel: np.ndarray, operators: Sequence) -> list:
    """(K f)_n = sum_m K_nm f_m for an operator-valued site vector f."""
    dimension = operators[0].shape[0]
    return [linear_combination(row, operators, dimension) for row in kernel]


def apply_W(kernel: WKernel, target):
    """W^n applied to a site vector, a matrix of site columns, or a list of site operators."""
    if isinstance(target, (list, tuple)):
        return smear(kernel.site_matrix(), target)
    return kernel.apply(target)


def site_sum(left: Sequence, right: Sequence, weights: Optional[np.ndarray] = None):
    total = sps.csr_matrix(left[0].shape, dtype=complex)
    for n, (a, b) in enumerate(zip(left, right)):
        factor = 1.0 if weights is None else weights[n]
        if factor != 0:
            total = total + factor * (a @ b)
    return total


@dataclass(frozen=True)
class FieldSet:
    phi: List[sps.csr_matrix]
    pi: List[sps.csr_matrix]


def build_fields(grid: ModeGrid, basis: FockBasis) -> FieldSet:
    """
    phi_n = sum_j sqrt(hbar / (2 w_j L)) (a_j e^{i k_j x_n} + h.c.),
    pi_n  = sum_j -i sqrt(hbar w_j / (2 L)) (a_j e^{i k_j x_n} - h.c.).
    """
    hbar = grid.hbar
    length = grid.spec.box_length
    lowered = annihilators(basis)
    raised = creators(basis)
    phases = np.exp(1j * np.outer(grid.sites, grid.momenta))
    phi_weight = np.sqrt(hbar / (2 * grid.frequencies * length))
    pi_weight = np.sqrt(hbar * grid.frequencies / (2 * length))

    phi, pi = [], []
    for row in phases:
        phi.append(
            linear_combination(phi_weight * row, lowered, basis.dimension)
            + linear_combination(phi_weight * row.conj(), raised, basis.dimension)
        )
        pi.append(
            linear_combination(-1j * pi_weight * row, lowered, basis.dimension)
            + linear_combination(1j * pi_weight * row.conj(), raised, basis.dimension)
        )
    return FieldSet(phi=phi, pi=pi)


def mode_amplitude_from_fields(grid: ModeGrid, fields: FieldSet) -> list:
    """a_j = L^{-1/2} sum_n dx [sqrt(w/2hbar) phi_n + i pi_n / sqrt(2 hbar w)] e^{-i k_j x_n}."""
    hbar = grid.hbar
    scale = grid.dx / np.sqrt(grid.spec.box_length)
    dimension = fields.phi[0].shape[0]
    amplitudes = []
    for k, w in zip(grid.momenta, grid.frequencies):
        phase = scale * np.exp(-1j * k * grid.sites)
        amplitudes.append(
            linear_combination(np.sqrt(w / (2 * hbar)) * phase, fields.phi, dimension)
            + linear_combination(1j / np.sqrt(2 * hbar * w) * phase, fields.pi, dimension)
        )
    return amplitudes


class FieldOperatorBuilder:
    """Builds H, P, N, X and one-particle lifts over a single Fock basis."""

    def __init__(self, grid: ModeGrid, basis: FockBasis):
        if grid.size != basis.mode_count:
            raise ValueError(f"grid has {grid.size} modes but basis has {basis.mode_count}")
        self.grid = grid
        self.basis = basis
        self.lowered = annihilators(basis)
        self.raised = creators(basis)
        self._pairs = None
        self._fields = None
        self._position_modes = None

    @property
    def fields(self) -> FieldSet:
        if self._fields is None:
            self._fields = build_fields(self.grid, self.basis)
        return self._fields

    @property
    def position_modes(self) -> Tuple[list, list]:
        """b_n = sum_j F[n, j] a_j and their adjoints."""
        if self._position_modes is None:
            f = self.grid.to_site_matrix()
            dimension = self.basis.dimension
            lowered = [linear_combination(row, self.lowered, dimension) for row in f]
            raised = [linear_combination(row.conj(), self.raised, dimension) for row in f]
            self._position_modes = (lowered, raised)
        return self._position_modes

    def lift(self, one_particle: np.ndarray):
        """Gamma(t) = sum_{jl} t_jl a_j^+ a_l."""
        if self._pairs is None:
            self._pairs = [[a_dag @ a for a in self.lowered] for a_dag in self.raised]
        t = np.asarray(one_particle, dtype=complex)
        total = sps.csr_matrix((self.basis.dimension, self.basis.dimension), dtype=complex)
        for j, row in enumerate(t):
            for l, value in enumerate(row):
                if value != 0:
                    total = total + value * self._pairs[j][l]
        return total

    def lift_building_block(self, x_power: int, p_power: int) -> CompositeOperator:
        x_hat = self.grid.position_operator()
        p_hat = self.grid.momentum_operator()
        t = np.linalg.matrix_power(x_hat, x_power) @ np.linalg.matrix_power(p_hat, p_power)
        return CompositeOperator(f"B({x_power},{p_power})", self.lift(t), Route.MODE)

    def _require_bose(self, name: str):
        if self.basis.is_fermi:
            raise StatisticsMismatchError(
                f"field form of {name} is only an identity under Bose statistics"
            )

    def _position_mode_form(self, name: str, kernel: np.ndarray) -> CompositeOperator:
        lowered, raised = self.position_modes
        smeared = smear(kernel, lowered)
        return CompositeOperator(name, site_sum(raised, smeared), Route.POSITION_MODE)

    def build_H(self, route: Route = Route.MODE) -> CompositeOperator:
        grid = self.grid
        route = Route(route)
        if route == Route.MODE:
            return CompositeOperator("H", self.lift(grid.energy_operator()), route)
        if route == Route.POSITION_MODE:
            return self._position_mode_form("H", grid.hbar * WKernel(grid, 1).site_matrix())

        self._require_bose("H")
        phi, pi = self.fields.phi, self.fields.pi
        grad_phi = smear(grid.spectral_gradient(), phi)
        w_phi = apply_W(WKernel(grid, 1), phi)
        density = (
            site_sum(pi, pi)
            + site_sum(grad_phi, grad_phi)
            + grid.spec.mass ** 2 * site_sum(phi, phi)
            + 1j * (site_sum(w_phi, pi) - site_sum(pi, w_phi))
        )
        return CompositeOperator("H", 0.5 * grid.dx * density, route)

    def build_P(self, route: Route = Route.MODE) -> CompositeOperator:
        grid = self.grid
        route = Route(route)
        if route == Route.MODE:
            return CompositeOperator("P", self.lift(grid.momentum_operator()), route)
        if route == Route.POSITION_MODE:
            return self._position_mode_form("P", -1j * grid.hbar * grid.spectral_gradient())

        self._require_bose("P")
        phi, pi = self.fields.phi, self.fields.pi
        gradient = grid.spectral_gradient()
        grad_phi = smear(gradient, phi)
        grad_pi = smear(gradient, pi)
        w_phi = apply_W(WKernel(grid, 1), phi)
        w_inv_pi = apply_W(WKernel(grid, -1), pi)
        density = -(site_sum(grad_phi, pi) + site_sum(pi, grad_phi)) + 1j * (
            site_sum(grad_phi, w_phi) + site_sum(grad_pi, w_inv_pi)
        )
        return CompositeOperator("P", 0.5 * grid.dx * density, route)

    def build_N(self, route: Route = Route.MODE) -> CompositeOperator:
        grid = self.grid
        route = Route(route)
        if route == Route.MODE:
            return CompositeOperator("N", self.lift(np.eye(grid.size)), route)
        if route == Route.POSITION_MODE:
            return self._position_mode_form("N", np.eye(grid.size))

        self._require_bose("N")
        phi, pi = self.fields.phi, self.fields.pi
        w_phi = apply_W(WKernel(grid, 1), phi)
        w_inv_pi = apply_W(WKernel(grid, -1), pi)
        density = site_sum(phi, w_phi) + site_sum(pi, w_inv_pi) + 1j * (site_sum(phi, pi) - site_sum(pi, phi))
        return CompositeOperator("N", grid.dx / (2 * grid.hbar) * density, route)

    def build_X(self, route: Route = Route.MODE) -> CompositeOperator:
        grid = self.grid
        route = Route(route)
        if route == Route.MODE:
            return CompositeOperator("X", self.lift(grid.position_operator()), route)
        if route == Route.POSITION_MODE:
            lowered, raised = self.position_modes
            return CompositeOperator("X", site_sum(raised, lowered, weights=grid.sites), route)

        self._require_bose("X")
        u = apply_W(WKernel(grid, 0.5), self.fields.phi)
        v = apply_W(WKernel(grid, -0.5), self.fields.pi)
        x = grid.sites
        density = (
            site_sum(u, u, x)
            + site_sum(v, v, x)
            + 1j * (site_sum(u, v, x) - site_sum(v, u, x))
        )
        return CompositeOperator("X", grid.dx / (2 * grid.hbar) * density, route)

    def heisenberg_velocity(self) -> CompositeOperator:
        """Gamma(diag(k/omega)), the velocity of bulk packets; not the lattice [X, H]/(i hbar)."""
        grid = self.grid
        velocity = np.diag(grid.momenta / grid.frequencies)
        return CompositeOperator("V", self.lift(velocity), Route.MODE)

    def velocity_commutator_deviation(self, margin: int = 2) -> float:
        """[X, H]/(i hbar) against the lift of the one-particle commutator."""
        grid = self.grid
        x = self.build_X().matrix
        h = self.build_H().matrix
        x_hat = grid.position_operator()
        h_hat = grid.energy_operator()
        expected = self.lift(commutator(x_hat, h_hat) / (1j * grid.hbar))
        mask = self.basis.sector_mask(self.basis.n_max - margin)
        return max_abs(commutator(x, h) / (1j * grid.hbar) - expected, mask)

    def route_deviation(self, name: str, margin: int = 2) -> float:
        builders = {"H": self.build_H, "P": self.build_P, "N": self.build_N, "X": self.build_X}
        build = builders[name]
        mask = self.basis.sector_mask(self.basis.n_max - margin)
        return max_abs(build(Route.FIELD).matrix - build(Route.MODE).matrix, mask)

    def canonical_field_deviation(self) -> float:
        """[phi_n, pi_m] = i hbar delta_nm / dx, [phi, phi] = [pi, pi] = 0 on sectors <= n_max - 1."""
        grid = self.grid
        phi, pi = self.fields.phi, self.fields.pi
        mask = self.basis.sector_mask(self.basis.n_max - 1)
        one = identity(self.basis.dimension)
        worst = 0.0
        for n in range(grid.size):
            for m in range(grid.size):
                expected = (1j * grid.hbar / grid.dx) * one if n == m else 0 * one
                worst = max(
                    worst,
                    max_abs(commutator(phi[n], pi[m]) - expected, mask),
                    max_abs(commutator(phi[n], phi[m]), mask),
                    max_abs(commutator(pi[n], pi[m]), mask),
                )
        return worst


def lift_homomorphism_deviation(builder: FieldOperatorBuilder, rng: np.random.Generator, pairs: int) -> float:
    """[Gamma(t1), Gamma(t2)] = Gamma([t1, t2]) for random one-particle matrices."""
    size = builder.grid.size
    worst = 0.0
    for _ in range(pairs):
        t1 = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
        t2 = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
        lhs = commutator(builder.lift(t1), builder.lift(t2))
        worst = max(worst, max_abs(lhs - builder.lift(commutator(t1, t2))))
    return worst


def bulk_wavepacket(grid: ModeGrid, width: Optional[float] = None) -> np.ndarray:
    """Mode amplitudes of a normalized Gaussian centered mid-box."""
    length = grid.spec.box_length
    width = length / 14 if width is None else width
    site_values = np.exp(-((grid.sites - length / 2) ** 2) / (2 * width ** 2)).astype(complex)
    site_values /= np.linalg.norm(site_values)
    return mode_site_transform(grid, site_values, Direction.TO_MODE)


def wavepacket_commutator_deviation(grid: ModeGrid) -> float:
    """|[X, P] psi - i hbar psi| on a one-particle packet away from the box edge."""
    psi = bulk_wavepacket(grid)
    x_hat = grid.position_operator()
    p_hat = grid.momentum_operator()
    residual = commutator(x_hat, p_hat) @ psi - 1j * grid.hbar * psi
    return float(np.abs(residual).max() / np.abs(psi).max())


@dataclass(frozen=True)
class XPCommutatorReport:
    homomorphism: float
    vacuum: float
    wavepacket: float


def commutator_check_XP(
    builder: FieldOperatorBuilder,
    rng: np.random.Generator,
    pairs: int,
    packet_grid: Optional[ModeGrid] = None,
) -> XPCommutatorReport:
    """
    [X, P] = i hbar N at three levels: the lift is a Lie homomorphism, [X, P]|0> = 0,
    and a bulk packet on `packet_grid` (defaults to the builder's grid) sees i hbar.
    """
    xp = commutator(builder.build_X().matrix, builder.build_P().matrix)
    vacuum = np.zeros(builder.basis.dimension, dtype=complex)
    vacuum[0] = 1.0
    return XPCommutatorReport(
        homomorphism=lift_homomorphism_deviation(builder, rng, pairs),
        vacuum=float(np.abs(xp @ vacuum).max()),
        wavepacket=wavepacket_commutator_deviation(packet_grid or builder.grid),
    )


def wavepacket_velocity_deviation(grid: ModeGrid) -> float:
    """|[X, H] psi / (i hbar) - (k/omega) psi| on a one-particle bulk packet."""
    psi = bulk_wavepacket(grid)
    x_hat = grid.position_operator()
    h_hat = grid.energy_operator()
    lhs = commutator(x_hat, h_hat) @ psi / (1j * grid.hbar)
    rhs = (grid.momenta / grid.frequencies) * psi
    return float(np.abs(lhs - rhs).max() / np.abs(psi).max())


@dataclass(frozen=True)
class AnticommutatorReport:
    phi_phi: float
    phi_pi: float
    pi_pi: float
    witness: float
    witness_separation: float
    pi_pi_diagonal: float


def fermi_field_anticommutators(builder: FieldOperatorBuilder) -> AnticommutatorReport:
    """
    {phi_n, phi_m} = (hbar/dx) (W^-1)_nm, {phi, pi} = 0, {pi_n, pi_m} = (hbar/dx) W_nm.
    Checked on the full space when nothing is truncated, else on sectors <= n_max - 1.
    """
    basis = builder.basis
    if not basis.is_fermi:
        raise StatisticsMismatchError("field anticommutators need a Fermi basis")

    grid = builder.grid
    phi, pi = builder.fields.phi, builder.fields.pi
    scale = grid.hbar / grid.dx
    w_inv = scale * WKernel(grid, -1).site_matrix()
    w = scale * WKernel(grid, 1).site_matrix()
    one = identity(basis.dimension)
    domain = basis.n_max if basis.is_untruncated() else basis.n_max - 1
    mask = basis.sector_mask(domain)

    phi_phi = phi_pi = pi_pi = 0.0
    for n in range(grid.size):
        for m in range(grid.size):
            phi_phi = max(phi_phi, max_abs(anticommutator(phi[n], phi[m]) - w_inv[n, m] * one, mask))
            phi_pi = max(phi_pi, max_abs(anticommutator(phi[n], pi[m]), mask))
            pi_pi = max(pi_pi, max_abs(anticommutator(pi[n], pi[m]) - w[n, m] * one, mask))

    far = grid.size // 2
    vacuum_value = anticommutator(phi[0], phi[far])[0, 0]
    diagonal = anticommutator(pi[0], pi[0])[0, 0].real * grid.dx / grid.hbar
    return AnticommutatorReport(
        phi_phi=phi_phi,
        phi_pi=phi_pi,
        pi_pi=pi_pi,
        witness=float(abs(vacuum_value)),
        witness_separation=float(grid.sites[far]),
        pi_pi_diagonal=float(abs(diagonal - grid.frequencies.mean())),
    )


def anticommutator_kernel(grid: ModeGrid) -> Tuple[np.ndarray, np.ndarray]:
    """(separation, {phi_0, phi_n}) pairs from the W^-1 kernel."""
    row = grid.hbar / grid.dx * WKernel(grid, -1).site_matrix()[0]
    return grid.sites.copy(), row


def classical_number_functional(grid: ModeGrid, phi: np.ndarray, pi: np.ndarray) -> float:
    """N_cl = (dx / hbar) sum_n (phi W phi + pi W^-1 pi) / 2."""
    w_phi = apply_W(WKernel(grid, 1), phi).real
    w_inv_pi = apply_W(WKernel(grid, -1), pi).real
    return float(grid.dx / grid.hbar * 0.5 * (phi @ w_phi + pi @ w_inv_pi))


def classical_energy(grid: ModeGrid, phi: np.ndarray, pi: np.ndarray) -> float:
    w2_phi = apply_W(WKernel(grid, 2), phi).real
    return float(grid.dx * 0.5 * (pi @ pi + phi @ w2_phi))


def classical_evolve(grid: ModeGrid, phi: np.ndarray, pi: np.ndarray, t: float) -> Tuple[np.ndarray, np.ndarray]:
    """Exact evolution: rotate each classical amplitude a_k by e^{-i w_k t}."""
    hbar = grid.hbar
    w = grid.frequencies
    phi_k = mode_site_transform(grid, np.asarray(phi, dtype=float), Direction.TO_MODE)
    pi_k = mode_site_transform(grid, np.asarray(pi, dtype=float), Direction.TO_MODE)

    amplitude = np.sqrt(w / (2 * hbar)) * phi_k + 1j * pi_k / np.sqrt(2 * hbar * w)
    amplitude = amplitude * np.exp(-1j * w * t)
    # the k grid is symmetric, so reversing gives a_{-k}
    partner = amplitude[::-1].conj()

    phi_t = np.sqrt(hbar / (2 * w)) * (amplitude + partner)
    pi_t = -1j * np.sqrt(hbar * w / 2) * (amplitude - partner)
    return (
        mode_site_transform(grid, phi_t, Direction.TO_SITE).real,
        mode_site_transform(grid, pi_t, Direction.TO_SITE).real,
    )
