import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import trapezoid

from ..schemas.continuum import QuadratureSpec

logger = logging.getLogger(__name__)


class Measure(str, Enum):
    INVARIANT = "invariant"  # dp / omega_p
    PLAIN = "plain"  # dp


@dataclass(frozen=True)
class QuadratureGrid:
    spec: QuadratureSpec
    nodes: np.ndarray
    step: float
    frequencies: np.ndarray

    @property
    def mass(self) -> float:
        return self.spec.mass

    @property
    def hbar(self) -> float:
        return self.spec.hbar

    @property
    def cutoff(self) -> float:
        return self.spec.cutoff

    @property
    def size(self) -> int:
        return self.nodes.size

    @property
    def weights(self) -> np.ndarray:
        weights = np.full(self.size, self.step)
        weights[[0, -1]] *= 0.5
        return weights

    @property
    def alias_period(self) -> float:
        """Sums over the nodes are periodic in x with this period."""
        return 2 * np.pi * self.hbar / self.step

    def integrate(self, values: np.ndarray) -> complex:
        return trapezoid(values, dx=self.step)


def build_quadrature(spec: QuadratureSpec) -> QuadratureGrid:
    if spec.node_count % 2 == 0:
        raise ValueError(f"node_count must be odd so p = 0 is a node, got {spec.node_count}")
    nodes = np.linspace(-spec.cutoff, spec.cutoff, spec.node_count)
    frequencies = np.sqrt(nodes ** 2 + spec.mass ** 2)
    for array in (nodes, frequencies):
        array.setflags(write=False)
    logger.debug(f"Quadrature grid K={spec.cutoff} with {spec.node_count} nodes")
    return QuadratureGrid(spec=spec, nodes=nodes, step=float(nodes[1] - nodes[0]), frequencies=frequencies)


@dataclass(frozen=True)
class MomentumWavefunction:
    grid: QuadratureGrid
    values: np.ndarray
    measure: Measure = Measure.INVARIANT

    def norm(self) -> float:
        density = np.abs(self.values) ** 2
        if self.measure == Measure.INVARIANT:
            density = density / self.grid.frequencies
        return float(self.grid.integrate(density))


def gaussian_wavefunction(grid: QuadratureGrid, width: float, center: float = 0.0, omega_power: float = 0.5) -> MomentumWavefunction:
    """omega^power * exp(-(p - center)^2 / (2 width^2)), invariant-measure convention."""
    envelope = np.exp(-((grid.nodes - center) ** 2) / (2 * width ** 2))
    return MomentumWavefunction(grid, (grid.frequencies ** omega_power * envelope).astype(complex))
