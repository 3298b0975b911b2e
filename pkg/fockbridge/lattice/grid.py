"""
Momentum and position lattices of the periodic box.

Mode index j runs over -(M-1)/2 .. (M-1)/2 and is stored in ascending order,
so array position (M-1)/2 holds k = 0. Sites are x_n = n L / M. The transform
between the two is the unitary DFT b_n = M^{-1/2} sum_j e^{i k_j x_n} a_j.
"""
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..schemas.lattice import LatticeSpec

logger = logging.getLogger(__name__)


class Direction(str, Enum):
    TO_SITE = "to_site"
    TO_MODE = "to_mode"


@dataclass(frozen=True)
class ModeGrid:
    spec: LatticeSpec
    mode_numbers: np.ndarray
    momenta: np.ndarray
    frequencies: np.ndarray
    sites: np.ndarray
    dk: float
    dx: float

    @property
    def size(self) -> int:
        return self.spec.mode_count

    @property
    def zero_mode(self) -> int:
        return (self.size - 1) // 2

    @property
    def hbar(self) -> float:
        return self.spec.hbar

    def to_site_matrix(self) -> np.ndarray:
        """F with F[n, j] = e^{i k_j x_n} / sqrt(M); unitary."""
        return mode_site_transform(self, np.eye(self.size, dtype=complex), Direction.TO_SITE)

    def position_operator(self) -> np.ndarray:
        """One-particle position in the mode basis, F^dagger diag(x) F."""
        f = self.to_site_matrix()
        return f.conj().T @ (self.sites[:, None] * f)

    def momentum_operator(self) -> np.ndarray:
        return np.diag(self.hbar * self.momenta).astype(complex)

    def energy_operator(self) -> np.ndarray:
        return np.diag(self.hbar * self.frequencies).astype(complex)

    def spectral_gradient(self) -> np.ndarray:
        """Site-space d/dx, exact on the band of resolved modes."""
        return self.site_kernel(1j * self.momenta).real

    def site_kernel(self, multiplier: np.ndarray) -> np.ndarray:
        """Site-space matrix of the operator diagonal in momentum with the given multiplier."""
        f = self.to_site_matrix()
        return f @ (multiplier[:, None] * f.conj().T)


def build_grid(spec: LatticeSpec) -> ModeGrid:
    size = spec.mode_count
    if size % 2 == 0 or size < 3:
        raise ValueError(f"mode_count must be odd and at least 3, got {size}")
    if spec.mass <= 0:
        raise ValueError(f"mass must be positive, got {spec.mass}")

    half = (size - 1) // 2
    mode_numbers = np.arange(-half, half + 1)
    dk = 2 * np.pi / spec.box_length
    dx = spec.box_length / size
    momenta = dk * mode_numbers
    frequencies = np.sqrt(momenta ** 2 + spec.mass ** 2)
    sites = dx * np.arange(size)

    for array in (mode_numbers, momenta, frequencies, sites):
        array.setflags(write=False)

    logger.debug(f"Built mode grid M={size} L={spec.box_length} m={spec.mass}")
    return ModeGrid(
        spec=spec,
        mode_numbers=mode_numbers,
        momenta=momenta,
        frequencies=frequencies,
        sites=sites,
        dk=dk,
        dx=dx,
    )


def mode_site_transform(grid: ModeGrid, amplitudes: np.ndarray, direction: Direction) -> np.ndarray:
    """
    Unitary map between mode amplitudes and site amplitudes.

    Works along axis 0, so a matrix is transformed column by column.
    """
    values = np.asarray(amplitudes, dtype=complex)
    if values.shape[0] != grid.size:
        raise ValueError(f"expected {grid.size} amplitudes along axis 0, got {values.shape[0]}")

    if Direction(direction) == Direction.TO_SITE:
        return np.fft.ifft(np.fft.ifftshift(values, axes=0), axis=0, norm="ortho")
    return np.fft.fftshift(np.fft.fft(values, axis=0, norm="ortho"), axes=0)
