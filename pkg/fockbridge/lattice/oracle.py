"""
First-quantized N-particle operators on the dense tensor power C^M (x) ... (x) C^M.

Nothing here touches ladder matrices: the (anti)symmetric subspace is spanned
by explicit permutation sums, so comparing against Fock-space lifts is an
independent check.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, combinations_with_replacement, permutations
from math import factorial, prod
from typing import Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sps
from sympy.combinatorics import Permutation

from ..core.config import settings
from ..core.exceptions import DimensionCapError
from ..schemas.lattice import Statistics
from .fock import FockBasis, sector_dimension
from .grid import ModeGrid

logger = logging.getLogger(__name__)

MAX_PERMUTED_PARTICLES = 6


class Symmetry(str, Enum):
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"

    @classmethod
    def for_statistics(cls, statistics: Statistics) -> "Symmetry":
        return cls.ANTISYMMETRIC if statistics == Statistics.FERMI else cls.SYMMETRIC

    @property
    def statistics(self) -> Statistics:
        return Statistics.FERMI if self == Symmetry.ANTISYMMETRIC else Statistics.BOSE


def permutation_sign(sigma: Sequence[int]) -> int:
    return int(Permutation(list(sigma)).signature())


@dataclass(frozen=True)
class NParticleSpace:
    particles: int
    mode_count: int
    symmetry: Symmetry
    occupations: Tuple[Tuple[int, ...], ...]
    isometry: np.ndarray
    projector: sps.csr_matrix

    @property
    def dimension(self) -> int:
        return self.isometry.shape[1]

    @property
    def tensor_shape(self) -> Tuple[int, ...]:
        return (self.mode_count,) * self.particles


@dataclass(frozen=True)
class NParticleOperator:
    matrix: np.ndarray
    label: str


def _projector(particles: int, mode_count: int, symmetry: Symmetry) -> sps.csr_matrix:
    size = mode_count ** particles
    columns = np.arange(size)
    multi = np.array(np.unravel_index(columns, (mode_count,) * particles))
    total = sps.csr_matrix((size, size), dtype=complex)
    for sigma in permutations(range(particles)):
        sign = permutation_sign(sigma) if symmetry == Symmetry.ANTISYMMETRIC else 1
        rows = np.ravel_multi_index(tuple(multi[list(sigma)]), (mode_count,) * particles)
        data = np.full(size, sign / factorial(particles), dtype=complex)
        total = total + sps.csr_matrix((data, (rows, columns)), shape=(size, size))
    return total


def build_space(particles: int, mode_count: int, symmetry: Symmetry, dense_cap: Optional[int] = None) -> NParticleSpace:
    cap = settings.FOCKBRIDGE_DENSE_CAP if dense_cap is None else dense_cap
    symmetry = Symmetry(symmetry)
    if particles < 1:
        raise ValueError(f"particles must be at least 1, got {particles}")
    size = mode_count ** particles
    if size > cap:
        logger.error(f"Tensor power {mode_count}^{particles} = {size} exceeds dense cap {cap}")
        raise DimensionCapError(f"{particles}-particle tensor power", size, cap)
    if sector_dimension(mode_count, particles, symmetry.statistics) == 0:
        raise ValueError(
            f"no {symmetry.value} states of {particles} particles in {mode_count} modes"
        )

    shape = (mode_count,) * particles
    choose = combinations if symmetry == Symmetry.ANTISYMMETRIC else combinations_with_replacement
    orderings = list(permutations(range(particles)))
    occupations, columns = [], []
    for modes in choose(range(mode_count), particles):
        occupation = [0] * mode_count
        for mode in modes:
            occupation[mode] += 1
        # (1/sqrt(N!)) sum_sigma sgn |k_sigma> carries norm^2 = prod n_j!
        norm = np.sqrt(factorial(particles) * prod(factorial(n) for n in occupation))
        column = np.zeros(size, dtype=complex)
        for sigma in orderings:
            sign = permutation_sign(sigma) if symmetry == Symmetry.ANTISYMMETRIC else 1
            column[np.ravel_multi_index(tuple(modes[s] for s in sigma), shape)] += sign
        occupations.append(tuple(occupation))
        columns.append(column / norm)

    logger.debug(f"Built {symmetry.value} space N={particles} M={mode_count}: {len(columns)} of {size}")
    return NParticleSpace(
        particles=particles,
        mode_count=mode_count,
        symmetry=symmetry,
        occupations=tuple(occupations),
        isometry=np.stack(columns, axis=1),
        projector=_projector(particles, mode_count, symmetry),
    )


@dataclass(frozen=True)
class SpaceDefects:
    idempotency: float
    hermiticity: float
    rank: int
    isometry: float


def space_defects(space: NParticleSpace) -> SpaceDefects:
    projector = space.projector.toarray()
    isometry = space.isometry
    return SpaceDefects(
        idempotency=float(np.abs(projector @ projector - projector).max()),
        hermiticity=float(np.abs(projector - projector.conj().T).max()),
        rank=int(round(np.trace(projector).real)),
        isometry=max(
            float(np.abs(isometry.conj().T @ isometry - np.eye(space.dimension)).max()),
            float(np.abs(projector @ isometry - isometry).max()),
        ),
    )


def _apply_on_axis(tensor: np.ndarray, matrix: np.ndarray, axis: int) -> np.ndarray:
    moved = np.tensordot(matrix, tensor, axes=([1], [axis]))
    return np.moveaxis(moved, 0, axis)


def apply_one_body(space: NParticleSpace, one_particle: np.ndarray, label: str = "sum_i t_i") -> NParticleOperator:
    """V^+ (sum_i 1 x .. x t_i x .. x 1) V."""
    columns = space.isometry.reshape(space.tensor_shape + (space.dimension,))
    total = np.zeros_like(columns)
    for axis in range(space.particles):
        total = total + _apply_on_axis(columns, one_particle, axis)
    flat = total.reshape(-1, space.dimension)
    return NParticleOperator(matrix=space.isometry.conj().T @ flat, label=label)


def direct_sum_operator(space: NParticleSpace, grid: ModeGrid, x_power: int, p_power: int) -> NParticleOperator:
    """sum_i X_i^m P_i^n with the grid's one-particle X and P."""
    if grid.size != space.mode_count:
        raise ValueError(f"grid has {grid.size} modes, space has {space.mode_count}")
    t = np.linalg.matrix_power(grid.position_operator(), x_power) @ np.linalg.matrix_power(
        grid.momentum_operator(), p_power
    )
    return apply_one_body(space, t, label=f"B({x_power},{p_power})")


def sector_block(lifted, basis: FockBasis, particles: int) -> np.ndarray:
    window = basis.sector_slice(particles)
    return sps.csr_matrix(lifted)[window][:, window].toarray()


def compare_with_lift(space: NParticleSpace, operator: NParticleOperator, lifted, basis: FockBasis) -> float:
    if basis.n_max < space.particles:
        raise ValueError(f"basis truncated at {basis.n_max} cannot hold sector {space.particles}")
    if basis.mode_count != space.mode_count:
        raise ValueError(f"basis has {basis.mode_count} modes, space has {space.mode_count}")
    block = sector_block(lifted, basis, space.particles)
    return float(np.abs(operator.matrix - block).max())


def cross_sector_leakage(lifted, basis: FockBasis) -> float:
    """Largest stored entry connecting different particle numbers."""
    entries = sps.coo_matrix(lifted)
    numbers = basis.particle_numbers()
    crossing = numbers[entries.row] != numbers[entries.col]
    if not crossing.any():
        return 0.0
    return float(np.abs(entries.data[crossing]).max())


def permutation_invariant_operator(space: NParticleSpace, words: Sequence[np.ndarray]) -> NParticleOperator:
    """sum_sigma prod_k word_k acting on particle sigma(k), compressed to the subspace."""
    if space.particles > MAX_PERMUTED_PARTICLES:
        raise DimensionCapError("explicit permutation enumeration", factorial(space.particles), factorial(MAX_PERMUTED_PARTICLES))
    if len(words) != space.particles:
        raise ValueError(f"expected {space.particles} words, got {len(words)}")

    columns = space.isometry.reshape(space.tensor_shape + (space.dimension,))
    total = np.zeros_like(columns)
    for sigma in permutations(range(space.particles)):
        term = columns
        for position, particle in enumerate(sigma):
            term = _apply_on_axis(term, words[position], particle)
        total = total + term
    flat = total.reshape(-1, space.dimension)
    return NParticleOperator(matrix=space.isometry.conj().T @ flat, label="permutation sum")
