"""
Truncated occupation-number basis and ladder matrices.

States are ordered sector by sector (total N = 0 .. n_max) and, inside a
sector, lexicographically by the sorted list of occupied modes, so the vacuum
is index 0 and |10> precedes |01>. The Jordan-Wigner string of a Fermi
ladder on mode j counts occupied modes l < j in that same mode order.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.sparse as sps

from ..core.config import settings
from ..core.exceptions import MemoryCapError
from ..schemas.lattice import LatticeSpec, Statistics
from .sparse_tools import anticommutator, commutator, identity, max_abs

logger = logging.getLogger(__name__)

Occupation = Tuple[int, ...]


class LadderKind(str, Enum):
    CREATE = "create"
    ANNIHILATE = "annihilate"


def sector_dimension(mode_count: int, particles: int, statistics: Statistics) -> int:
    if statistics == Statistics.FERMI:
        return comb(mode_count, particles)
    return comb(mode_count + particles - 1, particles)


def basis_dimension(mode_count: int, n_max: int, statistics: Statistics) -> int:
    return sum(sector_dimension(mode_count, n, statistics) for n in range(n_max + 1))


@dataclass(frozen=True)
class FockBasis:
    mode_count: int
    n_max: int
    statistics: Statistics
    states: Tuple[Occupation, ...]
    sector_offsets: Tuple[int, ...]
    index: Dict[Occupation, int] = field(repr=False, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.states)

    @property
    def is_fermi(self) -> bool:
        return self.statistics == Statistics.FERMI

    def lookup(self, occupation: Occupation) -> int:
        return self.index[tuple(occupation)]

    def sector_slice(self, particles: int) -> slice:
        return slice(self.sector_offsets[particles], self.sector_offsets[particles + 1])

    def particle_numbers(self) -> np.ndarray:
        sizes = np.diff(self.sector_offsets)
        return np.repeat(np.arange(self.n_max + 1), sizes)

    def sector_mask(self, max_particles: int) -> np.ndarray:
        return self.particle_numbers() <= max_particles

    def number_operator(self):
        return sps.diags(self.particle_numbers().astype(complex), format="csr")

    def parity_operator(self):
        return sps.diags((-1.0) ** self.particle_numbers() + 0j, format="csr")

    def is_untruncated(self) -> bool:
        return self.is_fermi and self.n_max >= self.mode_count


def enumerate_basis(spec: LatticeSpec, memory_cap: Optional[int] = None) -> FockBasis:
    cap = settings.FOCKBRIDGE_MEMORY_CAP if memory_cap is None else memory_cap
    mode_count = spec.mode_count
    n_max = min(spec.n_max, mode_count) if spec.statistics == Statistics.FERMI else spec.n_max

    size = basis_dimension(mode_count, n_max, spec.statistics)
    if size > cap:
        logger.error(f"Fock basis of {size} states exceeds cap {cap}")
        raise MemoryCapError("Fock basis", size, cap)

    choose = combinations if spec.statistics == Statistics.FERMI else combinations_with_replacement
    states: List[Occupation] = []
    offsets = [0]
    for particles in range(n_max + 1):
        for modes in choose(range(mode_count), particles):
            occupation = [0] * mode_count
            for mode in modes:
                occupation[mode] += 1
            states.append(tuple(occupation))
        offsets.append(len(states))

    logger.debug(f"Enumerated {size} {spec.statistics.value} states, M={mode_count}, n_max={n_max}")
    return FockBasis(
        mode_count=mode_count,
        n_max=n_max,
        statistics=spec.statistics,
        states=tuple(states),
        sector_offsets=tuple(offsets),
        index={state: i for i, state in enumerate(states)},
    )


def ladder(basis: FockBasis, mode: int, kind: LadderKind):
    if not 0 <= mode < basis.mode_count:
        raise ValueError(f"mode {mode} outside 0..{basis.mode_count - 1}")

    step = 1 if LadderKind(kind) == LadderKind.CREATE else -1
    rows, cols, values = [], [], []
    for col, state in enumerate(basis.states):
        occupied = state[mode]
        target = occupied + step
        if target < 0 or (basis.is_fermi and target > 1) or sum(state) + step > basis.n_max:
            continue
        amplitude = np.sqrt(max(occupied, target))
        if basis.is_fermi and sum(state[:mode]) % 2:
            amplitude = -amplitude
        new_state = state[:mode] + (target,) + state[mode + 1:]
        rows.append(basis.index[new_state])
        cols.append(col)
        values.append(amplitude)

    shape = (basis.dimension, basis.dimension)
    return sps.csr_matrix((np.asarray(values, dtype=complex), (rows, cols)), shape=shape)


def annihilators(basis: FockBasis) -> list:
    return [ladder(basis, j, LadderKind.ANNIHILATE) for j in range(basis.mode_count)]


def creators(basis: FockBasis) -> list:
    return [ladder(basis, j, LadderKind.CREATE) for j in range(basis.mode_count)]


@dataclass(frozen=True)
class CanonicalRelationsReport:
    statistics: Statistics
    max_deviation: float
    domain_max_sector: int
    top_sector_defect: Optional[float]
    nilpotency_deviation: float


def check_canonical_relations(basis: FockBasis) -> CanonicalRelationsReport:
    """
    Bose: [a_i, a_j] = 0 everywhere and [a_i, a_j^+] = delta_ij on sectors
    N <= n_max - 1. Fermi: anticommutators, on the full space when nothing is
    truncated. The top-sector Bose defect is reported so the truncation
    boundary is visible.
    """
    lowered = annihilators(basis)
    raised = creators(basis)
    one = identity(basis.dimension)
    bracket = anticommutator if basis.is_fermi else commutator

    if basis.is_untruncated():
        domain = basis.n_max
    else:
        domain = basis.n_max - 1
    mask = basis.sector_mask(domain)

    worst = 0.0
    for i in range(basis.mode_count):
        for j in range(basis.mode_count):
            worst = max(worst, max_abs(bracket(lowered[i], lowered[j])))
            expected = one if i == j else 0 * one
            worst = max(worst, max_abs(bracket(lowered[i], raised[j]) - expected, mask))

    nilpotency = 0.0
    if basis.is_fermi:
        nilpotency = max(max_abs(a @ a) for a in lowered)

    top_defect = None
    if not basis.is_fermi:
        top = basis.particle_numbers() == basis.n_max
        top_defect = min(
            float(np.abs((commutator(a, a_dag) - one).diagonal()[top]).min())
            for a, a_dag in zip(lowered, raised)
        )

    logger.debug(f"Canonical relations on {basis.dimension} states: worst deviation {worst:.3e}")
    return CanonicalRelationsReport(
        statistics=basis.statistics,
        max_deviation=worst,
        domain_max_sector=domain,
        top_sector_defect=top_defect,
        nilpotency_deviation=nilpotency,
    )
