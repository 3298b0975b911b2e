"""
Active boosts of one-particle amplitudes |f> = int dk f(k) a_k^+ |0>.

Conventions, fixed here and nowhere else:
  k~ = gamma (k - beta omega_k),  omega~ = gamma (omega_k - beta k)
  f~(k) = sqrt(omega_{k~} / omega_k) f(k~)
With these, (E~, P~) = (gamma (E + beta P), gamma (P + beta E)).
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from ..core.exceptions import GridTooCoarseError, SupportEscapeError
from ..schemas.continuum import BoostParams
from .quadrature import QuadratureGrid

logger = logging.getLogger(__name__)

SUPPORT_THRESHOLD = 1e-8
SUPPORT_MARGIN = 1.2
SPECTRAL_TAIL_LIMIT = 1e-12


@dataclass(frozen=True)
class OneParticleAmplitude:
    grid: QuadratureGrid
    values: np.ndarray

    def norm(self) -> float:
        return float(self.grid.integrate(np.abs(self.values) ** 2))

    def edge_magnitude(self) -> float:
        peak = np.abs(self.values).max()
        return float(max(abs(self.values[0]), abs(self.values[-1])) / peak) if peak else 0.0

    def support_interval(self) -> Tuple[float, float]:
        magnitude = np.abs(self.values)
        inside = self.grid.nodes[magnitude > SUPPORT_THRESHOLD * magnitude.max()]
        return float(inside.min()), float(inside.max())


def gaussian_amplitude(grid: QuadratureGrid, width: float, center: float = 0.0, position: float = 0.0) -> OneParticleAmplitude:
    """Normalized packet centered at momentum `center` and position `position`."""
    k = grid.nodes
    values = np.exp(-((k - center) ** 2) / (4 * width ** 2) - 1j * k * position / grid.hbar)
    amplitude = OneParticleAmplitude(grid, values)
    return OneParticleAmplitude(grid, values / np.sqrt(amplitude.norm()))


def boost_momentum(k, params: BoostParams, mass: float):
    k = np.asarray(k, dtype=float)
    omega = np.sqrt(k ** 2 + mass ** 2)
    return params.gamma * (k - params.beta * omega), params.gamma * (omega - params.beta * k)


def boost_vector(energy: float, momentum: float, params: BoostParams) -> Tuple[float, float]:
    gamma, beta = params.gamma, params.beta
    return gamma * (energy + beta * momentum), gamma * (momentum + beta * energy)


def required_cutoff(support: Tuple[float, float], params: BoostParams, mass: float) -> float:
    """Window that holds the boosted packet; k = gamma (k~ + beta omega~) is monotone in k~."""
    ends = np.asarray(support, dtype=float)
    reach = params.gamma * (ends + params.beta * np.sqrt(ends ** 2 + mass ** 2))
    return float(SUPPORT_MARGIN * np.abs(reach).max())


def boost_amplitude(f: OneParticleAmplitude, params: BoostParams) -> OneParticleAmplitude:
    grid = f.grid
    if params.rapidity == 0:
        return f

    needed = required_cutoff(f.support_interval(), params, grid.mass)
    if needed > grid.cutoff:
        logger.error(f"Boost by rapidity {params.rapidity} moves the packet past K={grid.cutoff}")
        raise SupportEscapeError(
            f"boosted amplitude leaves the window |k| <= {grid.cutoff:.6g}", needed
        )

    k_boosted, omega_boosted = boost_momentum(grid.nodes, params, grid.mass)
    real = CubicSpline(grid.nodes, f.values.real, extrapolate=False)(k_boosted)
    imag = CubicSpline(grid.nodes, f.values.imag, extrapolate=False)(k_boosted)
    resampled = np.nan_to_num(real) + 1j * np.nan_to_num(imag)
    values = np.sqrt(omega_boosted / grid.frequencies) * resampled
    return OneParticleAmplitude(grid, values)


def parity(f: OneParticleAmplitude) -> OneParticleAmplitude:
    """k -> -k; the node grid is symmetric so this is a reversal."""
    return OneParticleAmplitude(f.grid, f.values[::-1].copy())


def four_momentum_expectation(f: OneParticleAmplitude) -> Tuple[float, float]:
    grid = f.grid
    density = np.abs(f.values) ** 2
    energy = grid.integrate(grid.hbar * grid.frequencies * density)
    momentum = grid.integrate(grid.hbar * grid.nodes * density)
    return float(energy), float(momentum)


def spectral_derivative(grid: QuadratureGrid, values: np.ndarray) -> np.ndarray:
    """d/dk by FFT; valid only when the amplitude is resolved and vanishes at the window edges."""
    coefficients = np.fft.fft(values)
    frequencies = 2 * np.pi * np.fft.fftfreq(values.size, d=grid.step)
    power = np.abs(coefficients) ** 2
    high = np.abs(frequencies) > 0.9 * np.abs(frequencies).max()
    tail = power[high].sum() / power.sum()
    if tail > SPECTRAL_TAIL_LIMIT:
        raise GridTooCoarseError(
            f"{tail:.2e} of the spectral weight sits at the top frequencies; refine the node count"
        )
    return np.fft.ifft(1j * frequencies * coefficients)


def apply_position(f: OneParticleAmplitude) -> np.ndarray:
    """X = i d/dk."""
    return 1j * spectral_derivative(f.grid, f.values)


def position_expectation(f: OneParticleAmplitude) -> float:
    grid = f.grid
    value = grid.integrate(f.values.conj() * apply_position(f)) / f.norm()
    return float(value.real)


def commutator_expectation(f: OneParticleAmplitude) -> complex:
    """<f|[X, P]|f> with P = hbar k."""
    grid = f.grid
    momentum = grid.hbar * grid.nodes
    shifted = OneParticleAmplitude(grid, momentum * f.values)
    commuted = apply_position(shifted) - momentum * apply_position(f)
    return complex(grid.integrate(f.values.conj() * commuted))


@dataclass(frozen=True)
class BoostReport:
    rapidity: float
    norm_deviation: float
    four_vector_deviation: float
    commutator_deviation: float
    group_deviation: float
    round_trip_deviation: float
    parity_deviation: float
    position_rest: float
    position_boosted: float


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(a - b).max() / np.abs(b).max())


def position_expectation_and_commutator(f: OneParticleAmplitude, params: BoostParams) -> Tuple[float, float, float]:
    """(<X>, <X~>, |<[X~,P~]>/N[f~] - i hbar| / hbar) evaluated on the boosted slice."""
    boosted = boost_amplitude(f, params)
    hbar = f.grid.hbar
    deviation = abs(commutator_expectation(boosted) / boosted.norm() - 1j * hbar) / hbar
    return position_expectation(f), position_expectation(boosted), deviation


def lorentz_report(f: OneParticleAmplitude, params: BoostParams) -> BoostReport:
    """All boost properties of one packet at one rapidity; the group check splits the rapidity into unequal thirds."""
    boosted = boost_amplitude(f, params)
    norm_deviation = abs(boosted.norm() / f.norm() - 1)

    energy, momentum = four_momentum_expectation(f)
    expected = np.array(boost_vector(energy, momentum, params))
    measured = np.array(four_momentum_expectation(boosted))
    four_vector = float(np.abs(measured - expected).max() / np.abs(expected).max())

    x_rest, x_boosted, commutator_deviation = position_expectation_and_commutator(f, params)

    third = BoostParams(rapidity=params.rapidity / 3)
    rest = BoostParams(rapidity=params.rapidity - third.rapidity)
    composed = boost_amplitude(boost_amplitude(f, third), rest)
    group = _relative(composed.values, boosted.values)

    round_trip = _relative(boost_amplitude(boosted, params.inverse()).values, f.values)

    mirrored = parity(f)
    parity_deviation = abs(position_expectation(mirrored) + x_rest) / max(1.0, abs(x_rest))

    logger.debug(
        f"Boost eta={params.rapidity}: norm {norm_deviation:.2e}, four-vector {four_vector:.2e}, "
        f"commutator {commutator_deviation:.2e}, group {group:.2e}"
    )
    return BoostReport(
        rapidity=params.rapidity,
        norm_deviation=norm_deviation,
        four_vector_deviation=four_vector,
        commutator_deviation=commutator_deviation,
        group_deviation=group,
        round_trip_deviation=round_trip,
        parity_deviation=parity_deviation,
        position_rest=x_rest,
        position_boosted=x_boosted,
    )
