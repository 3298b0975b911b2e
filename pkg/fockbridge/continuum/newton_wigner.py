"""
Newton-Wigner localized states on a momentum quadrature grid (1D, t = 0).

psi_x(p) = sqrt(omega_p / 2 pi) e^{-i p x / hbar}, normalized under dp / omega_p.
Two position-space pictures are compared:

    chi route:  psi(chi) = (2 pi)^{-1/2} int dp / omega_p  psi(p) e^{i p chi / hbar}
    x route:    psi(x)   = (2 pi hbar)^{-1/2} int dp / sqrt(omega_p) psi(p) e^{i p x / hbar}

The x route is an isometry of the invariant measure; the chi route is not.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.special import gamma, k0, kv

from ..schemas.continuum import QuadratureSpec
from .quadrature import MomentumWavefunction, QuadratureGrid, build_quadrature, gaussian_wavefunction

logger = logging.getLogger(__name__)

FOURIER_CHUNK = 256
SINC_HALF_MAX = 1.8954942670339809  # root of sin(u) = u / 2
DECAY_WINDOW = (1.0, 5.0)


class Picture(str, Enum):
    CHI = "chi"
    X = "x"


def nw_state(grid: QuadratureGrid, x: float) -> MomentumWavefunction:
    values = np.sqrt(grid.frequencies / (2 * np.pi)) * np.exp(-1j * grid.nodes * x / grid.hbar)
    return MomentumWavefunction(grid, values)


def _fourier_sum(grid: QuadratureGrid, amplitudes: np.ndarray, points: np.ndarray) -> np.ndarray:
    """sum_i w_i a_i e^{i p_i x / hbar} for every x in points."""
    points = np.atleast_1d(np.asarray(points, dtype=float))
    weighted = grid.weights * amplitudes
    result = np.empty(points.size, dtype=complex)
    for start in range(0, points.size, FOURIER_CHUNK):
        chunk = points[start:start + FOURIER_CHUNK]
        phases = np.exp(1j * np.outer(chunk, grid.nodes) / grid.hbar)
        result[start:start + FOURIER_CHUNK] = phases @ weighted
    return result


def chi_representation(psi: MomentumWavefunction, chi: np.ndarray) -> np.ndarray:
    grid = psi.grid
    return _fourier_sum(grid, psi.values / (np.sqrt(2 * np.pi) * grid.frequencies), chi)


def x_representation(psi: MomentumWavefunction, x: np.ndarray) -> np.ndarray:
    grid = psi.grid
    return _fourier_sum(grid, psi.values / np.sqrt(2 * np.pi * grid.hbar * grid.frequencies), x)


def period_points(grid: QuadratureGrid) -> Tuple[np.ndarray, float]:
    """One full alias period sampled with as many points as nodes; Riemann sums there obey Parseval."""
    period = grid.alias_period
    count = grid.size
    spacing = period / count
    return -period / 2 + spacing * np.arange(count), spacing


def position_norm(values: np.ndarray, spacing: float) -> float:
    return float(spacing * np.sum(np.abs(values) ** 2))


def chi_overlap(grid: QuadratureGrid, chi1: float, chi2: float, complete_tail: bool = True) -> float:
    """
    <chi1|chi2> = int dp / omega_p e^{i p (chi1 - chi2) / hbar}, real by parity.

    At coincidence the window value 2 asinh(K/m) is returned; the full
    integral diverges there. Otherwise `complete_tail` adds int_K^inf with
    QUADPACK's Fourier weight, so the result approaches 2 K0(m |chi1 - chi2| / hbar).
    """
    separation = abs(chi1 - chi2) / grid.hbar
    mass = grid.mass
    if separation == 0:
        return float(2 * np.arcsinh(grid.cutoff / mass))
    if not complete_tail:
        return float(grid.integrate(np.cos(grid.nodes * separation) / grid.frequencies))

    def inverse_frequency(p):
        return 1.0 / np.sqrt(p * p + mass * mass)

    window, _ = quad(inverse_frequency, 0.0, grid.cutoff, weight="cos", wvar=separation, limit=200)
    tail, _ = quad(inverse_frequency, grid.cutoff, np.inf, weight="cos", wvar=separation)
    return float(2 * (window + tail))


def chi_overlap_oracle(grid: QuadratureGrid, chi1: float, chi2: float) -> float:
    return float(2 * k0(grid.mass * abs(chi1 - chi2) / grid.hbar))


def chi_overlap_profile(grid: QuadratureGrid, separations: np.ndarray) -> np.ndarray:
    """Rows of (separation, overlap, 2 K0 oracle)."""
    rows = [
        (s, chi_overlap(grid, 0.0, s), chi_overlap_oracle(grid, 0.0, s))
        for s in np.asarray(separations, dtype=float)
    ]
    return np.array(rows)


def nw_overlap_matrix(grid: QuadratureGrid, points: np.ndarray) -> np.ndarray:
    """<psi_xi|psi_xj> under dp / omega; sin(K d / hbar) / (pi d) off the diagonal."""
    states = np.stack([nw_state(grid, x).values for x in points])
    measure = grid.weights / grid.frequencies
    return (states.conj() * measure) @ states.T


def commensurate_points(grid: QuadratureGrid, count: int) -> Tuple[np.ndarray, float]:
    spacing = np.pi * grid.hbar / grid.cutoff
    return spacing * np.arange(count), spacing


def nw_orthogonality_deviation(grid: QuadratureGrid, count: int = 9) -> float:
    points, spacing = commensurate_points(grid, count)
    overlap = nw_overlap_matrix(grid, points) * spacing
    return float(np.abs(overlap - np.eye(count)).max())


def nw_profile(grid: QuadratureGrid, kind: Picture, points: np.ndarray) -> np.ndarray:
    """Rows of (position, re, im, abs) for the state localized at 0."""
    state = nw_state(grid, 0.0)
    if Picture(kind) == Picture.CHI:
        values = chi_representation(state, points)
    else:
        values = x_representation(state, points)
    return np.column_stack([points, values.real, values.imag, np.abs(values)])


def nw_chi_amplitude(grid: QuadratureGrid, chi: np.ndarray, complete_tail: bool = True) -> np.ndarray:
    """
    psi_0(chi) of the NW state at the origin, completed past the cutoff:
    (1 / pi) int_0^inf omega_p^{-1/2} cos(p chi / hbar) dp, split at K.
    Without the tail this is chi_representation(nw_state(grid, 0), chi) up to quadrature error.
    """
    mass = grid.mass

    def inverse_root_frequency(p):
        return (p * p + mass * mass) ** -0.25

    values = []
    for point in np.atleast_1d(np.asarray(chi, dtype=float)):
        frequency = abs(point) / grid.hbar
        if frequency == 0:
            raise ValueError("psi_0(chi) diverges at chi = 0")
        window, _ = quad(inverse_root_frequency, 0.0, grid.cutoff, weight="cos", wvar=frequency, limit=400)
        tail = 0.0
        if complete_tail:
            tail, _ = quad(inverse_root_frequency, grid.cutoff, np.inf, weight="cos", wvar=frequency)
        values.append((window + tail) / np.pi)
    return np.array(values)


def nw_chi_oracle(mass: float, hbar: float, chi: np.ndarray) -> np.ndarray:
    """Closed form (1/sqrt(pi)) (2m)^{1/4} (chi/hbar)^{-1/4} K_{1/4}(m chi / hbar) / Gamma(1/4)."""
    scaled = np.abs(np.asarray(chi, dtype=float)) / hbar
    return (2 * mass) ** 0.25 * scaled ** -0.25 * kv(0.25, mass * scaled) / (np.sqrt(np.pi) * gamma(0.25))


def decay_points(grid: QuadratureGrid, count: int = 9) -> np.ndarray:
    start, stop = DECAY_WINDOW
    return np.linspace(start, stop, count) * grid.hbar / grid.mass


def decay_length(grid: QuadratureGrid, count: int = 9) -> float:
    """
    e-folding length of chi^{3/4} |psi_0(chi)| fitted over m chi / hbar in [1, 5].
    The power law chi^{-3/4} is the large-chi prefactor of K_{1/4}(m chi) chi^{-1/4};
    what remains decays as exp(-m chi / hbar).
    """
    chi = decay_points(grid, count)
    magnitude = np.abs(nw_chi_amplitude(grid, chi))
    slope = np.polyfit(chi, np.log(chi ** 0.75 * magnitude), 1)[0]
    return float(-1.0 / slope)


def half_maximum_width(points: np.ndarray, magnitude: np.ndarray) -> float:
    """FWHM of an even profile sampled on points >= 0 starting at the peak."""
    half = magnitude[0] / 2
    below = np.flatnonzero(magnitude < half)
    if below.size == 0:
        raise ValueError("profile never falls to half maximum; widen the sampling span")
    i = below[0]
    x0, x1 = points[i - 1], points[i]
    y0, y1 = magnitude[i - 1], magnitude[i]
    return float(2 * (x0 + (half - y0) * (x1 - x0) / (y1 - y0)))


def localization_width(
    mass: float,
    kind: Picture = Picture.CHI,
    spec: QuadratureSpec = None,
    cutoff: Optional[float] = None,
    span: float = 0.5,
    count: int = 1001,
) -> float:
    """
    Width of the NW state localized at 0.

    CHI: decay length of psi_0(chi), independent of the cutoff (of order hbar / m).
    X: FWHM of the band-limited delta, 2 * SINC_HALF_MAX * hbar / K.
    `cutoff` fixes K in absolute units; otherwise K = spec.cutoff_factor * mass.
    """
    spec = QuadratureSpec() if spec is None else spec
    update = {"mass": mass}
    if cutoff is not None:
        update["cutoff_factor"] = cutoff / mass
    grid = build_quadrature(QuadratureSpec.model_validate({**spec.model_dump(), **update}))

    if Picture(kind) == Picture.CHI:
        width = decay_length(grid)
    else:
        points = np.linspace(0.0, span * grid.hbar / mass, count)
        width = half_maximum_width(points, nw_profile(grid, Picture.X, points)[:, 3])
    logger.debug(f"NW {Picture(kind).value}-picture width at m={mass}, K={grid.cutoff}: {width:.6g}")
    return width


@dataclass(frozen=True)
class MeasureConsistency:
    width: float
    invariant_norm: float
    x_norm: float
    chi_norm: float
    x_deviation: float
    chi_deviation: float


def measure_consistency_check(grid: QuadratureGrid, width: float) -> MeasureConsistency:
    """
    Gaussian psi(p) = sqrt(omega) exp(-p^2 / 2 width^2): the x route keeps the
    dp/omega norm, the chi route gives hbar int dp |psi|^2 / omega^2, which only
    matches (hbar / m) times the norm when omega is nearly constant.
    """
    psi = gaussian_wavefunction(grid, width)
    points, spacing = period_points(grid)
    invariant = psi.norm()
    x_norm = position_norm(x_representation(psi, points), spacing)
    chi_norm = position_norm(chi_representation(psi, points), spacing)
    report = MeasureConsistency(
        width=width,
        invariant_norm=invariant,
        x_norm=x_norm,
        chi_norm=chi_norm,
        x_deviation=abs(x_norm / invariant - 1),
        chi_deviation=abs(grid.mass * chi_norm / (grid.hbar * invariant) - 1),
    )
    logger.debug(
        f"Measure consistency at width {width}: x {report.x_deviation:.3e}, chi {report.chi_deviation:.3e}"
    )
    return report


def default_grid(mass: float = 1.0) -> QuadratureGrid:
    return build_quadrature(QuadratureSpec(mass=mass))
