from typing import List

import numpy as np

from ...continuum.newton_wigner import (
    SINC_HALF_MAX,
    Picture,
    chi_overlap,
    chi_overlap_oracle,
    decay_points,
    localization_width,
    measure_consistency_check,
    nw_chi_amplitude,
    nw_chi_oracle,
    nw_orthogonality_deviation,
)
from ...continuum.quadrature import build_quadrature
from ...schemas.report import CheckReport
from .base import CheckContext, shortfall

K0_SEPARATIONS = (0.1, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0)


def chi_overlaps(ctx: CheckContext) -> List[CheckReport]:
    grid = build_quadrature(ctx.config.quadrature)
    mass, hbar = grid.mass, grid.hbar
    worst = 0.0
    for scaled in K0_SEPARATIONS:
        separation = scaled * hbar / mass
        oracle = chi_overlap_oracle(grid, 0.0, separation)
        worst = max(worst, abs(chi_overlap(grid, 0.0, separation) / oracle - 1))

    coincident = chi_overlap(grid, 0.0, 0.0)
    compton = chi_overlap(grid, 0.0, hbar / mass) / coincident
    far = abs(chi_overlap(grid, 0.0, 20 * hbar / mass))
    return [
        ctx.evaluate("chi_overlap_k0_profile", "<chi1|chi2> = 2 K0(m |chi1 - chi2|)", worst, 0.01),
        ctx.evaluate(
            "chi_overlap_compton",
            "chi states one Compton length apart overlap by 1% to 100% of the coincident value",
            shortfall(compton, 0.01) + max(0.0, compton - 1.0),
            0.0,
        ),
        ctx.evaluate("chi_overlap_decay", "<chi1|chi2> decays for separations >> 1/m", far, 1e-6),
    ]


def localization(ctx: CheckContext) -> List[CheckReport]:
    spec = ctx.config.quadrature
    mass, hbar = spec.mass, spec.hbar
    # one absolute window for both masses
    cutoff = 2 * spec.cutoff
    wide = localization_width(mass, Picture.CHI, spec, cutoff=cutoff)
    narrow = localization_width(2 * mass, Picture.CHI, spec, cutoff=cutoff)
    scaled = wide * mass / hbar

    grid = build_quadrature(spec)
    points = decay_points(grid)
    oracle = nw_chi_oracle(mass, hbar, points)
    profile_deviation = float(np.abs(nw_chi_amplitude(grid, points) / oracle - 1).max())

    x_width = localization_width(mass, Picture.X, spec)
    resolution = 2 * SINC_HALF_MAX * hbar / grid.cutoff
    return [
        ctx.evaluate(
            "localization_mass_scaling",
            f"chi decay length halves when m doubles at fixed K = {cutoff:g}",
            abs(wide / narrow / 2 - 1),
            0.1,
        ),
        ctx.evaluate(
            "localization_compton_scale",
            f"chi^(3/4) |psi_0(chi)| decays over one Compton length (m * length / hbar = {scaled:.4f})",
            abs(scaled - 1),
            0.05,
        ),
        ctx.evaluate(
            "nw_chi_profile_oracle",
            "psi_0(chi) = (2m)^(1/4) (chi/hbar)^(-1/4) K_(1/4)(m chi/hbar) / (sqrt(pi) Gamma(1/4))",
            profile_deviation,
            1e-3,
        ),
        ctx.evaluate(
            "localization_x_resolution",
            "x-picture FWHM is the band-limited delta width 3.79 hbar / K",
            abs(x_width / resolution - 1),
            0.01,
        ),
    ]


def measure_consistency(ctx: CheckContext) -> List[CheckReport]:
    grid = build_quadrature(ctx.config.quadrature)
    wide = measure_consistency_check(grid, grid.mass)
    narrow = measure_consistency_check(grid, 0.03 * grid.mass)
    return [
        ctx.evaluate("x_route_parseval", "int |psi(x)|^2 dx = int dp / omega |psi(p)|^2", wide.x_deviation, 1e-6),
        ctx.evaluate(
            "chi_route_norm_mismatch",
            f"chi route changes the norm of a width-m packet (measured {wide.chi_deviation:.3%})",
            shortfall(wide.chi_deviation, 0.01),
            0.0,
        ),
        ctx.evaluate(
            "nonrelativistic_agreement",
            "both routes agree for momenta << m",
            max(narrow.x_deviation, narrow.chi_deviation),
            1e-3,
        ),
    ]


def orthogonality(ctx: CheckContext) -> List[CheckReport]:
    grid = build_quadrature(ctx.config.quadrature)
    deviation = nw_orthogonality_deviation(grid)
    return [
        ctx.evaluate(
            "nw_orthogonality",
            "NW states at commensurate points are orthogonal in the x picture",
            deviation,
            0.05,
        )
    ]


CHECKS = [chi_overlaps, localization, measure_consistency, orthogonality]
