from typing import List

import numpy as np

from ...continuum.lorentz import boost_amplitude, boost_momentum, gaussian_amplitude, lorentz_report
from ...continuum.quadrature import QuadratureGrid, build_quadrature
from ...core.exceptions import FockbridgeError, SupportEscapeError
from ...schemas.continuum import BoostParams
from ...schemas.report import CheckReport
from .base import CheckContext

ESCAPING_RAPIDITY = 6.0


def moving_packet(grid: QuadratureGrid):
    """Moving packet of width m, displaced from the origin so <X> is nontrivial."""
    mass = grid.mass
    return gaussian_amplitude(grid, width=mass, center=0.5 * mass, position=0.3 * grid.hbar / mass)


def boosts(ctx: CheckContext) -> List[CheckReport]:
    grid = build_quadrature(ctx.config.quadrature)
    packet = moving_packet(grid)
    reports = []
    for rapidity in ctx.config.rapidities:
        params = BoostParams(rapidity=rapidity)
        tag = f"eta{rapidity:g}"
        try:
            report = lorentz_report(packet, params)
        except FockbridgeError as exc:
            reports.append(ctx.error(f"boost_{tag}", f"boost by rapidity {rapidity:g}", 0.0, str(exc)))
            continue
        reports.extend(
            [
                ctx.evaluate(f"boost_norm_{tag}", "boosts preserve int dk |f(k)|^2", report.norm_deviation, 1e-6),
                ctx.evaluate(
                    f"boost_four_vector_{tag}",
                    "(E, P) -> (gamma (E + beta P), gamma (P + beta E))",
                    report.four_vector_deviation,
                    1e-6,
                ),
                ctx.evaluate(
                    f"boosted_commutator_{tag}",
                    f"<[X~, P~]> = i hbar; <X> moves {report.position_rest:.4g} -> {report.position_boosted:.4g}",
                    report.commutator_deviation,
                    1e-5,
                ),
                ctx.evaluate(f"boost_group_{tag}", "B(2 eta/3) B(eta/3) = B(eta)", report.group_deviation, 2e-5),
                ctx.evaluate(f"boost_round_trip_{tag}", "B(-eta) B(eta) = 1", report.round_trip_deviation, 1e-5),
            ]
        )
    reports.append(
        ctx.evaluate("parity_position", "parity flips <X>", lorentz_report(packet, BoostParams()).parity_deviation, 1e-12)
    )
    return reports


def mass_shell(ctx: CheckContext) -> List[CheckReport]:
    grid = build_quadrature(ctx.config.quadrature)
    mass = grid.mass
    worst = 0.0
    for rapidity in ctx.config.rapidities:
        k, omega = boost_momentum(grid.nodes, BoostParams(rapidity=rapidity), mass)
        worst = max(worst, float((np.abs(omega ** 2 - k ** 2 - mass ** 2) / omega ** 2).max()))
    return [ctx.evaluate("boost_mass_shell", "omega~^2 - k~^2 = m^2", worst, 1e-12)]


def support_escape(ctx: CheckContext) -> List[CheckReport]:
    grid = build_quadrature(ctx.config.quadrature)
    try:
        boost_amplitude(moving_packet(grid), BoostParams(rapidity=ESCAPING_RAPIDITY))
    except SupportEscapeError:
        detected = True
    else:
        detected = False
    return [
        ctx.evaluate(
            "support_escape_detected",
            f"a boost by rapidity {ESCAPING_RAPIDITY:g} pushing the packet past K is refused",
            0.0 if detected else 1.0,
            0.0,
        )
    ]


CHECKS = [boosts, mass_shell, support_escape]
