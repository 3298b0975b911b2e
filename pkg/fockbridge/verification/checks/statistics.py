from typing import List

from ...lattice.field_ops import FieldOperatorBuilder, commutator_check_XP, fermi_field_anticommutators
from ...lattice.fock import enumerate_basis
from ...lattice.grid import build_grid
from ...schemas.lattice import Statistics
from ...schemas.report import CheckReport
from .base import CheckContext, shortfall

WITNESS_FLOOR = 1e-6


def xp_commutator(ctx: CheckContext) -> List[CheckReport]:
    packet_spec = ctx.config.lattice.model_copy(update={"mode_count": ctx.config.wavepacket_mode_count})
    packet_grid = build_grid(packet_spec)
    reports = []
    for statistics in Statistics:
        spec = ctx.lattice(statistics)
        builder = FieldOperatorBuilder(build_grid(spec), enumerate_basis(spec))
        report = commutator_check_XP(
            builder,
            ctx.rng(f"lift_homomorphism_{statistics.value}"),
            ctx.config.random_pairs,
            packet_grid=packet_grid,
        )
        reports.append(
            ctx.evaluate(
                f"lift_homomorphism_{statistics.value}",
                "[Gamma(t1), Gamma(t2)] = Gamma([t1, t2])",
                report.homomorphism,
                1e-12,
            )
        )
        reports.append(
            ctx.evaluate(f"xp_vacuum_{statistics.value}", "[X, P]|0> = i hbar N|0> = 0", report.vacuum, 1e-12)
        )
    reports.append(
        ctx.evaluate(
            "xp_commutator_wavepacket",
            "[X, P] psi = i hbar psi away from the box edge",
            report.wavepacket,
            1e-6,
        )
    )
    return reports


def fermi_anticommutators(ctx: CheckContext) -> List[CheckReport]:
    base = ctx.lattice(Statistics.FERMI)
    spec = base.model_copy(update={"box_length": 5.0, "n_max": base.mode_count})
    builder = FieldOperatorBuilder(build_grid(spec), enumerate_basis(spec))
    report = fermi_field_anticommutators(builder)
    return [
        ctx.evaluate("fermi_phi_pi", "{phi(x), pi(y)} = 0", report.phi_pi, 1e-12),
        ctx.evaluate("fermi_phi_phi", "{phi(x), phi(y)} = hbar W^-1(x - y)", report.phi_phi, 1e-10),
        ctx.evaluate("fermi_pi_pi", "{pi(x), pi(y)} = hbar W(x - y)", report.pi_pi, 1e-10),
        ctx.evaluate(
            "fermi_nonlocal_witness",
            f"{{phi(0), phi(x)}} does not vanish at x = {report.witness_separation:.3g}",
            shortfall(report.witness, WITNESS_FLOOR),
            0.0,
        ),
    ]


CHECKS = [xp_commutator, fermi_anticommutators]
