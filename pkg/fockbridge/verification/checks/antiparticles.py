from typing import List

from ...lattice.complex_field import build_complex_field_ops, single_occupation
from ...lattice.grid import build_grid
from ...schemas.lattice import Statistics
from ...schemas.report import CheckReport
from .base import CheckContext


def complex_field(ctx: CheckContext) -> List[CheckReport]:
    options = ctx.config.complex_field
    spec = ctx.lattice(Statistics.BOSE).model_copy(
        update={"mode_count": options.mode_count, "n_max": max(options.n_max_a, options.n_max_b)}
    )
    grid = build_grid(spec)
    margin = options.margin
    builder, modes, report = build_complex_field_ops(
        grid, options.n_max_a, options.n_max_b, charge=options.charge, margin=margin
    )
    charge, hbar = options.charge, grid.hbar

    vacuum = builder.state_index((0,) * grid.size, (0,) * grid.size)
    mode = grid.zero_mode + 1
    particle = builder.state_index(single_occupation(grid.size, mode), (0,) * grid.size)
    antiparticle = builder.state_index((0,) * grid.size, single_occupation(grid.size, mode))
    q, h = modes["Q"].matrix, modes["H"].matrix
    energy = hbar * grid.frequencies[mode]
    one_particle = max(
        abs(q[particle, particle] - charge),
        abs(q[antiparticle, antiparticle] + charge),
        abs(h[particle, particle] - energy) / energy,
        abs(h[antiparticle, antiparticle] - energy) / energy,
    )
    vacuum_values = max(abs(modes[name].matrix[vacuum, vacuum]) for name in ("Q", "H", "P", "N"))

    reports = [
        ctx.evaluate("charge_conservation", "[Q, H] = [N_a, H] = [N_b, H] = 0", report.conservation, 0.0),
        ctx.evaluate("pair_charge", "a particle-antiparticle pair carries Q = 0", abs(report.pair_charge), 0.0),
        ctx.evaluate("pair_number", "a particle-antiparticle pair has N = 2", abs(report.pair_number - 2), 0.0),
        ctx.evaluate("one_particle_charges", "Q = +e, -e and H = hbar omega for single quanta", float(one_particle), 1e-12),
        ctx.evaluate("complex_vacuum", "Q, H, P, N vanish on the vacuum", float(vacuum_values), 1e-12),
    ]
    identity = "field-form Q = e (N_a - N_b) on the full truncated space"
    if report.charge_identity is None:
        reports.insert(0, ctx.skip("charge_identity", identity, 1e-10, "field forms need Bose families"))
    else:
        reports.insert(0, ctx.evaluate("charge_identity", identity, report.charge_identity, 1e-10))
    anchor = f"complex-field forms equal mode forms on N_a, N_b <= n_max - {margin}"
    if report.checked_states == 0:
        reports.append(ctx.skip("complex_field_routes", anchor, 1e-10, "no states inside the safe sectors"))
    else:
        reports.append(ctx.evaluate("complex_field_routes", anchor, report.route_deviation, 1e-10))
    return reports


CHECKS = [complex_field]
