from typing import List

import numpy as np

from ...lattice.field_ops import classical_energy, classical_evolve, classical_number_functional
from ...schemas.report import CheckReport
from .base import CheckContext


def conservation(ctx: CheckContext) -> List[CheckReport]:
    grid = ctx.grid
    rng = ctx.rng("classical_conservation")
    phi, pi = rng.normal(size=grid.size), rng.normal(size=grid.size)
    number = classical_number_functional(grid, phi, pi)
    energy = classical_energy(grid, phi, pi)
    number_drift = energy_drift = 0.0
    for t in ctx.config.classical_times:
        phi_t, pi_t = classical_evolve(grid, phi, pi, t)
        number_drift = max(number_drift, abs(classical_number_functional(grid, phi_t, pi_t) - number) / abs(number))
        energy_drift = max(energy_drift, abs(classical_energy(grid, phi_t, pi_t) - energy) / abs(energy))

    start = classical_evolve(grid, phi, pi, 0.0)
    identity = max(np.abs(start[0] - phi).max(), np.abs(start[1] - pi).max())
    return [
        ctx.evaluate("classical_number_drift", "N_cl is constant along free evolution", number_drift, 1e-12),
        ctx.evaluate("classical_energy_drift", "H_cl is constant along free evolution", energy_drift, 1e-12),
        ctx.evaluate("classical_evolution_identity", "evolution by t = 0 is the identity", float(identity), 1e-12),
    ]


def single_mode(ctx: CheckContext) -> List[CheckReport]:
    grid = ctx.grid
    mode = grid.zero_mode + 1
    k, omega = grid.momenta[mode], grid.frequencies[mode]
    amplitude = 0.7
    phi = amplitude * np.cos(k * grid.sites)
    pi = amplitude * omega * np.sin(k * grid.sites)

    expected = grid.spec.box_length * amplitude ** 2 * omega / (2 * grid.hbar)
    value = classical_number_functional(grid, phi, pi)

    period = 2 * np.pi / omega
    phi_t, pi_t = classical_evolve(grid, phi, pi, period)
    periodicity = max(np.abs(phi_t - phi).max(), np.abs(pi_t - pi).max()) / amplitude
    return [
        ctx.evaluate(
            "classical_single_mode_number",
            "N_cl = (L A^2 / 2 hbar) omega_k for one travelling mode",
            abs(value - expected) / expected,
            1e-12,
        ),
        ctx.evaluate("classical_periodicity", "one mode returns after 2 pi / omega_k", float(periodicity), 1e-12),
    ]


CHECKS = [conservation, single_mode]
