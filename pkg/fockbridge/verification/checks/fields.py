"""Field construction, W kernels, building-block lifts, conservation and velocity."""
from typing import List

import numpy as np

from ...lattice.field_ops import (
    FieldOperatorBuilder,
    Route,
    WKernel,
    apply_W,
    mode_amplitude_from_fields,
    wavepacket_velocity_deviation,
)
from ...lattice.fock import annihilators, enumerate_basis
from ...lattice.grid import Direction, build_grid, mode_site_transform
from ...lattice.sparse_tools import commutator, max_abs
from ...schemas.lattice import Statistics
from ...schemas.report import CheckReport
from .base import CheckContext


def _builder(ctx: CheckContext) -> FieldOperatorBuilder:
    spec = ctx.lattice(Statistics.BOSE)
    return FieldOperatorBuilder(build_grid(spec), enumerate_basis(spec))


def grid_transform(ctx: CheckContext) -> List[CheckReport]:
    grid = ctx.grid
    rng = ctx.rng("grid_transform")
    vector = rng.normal(size=grid.size) + 1j * rng.normal(size=grid.size)
    round_trip = mode_site_transform(grid, mode_site_transform(grid, vector, Direction.TO_SITE), Direction.TO_MODE)
    deviation = float(np.abs(round_trip - vector).max() / np.abs(vector).max())
    lattice_identity = abs(grid.dk * grid.dx * grid.size - 2 * np.pi)
    return [
        ctx.evaluate("mode_site_unitarity", "unitary DFT between momentum and position modes", deviation, 1e-12),
        ctx.evaluate("lattice_reciprocity", "dk dx M = 2 pi", lattice_identity, 1e-12),
    ]


def w_kernels(ctx: CheckContext) -> List[CheckReport]:
    grid = ctx.grid
    rng = ctx.rng("w_kernels")
    values = rng.normal(size=grid.size)
    half, inverse_half = WKernel(grid, 0.5), WKernel(grid, -0.5)
    composition = np.abs(half.apply(inverse_half.apply(values)) - values).max()
    routes = 0.0
    for exponent in (-1, -0.5, 0.5, 1, 2):
        kernel = WKernel(grid, exponent)
        routes = max(routes, float(np.abs(kernel.apply_site(values) - apply_W(kernel, values)).max()))

    builder = _builder(ctx)
    operator_half = WKernel(builder.grid, 0.5)
    phi = builder.fields.phi
    twice = apply_W(operator_half, apply_W(operator_half, phi))
    once = apply_W(operator_half.compose(operator_half), phi)
    operator_rows = max(max_abs(left - right) for left, right in zip(twice, once))
    return [
        ctx.evaluate("w_composition", "W^(1/2) W^(-1/2) = 1", float(composition), 1e-12),
        ctx.evaluate("w_site_kernel_route", "W^n phi = int B(x - y) phi(y) dy", routes, 1e-12),
        ctx.evaluate("w_operator_composition", "W^(1/2) W^(1/2) phi_n = W phi_n on field operators", operator_rows, 1e-11),
    ]


def canonical_fields(ctx: CheckContext) -> List[CheckReport]:
    builder = _builder(ctx)
    return [
        ctx.evaluate(
            "canonical_field_commutators",
            "[phi(x), pi(y)] = i hbar delta(x - y) on sectors N <= n_max - 1",
            builder.canonical_field_deviation(),
            1e-10,
        )
    ]


def mode_reconstruction(ctx: CheckContext) -> List[CheckReport]:
    builder = _builder(ctx)
    recovered = mode_amplitude_from_fields(builder.grid, builder.fields)
    deviation = max(max_abs(a - b) for a, b in zip(recovered, annihilators(builder.basis)))
    return [ctx.evaluate("mode_amplitude_reconstruction", "a_k recovered from phi and pi", deviation, 1e-10)]


def building_blocks(ctx: CheckContext) -> List[CheckReport]:
    builder = _builder(ctx)
    momentum = max_abs(builder.lift_building_block(0, 1).matrix - builder.build_P().matrix)
    position = max_abs(builder.lift_building_block(1, 0).matrix - builder.build_X(Route.POSITION_MODE).matrix)
    number = max_abs(builder.lift_building_block(0, 0).matrix - builder.build_N().matrix)
    position_modes = max(
        max_abs(builder.build_H(Route.POSITION_MODE).matrix - builder.build_H().matrix),
        max_abs(builder.build_P(Route.POSITION_MODE).matrix - builder.build_P().matrix),
        max_abs(builder.build_N(Route.POSITION_MODE).matrix - builder.build_N().matrix),
    )
    return [
        ctx.evaluate("lift_B01_is_P", "sum_i P_i is the total momentum", momentum, 1e-12),
        ctx.evaluate("lift_B10_is_X", "sum_i X_i is the sum of positions", position, 1e-12),
        ctx.evaluate("lift_B00_is_N", "sum_i 1 = N", number, 1e-12),
        ctx.evaluate("position_mode_routes", "H, P, N through position creation operators", position_modes, 1e-10),
    ]


def observables(ctx: CheckContext) -> List[CheckReport]:
    builder = _builder(ctx)
    operators = [builder.build_H(), builder.build_P(), builder.build_N(), builder.build_X()]
    hermiticity = max(op.hermiticity_defect() for op in operators)
    h, p, n = (op.matrix for op in operators[:3])
    conservation = max(max_abs(commutator(n, h)), max_abs(commutator(p, h)))
    vacuum = abs(builder.build_H(Route.FIELD).matrix[0, 0])
    number = max(
        max_abs(commutator(op.matrix, n)) for op in operators + [builder.lift_building_block(2, 1)]
    )
    return [
        ctx.evaluate("observable_hermiticity", "H, P, N, X are self-adjoint", hermiticity, 1e-12),
        ctx.evaluate("momentum_number_conservation", "dN/dt = dP/dt = 0", conservation, 0.0),
        ctx.evaluate("number_conserving_composites", "composites commute with N", number, 1e-12),
        ctx.evaluate("vacuum_energy", "normal ordering removes the zero-point energy", float(vacuum), 1e-10),
    ]


def velocity(ctx: CheckContext) -> List[CheckReport]:
    builder = _builder(ctx)
    margin = ctx.config.field_margin
    grid = builder.grid
    anchor = "[X, H] / (i hbar) = Gamma([x_hat, h_hat] / (i hbar))"
    reports = []
    if builder.basis.n_max - margin < 0:
        reports.append(ctx.skip("velocity_lift", anchor, 1e-10, f"no sectors with N <= n_max - {margin}"))
    else:
        reports.append(
            ctx.evaluate("velocity_lift", anchor, builder.velocity_commutator_deviation(margin), 1e-10)
        )

    one_particle = builder.heisenberg_velocity().matrix[builder.basis.sector_slice(1), builder.basis.sector_slice(1)]
    speed = float(np.abs(one_particle.diagonal()).max())
    reports.append(ctx.evaluate("subluminal_velocity", "|k / omega| < 1", speed, 1 - 1e-12))

    mass = grid.spec.mass
    packet_spec = grid.spec.model_copy(update={"mode_count": ctx.config.velocity_mode_count, "box_length": 40 / mass})
    reports.append(
        ctx.evaluate(
            "velocity_wavepacket",
            "[X, H] psi / (i hbar) = (k / omega) psi for a bulk packet",
            wavepacket_velocity_deviation(build_grid(packet_spec)),
            1e-6,
        )
    )
    return reports


CHECKS = [grid_transform, w_kernels, canonical_fields, mode_reconstruction, building_blocks, observables, velocity]
