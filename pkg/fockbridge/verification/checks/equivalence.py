"""Second-quantized lifts against the first-quantized N-particle oracle."""
from typing import List

import numpy as np

from ...algebra.symbolic import expand_permutation_sum
from ...core.exceptions import DimensionCapError
from ...lattice.field_ops import FieldOperatorBuilder
from ...lattice.fock import enumerate_basis
from ...lattice.grid import build_grid
from ...lattice.oracle import (
    Symmetry,
    build_space,
    compare_with_lift,
    cross_sector_leakage,
    direct_sum_operator,
    permutation_invariant_operator,
    sector_block,
    space_defects,
)
from ...schemas.lattice import Statistics
from ...schemas.report import CheckReport
from .base import CheckContext


def route_equivalence(ctx: CheckContext) -> List[CheckReport]:
    spec = ctx.lattice(Statistics.BOSE)
    builder = FieldOperatorBuilder(build_grid(spec), enumerate_basis(spec))
    margin = ctx.config.field_margin
    reports = []
    for name in ("H", "P", "N", "X"):
        anchor = f"field form of {name} equals its mode form on N <= n_max - {margin}"
        if spec.n_max - margin < 0:
            reports.append(ctx.skip(f"route_{name}", anchor, 1e-10, f"n_max={spec.n_max} leaves no safe sector"))
            continue
        reports.append(ctx.evaluate(f"route_{name}", anchor, builder.route_deviation(name, margin), 1e-10))
    return reports


def _particle_range(ctx: CheckContext, statistics: Statistics):
    spec = ctx.lattice(statistics)
    top = min(ctx.config.oracle_max_particles, spec.n_max)
    if statistics == Statistics.FERMI:
        top = min(top, spec.mode_count)
    return range(1, top + 1)


def oracle_sweep(ctx: CheckContext) -> List[CheckReport]:
    reports = []
    degree = ctx.config.oracle_max_degree
    for statistics in Statistics:
        spec = ctx.lattice(statistics)
        grid = build_grid(spec)
        basis = enumerate_basis(spec)
        builder = FieldOperatorBuilder(grid, basis)
        lifts = {
            (m, n): builder.lift_building_block(m, n).matrix
            for m in range(degree + 1)
            for n in range(degree + 1 - m)
        }
        leakage = max(cross_sector_leakage(lifted, basis) for lifted in lifts.values())
        reports.append(
            ctx.evaluate(
                f"sector_leakage_{statistics.value}", "lifted one-body operators preserve N", leakage, 0.0
            )
        )

        for particles in range(1, ctx.config.oracle_max_particles + 1):
            name = f"oracle_{statistics.value}_N{particles}"
            anchor = f"sum_i X_i^m P_i^n on the {particles}-particle sector, m + n <= {degree}"
            if particles not in _particle_range(ctx, statistics):
                reports.append(ctx.skip(name, anchor, 1e-10, f"sector {particles} is outside the truncated space"))
                continue
            try:
                space = build_space(particles, spec.mode_count, Symmetry.for_statistics(statistics))
            except DimensionCapError as exc:
                reports.append(ctx.skip(name, anchor, 1e-10, str(exc)))
                continue

            defects = space_defects(space)
            reports.append(
                ctx.evaluate(
                    f"projector_{statistics.value}_N{particles}",
                    "projector is idempotent, self-adjoint, of sector rank, and fixes the isometry",
                    max(defects.idempotency, defects.hermiticity, defects.isometry, abs(defects.rank - space.dimension)),
                    1e-12,
                )
            )
            worst = max(
                compare_with_lift(space, direct_sum_operator(space, grid, m, n), lifted, basis)
                for (m, n), lifted in lifts.items()
            )
            reports.append(ctx.evaluate(name, anchor, worst, 1e-10))
    return reports


def permutation_end_to_end(ctx: CheckContext) -> List[CheckReport]:
    """sum over permutations of particle words: explicit oracle against the expansion built from lifts."""
    rng = ctx.rng("permutation_end_to_end")
    reports = []
    for statistics in Statistics:
        spec = ctx.lattice(statistics)
        grid = build_grid(spec)
        basis = enumerate_basis(spec)
        builder = FieldOperatorBuilder(grid, basis)
        x_hat, p_hat = grid.position_operator(), grid.momentum_operator()
        for particles in _particle_range(ctx, statistics):
            if particles < 2:
                continue
            words = []
            for _ in range(particles):
                m, n = rng.integers(0, 2, size=2)
                words.append(np.linalg.matrix_power(x_hat, int(m)) @ np.linalg.matrix_power(p_hat, int(n)))
            name = f"permutation_lift_{statistics.value}_N{particles}"
            anchor = "sum_sigma prod_k O^(k)_sigma(k) from lifts of building-block products"
            try:
                space = build_space(particles, spec.mode_count, Symmetry.for_statistics(statistics))
            except DimensionCapError as exc:
                reports.append(ctx.skip(name, anchor, 1e-9, str(exc)))
                continue
            oracle = permutation_invariant_operator(space, words).matrix
            lifted = expand_permutation_sum(particles).evaluate_lifted(words, builder.lift)
            block = sector_block(lifted, basis, particles)
            scale = max(1.0, float(np.abs(oracle).max()))
            reports.append(ctx.evaluate(name, anchor, float(np.abs(oracle - block).max()) / scale, 1e-9))
    return reports


CHECKS = [route_equivalence, oracle_sweep, permutation_end_to_end]
