from typing import List

import numpy as np
import scipy.sparse as sps

from ...lattice.fock import (
    annihilators,
    check_canonical_relations,
    creators,
    enumerate_basis,
    sector_dimension,
)
from ...schemas.lattice import Statistics
from ...schemas.report import CheckReport
from .base import CheckContext, shortfall


def sector_counts(ctx: CheckContext) -> List[CheckReport]:
    reports = []
    for statistics in Statistics:
        spec = ctx.lattice(statistics)
        basis = enumerate_basis(spec)
        mismatches = sum(
            basis.sector_offsets[n + 1] - basis.sector_offsets[n]
            != sector_dimension(spec.mode_count, n, statistics)
            for n in range(basis.n_max + 1)
        )
        mismatches += len(set(basis.states)) != basis.dimension
        mismatches += basis.states[0] != (0,) * spec.mode_count
        reports.append(
            ctx.evaluate(f"sector_dimensions_{statistics.value}", "direct sum of N-particle sectors", mismatches, 0.0)
        )
    return reports


def canonical_relations(ctx: CheckContext) -> List[CheckReport]:
    reports = []
    for statistics in Statistics:
        basis = enumerate_basis(ctx.lattice(statistics))
        report = check_canonical_relations(basis)
        bracket = "anticommutators" if basis.is_fermi else "commutators"
        reports.append(
            ctx.evaluate(
                f"canonical_{bracket}_{statistics.value}",
                f"canonical {bracket} on sectors N <= {report.domain_max_sector}",
                report.max_deviation,
                1e-13,
            )
        )
        if basis.is_fermi:
            reports.append(
                ctx.evaluate("fermi_nilpotency", "a_j^2 = 0", report.nilpotency_deviation, 0.0)
            )
        else:
            # [a, a^+] = 1 must visibly fail in the top sector
            reports.append(
                ctx.evaluate(
                    "bose_truncation_boundary",
                    "[a, a^+] - 1 is at least 1 in magnitude on the top sector",
                    shortfall(report.top_sector_defect, 1.0),
                    0.0,
                )
            )
    return reports


def ladder_shifts(ctx: CheckContext) -> List[CheckReport]:
    reports = []
    for statistics in Statistics:
        basis = enumerate_basis(ctx.lattice(statistics))
        numbers = basis.particle_numbers()
        violations = 0
        for step, operators in ((-1, annihilators(basis)), (1, creators(basis))):
            for operator in operators:
                entries = sps.coo_matrix(operator)
                violations += int(np.count_nonzero(numbers[entries.row] - numbers[entries.col] != step))
        reports.append(
            ctx.evaluate(f"ladder_sector_shift_{statistics.value}", "ladders change N by exactly one", violations, 0.0)
        )
    return reports


CHECKS = [sector_counts, canonical_relations, ladder_shifts]
