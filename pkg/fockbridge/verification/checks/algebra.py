import logging
from typing import List

from ...algebra.symbolic import (
    Word,
    boson_normal_form,
    commutator_identity_check,
    expand_permutation_sum,
    normal_order,
    oscillator_faithfulness,
    verify_expansion,
)
from ...schemas.report import CheckReport
from .base import CheckContext

logger = logging.getLogger(__name__)

ANCHOR_WORD = Word("PPPXPPXX")
ANCHOR_TERMS = {(3, 5, 0): 1, (2, 4, 1): 13, (1, 3, 2): 44, (0, 2, 3): 36}
ANCHOR_EXPANSION = [1, -1, -1, -1, 2]


def _random_word(rng, max_length: int) -> Word:
    length = int(rng.integers(0, max_length + 1))
    return Word("".join(rng.choice(["X", "P"], size=length)))


def normal_order_anchor(ctx: CheckContext) -> List[CheckReport]:
    form = normal_order(ANCHOR_WORD)
    mismatches = sum(form.coefficient(*key) != value for key, value in ANCHOR_TERMS.items())
    mismatches += len(set(form.terms) - set(ANCHOR_TERMS))
    return [
        ctx.evaluate(
            "normal_order_anchor",
            "P^3 X P^2 X^2 = X^3P^5 + 13(-ih)X^2P^4 + 44(-ih)^2XP^3 + 36(-ih)^3P^2",
            mismatches,
            0.0,
        )
    ]


def normal_order_homomorphism(ctx: CheckContext) -> List[CheckReport]:
    rng = ctx.rng("normal_order_homomorphism")
    max_length = ctx.config.max_word_length
    mismatches = 0
    for _ in range(50):
        left = _random_word(rng, max_length // 2)
        right = _random_word(rng, max_length - len(left))
        if normal_order(left + right) != normal_order(left) * normal_order(right):
            mismatches += 1
    return [ctx.evaluate("normal_order_homomorphism", "normal ordering respects concatenation", mismatches, 0.0)]


def normal_order_cross_check(ctx: CheckContext) -> List[CheckReport]:
    rng = ctx.rng("normal_order_cross_check")
    words = [ANCHOR_WORD] + [_random_word(rng, ctx.config.max_word_length) for _ in range(10)]
    mismatches = sum(normal_order(word) != boson_normal_form(word) for word in words)
    return [
        ctx.evaluate("normal_order_sympy", "normal ordering agrees with sympy boson operators", mismatches, 0.0)
    ]


def oscillator_check(ctx: CheckContext) -> List[CheckReport]:
    rng = ctx.rng("oscillator_faithfulness")
    hbar = ctx.config.lattice.hbar
    words = [_random_word(rng, ctx.config.max_word_length) for _ in range(20)]
    if ctx.word:
        words.append(Word.parse(ctx.word))
    worst = max(oscillator_faithfulness(word, levels=len(word) + 6, hbar=hbar) for word in words)
    return [ctx.evaluate("oscillator_faithfulness", "normal form equals word on low oscillator levels", worst, 1e-9)]


def requested_word(ctx: CheckContext) -> List[CheckReport]:
    if not ctx.word:
        return []
    word = Word.parse(ctx.word)
    form = normal_order(word)
    logger.info(f"{word.letters} = {form.render()}")
    deviation = oscillator_faithfulness(word, levels=len(word) + 6, hbar=ctx.config.lattice.hbar)
    return [ctx.evaluate(f"normal_order_{word.letters or 'identity'}", form.render(), deviation, 1e-9)]


def expansion_anchor(ctx: CheckContext) -> List[CheckReport]:
    expansion = expand_permutation_sum(3)
    mismatches = int(expansion.coefficients() != ANCHOR_EXPANSION)
    logger.debug(f"N=3 permutation sum: {expansion.render()}")
    return [ctx.evaluate("permutation_expansion_anchor", expansion.render(), mismatches, 0.0)]


def expansion_oracle(ctx: CheckContext) -> List[CheckReport]:
    rng = ctx.rng("expansion_oracle")
    reports = []
    for particles, mode_dim in ((1, 3), (2, 3), (3, 2)):
        deviation = verify_expansion(particles, expand_permutation_sum(particles), mode_dim, rng=rng)
        reports.append(
            ctx.evaluate(
                f"permutation_expansion_N{particles}",
                "sum over permutations as combinations of ordinary sums",
                deviation,
                1e-10,
            )
        )
    return reports


def commutator_identity(ctx: CheckContext) -> List[CheckReport]:
    deviation = commutator_identity_check(ctx.rng("commutator_identity"))
    return [ctx.evaluate("commutator_product_identity", "[AB,CD] reduction to single commutators", deviation, 1e-12)]


CHECKS = [
    normal_order_anchor,
    normal_order_homomorphism,
    normal_order_cross_check,
    oscillator_check,
    requested_word,
    expansion_anchor,
    expansion_oracle,
    commutator_identity,
]
