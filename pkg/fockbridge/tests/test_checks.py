import pytest

from fockbridge.schemas.report import CheckStatus
from fockbridge.schemas.run_config import RunConfig
from fockbridge.verification.checks import SELECTORS, CheckContext
from fockbridge.verification.checks.algebra import ANCHOR_EXPANSION, ANCHOR_TERMS
from fockbridge.verification.checks.base import hash_seed, shortfall


@pytest.mark.parametrize("selector", list(SELECTORS))
def test_default_config_passes(selector):
    context = CheckContext(RunConfig())
    failures = [
        report
        for check in SELECTORS[selector]
        for report in check(context)
        if report.status == CheckStatus.FAILED
    ]
    assert failures == []


def test_anchor_constants():
    assert sorted(ANCHOR_TERMS.values()) == [1, 13, 36, 44]
    assert ANCHOR_EXPANSION == [1, -1, -1, -1, 2]


def test_streams_are_independent_and_reproducible():
    context = CheckContext(RunConfig(seed=3))
    assert context.rng("a").normal() == CheckContext(RunConfig(seed=3)).rng("a").normal()
    assert context.rng("a").normal() != context.rng("b").normal()
    assert hash_seed("a") == hash_seed("a") < 10 ** 8


def test_shortfall():
    assert shortfall(2.0, 1.0) == 0
    assert shortfall(0.25, 1.0) == 0.75


def test_tolerance_overrides_apply():
    context = CheckContext(RunConfig(tolerances={"fermi_nilpotency": 0.5}))
    assert context.tolerance("fermi_nilpotency", 0.0) == 0.5
    assert context.tolerance("other", 1e-3) == 1e-3
