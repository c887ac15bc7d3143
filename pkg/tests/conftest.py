import random
import time
from dataclasses import dataclass
from fractions import Fraction

import pytest
from hypothesis import settings

from dp1kstab.kstab import verdict
from dp1kstab.sampling import STRATA, stratified

# exact arithmetic makes single examples slow but deterministic
settings.register_profile("exact", deadline=None, max_examples=50)
settings.load_profile("exact")

SUITE_SEED = 2024
SUITE_PER_STRATUM = 40  # 5 strata -> 200 classes

ACCEPTANCE = {}


def record(criterion: int, passed: bool, detail: str = "") -> None:
    ACCEPTANCE[criterion] = (passed, detail)
    print(f"criterion {criterion}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if passed else 'FAIL'}  {detail}")


@dataclass
class Suite:
    entries: list  # (Sample, Verdict)
    elapsed: float  # seconds to decompose, compare and judge every class


@pytest.fixture(scope="session")
def suite():
    """The stratified acceptance suite with a verdict for every class."""
    start = time.perf_counter()
    samples = stratified(SUITE_SEED, SUITE_PER_STRATUM, STRATA)
    entries = [(s, verdict(s.A)) for s in samples]
    return Suite(entries, time.perf_counter() - start)


@pytest.fixture
def rng():
    return random.Random(12345)


def q(text):
    return Fraction(text)
