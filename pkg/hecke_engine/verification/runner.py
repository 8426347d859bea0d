"""
Concurrent execution of verification suites
"""
import asyncio
import logging
from typing import Optional, Sequence

from hecke_engine.config import settings
from hecke_engine.errors import RankMismatchError
from hecke_engine.models import CheckReport
from hecke_engine.verification.base import VerificationSuite
from hecke_engine.verification.factory import SuiteFactory

logger = logging.getLogger(__name__)


async def run_suites(suites: Sequence[VerificationSuite]) -> CheckReport:
    """
    Run suites in worker threads and collect their reports in suite order

    Raises:
        ValueError: if no suites are given
        RankMismatchError: if the suites disagree on the rank
    """
    if not suites:
        raise ValueError("at least one verification suite is required")
    d = suites[0].d
    for suite in suites:
        if suite.d != d:
            raise RankMismatchError(d, suite.d)
    logger.info(f"Running {len(suites)} verification suites at d={d}")
    reports = await asyncio.gather(*(asyncio.to_thread(suite.run) for suite in suites))
    return CheckReport(
        d=d,
        max_length=max(suite.max_length for suite in suites),
        suites=list(reports),
        passed=all(report.passed for report in reports),
    )


def run_check(d: int, max_length: Optional[int] = None, verify: bool = False) -> CheckReport:
    """Relations, plus every oracle suite when verify is set"""
    if max_length is None:
        max_length = settings.check_max_length
    return asyncio.run(run_suites(SuiteFactory.create_all(d, max_length, verify=verify)))
