"""
Pytest configuration and fixtures for the BK poset engine tests.
"""

import logging
import os
import sys
from datetime import datetime

import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings

from bkposets.families import named
from bkposets.linext import LinExtSpace, enumerate_extensions
from bkposets.poset import Poset, antichain, chain, disjoint_union, ordinal_sum
from config import settings

# ------------------------------------------------------------------------------
# Directory setup
# ------------------------------------------------------------------------------
os.makedirs(settings.log_dir, exist_ok=True)


# ------------------------------------------------------------------------------
# Hypothesis profile
# ------------------------------------------------------------------------------
hypothesis_settings.register_profile(
    "bkposets", deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture]
)
hypothesis_settings.load_profile("bkposets")


# ------------------------------------------------------------------------------
# Logging
# ------------------------------------------------------------------------------
def setup_logging():
    run_log = os.path.join(settings.log_dir, f"test_run_{datetime.now():%Y%m%d_%H%M%S}.log")
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper()),
        format="%(asctime)s | %(levelname)-8s | %(name)-30s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        handlers=[logging.StreamHandler(sys.stdout), logging.FileHandler(run_log, encoding="utf-8")],
    )

    logging.getLogger("hypothesis").setLevel(logging.WARNING)

    logger = logging.getLogger(__name__)
    logger.info("=" * 80)
    logger.info("🚀 TEST RUN STARTED")
    logger.info(f"   📐 Degree cap: {settings.max_degree}")
    logger.info(f"   🧮 Census cap: {settings.census_cap}")
    logger.info(f"   🧵 Threads: {settings.threads}")
    logger.info("=" * 80 + "\n")


@pytest.fixture(scope="session", autouse=True)
def configure_logging():
    setup_logging()
    yield
    logging.getLogger(__name__).info("\n" + "=" * 80 + "\n✅ TEST RUN COMPLETED\n" + "=" * 80)


# ------------------------------------------------------------------------------
# Poset Fixtures
# ------------------------------------------------------------------------------
@pytest.fixture
def butterfly() -> Poset:
    """a, b < c, d"""
    return named("butterfly")


@pytest.fixture
def butterfly_space(butterfly) -> LinExtSpace:
    return enumerate_extensions(butterfly)


@pytest.fixture
def v_shape() -> Poset:
    """a > b < c"""
    return ordinal_sum(antichain(1), antichain(2))


@pytest.fixture
def two_chains() -> Poset:
    """C_2 + C_2"""
    return disjoint_union(chain(2), chain(2))


@pytest.fixture
def chain_plus_point() -> Poset:
    """C_2 + A_1"""
    return disjoint_union(chain(2), antichain(1))


@pytest.fixture
def antichain_sum() -> Poset:
    """A_3 ⊕ A_1"""
    return ordinal_sum(antichain(3), antichain(1))


# ------------------------------------------------------------------------------
# Pytest Hooks
# ------------------------------------------------------------------------------
def pytest_configure(config):
    config.addinivalue_line("markers", "smoke")
    config.addinivalue_line("markers", "regression")
    config.addinivalue_line("markers", "census")
    config.addinivalue_line("markers", "slow")


@pytest.fixture(autouse=True)
def log_test_info(request):
    logger = logging.getLogger(__name__)
    logger.info("\n" + "#" * 80)
    logger.info(f"🧪 STARTING TEST: {request.node.name}")
    logger.info("#" * 80)
    yield
    logger.info("\n" + "#" * 80)
    logger.info(f"🏁 FINISHED TEST: {request.node.name}")
    logger.info("#" * 80)


@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """Log the posets a failing test received, so the failure can be replayed from the CLI."""
    outcome = yield
    report = outcome.get_result()
    logger = logging.getLogger(__name__)

    if report.when == "call" and report.failed and hasattr(item, "funcargs"):
        for name, value in item.funcargs.items():
            if isinstance(value, Poset):
                logger.error(f"💥 {name} = {value!r}")
