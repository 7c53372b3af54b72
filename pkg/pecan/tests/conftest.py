"""Fixtures shared by the prover tests"""

import pytest

from pecan.evaluator import EvalContext
from pecan.session import Session
from pecan.settings import ProverSettings

NAT_PRELUDE = """
Restrict a, b, c, i, j, k, x, y, z are nat.
"""


@pytest.fixture
def session() -> Session:
    """A session with the prelude and every test variable restricted to nat"""
    fresh = Session(ProverSettings(timeout_s=120.0))
    fresh.run_text(NAT_PRELUDE)
    return fresh


@pytest.fixture
def bare_session() -> Session:
    return Session(ProverSettings(load_prelude=False))


@pytest.fixture
def ctx(session: Session) -> EvalContext:
    return session.context()
