from collections.abc import Callable
from pathlib import Path

import pytest

from bitbranch.domain.machine import MachineConfig
from bitbranch.domain.syntax import Program
from bitbranch.lang.parser import parse_program
from bitbranch.transform.options import TransformOptions

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def load_fixture() -> Callable[[str], Program]:
    """Parse a fixture program by its path relative to fixtures/."""

    def load(relative: str) -> Program:
        return parse_program((FIXTURES / relative).read_text())

    return load


@pytest.fixture
def cfg2() -> MachineConfig:
    return MachineConfig(width=2)


@pytest.fixture
def cfg3() -> MachineConfig:
    return MachineConfig(width=3)


@pytest.fixture
def cfg4() -> MachineConfig:
    return MachineConfig(width=4)


@pytest.fixture
def all_rules() -> TransformOptions:
    return TransformOptions()


@pytest.fixture
def only() -> Callable[..., TransformOptions]:
    """Options enabling just the named rules."""

    def options(*rule_ids: str) -> TransformOptions:
        return TransformOptions(enabled_rules=frozenset(rule_ids))

    return options


@pytest.fixture(autouse=True)
def fixed_prefix(monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep temporaries named _bb1, _bb2, ... whatever the environment says."""
    monkeypatch.setattr("bitbranch.config.settings.fresh_prefix", "_bb")
