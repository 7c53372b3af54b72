"""Tunable limits of the automata kernel"""

from time import perf_counter

from pydantic import BaseModel, ConfigDict, Field

from omega_automata.errors import DeadlineExceeded

DEFAULT_STATE_BUDGET = 1_000_000
DEFAULT_SIMULATION_LIMIT = 64
DEFAULT_MAX_ALPHABET_APS = 14


class KernelSettings(BaseModel):
    """
    Resource limits shared by the kernel constructions. `deadline` is a
    `time.perf_counter()` reading after which constructions give up.
    """

    model_config = ConfigDict(frozen=True)

    state_budget: int = Field(default=DEFAULT_STATE_BUDGET, gt=0)
    simulation_limit: int = Field(default=DEFAULT_SIMULATION_LIMIT, ge=0)
    max_alphabet_aps: int = Field(default=DEFAULT_MAX_ALPHABET_APS, ge=0, le=24)
    deadline: float | None = None

    def until(self, deadline: float | None) -> "KernelSettings":
        """Same limits with another deadline"""
        return self.model_copy(update={"deadline": deadline})


DEFAULT_SETTINGS = KernelSettings()


def resolve_settings(settings: KernelSettings | None) -> KernelSettings:
    """Falls back on the module defaults"""
    return DEFAULT_SETTINGS if settings is None else settings


def warning_threshold(settings: KernelSettings) -> int:
    """Size at which constructions warn that the budget is getting close"""
    return max(1, settings.state_budget * 4 // 5)


def check_deadline(settings: KernelSettings, construction: str) -> None:
    if settings.deadline is not None and perf_counter() > settings.deadline:
        raise DeadlineExceeded(construction)
