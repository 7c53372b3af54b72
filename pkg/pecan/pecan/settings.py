"""Prover configuration"""

from pydantic import BaseModel, ConfigDict, Field

from omega_automata.settings import KernelSettings

DEFAULT_TIMEOUT_S = 300.0


class ProverSettings(BaseModel):
    """Options of a prover session, the CLI flags map onto these fields"""

    model_config = ConfigDict(frozen=True)

    kernel: KernelSettings = Field(default_factory=KernelSettings)
    timeout_s: float | None = Field(default=DEFAULT_TIMEOUT_S, gt=0)
    load_prelude: bool = True
    push_negations: bool = True
    simplify_steps: bool = True
