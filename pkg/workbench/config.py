import os
from pathlib import Path

import toml
from attrs import define, field, frozen, validators

# --------------------------
# Defaults
# --------------------------
DEFAULT_SIZE_CAP = 5000
DEFAULT_NODE_BUDGET = 10**8
# window length per alphabet size (n=1 is the bicyclic monoid)
DEFAULT_MAXLEN = {1: 6, 2: 3}
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 50
DEFAULT_JOBS = 1
# exhaustive order-compatibility checks are quartic in the number of comparable pairs
ORDER_CHECK_CAP = 200

OUTPUT_FORMATS = ("text", "json")

DIAGNOSTIC_ENV = "WORKBENCH_DIAGNOSTIC"


def _positive(instance, attribute, value) -> None:
    if value is None or value <= 0:
        raise ValueError(f"{attribute.name} must be positive, got {value!r}")


@define
class Settings:
    """Process-wide knobs read by builders and enumerators."""

    size_cap: int = field(default=DEFAULT_SIZE_CAP, validator=_positive)
    node_budget: int = field(default=DEFAULT_NODE_BUDGET, validator=_positive)
    diagnostic: bool = field(default=False)

    def update(self, **overrides) -> "Settings":
        for key, value in overrides.items():
            if value is None:
                continue
            if not hasattr(self, key):
                raise KeyError(f"Unknown setting: {key}")
            # define() classes run validators on setattr as well
            setattr(self, key, value)
        return self


SETTINGS = Settings(diagnostic=os.environ.get(DIAGNOSTIC_ENV, "") not in ("", "0"))


def diagnostic_enabled() -> bool:
    return SETTINGS.diagnostic


def load_settings(path: Path) -> Settings:
    """Apply a TOML settings file (``[workbench]`` table) on top of the defaults."""
    if not path.exists():
        raise FileNotFoundError(f"No existe: {path.resolve()}")
    data = toml.load(path)
    section = data.get("workbench", data)
    return SETTINGS.update(
        size_cap=section.get("size_cap"),
        node_budget=section.get("node_budget"),
        diagnostic=section.get("diagnostic"),
    )


def default_maxlen(alphabet: int) -> int:
    return DEFAULT_MAXLEN.get(alphabet, 2)


@frozen
class RunConfig:
    subcommand: str
    inputs: tuple[str, ...] = ()
    size_cap: int = field(default=DEFAULT_SIZE_CAP, validator=_positive)
    node_budget: int = field(default=DEFAULT_NODE_BUDGET, validator=_positive)
    maxlen: int | None = None
    alphabet: int = field(default=2, validator=_positive)
    jobs: int = field(default=DEFAULT_JOBS, validator=_positive)
    output_format: str = field(default="text", validator=validators.in_(OUTPUT_FORMATS))
    seed: int = DEFAULT_SEED
    dump: str | None = None

    @property
    def window(self) -> int:
        return self.maxlen if self.maxlen is not None else default_maxlen(self.alphabet)

    def header(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "inputs": list(self.inputs),
            "cap_size": self.size_cap,
            "budget": self.node_budget,
            "maxlen": self.window,
            "alphabet": self.alphabet,
            "jobs": self.jobs,
            "seed": self.seed,
        }
