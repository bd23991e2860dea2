import os
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Dict, Final, Optional

DEFAULT_MAX_STEPS: Final = 8
DEFAULT_MAX_VERTICES: Final = 8
DEFAULT_MAX_STATES: Final = 1_000_000
DEFAULT_MAX_GRAPHS: Final[Optional[int]] = None
DEFAULT_MAX_TRACE_LENGTH: Final = 6

ISOMORPHISM_VERTEX_CAP: Final = 64

LOG_LEVEL_ENV: Final = "VRHR_LOG_LEVEL"
DEFAULT_LOG_LEVEL: Final = "WARNING"

BUNDLED_SPEC_DIR: Final = Path(__file__).parent / "specs"
SCHEMA_DIR: Final = Path(__file__).parent / "schemas"
VERDICT_SCHEMA: Final = SCHEMA_DIR / "verdict.schema.json"


@dataclass(frozen=True, slots=True)
class Bounds:
    """Exploration limits; ``None`` means unbounded."""

    max_steps: int = DEFAULT_MAX_STEPS
    max_vertices: Optional[int] = DEFAULT_MAX_VERTICES
    max_states: int = DEFAULT_MAX_STATES
    max_graphs: Optional[int] = DEFAULT_MAX_GRAPHS

    @classmethod
    def default(cls) -> "Bounds":
        return cls()

    def merged(self, **overrides: Optional[int]) -> "Bounds":
        # None means "not given", never "unbounded"
        changes = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Optional[int]]:
        return asdict(self)


def get_bundled_spec(name: str) -> Path:
    file_name = name if name.endswith(".spec") else f"{name}.spec"
    return Path(BUNDLED_SPEC_DIR / file_name)


def get_log_level() -> str:
    return os.environ.get(LOG_LEVEL_ENV, DEFAULT_LOG_LEVEL).upper()
