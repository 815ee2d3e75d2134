"""Run settings shared by the command line and the scripts.

Precedence: explicit values (command-line flags) over GBE_* environment
variables over the defaults below.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from fractions import Fraction

from .errors import InvalidParameter
from .hadamard import QuadratureConfig

ENV_PREFIX = "GBE_"


@dataclass(frozen=True)
class Settings:
    g: Fraction = Fraction(1, 4)       # support (-1, 1) in the scaled convention
    convention: str = "scaled"         # or "unscaled"
    threads: int = 1
    seed: int = 42
    format: str = "json"

    def __post_init__(self):
        if self.convention not in ("scaled", "unscaled"):
            raise InvalidParameter(f"convention must be 'scaled' or 'unscaled', got {self.convention!r}")
        if self.threads < 1:
            raise InvalidParameter("threads must be at least 1")
        if self.g <= 0:
            raise InvalidParameter("g must be positive")


_PARSERS = {"g": Fraction, "convention": str, "threads": int, "seed": int, "format": str}


def from_environment(environ=None) -> dict:
    """Settings found in GBE_* variables, parsed."""
    environ = os.environ if environ is None else environ
    out = {}
    for f in fields(Settings):
        key = ENV_PREFIX + f.name.upper()
        if key in environ:
            try:
                out[f.name] = _PARSERS[f.name](environ[key])
            except (ValueError, ZeroDivisionError) as exc:
                raise InvalidParameter(f"cannot parse {key}={environ[key]!r}: {exc}") from None
    return out


def resolve(flags: dict | None = None, environ=None) -> Settings:
    """Defaults, then the environment, then the non-None flags."""
    s = replace(Settings(), **from_environment(environ))
    given = {k: v for k, v in (flags or {}).items() if v is not None and k in _PARSERS}
    return replace(s, **given)


__all__ = ["Settings", "QuadratureConfig", "resolve", "from_environment", "ENV_PREFIX"]
