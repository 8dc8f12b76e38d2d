"""Tunable constants of the cost model."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Mapping


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class AlignConfig:
    # length model: English chars per Chinese char, and its variance
    r: float = 2.61
    sigma2: float = 0.310
    # paragraph cost factors
    f_l: float = 1.0
    f_a: float = 0.05
    f_mp: float = 0.001
    c_skip: float = 1.0
    # clause cost factors
    f_l_clause: float = 1.0
    f_ms: float = 2.0
    f_a_clause: float = 0.05
    f_ws: float = 1.0
    # anchor weights and penalties
    w_number: float = 100.0
    w_place: float = 10.0
    w_date: float = 50.0
    factor_repetition: float = 0.5
    factor_approx: float = 0.5
    factor_small_word: float = 0.5
    approx_tolerance: float = 0.05
    # use |S| instead of the signed scattering statistic
    abs_scattering: bool = False

    def validate(self) -> "AlignConfig":
        for f in fields(self):
            v = getattr(self, f.name)
            if f.type in ("bool", bool):
                continue
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not v > 0:
                raise ConfigError(f"{f.name} must be a positive number, got {v!r}")
        if not self.f_mp < self.f_a:
            raise ConfigError(f"f_mp ({self.f_mp}) must be smaller than f_a ({self.f_a})")
        return self

    def replace(self, **changes: Any) -> "AlignConfig":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "AlignConfig":
        known = {f.name: f for f in fields(cls)}
        unknown = set(data) - set(known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values = {}
        for k, v in data.items():
            if known[k].type in ("bool", bool):
                if isinstance(v, str):
                    if v.strip().lower() not in ("true", "false", "1", "0"):
                        raise ConfigError(f"{k} expects a boolean, got {v!r}")
                    v = v.strip().lower() in ("true", "1")
                values[k] = bool(v)
                continue
            try:
                values[k] = float(v)
            except (TypeError, ValueError):
                raise ConfigError(f"{k} expects a number, got {v!r}") from None
        return cls(**values)

    @classmethod
    def load(cls, path: str | Path) -> "AlignConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_mapping(json.load(fh))
