"""Numerical tolerances, kept in one record so callers can override them."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class Tolerances:
    root_residual: float = 1e-10
    newton_step: float = 1e-14
    newton_residual: float = 1e-15
    newton_max_iter: int = 50
    derivative_guard: float = 1e-14
    leading_coeff: float = 1e-14
    circle: float = 1e-9
    separation: float = 1e-6
    weight_imag: float = 1e-9
    weight_crosscheck: float = 1e-8
    weight_pair: float = 1e-10
    pole: float = 1e-12
    tangency_separation: float = 1e-10

    def replace(self, **changes) -> "Tolerances":
        return dataclasses.replace(self, **changes)

    @classmethod
    def from_mapping(cls, values: dict[str, str | float | int]) -> "Tolerances":
        """Build a record from string or numeric overrides; unknown keys raise KeyError."""
        types = {f.name: f.type for f in dataclasses.fields(cls)}
        parsed = {}
        for key, raw in values.items():
            if key not in types:
                raise KeyError(f"unknown tolerance {key!r}")
            parsed[key] = int(raw) if types[key] == "int" else float(raw)
        return cls(**parsed)


DEFAULT_TOLERANCES = Tolerances()


def load_tolerances(path: str | Path) -> Tolerances:
    """Read a flat ``key = value`` file (``#`` starts a comment)."""
    values: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key] = value
    return Tolerances.from_mapping(values)
