"""Numeric constants of the distinguisher, with ``paper`` and ``desk`` presets."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

__all__ = ["ParamProfile", "PAPER", "DESK", "load_profile", "read_profile", "resolve_profile"]


@dataclass(frozen=True)
class ParamProfile:
    """All tunable constants.

    ``tau_case`` drives the low/high threshold-rank split and the extraction
    loop; ``tau_extract`` is the rank threshold the extractor itself checks.
    """

    eps: float = 0.05
    tau_case: float = 0.95
    tau_extract: float = 0.95
    gamma: float = 0.5
    size_cap_exponent: float = 0.9
    extract_phi_budget: float = 0.1
    phi_slack: float = 0.08
    size_slack_lo: float = 0.92
    size_slack_hi: float = 1.08
    n_exact: int = 20
    seed: Optional[int] = None

    def __post_init__(self):
        if not 0 < self.eps < 0.5:
            raise ValueError(f"eps must lie in (0, 1/2), got {self.eps}")
        for name in ("tau_case", "tau_extract"):
            if not 0 <= getattr(self, name) < 1:
                raise ValueError(f"{name} must lie in [0, 1)")
        if not 0 < self.gamma < 1:
            raise ValueError("gamma must lie in (0, 1)")
        if not 0 < self.size_cap_exponent <= 1:
            raise ValueError("size_cap_exponent must lie in (0, 1]")
        if not 0 < self.extract_phi_budget <= 1 or self.phi_slack < 0:
            raise ValueError("extract_phi_budget must lie in (0, 1] and phi_slack be non-negative")
        if not self.size_slack_lo < 1 < self.size_slack_hi:
            raise ValueError("need size_slack_lo < 1 < size_slack_hi")
        if self.n_exact < 0:
            raise ValueError("n_exact must be non-negative")

    @classmethod
    def paper(cls) -> "ParamProfile":
        return PAPER

    @classmethod
    def desk(cls) -> "ParamProfile":
        return DESK

    def replace(self, **changes) -> "ParamProfile":
        return dataclasses.replace(self, **changes)

    def slack_fractions(self) -> tuple:
        """``size_slack_lo``/``hi`` as exact decimals, for integer window rounding."""
        return Fraction(repr(self.size_slack_lo)), Fraction(repr(self.size_slack_hi))

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def to_text(self) -> str:
        lines = []
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            lines.append(f"{f.name}={'none' if value is None else repr(value)}")
        return "\n".join(lines) + "\n"


PAPER = ParamProfile(
    eps=1e-6,
    tau_case=1 - 1e-6,
    tau_extract=1 - 1e-5,
    gamma=0.1,
    size_cap_exponent=1 - 1e-3,
    extract_phi_budget=1e-2,
    phi_slack=0.08,
    size_slack_lo=0.92,
    size_slack_hi=1.08,
    n_exact=20,
)

DESK = ParamProfile()

_INT_FIELDS = {"n_exact", "seed"}


def load_profile(text: str) -> ParamProfile:
    """Parse ``key=value`` lines; ``#`` starts a comment. Unknown keys are errors."""
    known = {f.name for f in dataclasses.fields(ParamProfile)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        if key not in known:
            raise ValueError(f"line {lineno}: unknown profile key {key!r}")
        if key in values:
            raise ValueError(f"line {lineno}: duplicate profile key {key!r}")
        try:
            if key == "seed" and value.lower() == "none":
                values[key] = None
            elif key in _INT_FIELDS:
                values[key] = int(value)
            else:
                values[key] = float(value)
        except ValueError:
            raise ValueError(f"line {lineno}: bad value for {key}: {value!r}") from None
    return ParamProfile(**values)


def read_profile(path) -> ParamProfile:
    return load_profile(Path(path).read_text(encoding="utf-8"))


def resolve_profile(spec) -> ParamProfile:
    """Accept a profile, a preset name (``paper``/``desk``) or a file path."""
    if isinstance(spec, ParamProfile):
        return spec
    if spec is None:
        return DESK
    path = Path(spec)
    if path.exists():
        return read_profile(path)
    presets = {"paper": PAPER, "desk": DESK}
    if str(spec) in presets:
        return presets[str(spec)]
    raise FileNotFoundError(f"no profile file or preset named {spec!r}")
