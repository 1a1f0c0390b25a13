"""Experiment configuration: a flat key=value text format.

One pair per line, '#' starts a comment, blank lines are ignored, unknown
keys are errors.  Example:

    experiment = stability
    n = 32
    nu = 0.1
    dt = 2e-3
    t_end = 1.0
    sample_every = 2e-2
    delta = 1e-3
    seed = 7
    base_flow = taylor_green
    output_dir = out/stability
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

EXPERIMENTS = (
    "stability",
    "sym_preserve_z",
    "sym_preserve_helical",
    "euler_conserve",
    "vanishing_viscosity",
    "inequality_suite",
)

BASE_FLOWS = ("taylor_green", "random_2p5d")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    experiment: str
    n: int = 32
    nu: float = 0.01
    nu_list: tuple[float, ...] = ()
    dt: float = 1e-3
    t_end: float = 0.5
    sample_every: float = 0.0  # 0 means "every step"
    delta: float = 0.0
    seed: int = 0
    base_flow: str = "taylor_green"
    forcing: str = "off"
    forcing_amplitude: float = 0.0
    forcing_mode: tuple[int, int, int] = (1, 1, 0)
    epsilon: float = 0.1
    output_dir: str = "out"
    raw: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment '{self.experiment}'; "
                              f"choose from {', '.join(EXPERIMENTS)}")
        if self.n < 8 or (self.n & (self.n - 1)) != 0:
            raise ConfigError(f"n must be a power of two >= 8, got {self.n}")
        if self.experiment == "sym_preserve_helical" and self.n % 4 != 0:
            raise ConfigError("helical experiments need n divisible by 4")
        if self.sample_every == 0.0:
            self.sample_every = self.dt
        if self.dt <= 0 or self.t_end <= 0 or self.sample_every <= 0:
            raise ConfigError("dt, t_end and sample_every must be positive")
        if self.delta < 0:
            raise ConfigError("delta must be nonnegative")
        if self.experiment == "vanishing_viscosity":
            if not self.nu_list:
                raise ConfigError("vanishing_viscosity needs nu as a comma-separated list")
            if any(nu <= 0 for nu in self.nu_list):
                raise ConfigError("viscosities in the list must be positive "
                                  "(use euler_conserve for nu = 0)")
            if any(a <= b for a, b in zip(self.nu_list, self.nu_list[1:])):
                raise ConfigError("viscosity list must be strictly decreasing")
            if self.epsilon < 0:
                raise ConfigError("epsilon must be nonnegative")
        else:
            if self.nu < 0:
                raise ConfigError("nu must be nonnegative")
            if self.experiment == "euler_conserve" and self.nu != 0.0:
                raise ConfigError("euler_conserve requires nu = 0")
        if not (self.base_flow in BASE_FLOWS or self.base_flow.startswith("file:")):
            raise ConfigError(f"unknown base_flow '{self.base_flow}'")
        if self.forcing not in ("off", "single_mode"):
            raise ConfigError(f"unknown forcing '{self.forcing}'")

    @property
    def sample_stride(self) -> int:
        stride = max(1, round(self.sample_every / self.dt))
        if abs(stride * self.dt - self.sample_every) > 1e-9 * max(self.dt, self.sample_every):
            raise ConfigError(
                f"sample_every={self.sample_every:g} is not a multiple of dt={self.dt:g}")
        return stride


_CONVERTERS = {
    "experiment": str,
    "n": int,
    "dt": float,
    "t_end": float,
    "sample_every": float,
    "delta": float,
    "seed": int,
    "base_flow": str,
    "forcing": str,
    "forcing_amplitude": float,
    "epsilon": float,
    "output_dir": str,
}


def _parse_mode(text: str) -> tuple[int, int, int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise ConfigError(f"forcing_mode needs three integers, got '{text}'")
    try:
        k = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"bad forcing_mode '{text}'") from exc
    return k  # type: ignore[return-value]


def parse_config_text(text: str) -> ExperimentConfig:
    pairs: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected key = value, got '{line.strip()}'")
        key, value = (part.strip() for part in body.split("=", 1))
        if key in pairs:
            raise ConfigError(f"line {lineno}: duplicate key '{key}'")
        pairs[key] = value

    if "experiment" not in pairs:
        raise ConfigError("missing required key 'experiment'")
    kwargs: dict = {"raw": dict(pairs)}
    for key, value in pairs.items():
        if key == "nu":
            continue
        if key == "forcing_mode":
            kwargs[key] = _parse_mode(value)
            continue
        conv = _CONVERTERS.get(key)
        if conv is None:
            raise ConfigError(f"unknown key '{key}'")
        try:
            kwargs[key] = conv(value)
        except ValueError as exc:
            raise ConfigError(f"bad value for '{key}': '{value}'") from exc

    nu_text = pairs.get("nu", "")
    if "," in nu_text:
        try:
            kwargs["nu_list"] = tuple(float(p) for p in nu_text.split(","))
        except ValueError as exc:
            raise ConfigError(f"bad viscosity list '{nu_text}'") from exc
        kwargs["nu"] = kwargs["nu_list"][0]
    elif nu_text:
        try:
            kwargs["nu"] = float(nu_text)
        except ValueError as exc:
            raise ConfigError(f"bad value for 'nu': '{nu_text}'") from exc
        if kwargs.get("experiment") == "vanishing_viscosity":
            kwargs["nu_list"] = (kwargs["nu"],)

    try:
        return ExperimentConfig(**kwargs)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text)
