"""Flat key = value configuration files.

One assignment per line, ``#`` starts a comment, unknown keys are errors
with line numbers.  Frequencies are given in ordinary GHz and converted to
angular rad/s here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import SystemParams

TWO_PI_GHZ = 2.0 * math.pi * 1e9

# key -> parser; grid_* handled separately
_SCALAR_KEYS = {
    "ej_ghz": float,        # E_J/h in GHz
    "ech4_ghz": float,      # 4 E_ch/h in GHz
    "ng": float,
    "omega_ghz": float,     # omega/2pi in GHz
    "eta_ratio": float,
    "g_rad_s": float,
    "q_factor": float,
    "alpha": complex,
    "phi": float,
    "theta_override": float,
    "tau2_s": float,
    "tau3_s": float,
    "tau4_s": float,
    "fock_nmax": int,
    "grid_min": float,
    "grid_max": float,
    "grid_points": int,
}

REQUIRED_FOR_PARAMS = ("ej_ghz", "ech4_ghz", "ng", "omega_ghz")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    values: dict

    def get(self, key, default=None):
        return self.values.get(key, default)

    def require(self, key):
        if key not in self.values:
            raise ConfigError(f"missing required config key {key!r}")
        return self.values[key]


def parse_config_text(text: str, source: str = "<config>") -> RunConfig:
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in _SCALAR_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = _SCALAR_KEYS[key](val)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {exc}") from exc
    if "eta_ratio" in values and "g_rad_s" in values:
        raise ConfigError(f"{source}: give either eta_ratio or g_rad_s, not both")
    return RunConfig(values=values)


def load_config(path) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read(), source=str(path))


def system_params(cfg: RunConfig) -> SystemParams:
    """Build SystemParams from a parsed config (GHz -> rad/s at this boundary)."""
    for key in REQUIRED_FOR_PARAMS:
        cfg.require(key)
    ej = cfg.get("ej_ghz") * TWO_PI_GHZ
    ech = cfg.get("ech4_ghz") * TWO_PI_GHZ / 4.0
    omega = cfg.get("omega_ghz") * TWO_PI_GHZ
    if "g_rad_s" in cfg.values:
        eta_ratio = cfg.get("g_rad_s") / ej
    elif "eta_ratio" in cfg.values:
        eta_ratio = cfg.get("eta_ratio")
    else:
        raise ConfigError("one of eta_ratio or g_rad_s is required")
    return SystemParams(
        ej=ej,
        ech=ech,
        ng=cfg.require("ng"),
        omega=omega,
        eta_ratio=eta_ratio,
        quality=cfg.get("q_factor"),
    )
