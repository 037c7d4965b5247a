"""key=value parameter files for the command line."""
from __future__ import annotations

from pathlib import Path
from typing import Optional

from .errors import MalformedConfig

# accepted keys and their value types; flag names with '-' map to '_'
PARAM_TYPES = {
    "model": str,
    "a": float,
    "b": float,
    "rho": float,
    "energy": float,
    "mass": float,
    "m1": float,
    "m2": float,
    "J": int,
    "l": int,
    "lmax": int,
    "tol": float,
    "preset": str,
    "nmax": int,
    "emin": float,
    "emax": float,
    "grid": int,
    "mu_override": float,
    "mass_index_override": float,
    "mass_convention": str,
    "sweep": str,
    "start": float,
    "stop": float,
    "count": int,
    "jobs": int,
    "allow_complex_exponent": bool,
}

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def coerce(key: str, raw: str):
    kind = PARAM_TYPES[key]
    if kind is bool:
        low = raw.strip().lower()
        if low in _TRUE:
            return True
        if low in _FALSE:
            return False
        raise ValueError(f"not a boolean: {raw!r}")
    if kind is int:
        value = float(raw)
        if value != int(value):
            raise ValueError(f"not an integer: {raw!r}")
        return int(value)
    return kind(raw.strip())


def parse_config(text: str) -> dict:
    params = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise MalformedConfig(lineno, f"expected key=value, got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in PARAM_TYPES:
            raise MalformedConfig(lineno, f"unknown key {key!r}")
        try:
            params[key] = coerce(key, raw)
        except ValueError as exc:
            raise MalformedConfig(lineno, f"bad value for {key}: {exc}") from None
    return params


def load_config(path, overrides: Optional[dict] = None) -> dict:
    """Read a config file and lay ``overrides`` (non-None entries) on top."""
    params = parse_config(Path(path).read_text(encoding="utf-8")) if path else {}
    for key, value in (overrides or {}).items():
        if value is not None:
            params[key] = value
    return params
