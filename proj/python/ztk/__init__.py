"""Simulation toolkit for zero-dynamics attack detection and recovery.

The native extension does the work; this wrapper adds ergonomic defaults:
configs may be dicts, file paths, or shipped scenario names, and the shipped
scenario directory is found automatically (packaged copy, then the repository
checkout for editable installs, then the ZTK_PRESETS_DIR / ./presets search).
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

from ._ztk import (  # noqa: F401
    __version__,
    config_hash as _config_hash,
    find_presets_dir as _find_presets_dir,
    list_presets as _list_presets,
    load_preset as _load_preset,
    operating_point as _operating_point,
    run_scenario as _run_scenario,
    run_single as _run_single,
)

__all__ = [
    "__version__",
    "config_hash",
    "find_presets_dir",
    "list_presets",
    "load_preset",
    "operating_point",
    "run_scenario",
    "run_single",
]

ConfigLike = Union[dict, str]
PathLike = Union[str, Path]


def _presets_dir(explicit: Optional[PathLike]) -> str:
    if explicit:
        return str(explicit)
    here = Path(__file__).resolve().parent
    for candidate in (here / "presets", here.parents[1] / "presets"):
        if candidate.is_dir():
            return str(candidate)
    return ""  # fall through to the native search order


def find_presets_dir(dir: Optional[PathLike] = None) -> str:
    """Directory holding the shipped scenario files."""
    return _find_presets_dir(_presets_dir(dir))


def list_presets(dir: Optional[PathLike] = None) -> list:
    """Names of the shipped scenarios, sorted."""
    return _list_presets(_presets_dir(dir))


def load_preset(name: str, dir: Optional[PathLike] = None) -> dict:
    """Canonical config dict of a shipped scenario."""
    return _load_preset(name, _presets_dir(dir))


def config_hash(config: ConfigLike, presets_dir: Optional[PathLike] = None) -> str:
    """Hash of the canonical form of a config (dict, file path, or scenario name)."""
    return _config_hash(config, _presets_dir(presets_dir))


def run_scenario(
    config: ConfigLike,
    out_dir: Optional[PathLike] = None,
    seed: Optional[int] = None,
    dt: Optional[float] = None,
    presets_dir: Optional[PathLike] = None,
) -> dict:
    """Run the clean / attacked / recovered set for one scenario.

    Returns a dict with the canonical ``config``, its ``config_hash``, the
    ``metrics`` document, and ``clean`` / ``attacked`` / ``recovered`` entries
    (``None`` when a run is disabled by the config). Each run holds its
    trajectory as ``{column name: numpy array}`` plus the detector outcome.
    ``seed`` overrides both the measurement-noise and probe-direction seeds;
    ``dt`` overrides the integration step. With ``out_dir`` set, the same
    files the command-line tool writes (CSV, metrics JSON, SVG plots) are
    emitted there.
    """
    return _run_scenario(
        config,
        out_dir=None if out_dir is None else str(out_dir),
        seed=0 if seed is None else int(seed),
        override_seed=seed is not None,
        dt=0.0 if dt is None else float(dt),
        override_dt=dt is not None,
        presets_dir=_presets_dir(presets_dir),
    )


def run_single(
    config: ConfigLike,
    kind: str,
    presets_dir: Optional[PathLike] = None,
) -> dict:
    """Run one loop variant: ``clean``, ``attack``, ``recovered``, or ``probe``."""
    return _run_single(config, kind, _presets_dir(presets_dir))


def operating_point(
    config: ConfigLike,
    presets_dir: Optional[PathLike] = None,
) -> dict:
    """Attack-free steady state of both loops at the config's initial reference."""
    return _operating_point(config, _presets_dir(presets_dir))
