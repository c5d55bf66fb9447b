"""
Configuration management for the verification tool.

Environment settings are read once through python-dotenv; campaign settings
come from a JSON file and are validated key by key.
"""

import json
import math
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from dotenv import load_dotenv

from ofip.fuzzy_structures import AlphaProfile, MixingFunction, ProfileError, MixingError, _normalize_grid
from ofip.verifier import CHECK_IDS, DEFAULT_TOLERANCE

# Load environment variables
load_dotenv()

FIELDS = ("real", "complex", "both")
REALIZATIONS = ("scaled", "general", "adversarial")
BASE_KINDS = ("standard", "weighted")


class ConfigError(ValueError):
    """Invalid configuration; `field` names the offending key."""

    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"{field_name}: {message}")


def _env_int(name: str, default: Optional[int]) -> Optional[int]:
    raw = os.getenv(name, '')
    if raw == '':
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(name, f"expected an integer, got {raw!r}") from None


class Config:
    """Environment settings for the tool."""

    def __init__(self):
        # Campaign defaults
        self.SEED = _env_int('OFIP_SEED', None)
        self.WORKERS = _env_int('OFIP_WORKERS', 1)
        self.REPORT_DIR = os.getenv('OFIP_REPORT_DIR', 'data/reports')

        # Logging
        self.LOG_LEVEL = os.getenv('OFIP_LOG_LEVEL', 'INFO').upper()
        self.LOG_DIR = os.getenv('OFIP_LOG_DIR', 'data/logs')
        self.LOG_TO_FILE = os.getenv('OFIP_LOG_TO_FILE', 'False').lower() == 'true'

        self._validate_config()

    def _validate_config(self):
        """Validate configuration values."""
        if self.SEED is not None and self.SEED < 0:
            raise ConfigError('OFIP_SEED', "seed must be a non-negative integer")
        if self.WORKERS < 1:
            raise ConfigError('OFIP_WORKERS', "at least one worker is required")
        if self.LOG_LEVEL not in ('DEBUG', 'INFO', 'WARNING', 'ERROR'):
            raise ConfigError('OFIP_LOG_LEVEL', f"unknown level {self.LOG_LEVEL!r}")

    def resolve_report_path(self, path: Union[str, Path]) -> Path:
        """Relative report paths resolve against REPORT_DIR."""
        path = Path(path)
        return path if path.is_absolute() else Path(self.REPORT_DIR) / path

    def __str__(self):
        """String representation of config."""
        return f"Config(seed={self.SEED}, workers={self.WORKERS}, log_level={self.LOG_LEVEL})"


def _require(data: Dict[str, Any], key: str) -> Any:
    if key not in data:
        raise ConfigError(key, "missing required key")
    return data[key]


def _unsigned(value: Any, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ConfigError(key, f"expected an unsigned integer, got {value!r}")
    return value


def _base_descriptor(value: Any, key: str) -> Dict[str, Any]:
    if not isinstance(value, dict) or value.get('kind') not in BASE_KINDS:
        raise ConfigError(key, f"expected {{kind: standard | weighted}}, got {value!r}")
    if value['kind'] == 'weighted':
        weights = value.get('weights')
        if not weights or not all(isinstance(w, (int, float)) and w > 0 for w in weights):
            raise ConfigError(key, "weighted base needs a non-empty list of positive weights")
        return {'kind': 'weighted', 'weights': [float(w) for w in weights]}
    return {'kind': 'standard'}


@dataclass(frozen=True)
class CampaignConfig:
    """A validated campaign description."""

    seed: Optional[int]
    trials: int
    dims: List[int]
    field: str
    alpha_grid: List[float]
    profile: Dict[str, Any]
    mixing: Dict[str, Any]
    report_path: str
    checks: List[str] = field(default_factory=lambda: list(CHECK_IDS))
    tolerance: float = DEFAULT_TOLERANCE
    realization: str = 'scaled'
    inflation: float = 2.0
    base: Dict[str, Any] = field(default_factory=lambda: {'kind': 'standard'})
    second_base: Optional[Dict[str, Any]] = None
    companion_profile: Optional[Dict[str, Any]] = None
    companion_mixing: Dict[str, Any] = field(default_factory=lambda: {'kind': 'hashed', 'salt': 1})
    csv_path: Optional[str] = None
    workers: Optional[int] = None
    max_shrink_steps: int = 500
    timestamps: bool = False

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "CampaignConfig":
        path = Path(path)
        if not path.exists():
            raise ConfigError('config', f"config file not found: {path}")
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError('config', f"invalid JSON: {e}") from e
        except UnicodeDecodeError as e:
            raise ConfigError('config', f"config file is not UTF-8 text: {e}") from e
        except OSError as e:
            raise ConfigError('config', f"cannot read config file {path}: {e}") from e
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CampaignConfig":
        if not isinstance(data, dict):
            raise ConfigError('config', "top level must be a JSON object")
        known = set(cls.__dataclass_fields__)
        for key in data:
            if key not in known:
                raise ConfigError(key, "unknown key")

        seed = data.get('seed')
        if seed is not None:
            _unsigned(seed, 'seed')
        trials = _unsigned(_require(data, 'trials'), 'trials')

        dims = _require(data, 'dims')
        if not isinstance(dims, list) or not dims or not all(
                isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in dims):
            raise ConfigError('dims', f"expected a non-empty list of positive integers, got {dims!r}")

        field_name = _require(data, 'field')
        if field_name not in FIELDS:
            raise ConfigError('field', f"expected one of {FIELDS}, got {field_name!r}")

        grid = _require(data, 'alpha_grid')
        if not isinstance(grid, list) or not grid or not all(
                isinstance(a, (int, float)) and not isinstance(a, bool) for a in grid):
            raise ConfigError('alpha_grid', "expected a non-empty list of numbers")
        try:
            grid = list(_normalize_grid(grid))
        except ValueError as e:
            raise ConfigError('alpha_grid', str(e)) from e

        realization = data.get('realization', 'scaled')
        if realization not in REALIZATIONS:
            raise ConfigError('realization', f"expected one of {REALIZATIONS}, got {realization!r}")

        profile = _require(data, 'profile')
        cls._check_profile(profile, grid, 'profile', ordered_required=realization != 'general')
        companion_profile = data.get('companion_profile')
        if companion_profile is not None:
            cls._check_profile(companion_profile, grid, 'companion_profile', ordered_required=True)

        mixing = _require(data, 'mixing')
        cls._check_mixing(mixing, 'mixing')
        companion_mixing = data.get('companion_mixing', {'kind': 'hashed', 'salt': 1})
        cls._check_mixing(companion_mixing, 'companion_mixing')

        checks = data.get('checks', 'all')
        if checks == 'all':
            checks = list(CHECK_IDS)
        elif not isinstance(checks, list) or not all(c in CHECK_IDS for c in checks):
            unknown = [c for c in checks if c not in CHECK_IDS] if isinstance(checks, list) else checks
            raise ConfigError('checks', f"unknown check ids {unknown!r}")

        tolerance = data.get('tolerance', DEFAULT_TOLERANCE)
        if not isinstance(tolerance, (int, float)) or isinstance(tolerance, bool) or not tolerance >= 0:
            raise ConfigError('tolerance', f"expected a non-negative number, got {tolerance!r}")

        inflation = data.get('inflation', 2.0)
        if not isinstance(inflation, (int, float)) or not inflation > 1:
            raise ConfigError('inflation', f"expected a number greater than 1, got {inflation!r}")

        report_path = _require(data, 'report_path')
        if not isinstance(report_path, str) or not report_path:
            raise ConfigError('report_path', "expected a non-empty path string")
        csv_path = data.get('csv_path')
        if csv_path is not None and not isinstance(csv_path, str):
            raise ConfigError('csv_path', "expected a path string")

        workers = data.get('workers')
        if workers is not None and (_unsigned(workers, 'workers') < 1):
            raise ConfigError('workers', "at least one worker is required")

        timestamps = data.get('timestamps', False)
        if not isinstance(timestamps, bool):
            raise ConfigError('timestamps', "expected true or false")

        second_base = data.get('second_base')
        return cls(
            seed=seed,
            trials=trials,
            dims=list(dims),
            field=field_name,
            alpha_grid=grid,
            profile=profile,
            mixing=mixing,
            report_path=report_path,
            checks=list(checks),
            tolerance=float(tolerance),
            realization=realization,
            inflation=float(inflation),
            base=_base_descriptor(data.get('base', {'kind': 'standard'}), 'base'),
            second_base=_base_descriptor(second_base, 'second_base') if second_base is not None else None,
            companion_profile=companion_profile,
            companion_mixing=companion_mixing,
            csv_path=csv_path,
            workers=workers,
            max_shrink_steps=_unsigned(data.get('max_shrink_steps', 500), 'max_shrink_steps'),
            timestamps=timestamps,
        )

    @staticmethod
    def _check_profile(descriptor: Any, grid: List[float], key: str, ordered_required: bool):
        if not isinstance(descriptor, dict):
            raise ConfigError(key, "expected an object with a 'kind'")
        if ordered_required and descriptor.get('ordered', True) is False:
            raise ConfigError(key, "this realization needs an ordered profile")
        try:
            AlphaProfile.from_descriptor(descriptor, grid)
        except (ProfileError, KeyError, TypeError, ValueError) as e:
            raise ConfigError(key, f"invalid profile: {e}") from e

    @staticmethod
    def _check_mixing(descriptor: Any, key: str):
        if not isinstance(descriptor, dict):
            raise ConfigError(key, "expected an object with a 'kind'")
        try:
            mix = MixingFunction.from_descriptor(descriptor)
            if mix.kind in ('constant', 'affine'):
                mix.t(1.0, None, None)
                mix.phase(1.0, None, None)
        except (MixingError, KeyError, TypeError, ValueError) as e:
            raise ConfigError(key, f"invalid mixing: {e}") from e
        if mix.kind == 'affine' and not all(math.isfinite(c) for c in mix.params['t']):
            raise ConfigError(key, f"affine mixing coefficients must be finite, got {mix.params['t']}")

    def with_overrides(self, seed: Optional[int] = None, trials: Optional[int] = None,
                       workers: Optional[int] = None) -> "CampaignConfig":
        """Apply command-line overrides."""
        changes = {}
        if seed is not None:
            changes['seed'] = _unsigned(seed, 'seed')
        if trials is not None:
            changes['trials'] = _unsigned(trials, 'trials')
        if workers is not None:
            if _unsigned(workers, 'workers') < 1:
                raise ConfigError('workers', "at least one worker is required")
            changes['workers'] = workers
        data = asdict(self)
        data.update(changes)
        return CampaignConfig(**data)

    def resolve_seed(self, env_config: Optional[Config] = None) -> int:
        """Config seed first, then OFIP_SEED."""
        if self.seed is not None:
            return self.seed
        if env_config is not None and env_config.SEED is not None:
            return env_config.SEED
        raise ConfigError('seed', "no seed in the config, on the command line, or in OFIP_SEED")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
