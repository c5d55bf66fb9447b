"""
Randomized verification campaigns.

Every trial draws its inputs from a generator seeded by (seed, trial index),
evaluates the enabled checks and returns its records; aggregation walks the
trials in index order, so serial and threaded runs produce identical reports.
Failing checks are shrunk structurally toward zero or unit vector entries,
grid-endpoint levels, boundary mixings and unit scalars.
"""

import logging
import math
import threading
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from ofip.classical_space import (
    ClassicalInnerProduct,
    DependentVectorsError,
    NotOrthonormalError,
    OrthonormalSystem,
    gram_schmidt,
)
from ofip.fuzzy_structures import (
    BAND_TOLERANCE,
    AlphaProfile,
    FuzzyInnerProductTriple,
    FuzzyNormTriple,
    MixingFunction,
    derive_norm_triple,
    example_norm_triple,
    global_bound,
    make_adversarial_fip,
    make_general_fip,
    make_scaled_fip,
)
from ofip.utils.config import CampaignConfig, Config
from ofip.utils.data_processing import CacheManager, ReportFormatting
from ofip.utils.task_handler import TaskHandler
from ofip.verifier import (
    CHECK_IDS,
    QUASI_LINEARITY_ITEMS,
    CheckRecord,
    check_band,
    check_classical_polarization_bound,
    check_cross_alpha,
    check_defining_predicate,
    check_fuzzy_bessel,
    check_fuzzy_cauchy_schwarz,
    check_fuzzy_norm_properties,
    check_fuzzy_parallelogram,
    check_fuzzy_polarization,
    check_global_bound_corollaries,
    check_norm_bounds,
    check_orthogonality,
    check_quasi_linearity,
    check_zero_properties,
)

ENTRY_RANGE = 10.0
SPECIAL_SCALARS = (0.0, 1.0, -1.0, 1e-6, 1e6)
CORNER_KINDS = 8
_SCALAR_RANK = {0.0: 0, 1.0: 1, -1.0: 2}


@dataclass(frozen=True, eq=False)
class TrialInstance:
    """All inputs of one trial; `mixing_t` pins the mixing function to a constant when set."""

    index: int
    field: str
    dim: int
    alpha: float
    alpha2: float
    k: complex
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    system: OrthonormalSystem
    n_terms: int
    mixing_t: Optional[float] = None

    @property
    def is_complex(self) -> bool:
        return self.field == 'complex'

    def describe(self) -> Dict[str, Any]:
        return {
            'trial_index': self.index,
            'field': self.field,
            'dim': self.dim,
            'alpha': self.alpha,
            'alpha2': self.alpha2,
            'k': self.k,
            'x': self.x,
            'y': self.y,
            'z': self.z,
            'n_terms': self.n_terms,
            'system': self.system.vectors,
            'mixing_t': self.mixing_t,
        }


@dataclass(frozen=True)
class TrialContext:
    """The triples a trial of one dimension is evaluated against."""

    fip: FuzzyInnerProductTriple
    fnorm: Optional[FuzzyNormTriple]
    companion: Optional[FuzzyInnerProductTriple]
    companion_norm: Optional[FuzzyNormTriple]
    base: ClassicalInnerProduct
    bound: float
    norm_bound: Optional[float]
    example: FuzzyNormTriple


@dataclass(frozen=True)
class CheckGroup:
    """Check ids produced by one evaluation, and where it applies."""

    ids: Tuple[str, ...]
    run: Callable[[TrialContext, TrialInstance], List[CheckRecord]]
    simplified_only: bool = True
    real_only: bool = False
    plane_only: bool = False

    def applies(self, context: TrialContext, instance: TrialInstance) -> bool:
        if self.simplified_only and not context.fip.simplified:
            return False
        if self.real_only and instance.is_complex:
            return False
        if self.plane_only and (instance.is_complex or instance.dim != 2):
            return False
        return True


@dataclass
class CheckSummary:
    """Running aggregate of one check over the trials, in index order."""

    check_id: str
    trials: int = 0
    passes: int = 0
    worst: Optional[CheckRecord] = None
    worst_trial_index: Optional[int] = None
    first_failure: Optional[CheckRecord] = None
    first_failure_index: Optional[int] = None
    counterexample: Optional[Dict[str, Any]] = None

    @property
    def failed(self) -> bool:
        return self.passes < self.trials

    def add(self, index: int, record: CheckRecord):
        self.trials += 1
        if record.passed:
            self.passes += 1
        elif self.first_failure is None:
            self.first_failure, self.first_failure_index = record, index
        if self.worst is None or _severity(record) < _severity(self.worst):
            self.worst, self.worst_trial_index = record, index

    def to_dict(self) -> Dict[str, Any]:
        entry = {
            'check_id': self.check_id,
            'trials': self.trials,
            'passes': self.passes,
            'worst_slack': self.worst.slack if self.worst else None,
            'worst_relative_slack': _severity(self.worst) if self.worst else None,
            'worst_trial_index': self.worst_trial_index,
            'worst_inputs': self.worst.inputs if self.worst else None,
        }
        if self.counterexample is not None:
            entry['counterexample'] = self.counterexample
        return entry


def _severity(record: CheckRecord) -> float:
    """Relative slack; failures raised as errors rank below every finite slack."""
    if 'error' in record.details:
        return -math.inf
    return record.relative_slack


def record_payload(record: CheckRecord) -> Dict[str, Any]:
    return {
        'lhs': record.lhs,
        'rhs': record.rhs,
        'lower': record.lower,
        'slack': record.slack,
        'relative_slack': _severity(record),
        'passed': record.passed,
        'details': record.details,
    }


@dataclass
class CampaignReport:
    """The outcome of a campaign, serializable to the JSON report schema."""

    config_echo: Dict[str, Any]
    seed: int
    trials: int
    checks: List[CheckSummary] = field(default_factory=list)
    started: Optional[str] = None
    finished: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(not summary.failed for summary in self.checks)

    @property
    def failing_checks(self) -> List[str]:
        return [summary.check_id for summary in self.checks if summary.failed]

    def summary(self, check_id: str) -> CheckSummary:
        for summary in self.checks:
            if summary.check_id == check_id:
                return summary
        raise KeyError(check_id)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'config_echo': self.config_echo,
            'seed': self.seed,
            'trials': self.trials,
            'started': self.started,
            'finished': self.finished,
            'passed': self.passed,
            'checks': [summary.to_dict() for summary in self.checks],
        }

    def to_json(self) -> str:
        return ReportFormatting.to_json(self.to_dict())

    def to_csv(self) -> str:
        return ReportFormatting.to_csv([summary.to_dict() for summary in self.checks])

    def save(self, report_path: Path, csv_path: Optional[Path] = None, backup_dir: Optional[Path] = None):
        """Write the JSON report and CSV summary atomically, backing up earlier reports."""
        report_path = Path(report_path)
        csv_path = Path(csv_path) if csv_path else report_path.with_suffix('.csv')
        backup_dir = Path(backup_dir) if backup_dir else report_path.parent / 'backups'
        for path in (report_path, csv_path):
            CacheManager.rotating_backup_file(str(path), str(backup_dir))
        CacheManager.atomic_write_text(str(report_path), self.to_json())
        CacheManager.atomic_write_text(str(csv_path), self.to_csv())
        return report_path, csv_path


def _with_entry(vector: np.ndarray, j: int, value) -> np.ndarray:
    vector = vector.copy()
    vector[j] = value
    return vector


def _unit_like(entry) -> float:
    real = float(np.real(entry))
    return -1.0 if real < 0 else 1.0


class CounterexampleShrinker:
    """Greedy structural shrinking that keeps a check failing in the same way."""

    def __init__(self, runner: "CampaignRunner", max_steps: int = 500):
        self.runner = runner
        self.max_steps = max_steps
        self.logger = logging.getLogger(__name__)

    def shrink(self, check_id: str, instance: TrialInstance,
               record: CheckRecord) -> Tuple[TrialInstance, CheckRecord, int]:
        raised = 'error' in record.details
        steps = 0
        while steps < self.max_steps:
            for candidate in self._candidates(instance):
                result = self.runner.evaluate_check(check_id, candidate)
                if result is not None and not result.passed and ('error' in result.details) == raised:
                    instance, record = candidate, result
                    steps += 1
                    break
            else:
                break
        return instance, record, steps

    def _candidates(self, instance: TrialInstance) -> Iterator[TrialInstance]:
        vectors = ('x', 'y', 'z')
        for name in vectors:
            vector = getattr(instance, name)
            if np.any(vector):
                yield replace(instance, **{name: np.zeros_like(vector)})

        for name in vectors:
            vector = getattr(instance, name)
            for j, entry in enumerate(vector):
                if entry == 0:
                    continue
                yield replace(instance, **{name: _with_entry(vector, j, 0)})
                if entry in (1, -1):
                    continue
                unit = _unit_like(entry)
                yield replace(instance, **{name: _with_entry(vector, j, unit)})
                yield replace(instance, **{name: _with_entry(vector, j, -unit)})
                if abs(entry) > 1:
                    yield replace(instance, **{name: _with_entry(vector, j, entry / 2)})

        grid = self.runner.grid
        for name in ('alpha', 'alpha2'):
            if getattr(instance, name) not in (grid[0], grid[-1]):
                yield replace(instance, **{name: grid[0]})
                yield replace(instance, **{name: grid[-1]})

        if instance.mixing_t is None and self.runner.config.realization != 'adversarial':
            yield replace(instance, mixing_t=0.0)
            yield replace(instance, mixing_t=1.0)

        rank = _SCALAR_RANK.get(instance.k, len(_SCALAR_RANK))
        for target, target_rank in _SCALAR_RANK.items():
            if target_rank < rank:
                yield replace(instance, k=target)

        if instance.n_terms > 1:
            yield replace(instance, n_terms=1)


class CampaignRunner:
    """Draw trials, evaluate the enabled checks, aggregate and shrink failures."""

    def __init__(self, config: CampaignConfig, seed: int, workers: int = 1):
        self.config = config
        self.seed = seed
        self.workers = workers
        self.logger = logging.getLogger(__name__)

        self.grid = tuple(config.alpha_grid)
        self.profile = AlphaProfile.from_descriptor(config.profile, self.grid)
        self.companion_profile = AlphaProfile.from_descriptor(
            config.companion_profile or config.profile, self.grid)
        self.mixing = MixingFunction.from_descriptor(config.mixing, seed)
        self.companion_mixing = MixingFunction.from_descriptor(config.companion_mixing, seed)
        self.example = example_norm_triple(self.grid, simplified=True)

        self.enabled = [check_id for check_id in CHECK_IDS if check_id in set(config.checks)]
        self.groups = self._check_groups()
        self._group_of = {check_id: group for group in self.groups for check_id in group.ids}
        self._contexts: Dict[Tuple[int, Optional[float]], TrialContext] = {}
        self._lock = threading.Lock()
        self.shrinker = CounterexampleShrinker(self, config.max_shrink_steps)

    def _check_groups(self) -> List[CheckGroup]:
        tol = self.config.tolerance
        groups = [
            CheckGroup(('defining_predicate',),
                       lambda c, t: [check_defining_predicate(c.fip, t.alpha, t.x, t.y, tol)],
                       simplified_only=False),
            CheckGroup(('band',),
                       lambda c, t: [check_band(c.fip, t.alpha, t.x, t.y, min(tol, BAND_TOLERANCE))],
                       simplified_only=False),
            CheckGroup(('orthogonality',),
                       lambda c, t: [check_orthogonality(c.fip, t.alpha, t.x, t.y, tol)]),
            CheckGroup(('zero_properties',),
                       lambda c, t: [check_zero_properties(c.fip, t.alpha, t.x, t.y, tol)],
                       simplified_only=False),
            CheckGroup(('norm_bounds',),
                       lambda c, t: [check_norm_bounds(c.fip, t.alpha, t.x, c.fnorm, tol)]),
            CheckGroup(('cauchy_schwarz',),
                       lambda c, t: [check_fuzzy_cauchy_schwarz(c.fip, t.alpha, t.x, t.y, c.fnorm, tol)]),
            CheckGroup(('parallelogram',),
                       lambda c, t: [check_fuzzy_parallelogram(c.fip, t.alpha, t.x, t.y, c.fnorm, tol)]),
            CheckGroup(('polarization',),
                       lambda c, t: [check_fuzzy_polarization(c.fip, t.alpha, t.x, t.y, c.fnorm, tol)],
                       real_only=True),
            CheckGroup(('classical_polarization_bound',),
                       lambda c, t: [check_classical_polarization_bound(c.base, t.x, t.y, tol)],
                       simplified_only=False),
            CheckGroup(('bessel',),
                       lambda c, t: [check_fuzzy_bessel(c.fip, t.system, t.x, t.alpha, t.n_terms, c.fnorm, tol)]),
        ]
        for item in QUASI_LINEARITY_ITEMS:
            groups.append(CheckGroup(
                (f'quasi_linearity_{item}',),
                lambda c, t, item=item: [check_quasi_linearity(c.fip, item, t.alpha, t.k, t.x, t.y, t.z, tol)]))
        for item in QUASI_LINEARITY_ITEMS:
            groups.append(CheckGroup(
                (f'global_bound_{item}',),
                lambda c, t, item=item: [check_global_bound_corollaries(
                    c.fip, c.bound, item, t.alpha, t.k, t.x, t.y, t.z, tol)]))
        groups.extend([
            CheckGroup(('norm_definiteness', 'norm_triangle', 'norm_homogeneity'),
                       lambda c, t: check_fuzzy_norm_properties(c.fnorm, t.alpha, t.k, t.x, t.y, 'norm', tol)),
            CheckGroup(('norm_global_bound_1',),
                       lambda c, t: [check_global_bound_corollaries(
                           c.fnorm, c.norm_bound, 1, t.alpha, t.k, t.x, t.y, tolerance=tol)]),
            CheckGroup(('norm_global_bound_2',),
                       lambda c, t: [check_global_bound_corollaries(
                           c.fnorm, c.norm_bound, 2, t.alpha, t.k, t.x, t.y, tolerance=tol)]),
            CheckGroup(('cross_alpha',),
                       lambda c, t: [check_cross_alpha(c.fip, t.alpha, t.alpha2, t.x, t.y, tolerance=tol)]),
            CheckGroup(('cross_alpha_pair',),
                       lambda c, t: [check_cross_alpha(c.fip, t.alpha, t.alpha2, t.x, t.y, c.companion, tol)]),
            CheckGroup(('norm_cross_alpha',),
                       lambda c, t: [check_cross_alpha(c.fnorm, t.alpha, t.alpha2, t.x, tolerance=tol)]),
            CheckGroup(('norm_cross_alpha_pair',),
                       lambda c, t: [check_cross_alpha(c.fnorm, t.alpha, t.alpha2, t.x,
                                                       other=c.companion_norm, tolerance=tol)]),
            CheckGroup(('example_norm_definiteness', 'example_norm_triangle', 'example_norm_homogeneity'),
                       lambda c, t: check_fuzzy_norm_properties(c.example, t.alpha, t.k, t.x, t.y,
                                                                'example_norm', tol),
                       simplified_only=False, plane_only=True),
        ])
        return groups

    def _base(self, descriptor: Dict[str, Any], dim: int) -> ClassicalInnerProduct:
        if descriptor['kind'] == 'weighted':
            return ClassicalInnerProduct.weighted(np.resize(descriptor['weights'], dim).tolist())
        return ClassicalInnerProduct.standard()

    def context(self, dim: int, mixing_t: Optional[float] = None) -> TrialContext:
        key = (dim, mixing_t)
        with self._lock:
            context = self._contexts.get(key)
            if context is None:
                context = self._build_context(dim, mixing_t)
                self._contexts[key] = context
        return context

    def _build_context(self, dim: int, mixing_t: Optional[float]) -> TrialContext:
        base = self._base(self.config.base, dim)
        mixing = MixingFunction.constant(mixing_t) if mixing_t is not None else self.mixing
        realization = self.config.realization
        if realization == 'scaled':
            fip = make_scaled_fip(base, self.profile, mixing)
        elif realization == 'general':
            second = self._base(self.config.second_base or self.config.base, dim)
            fip = make_general_fip(base, second, self.profile, mixing)
        else:
            fip = make_adversarial_fip(base, self.profile, self.config.inflation)
        fnorm = derive_norm_triple(fip) if fip.simplified else None
        # the pair checks only run on simplified triples
        companion = None
        if fip.simplified:
            companion = make_scaled_fip(base, self.companion_profile, self.companion_mixing, name='companion')
        self.logger.debug(f"Built {fip.name} triples for dimension {dim} (mixing override {mixing_t})")
        return TrialContext(
            fip=fip,
            fnorm=fnorm,
            companion=companion,
            companion_norm=derive_norm_triple(companion) if companion else None,
            base=base,
            bound=global_bound(self.profile),
            norm_bound=global_bound(fnorm.profile) if fnorm else None,
            example=self.example,
        )

    @staticmethod
    def _draw_vector(rng: np.random.Generator, dim: int, field_name: str) -> np.ndarray:
        vector = rng.uniform(-ENTRY_RANGE, ENTRY_RANGE, dim)
        if field_name == 'complex':
            vector = vector + 1j * rng.uniform(-ENTRY_RANGE, ENTRY_RANGE, dim)
        return vector

    @staticmethod
    def _draw_scalar(rng: np.random.Generator, field_name: str):
        choice = int(rng.integers(len(SPECIAL_SCALARS) + 1))
        if choice < len(SPECIAL_SCALARS):
            return SPECIAL_SCALARS[choice]
        k = float(rng.uniform(-ENTRY_RANGE, ENTRY_RANGE))
        if field_name == 'complex':
            return complex(k, float(rng.uniform(-ENTRY_RANGE, ENTRY_RANGE)))
        return k

    def _draw_system(self, rng: np.random.Generator, dim: int, field_name: str) -> OrthonormalSystem:
        base = self._base(self.config.base, dim)
        try:
            return gram_schmidt([self._draw_vector(rng, dim, field_name) for _ in range(dim)], base)
        except (DependentVectorsError, NotOrthonormalError):
            weights = np.asarray(base.weights) if base.weights else np.ones(dim)
            return OrthonormalSystem(np.diag(1.0 / np.sqrt(weights)), base)

    def draw_trial(self, index: int) -> TrialInstance:
        """Inputs of trial `index`, a pure function of (seed, index)."""
        rng = np.random.default_rng([self.seed, index])
        field_name = self.config.field
        if field_name == 'both':
            field_name = ('real', 'complex')[int(rng.integers(2))]
        dim = int(self.config.dims[int(rng.integers(len(self.config.dims)))])
        alpha = self.grid[int(rng.integers(len(self.grid)))]
        alpha2 = self.grid[int(rng.integers(len(self.grid)))]
        x, y, z = (self._draw_vector(rng, dim, field_name) for _ in range(3))

        corner = int(rng.integers(CORNER_KINDS))
        if corner == 0:
            x = np.zeros_like(x)
        elif corner == 1:
            i, j = (int(v) for v in rng.integers(dim, size=2))
            basis = np.eye(dim, dtype=x.dtype)
            x, y = basis[i].copy(), basis[j].copy()
        elif corner == 2:
            y = x.copy()
        elif corner == 3:
            y = np.zeros_like(y)

        k = self._draw_scalar(rng, field_name)
        system = self._draw_system(rng, dim, field_name)
        n_terms = int(rng.integers(1, dim + 1))
        return TrialInstance(index, field_name, dim, alpha, alpha2, k, x, y, z, system, n_terms)

    def _error_record(self, check_id: str, instance: TrialInstance, error: Exception) -> CheckRecord:
        return CheckRecord(check_id, instance.describe(), 0.0, 0.0, -math.inf, False,
                           self.config.tolerance, None, {'error': f"{type(error).__name__}: {error}"})

    def _run_group(self, group: CheckGroup, instance: TrialInstance) -> Optional[List[CheckRecord]]:
        context = self.context(instance.dim, instance.mixing_t)
        if not group.applies(context, instance):
            return None
        try:
            return group.run(context, instance)
        except Exception as e:
            self.logger.warning(f"Checks {', '.join(group.ids)} raised on trial {instance.index}: {e}")
            return [self._error_record(check_id, instance, e) for check_id in group.ids]

    def evaluate(self, instance: TrialInstance) -> List[CheckRecord]:
        """Records of every enabled, applicable check on one trial."""
        enabled = set(self.enabled)
        records = []
        for group in self.groups:
            if not enabled.intersection(group.ids):
                continue
            results = self._run_group(group, instance)
            if results:
                records.extend(r for r in results if r.check_id in enabled)
        return records

    def evaluate_check(self, check_id: str, instance: TrialInstance) -> Optional[CheckRecord]:
        """The record of a single check, or None when it does not apply."""
        results = self._run_group(self._group_of[check_id], instance)
        if not results:
            return None
        return next((r for r in results if r.check_id == check_id), None)

    def _run_trial(self, index: int) -> List[CheckRecord]:
        instance = self.draw_trial(index)
        records = self.evaluate(instance)
        self.logger.debug(f"Trial {index}: {sum(r.passed for r in records)}/{len(records)} checks passed")
        return records

    def _shrink(self, summary: CheckSummary):
        instance = self.draw_trial(summary.first_failure_index)
        shrunk, record, steps = self.shrinker.shrink(summary.check_id, instance, summary.first_failure)
        self.logger.info(f"Shrunk counterexample for {summary.check_id} in {steps} steps")
        summary.counterexample = {
            'trial_index': summary.first_failure_index,
            'inputs': shrunk.describe(),
            'record': record_payload(record),
            'shrink_steps': steps,
        }

    def run(self) -> CampaignReport:
        timestamps = self.config.timestamps
        started = datetime.now(timezone.utc).isoformat() if timestamps else None
        self.logger.info(
            f"Starting campaign: {self.config.trials} trials, seed {self.seed}, "
            f"{len(self.enabled)} checks, {self.workers} worker(s)"
        )

        with TaskHandler(self.workers) as handler:
            results = handler.map_ordered(self._run_trial, range(self.config.trials))

        summaries = {check_id: CheckSummary(check_id) for check_id in self.enabled}
        for index, records in enumerate(results):
            for record in records:
                summaries[record.check_id].add(index, record)

        for summary in summaries.values():
            if summary.failed:
                self.logger.warning(
                    f"Check {summary.check_id} failed on {summary.trials - summary.passes} "
                    f"of {summary.trials} trials"
                )
                self._shrink(summary)

        report = CampaignReport(
            config_echo=config_echo(self.config),
            seed=self.seed,
            trials=self.config.trials,
            checks=list(summaries.values()),
            started=started,
            finished=datetime.now(timezone.utc).isoformat() if timestamps else None,
        )
        self.logger.info(ReportFormatting.summary_line(report.to_dict()))
        return report


def config_echo(config: CampaignConfig) -> Dict[str, Any]:
    """The config as reported; the worker count is left out so it cannot change the report."""
    echo = config.to_dict()
    echo.pop('workers', None)
    return echo


def run_campaign(config: CampaignConfig, seed: Optional[int] = None, workers: Optional[int] = None,
                 env_config: Optional[Config] = None) -> CampaignReport:
    """Run a campaign; `seed` overrides the config, which overrides OFIP_SEED."""
    if seed is not None:
        config = config.with_overrides(seed=seed)
    resolved_seed = config.resolve_seed(env_config)
    if config.seed is None:
        config = config.with_overrides(seed=resolved_seed)
    if workers is None:
        workers = config.workers or (env_config.WORKERS if env_config else 1)
    return CampaignRunner(config, resolved_seed, workers).run()
