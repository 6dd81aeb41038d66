"""Impact classification and variance-based sensitivity analysis of sources.

Both analyses use the same one-at-a-time sweep: a single source walks
through its state domain while every other source stays at the scenario's
baseline assignment, and each configuration is fused and queried for the
belief and plausibility of every singleton outcome.

Percentiles and variances are evaluated in exact rational arithmetic on the
shortest decimal form of each input, then rounded once. This makes them
exactly permutation-invariant and returns 0.0 for constant sweeps.
"""

from __future__ import annotations

import enum
import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from .combination import CombinationRule
from .errors import DegenerateThresholds, EmptyInput, OutOfRange
from .mass import MassFunction, UncertaintyInterval, uncertainty_interval
from .scenario import ScenarioConfig, fuse_scenario

RANGE_TOL = 1e-9


class ImpactLevel(enum.IntEnum):
    LOW = 0
    MODERATE = 1
    HIGH = 2

    @property
    def label(self) -> str:
        return self.name.capitalize()

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class ImpactThresholds:
    tau1: float
    tau2: float

    def __post_init__(self) -> None:
        if self.tau1 == self.tau2:
            raise DegenerateThresholds(f"tau1 and tau2 coincide at {self.tau1!r}")
        if not 0.0 < self.tau1 < self.tau2 < 1.0:
            raise OutOfRange(f"thresholds must satisfy 0 < tau1 < tau2 < 1, got ({self.tau1}, {self.tau2})")


DEFAULT_THRESHOLDS = ImpactThresholds(0.2, 0.5)


@dataclass(frozen=True)
class SourceImpact:
    source: str
    max_u: float
    level: ImpactLevel


@dataclass(frozen=True)
class SensitivityResult:
    source: str
    outcomes: tuple[str, ...]
    var_bel: tuple[float, ...]
    var_pl: tuple[float, ...]

    @property
    def score(self) -> float:
        """Largest belief or plausibility variance over all outcomes."""
        return max(max(self.var_bel, default=0.0), max(self.var_pl, default=0.0))


@dataclass(frozen=True)
class AnalysisReport:
    title: str
    rule: CombinationRule
    order: tuple[str, ...]
    fused: MassFunction
    intervals: tuple[tuple[str, UncertaintyInterval], ...]
    impacts: tuple[SourceImpact, ...]
    ranking: tuple[SensitivityResult, ...]
    thresholds: ImpactThresholds
    thresholds_derived: bool

    def group(self, level: ImpactLevel) -> list[str]:
        return [i.source for i in self.impacts if i.level == level]


def _exact(x: float) -> Fraction:
    return Fraction(repr(float(x)))


def population_variance(values: Sequence[float]) -> float:
    """Population variance (divide by count); 0.0 for fewer than two values."""
    if len(values) < 2:
        return 0.0
    return float(statistics.pvariance([_exact(v) for v in values]))


def percentile(values: Sequence[float], p: float) -> float:
    """Linear interpolation between order statistics at index ``p * (n - 1)``."""
    ordered = sorted(_exact(v) for v in values)
    h = _exact(p) * (len(ordered) - 1)
    lo = math.floor(h)
    if lo + 1 >= len(ordered):
        return float(ordered[-1])
    return float(ordered[lo] + (h - lo) * (ordered[lo + 1] - ordered[lo]))


def derive_thresholds(max_us: Sequence[float]) -> ImpactThresholds:
    """Impact thresholds from the 25th and 75th percentiles of per-source maxima."""
    if not max_us:
        raise EmptyInput("no uncertainty values to derive thresholds from")
    tau1, tau2 = percentile(max_us, 0.25), percentile(max_us, 0.75)
    if tau1 == tau2:
        raise DegenerateThresholds(f"25th and 75th percentiles coincide at {tau1!r}")
    return ImpactThresholds(tau1, tau2)


def classify_impact(u: float, thresholds: ImpactThresholds = DEFAULT_THRESHOLDS) -> ImpactLevel:
    """Half-open bands: ``[0, tau1)`` Low, ``[tau1, tau2)`` Moderate, ``[tau2, 1]`` High."""
    if not -RANGE_TOL <= u <= 1.0 + RANGE_TOL:
        raise OutOfRange(f"uncertainty {u!r} outside [0, 1]")
    if u < thresholds.tau1:
        return ImpactLevel.LOW
    if u < thresholds.tau2:
        return ImpactLevel.MODERATE
    return ImpactLevel.HIGH


def singleton_intervals(m: MassFunction) -> list[tuple[str, UncertaintyInterval]]:
    return [(label, uncertainty_interval(m, m.frame.singleton(label))) for label in m.frame]


@dataclass(frozen=True)
class _Sweep:
    beliefs: tuple[tuple[float, ...], ...]  # [state][outcome]
    plausibilities: tuple[tuple[float, ...], ...]


def _sweep(config: ScenarioConfig, name: str, rule: CombinationRule | str) -> _Sweep:
    src = config.source(name)
    bels, pls = [], []
    for state in src.states:
        fused = fuse_scenario(config.with_assignment(name, state), rule)
        iv = [i for _, i in singleton_intervals(fused)]
        bels.append(tuple(i.belief for i in iv))
        pls.append(tuple(i.plausibility for i in iv))
    return _Sweep(tuple(bels), tuple(pls))


def _max_u(sweep: _Sweep) -> float:
    return max(p - b for bs, ps in zip(sweep.beliefs, sweep.plausibilities) for b, p in zip(bs, ps))


def _sensitivity(config: ScenarioConfig, name: str, sweep: _Sweep) -> SensitivityResult:
    outcomes = config.frame.elements
    var_bel = tuple(population_variance([row[j] for row in sweep.beliefs]) for j in range(len(outcomes)))
    var_pl = tuple(population_variance([row[j] for row in sweep.plausibilities]) for j in range(len(outcomes)))
    return SensitivityResult(name, outcomes, var_bel, var_pl)


def source_uncertainty(
    config: ScenarioConfig, name: str, rule: CombinationRule | str = CombinationRule.YAGER
) -> float:
    """Widest singleton interval ``Pl - Bel`` over the source's state sweep."""
    return _max_u(_sweep(config, name, rule))


def vbsa(
    config: ScenarioConfig, name: str, rule: CombinationRule | str = CombinationRule.YAGER
) -> SensitivityResult:
    return _sensitivity(config, name, _sweep(config, name, rule))


def _ranked(results: Sequence[SensitivityResult]) -> list[SensitivityResult]:
    return sorted(results, key=lambda r: (-r.score, r.source))


def rank_sources(
    config: ScenarioConfig, rule: CombinationRule | str = CombinationRule.YAGER
) -> list[SensitivityResult]:
    """VBSA for every source, highest score first, ties by name."""
    return _ranked([vbsa(config, name, rule) for name in config.sources])


def build_report(
    config: ScenarioConfig,
    rule: CombinationRule | str = CombinationRule.YAGER,
    thresholds: ImpactThresholds | Literal["derive"] = DEFAULT_THRESHOLDS,
) -> AnalysisReport:
    rule = CombinationRule.parse(rule)
    names = sorted(config.sources)
    sweeps = {name: _sweep(config, name, rule) for name in names}
    max_us = {name: _max_u(sweeps[name]) for name in names}
    derived = thresholds == "derive"
    if derived:
        thresholds = derive_thresholds([max_us[n] for n in names])
    impacts = tuple(SourceImpact(n, max_us[n], classify_impact(max_us[n], thresholds)) for n in names)
    ranking = tuple(_ranked([_sensitivity(config, n, sweeps[n]) for n in names]))
    fused = fuse_scenario(config, rule)
    return AnalysisReport(
        title=config.title,
        rule=rule,
        order=config.order,
        fused=fused,
        intervals=tuple(singleton_intervals(fused)),
        impacts=impacts,
        ranking=ranking,
        thresholds=thresholds,
        thresholds_derived=derived,
    )
