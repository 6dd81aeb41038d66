"""Dempster-Shafer evidence engine for SOTIF uncertainty analysis of LiDAR object detection."""

from .analysis import (
    AnalysisReport,
    ImpactLevel,
    ImpactThresholds,
    SensitivityResult,
    build_report,
    classify_impact,
    derive_thresholds,
    rank_sources,
    source_uncertainty,
    vbsa,
)
from .combination import CombinationRule, combine_many, conflict, dempster, yager
from .frame import Frame, SubsetMask, enumerate_subsets, intersect, make_frame, subset_from_labels
from .kernels import BACKEND
from .mass import MassFunction, UncertaintyInterval, belief, make_bpa, normalize, plausibility, uncertainty_interval
from .scenario import (
    DependencyGraph,
    ScenarioConfig,
    UncertaintySource,
    evidence_for,
    fuse_scenario,
    load_scenario,
    save_scenario,
    topological_order,
    validate_dag,
)

__version__ = "0.1.0"
