"""Monte-Carlo simulator for D2D and cognitive-radio D2D admission in a two-cell LTE network."""

__version__ = "0.1.0"

from .admission import AdmissionPolicy, AdmissionResult, StopReason, admit, evaluate_utility
from .channel import ChannelDraw, FadingParams, draw_channel, path_loss_cellular, path_loss_d2d
from .config import ConfigError, ScenarioConfig
from .engine import CdfSeries, MetricBundle, TtiRecord, aggregate, build_scene, run_tti, simulate, sweep
from .rate import CqiTable, default_cqi_table, efficiency_of_sinr, ergodic_rate, link_rate, utility
from .topology import ArrivalProcess, CellGeometry, NodeSet, Region, classify_region, deploy_nodes, draw_arrivals

__all__ = [
    "AdmissionPolicy", "AdmissionResult", "ArrivalProcess", "CdfSeries", "CellGeometry", "ChannelDraw",
    "ConfigError", "CqiTable", "FadingParams", "MetricBundle", "NodeSet", "Region", "ScenarioConfig",
    "StopReason", "TtiRecord", "admit", "aggregate", "build_scene", "classify_region", "default_cqi_table",
    "deploy_nodes", "draw_arrivals", "draw_channel", "efficiency_of_sinr", "ergodic_rate",
    "evaluate_utility", "link_rate", "path_loss_cellular", "path_loss_d2d", "run_tti", "simulate",
    "sweep", "utility",
]
