"""
End-to-end orchestration: ingestion, grouping, importance, and the three
evolution methods, with a threshold sweep that reuses everything that does not
depend on the thresholds.
"""

from __future__ import annotations

import csv
import logging
import time
from dataclasses import dataclass, field, fields
from datetime import timedelta
from pathlib import Path
from typing import Sequence

from . import reports
from .asur import AsurConfig, asur_run, find_anomalies
from .community import COMPONENTS, CPM, Group, GroupingConfig, extract_all, read_groups_csv
from .ged import (Diagnostics, GedConfig, boundary_inclusions, build_chains, classify_boundary,
                  count_events, sp_importance)
from .palla import palla_run
from .position import DEFAULT_EPSILON, global_sp
from .tsn import (EITHER, TemporalNetwork, WindowConfig, build_timeframes, parse_timestamp,
                  read_interactions)

log = logging.getLogger(__name__)

METHODS = ("ged", "asur", "palla")
IMPORTANCE_SOURCES = ("sp-group", "sp-global", "uniform")
THRESHOLD_GRID = (0.5, 0.6, 0.7, 0.8, 0.9, 1.0)


def as_fraction(v) -> float:
    """Accept thresholds as fractions or percentages (50 means 0.5)."""
    v = float(v)
    return v / 100.0 if v > 1.0 else v


@dataclass
class RunConfig:
    inputs: list = field(default_factory=list)
    window_length_days: float = 90.0
    window_step_days: float = 45.0
    horizon_start: str | None = None
    horizon_end: str | None = None
    grouping_method: str = CPM
    k: int = 6
    symmetrize_mode: str = EITHER
    groups_csv: str | None = None
    epsilon: float = DEFAULT_EPSILON
    importance: str = "sp-group"
    alpha: float = 0.5
    beta: float = 0.5
    absence_threshold: float = 0.10
    literal_match_direction: bool = False
    asur_threshold: float = 0.5
    palla_containment: float = 0.5
    methods: tuple = ("ged",)
    alphas: tuple = THRESHOLD_GRID
    betas: tuple = THRESHOLD_GRID
    output: str = "groupevo-out"

    def __post_init__(self):
        for name in ("alpha", "beta", "absence_threshold", "asur_threshold", "palla_containment"):
            setattr(self, name, as_fraction(getattr(self, name)))
        self.alphas = tuple(as_fraction(a) for a in self.alphas)
        self.betas = tuple(as_fraction(b) for b in self.betas)
        if isinstance(self.inputs, (str, Path)):
            self.inputs = [self.inputs]
        if isinstance(self.methods, str):
            self.methods = tuple(m.strip() for m in self.methods.split(",") if m.strip())
        self.methods = tuple(self.methods)
        if not self.methods:
            raise ValueError("select at least one method")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown method(s) {sorted(unknown)}; choose from {METHODS}")
        if self.grouping_method not in (CPM, COMPONENTS):
            raise ValueError(f"unknown grouping method {self.grouping_method!r}")

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config key(s) {sorted(unknown)}")
        return cls(**d)

    def to_dict(self) -> dict:
        return {f.name: (list(v) if isinstance(v := getattr(self, f.name), tuple) else v)
                for f in fields(self)}

    @property
    def grouping(self) -> GroupingConfig:
        return GroupingConfig(self.grouping_method, self.k, self.symmetrize_mode)

    @property
    def ged(self) -> GedConfig:
        return GedConfig(self.alpha, self.beta, self.absence_threshold, self.literal_match_direction)

    @property
    def asur(self) -> AsurConfig:
        return AsurConfig(self.asur_threshold)

    def window_config(self, records) -> WindowConfig:
        if self.horizon_start is None and self.horizon_end is None:
            return WindowConfig.covering(records, self.window_length_days, self.window_step_days)
        covering = WindowConfig.covering(records, self.window_length_days, self.window_step_days)
        start = parse_timestamp(self.horizon_start) if self.horizon_start else covering.horizon_start
        end = parse_timestamp(self.horizon_end) if self.horizon_end else covering.horizon_end
        return WindowConfig(start, end, timedelta(days=self.window_length_days),
                            timedelta(days=self.window_step_days))


def load_network(config: RunConfig) -> TemporalNetwork:
    if not config.inputs:
        raise ValueError("no input files given")
    records = []
    for path in config.inputs:
        records.extend(read_interactions(path))
    if not records:
        raise ValueError("no interactions")
    return build_timeframes(records, config.window_config(records))


def read_importance_csv(path) -> dict:
    """``timeframe,node,importance`` table as ``{(timeframe, node): value}``."""
    out = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out[int(row["timeframe"]), row["node"]] = float(row["importance"])
    return out


@dataclass
class Analysis:
    """Groups and member importance for a network, shared by every method and sweep cell."""

    network: TemporalNetwork
    groups: list
    importance: object
    diagnostics: Diagnostics = field(default_factory=Diagnostics)
    timings: dict = field(default_factory=dict)
    _inclusions: list | None = None

    def inclusions(self) -> list:
        if self._inclusions is None:
            t0 = time.perf_counter()
            self._inclusions = [
                boundary_inclusions(t, self.groups[t], self.groups[t + 1], self.importance)
                for t in range(len(self.groups) - 1)
            ]
            self.timings["inclusions"] = time.perf_counter() - t0
        return self._inclusions

    def ged_events(self, config: GedConfig = GedConfig(), diagnostics: Diagnostics | None = None):
        events = []
        for bi in self.inclusions():
            events.extend(classify_boundary(bi, config, diagnostics))
        return events

    def asur_events(self, config: AsurConfig = AsurConfig()):
        return asur_run(self.groups, self.network, config)

    def palla_results(self, grouping: GroupingConfig, containment: float = 0.5):
        return palla_run(self.groups, self.network, grouping, containment)


def make_importance(network: TemporalNetwork, source, epsilon: float, diagnostics: Diagnostics):
    if isinstance(source, dict):
        table = source

        def provider(g: Group):
            return {m: table[g.timeframe, m] for m in g.members if (g.timeframe, m) in table}
        return provider
    if source == "sp-group":
        return sp_importance(network, epsilon, diagnostics)
    if source == "uniform":
        return lambda g: dict.fromkeys(g.members, 1.0)
    if source == "sp-global":
        cache = {}

        def provider(g: Group):
            if g.timeframe not in cache:
                sp = global_sp(network[g.timeframe], epsilon)
                if not sp.converged:
                    diagnostics.nonconverged.append((g.timeframe, None, sp.residual))
                cache[g.timeframe] = sp.values
            return {m: cache[g.timeframe][m] for m in g.members}
        return provider
    if isinstance(source, (str, Path)) and Path(source).exists():
        return make_importance(network, read_importance_csv(source), epsilon, diagnostics)
    raise ValueError(f"unknown importance source {source!r}; "
                     f"use one of {IMPORTANCE_SOURCES} or a CSV path")


def analyze(network: TemporalNetwork, grouping: GroupingConfig = GroupingConfig(),
            importance="sp-group", epsilon: float = DEFAULT_EPSILON,
            groups: Sequence[Sequence[Group]] | None = None) -> Analysis:
    """Extract (or adopt) groups and set up member importance."""
    diagnostics = Diagnostics()
    t0 = time.perf_counter()
    if groups is None:
        groups = extract_all(network, grouping)
    else:
        groups = [list(f) for f in groups]
        groups += [[] for _ in range(len(network) - len(groups))]
        for frame in groups:
            for g in frame:
                stray = g.members - network[g.timeframe].nodes
                if stray:
                    raise ValueError(f"group {g.id} has members absent from snapshot "
                                     f"{g.timeframe}: {sorted(stray)[:5]}")
    grouping_time = time.perf_counter() - t0
    provider = make_importance(network, importance, epsilon, diagnostics)
    return Analysis(network, groups, provider, diagnostics, {"grouping": grouping_time})


def analysis_for(config: RunConfig, network: TemporalNetwork | None = None) -> Analysis:
    network = network if network is not None else load_network(config)
    groups = None
    if config.groups_csv:
        groups = read_groups_csv(config.groups_csv, len(network))
    return analyze(network, config.grouping, config.importance, config.epsilon, groups)


def summary_row(method: str, events, seconds: float, **extra) -> dict:
    row = {"method": method, **extra}
    row.update(count_events(events))
    row["seconds"] = round(seconds, 6)
    return row


def sweep(analysis: Analysis, alphas: Sequence[float] = THRESHOLD_GRID,
          betas: Sequence[float] = THRESHOLD_GRID, absence_threshold: float = 0.10,
          literal_match_direction: bool = False) -> list[dict]:
    """One summary row per (alpha, beta) grid cell."""
    analysis.inclusions()
    rows = []
    for a in alphas:
        for b in betas:
            t0 = time.perf_counter()
            cfg = GedConfig(as_fraction(a), as_fraction(b), absence_threshold, literal_match_direction)
            events = analysis.ged_events(cfg)
            rows.append(summary_row("ged", events, time.perf_counter() - t0,
                                    alpha=cfg.alpha, beta=cfg.beta))
    return rows


@dataclass
class RunResult:
    events: dict                  # method -> list[EventRecord]
    summary: list
    chains: list
    anomalies: list
    diagnostics: Diagnostics
    palla_containment: list
    outputs: list


def run(config: RunConfig, network: TemporalNetwork | None = None, write: bool = True) -> RunResult:
    """Run every selected method once and write the reports into ``config.output``."""
    analysis = analysis_for(config, network)
    events, summary, outputs = {}, [], []
    anomalies, chains, containment = [], [], []
    diag = Diagnostics()
    if "ged" in config.methods:
        t0 = time.perf_counter()
        events["ged"] = analysis.ged_events(config.ged, diag)
        summary.append(summary_row("ged", events["ged"], time.perf_counter() - t0
                                   + analysis.timings.get("inclusions", 0.0)))
        chains = build_chains(events["ged"])
    if "asur" in config.methods:
        t0 = time.perf_counter()
        events["asur"] = analysis.asur_events(config.asur)
        anomalies = find_anomalies(events["asur"])
        summary.append(summary_row("asur", events["asur"], time.perf_counter() - t0,
                                   anomalies=len(anomalies)))
    if "palla" in config.methods:
        t0 = time.perf_counter()
        results = analysis.palla_results(config.grouping, config.palla_containment)
        events["palla"] = [e for r in results for e in r.events]
        containment = [r.containment_rate for r in results]
        summary.append(summary_row("palla", events["palla"], time.perf_counter() - t0))
    diag.nonconverged = list(analysis.diagnostics.nonconverged)
    for (t, gid, res) in diag.nonconverged:
        log.warning("social position did not converge (timeframe %s, group %s, residual %.3g)",
                    t, gid, res)

    if write:
        out = Path(config.output)
        out.mkdir(parents=True, exist_ok=True)
        for method, evs in events.items():
            outputs.append(reports.write_events_csv(evs, out / f"events-{method}.csv"))
            outputs.append(reports.write_events_json(evs, out / f"events-{method}.json", method))
        if "ged" in events:
            outputs.append(reports.write_chains_json(chains, out / "chains-ged.json"))
            outputs.append(reports.write_chains_dot(chains, out / "chains-ged.dot"))
        if "asur" in events:
            outputs.append(reports.write_json([a.as_dict() for a in anomalies],
                                              out / "anomalies-asur.json"))
        outputs.append(reports.write_summary_csv(summary, out / "summary.csv"))
        outputs.append(reports.write_json({
            "nonconverged": [list(x) for x in diag.nonconverged],
            "unrelated_pairs": len(diag.unrelated_pairs),
            "palla_containment_rate": containment,
        }, out / "diagnostics.json"))
    return RunResult(events, summary, chains, anomalies, diag, containment, outputs)


def run_sweep(config: RunConfig, network: TemporalNetwork | None = None, write: bool = True) -> list[dict]:
    analysis = analysis_for(config, network)
    rows = sweep(analysis, config.alphas, config.betas, config.absence_threshold,
                 config.literal_match_direction)
    if write:
        out = Path(config.output)
        out.mkdir(parents=True, exist_ok=True)
        reports.write_summary_csv(rows, out / "sweep.csv")
    return rows


def compare(events: dict) -> dict:
    """Pairwise agreement between methods on (timeframe, from, to, event) keys."""
    keys = {m: {e.key() for e in evs} for m, evs in events.items()}
    out = {}
    methods = sorted(keys)
    for i, a in enumerate(methods):
        for b in methods[i + 1:]:
            out[f"{a}|{b}"] = {"both": len(keys[a] & keys[b]),
                               f"only_{a}": len(keys[a] - keys[b]),
                               f"only_{b}": len(keys[b] - keys[a])}
    return out
