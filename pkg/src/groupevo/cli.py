"""Command-line front end: ``groupevo <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import reports
from .community import write_groups_csv
from .ged import build_chains
from .pipeline import (METHODS, RunConfig, analysis_for, compare, load_network, run, run_sweep)
from .synthgen import Scenario, lifetime_scenario, random_scenario, synthesize
from .tsn import write_interactions

log = logging.getLogger("groupevo")


def _floats(s: str) -> list[float]:
    return [float(x) for x in s.split(",") if x.strip()]


# flag dest -> RunConfig field; None values mean "not given"
_OVERRIDES = {
    "window_length": "window_length_days",
    "window_step": "window_step_days",
    "start": "horizon_start",
    "end": "horizon_end",
    "grouping": "grouping_method",
    "k": "k",
    "symmetrize": "symmetrize_mode",
    "groups_csv": "groups_csv",
    "epsilon": "epsilon",
    "importance": "importance",
    "alpha": "alpha",
    "beta": "beta",
    "absence_threshold": "absence_threshold",
    "asur_threshold": "asur_threshold",
    "palla_containment": "palla_containment",
    "methods": "methods",
    "alphas": "alphas",
    "betas": "betas",
    "output": "output",
}


def _add_run_options(p: argparse.ArgumentParser):
    p.add_argument("inputs", nargs="*", help="interaction CSV file(s): sender,recipient,timestamp")
    p.add_argument("--config", help="JSON run configuration; flags override its values")
    p.add_argument("-o", "--output", help="output directory")
    w = p.add_argument_group("windows")
    w.add_argument("--window-length", type=float, help="window length in days (default 90)")
    w.add_argument("--window-step", type=float, help="window step in days (default 45)")
    w.add_argument("--start", help="horizon start, ISO-8601 (default: first record)")
    w.add_argument("--end", help="horizon end, ISO-8601")
    g = p.add_argument_group("grouping")
    g.add_argument("--grouping", choices=["cpm", "connected-components"])
    g.add_argument("-k", type=int, help="CPM clique size (default 6)")
    g.add_argument("--symmetrize", choices=["either-direction", "both-directions"])
    g.add_argument("--groups-csv", help="import groups (timeframe,group_id,member) instead of CPM")
    m = p.add_argument_group("methods")
    m.add_argument("--epsilon", type=float, help="social position coefficient (default 0.9)")
    m.add_argument("--importance", help="sp-group | sp-global | uniform | CSV timeframe,node,importance")
    m.add_argument("--alpha", type=float, help="fraction or percent (50 == 0.5)")
    m.add_argument("--beta", type=float)
    m.add_argument("--absence-threshold", type=float)
    m.add_argument("--literal-match-direction", action="store_true", default=None,
                   help="count matches as the GED rules are literally worded")
    m.add_argument("--asur-threshold", type=float)
    m.add_argument("--palla-containment", type=float)
    m.add_argument("--methods", help=f"comma separated subset of {','.join(METHODS)}")


def config_from_args(args) -> RunConfig:
    d = {}
    if getattr(args, "config", None):
        d.update(json.loads(Path(args.config).read_text()))
    if getattr(args, "inputs", None):
        d["inputs"] = list(args.inputs)
    for flag, key in _OVERRIDES.items():
        v = getattr(args, flag, None)
        if v is not None:
            d[key] = _floats(v) if key in ("alphas", "betas") else v
    if getattr(args, "literal_match_direction", None):
        d["literal_match_direction"] = True
    return RunConfig.from_dict(d)


def cmd_ingest(args) -> int:
    cfg = config_from_args(args)
    net = load_network(cfg)
    rows = []
    for s in net:
        start, end = net.config.bounds(s.index)
        rows.append({"timeframe": s.index, "start": start.isoformat(), "end": end.isoformat(),
                     "nodes": len(s.nodes), "edges": len(s.edges)})
        print(f"{s.index:4d}  {start:%Y-%m-%d} .. {end:%Y-%m-%d}  "
              f"nodes={len(s.nodes):6d}  edges={len(s.edges):7d}")
    if args.output:
        out = Path(cfg.output)
        out.mkdir(parents=True, exist_ok=True)
        reports.write_summary_csv(rows, out / "snapshots.csv")
    return 0


def cmd_groups(args) -> int:
    cfg = config_from_args(args)
    analysis = analysis_for(cfg)
    out = Path(cfg.output)
    out.mkdir(parents=True, exist_ok=True)
    path = write_groups_csv(analysis.groups, out / "groups.csv")
    for t, frame in enumerate(analysis.groups):
        print(f"{t:4d}  groups={len(frame):5d}")
    print(f"wrote {path}")
    return 0


def _print_summary(rows):
    cols = []
    for r in rows:
        cols += [c for c in r if c != "seconds" and c not in cols]
    print("  ".join(f"{c:>10}" for c in cols))
    for r in rows:
        print("  ".join(f"{str(r.get(c, '')):>10}" for c in cols))


def cmd_events(args) -> int:
    cfg = config_from_args(args)
    result = run(cfg)
    _print_summary(result.summary)
    if result.diagnostics.nonconverged:
        print(f"warning: {len(result.diagnostics.nonconverged)} social position "
              "computation(s) did not converge", file=sys.stderr)
    return 0


def cmd_chains(args) -> int:
    cfg = config_from_args(args)
    analysis = analysis_for(cfg)
    chains = build_chains(analysis.ged_events(cfg.ged))
    out = Path(cfg.output)
    out.mkdir(parents=True, exist_ok=True)
    reports.write_chains_json(chains, out / "chains-ged.json")
    reports.write_chains_dot(chains, out / "chains-ged.dot")
    for c in chains:
        print(f"{c.seed_group}@{c.seed_timeframe}: " + " > ".join(str(e.event) for e in c.events))
    return 0


def cmd_sweep(args) -> int:
    cfg = config_from_args(args)
    rows = run_sweep(cfg)
    _print_summary(rows)
    return 0


def cmd_compare(args) -> int:
    cfg = config_from_args(args)
    if args.methods is None:
        cfg.methods = METHODS
    result = run(cfg)
    _print_summary(result.summary)
    diff = compare(result.events)
    reports.write_json(diff, Path(cfg.output) / "compare.json")
    for pair, counts in diff.items():
        print(pair, counts)
    return 0


def cmd_synth(args) -> int:
    if args.scenario:
        scenario = Scenario.load(args.scenario)
    elif args.preset == "lifetime":
        scenario = lifetime_scenario(args.k, seed=args.seed)
    else:
        scenario = random_scenario(args.timeframes, args.groups, args.k, seed=args.seed,
                                   noise=args.noise)
    data = synthesize(scenario, args.k)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    write_interactions(data.records, out / "interactions.csv")
    reports.write_events_csv(data.truth, out / "truth-events.csv")
    scenario.save(out / "scenario.json")
    run_cfg = RunConfig(inputs=[str(out / "interactions.csv")],
                        window_length_days=scenario.window_days,
                        window_step_days=scenario.window_days,
                        horizon_start=data.config.horizon_start.isoformat(),
                        horizon_end=data.config.horizon_end.isoformat(),
                        k=args.k, output=str(out / "analysis"))
    reports.write_json(run_cfg.to_dict(), out / "config.json")
    print(f"{len(data.records)} interactions over {len(data.network)} timeframes, "
          f"{len(data.truth)} planted events -> {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="groupevo", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, help_ in (
        ("ingest", cmd_ingest, "validate input and print snapshot statistics"),
        ("groups", cmd_groups, "extract groups and export them as CSV"),
        ("events", cmd_events, "run the selected methods once"),
        ("sweep", cmd_sweep, "GED summary for every (alpha, beta) pair"),
        ("chains", cmd_chains, "GED evolution chains as JSON and DOT"),
        ("compare", cmd_compare, "run several methods and diff their events"),
    ):
        p = sub.add_parser(name, help=help_)
        _add_run_options(p)
        p.set_defaults(func=fn)
        if name == "sweep":
            p.add_argument("--alphas", help="comma separated, e.g. 50,60,70,80,90,100")
            p.add_argument("--betas")
    p = sub.add_parser("synth", help="generate a synthetic network with planted events")
    p.add_argument("scenario", nargs="?", help="scenario JSON file")
    p.add_argument("--preset", choices=["lifetime", "random"], default="lifetime")
    p.add_argument("-k", type=int, default=4)
    p.add_argument("--timeframes", type=int, default=10)
    p.add_argument("--groups", type=int, default=20)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="synthetic")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"groupevo {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
