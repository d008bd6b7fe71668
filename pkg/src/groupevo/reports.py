"""CSV / JSON / DOT writers for events, chains and summaries."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable

from .ged import EventRecord, EventType, EvolutionChain

EVENT_FIELDS = ("timeframe_from", "group_from", "timeframe_to", "group_to", "event",
                "inclusion_forward", "inclusion_backward")


def write_events_csv(events: Iterable[EventRecord], path) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(EVENT_FIELDS)
        for e in events:
            w.writerow([e.timeframe_from, e.group_from or "", e.timeframe_to, e.group_to or "",
                        str(e.event), repr(e.inclusion_forward), repr(e.inclusion_backward)])
    return path


def read_events_csv(path) -> list[EventRecord]:
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            ev = row["event"]
            out.append(EventRecord(
                int(row["timeframe_from"]), row["group_from"] or None,
                int(row["timeframe_to"]), row["group_to"] or None,
                EventType(ev) if ev in EventType._value2member_map_ else ev,
                float(row["inclusion_forward"]), float(row["inclusion_backward"])))
    return out


def write_json(obj, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(obj, indent=2, sort_keys=False) + "\n")
    return path


def write_events_json(events: Iterable[EventRecord], path, method: str | None = None) -> Path:
    rows = []
    for e in events:
        d = e.as_dict()
        if method:
            d["method"] = method
        rows.append(d)
    return write_json(rows, path)


def write_chains_json(chains: Iterable[EvolutionChain], path) -> Path:
    return write_json([c.as_dict() for c in chains], path)


def _node(timeframe, gid) -> str:
    return f'"{gid}@{timeframe}"'


def chains_dot(chains: Iterable[EvolutionChain]) -> str:
    """Digraph with one node per group@timeframe and event-labelled edges."""
    edges = set()
    for c in chains:
        for e in c.events:
            if e.group_from is None:
                src = f'"form:{e.group_to}@{e.timeframe_from}"'
            else:
                src = _node(e.timeframe_from, e.group_from)
            if e.group_to is None:
                dst = f'"dissolve:{e.group_from}@{e.timeframe_to}"'
            else:
                dst = _node(e.timeframe_to, e.group_to)
            edges.add((src, dst, str(e.event)))
    lines = ["digraph evolution {", "  rankdir=LR;"]
    for src, dst, label in sorted(edges):
        lines.append(f'  {src} -> {dst} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_chains_dot(chains: Iterable[EvolutionChain], path) -> Path:
    path = Path(path)
    path.write_text(chains_dot(chains))
    return path


def write_summary_csv(rows: list[dict], path) -> Path:
    path = Path(path)
    columns: list = []
    for r in rows:
        for k in r:
            if k not in columns:
                columns.append(k)
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)
    return path
