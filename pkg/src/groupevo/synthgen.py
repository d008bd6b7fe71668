"""
Synthetic temporal networks with planted group events.

A scenario scripts what happens to named groups over a number of timeframes.
Every planted group is a clique (size > k, so CPM recovers it exactly when no
noise is added); groups are chained together by single bridge edges that never
close a triangle.  The generator emits an interaction log whose per-edge
message counts realise the snapshot weights, the window layout that slices it
back into the scripted timeframes, and the ground-truth event list in the same
`EventRecord` form the analysis produces.

Script events (``timeframe`` is the frame in which the change is visible)::

    {"timeframe": 0, "kind": "form", "group": "A", "size": 6}
    {"timeframe": 1, "kind": "grow", "group": "A", "add": 2}
    {"timeframe": 2, "kind": "shrink", "group": "A", "remove": 1}
    {"timeframe": 3, "kind": "split", "group": "A", "into": {"B": 5, "C": 6}}
    {"timeframe": 4, "kind": "merge", "groups": ["B", "C"], "into": "M", "add": 0}
    {"timeframe": 5, "kind": "dissolve", "group": "M"}

Groups not touched by an event continue unchanged.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path

import numpy as np

from .community import group_id
from .ged import EventRecord, EventType
from .tsn import InteractionRecord, TemporalNetwork, WindowConfig, build_timeframes

EPOCH = datetime(2020, 1, 1, tzinfo=timezone.utc)
KINDS = ("form", "grow", "shrink", "split", "merge", "dissolve", "continue")


@dataclass(frozen=True)
class ScriptedEvent:
    timeframe: int
    kind: str
    params: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, d: dict) -> "ScriptedEvent":
        d = dict(d)
        return cls(int(d.pop("timeframe")), d.pop("kind"), d)

    def to_dict(self) -> dict:
        return {"timeframe": self.timeframe, "kind": self.kind, **self.params}


@dataclass(frozen=True)
class Scenario:
    timeframes: int
    events: tuple = ()
    noise: float = 0.0
    seed: int = 0
    window_days: int = 30

    def __post_init__(self):
        if self.timeframes < 1:
            raise ValueError("a scenario needs at least one timeframe")
        if not 0 <= self.noise < 1:
            raise ValueError("noise must lie in [0, 1)")
        for e in self.events:
            if not 0 <= e.timeframe < self.timeframes:
                raise ValueError(f"event {e} outside timeframes 0..{self.timeframes - 1}")
            if e.kind not in KINDS:
                raise ValueError(f"unknown event kind {e.kind!r}")
            if e.timeframe == 0 and e.kind != "form":
                raise ValueError("only 'form' events are allowed in timeframe 0")

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        events = tuple(ScriptedEvent.from_dict(e) for e in d.get("events", ()))
        return cls(int(d["timeframes"]), events, float(d.get("noise", 0.0)),
                   int(d.get("seed", 0)), int(d.get("window_days", 30)))

    @classmethod
    def load(cls, path) -> "Scenario":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["events"] = [e.to_dict() for e in self.events]
        return d

    def save(self, path) -> Path:
        path = Path(path)
        path.write_text(json.dumps(self.to_dict(), indent=2))
        return path


@dataclass(frozen=True, eq=False)
class SyntheticData:
    records: list
    config: WindowConfig
    network: TemporalNetwork
    truth: list
    planted: list  # per timeframe: {name: frozenset(members)}


def _node(i: int) -> str:
    return f"n{i:05d}"


def _plant(scenario: Scenario, k: int):
    """Group membership per timeframe and the scripted transitions between them."""
    min_size = k + 1
    by_frame = [[] for _ in range(scenario.timeframes)]
    for e in scenario.events:
        by_frame[e.timeframe].append(e)

    counter = 0

    def fresh(n):
        nonlocal counter
        out = tuple(_node(counter + j) for j in range(n))
        counter += n
        return out

    def check(name, members):
        if len(members) < min_size:
            raise ValueError(f"group {name!r} would have {len(members)} members; "
                             f"planted groups need at least k+1={min_size}")

    frames, transitions = [], []
    state: dict = {}
    for t in range(scenario.timeframes):
        prev = dict(state)
        moves = []          # (kind, [prev names], new name or None)
        touched = set()

        def take(name):
            if name not in state:
                raise ValueError(f"timeframe {t}: no live group {name!r}")
            if name in touched:
                raise ValueError(f"timeframe {t}: group {name!r} changes twice")
            touched.add(name)
            return state.pop(name)

        def put(name, members):
            if name in state:
                raise ValueError(f"timeframe {t}: group {name!r} already exists")
            check(name, members)
            state[name] = members
            touched.add(name)

        for e in by_frame[t]:
            p = e.params
            if e.kind == "form":
                put(p["group"], fresh(int(p["size"])))
                moves.append(("forming", [], p["group"]))
            elif e.kind == "grow":
                members = take(p["group"])
                put(p["group"], members + fresh(int(p["add"])))
                moves.append(("growing", [p["group"]], p["group"]))
            elif e.kind == "shrink":
                members = take(p["group"])
                r = int(p["remove"])
                if r < 1:
                    raise ValueError("shrink needs remove >= 1")
                put(p["group"], members[:-r])
                moves.append(("shrinking", [p["group"]], p["group"]))
            elif e.kind == "split":
                members = take(p["group"])
                sizes = dict(p["into"])
                if len(sizes) < 2 or sum(sizes.values()) > len(members):
                    raise ValueError(f"timeframe {t}: bad split of {p['group']!r}: {sizes}")
                at = 0
                for name, n in sizes.items():
                    put(name, members[at:at + int(n)])
                    at += int(n)
                    moves.append(("splitting", [p["group"]], name))
            elif e.kind == "merge":
                names = list(p["groups"])
                if len(names) < 2:
                    raise ValueError("merge needs at least two groups")
                members = tuple(m for n in names for m in take(n))
                target = p["into"]
                put(target, members + fresh(int(p.get("add", 0))))
                for n in names:
                    moves.append(("merging", [n], target))
            elif e.kind == "dissolve":
                take(p["group"])
                moves.append(("dissolving", [p["group"]], None))
            elif e.kind == "continue" and p["group"] not in state:
                raise ValueError(f"timeframe {t}: no live group {p['group']!r}")
        if t > 0:
            for name in sorted(set(prev) & set(state) - touched):
                moves.append(("continuing", [name], name))
            transitions.append((prev, dict(state), moves))
        frames.append({n: frozenset(m) for n, m in state.items()})
    return frames, transitions


def _truth(frames, transitions) -> list[EventRecord]:
    out = []
    for t, (_, _, moves) in enumerate(transitions):
        before, after = frames[t], frames[t + 1]
        for kind, srcs, dst in moves:
            gid_to = group_id(t + 1, after[dst]) if dst is not None else None
            if not srcs:
                out.append(EventRecord(t, None, t + 1, gid_to, EventType(kind)))
            for s in srcs:
                out.append(EventRecord(t, group_id(t, before[s]), t + 1, gid_to, EventType(kind)))
    return sorted(set(out), key=EventRecord.key)


def _count(x: str, y: str) -> int:
    """Deterministic message count in 1..4 for a directed planted edge."""
    return 1 + (int(x[1:]) * 31 + int(y[1:]) * 17) % 4


def _edges(groups: dict, rng, noise: float) -> dict:
    edges = {}
    ordered = [sorted(groups[n]) for n in sorted(groups)]
    for members in ordered:
        for x in members:
            for y in members:
                if x != y:
                    edges[x, y] = _count(x, y)
    # bridge last member of one group to first of the next: no shared neighbours
    for a, b in zip(ordered, ordered[1:]):
        edges[a[-1], b[0]] = edges.get((a[-1], b[0]), 0) + 1
    if noise > 0 and edges:
        nodes = sorted({n for e in edges for n in e})
        rewired = {}
        for (x, y), c in sorted(edges.items()):
            if rng.random() < noise:
                z = nodes[rng.integers(len(nodes))]
                if z != x:
                    y = z
            rewired[x, y] = rewired.get((x, y), 0) + c
        edges = rewired
    return edges


def synthesize(scenario: Scenario, k: int) -> SyntheticData:
    frames, transitions = _plant(scenario, k)
    rng = np.random.default_rng(scenario.seed)
    window = timedelta(days=scenario.window_days)
    records = []
    for t, groups in enumerate(frames):
        start = EPOCH + t * window
        s = 0
        for (x, y), c in sorted(_edges(groups, rng, scenario.noise).items()):
            for _ in range(c):
                records.append(InteractionRecord(x, y, start + timedelta(seconds=s)))
                s += 1
        if start + timedelta(seconds=s) >= start + window:
            raise ValueError(f"timeframe {t}: too many interactions for a {scenario.window_days}-day window")
    config = WindowConfig(EPOCH, EPOCH + scenario.timeframes * window, window, window)
    network = build_timeframes(records, config)
    return SyntheticData(records, config, network, _truth(frames, transitions), frames)


def generate(scenario: Scenario, k: int) -> tuple[TemporalNetwork, list[EventRecord]]:
    """Snapshots realising the scenario and the exact expected event list."""
    data = synthesize(scenario, k)
    return data.network, data.truth


# --- ready-made scenarios ----------------------------------------------------

def _ev(t, kind, **params):
    return ScriptedEvent(t, kind, params)


def lifetime_scenario(k: int = 4, seed: int = 0) -> Scenario:
    """One group's lifetime over eight timeframes.

    It forms, grows, splits in two, the bigger part loses a node, both parts
    continue and then merge with a third group, and the merged group dissolves.
    """
    s = k + 1
    return Scenario(8, (
        _ev(0, "form", group="C", size=s + 1),
        _ev(1, "form", group="G", size=s + 3),
        _ev(2, "grow", group="G", add=4),
        _ev(3, "split", group="G", into={"A": s, "B": s + 2}),
        _ev(4, "shrink", group="B", remove=1),
        _ev(6, "merge", groups=["A", "B", "C"], into="M"),
        _ev(7, "dissolve", group="M"),
    ), seed=seed)


def single_event_scenario(kind: str, k: int = 4, seed: int = 0) -> Scenario:
    """Two-timeframe scenario exercising one GED event type."""
    s = k + 1
    base = [_ev(0, "form", group="A", size=s + 3), _ev(0, "form", group="B", size=s + 1)]
    second = {
        "continuing": [],
        "shrinking": [_ev(1, "shrink", group="A", remove=2)],
        "growing": [_ev(1, "grow", group="A", add=3)],
        "splitting": [_ev(1, "split", group="A", into={"A1": s + 1, "A2": s + 2})],
        "merging": [_ev(1, "merge", groups=["A", "B"], into="M")],
        "dissolving": [_ev(1, "dissolve", group="A")],
        "forming": [_ev(1, "form", group="F", size=s)],
    }
    if kind == "splitting":
        base[0] = _ev(0, "form", group="A", size=2 * s + 3)
    n = 3 if kind == "continuing" else 2
    return Scenario(n, tuple(base + second[kind]), seed=seed)


def random_scenario(timeframes: int, n_groups: int, k: int = 4, seed: int = 0,
                    noise: float = 0.0, max_size: int | None = None) -> Scenario:
    """Randomly scripted scenario with a roughly stable number of groups."""
    rng = np.random.default_rng(seed)
    lo = k + 1
    hi = max_size or k + 10
    events = []
    alive: dict = {}
    serial = 0

    def name():
        nonlocal serial
        serial += 1
        return f"g{serial}"

    for _ in range(n_groups):
        g, size = name(), int(rng.integers(lo, hi - 3))
        alive[g] = size
        events.append(_ev(0, "form", group=g, size=size))
    for t in range(1, timeframes):
        busy = set()
        for g in sorted(alive, key=lambda s: int(s[1:])):
            if g in busy or g not in alive:
                continue
            size = alive[g]
            r = rng.random()
            if r < 0.45:
                continue
            if r < 0.57 and size + 2 <= hi:
                add = int(rng.integers(1, 3))
                alive[g] = size + add
                events.append(_ev(t, "grow", group=g, add=add))
            elif r < 0.69 and size - 1 >= lo:
                rem = int(rng.integers(1, min(3, size - lo + 1)))
                alive[g] = size - rem
                events.append(_ev(t, "shrink", group=g, remove=rem))
            elif r < 0.77 and size >= 2 * lo:
                a, b = name(), name()
                sa = int(rng.integers(lo, size - lo + 1))
                del alive[g]
                alive[a], alive[b] = sa, size - sa
                busy.update((a, b))
                events.append(_ev(t, "split", group=g, into={a: sa, b: size - sa}))
            elif r < 0.87:
                partners = [h for h in alive if h != g and h not in busy
                            and alive[h] + size <= hi + lo]
                if not partners:
                    continue
                h = partners[int(rng.integers(len(partners)))]
                m = name()
                alive[m] = alive.pop(g) + alive.pop(h)
                busy.update((h, m))
                events.append(_ev(t, "merge", groups=[g, h], into=m))
            elif r < 0.95:
                del alive[g]
                events.append(_ev(t, "dissolve", group=g))
            busy.add(g)
        while len(alive) < n_groups:
            g, size = name(), int(rng.integers(lo, hi - 3))
            alive[g] = size
            events.append(_ev(t, "form", group=g, size=size))
    return Scenario(timeframes, tuple(events), noise=noise, seed=seed)
