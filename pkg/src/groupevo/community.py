"""
Overlapping group extraction by clique percolation.

Groups are unions of k-cliques that can be reached from one another through
cliques sharing k-1 nodes.  The built-in provider symmetrizes the directed
snapshot and ignores weights; groups computed elsewhere can be imported from a
``timeframe,group_id,member`` CSV instead.
"""

from __future__ import annotations

import csv
import hashlib
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import networkx as nx

from .tsn import EITHER, SYMMETRIZE_MODES, SnapshotGraph, TemporalNetwork, symmetrize

CPM = "cpm"
COMPONENTS = "connected-components"


def group_id(timeframe: int, members: Iterable) -> str:
    """Content-derived id, stable across reruns."""
    key = "\x1f".join(str(m) for m in sorted(members))
    digest = hashlib.sha1(f"{timeframe}\x1e{key}".encode()).hexdigest()
    return f"T{timeframe}-{digest[:10]}"


@dataclass(frozen=True)
class Group:
    id: str
    timeframe: int
    members: frozenset

    def __post_init__(self):
        if not self.members:
            raise ValueError("a group needs at least one member")

    @classmethod
    def from_members(cls, timeframe: int, members: Iterable) -> "Group":
        members = frozenset(members)
        return cls(group_id(timeframe, members), timeframe, members)

    def __len__(self):
        return len(self.members)

    def sorted_members(self) -> list:
        return sorted(self.members)


@dataclass(frozen=True)
class GroupingConfig:
    method: str = CPM
    k: int = 6
    symmetrize_mode: str = EITHER

    def __post_init__(self):
        if self.method not in (CPM, COMPONENTS):
            raise ValueError(f"unknown grouping method {self.method!r}")
        if self.method == CPM and self.k < 3:
            raise ValueError("CPM needs k >= 3")
        if self.symmetrize_mode not in SYMMETRIZE_MODES:
            raise ValueError(f"unknown symmetrize mode {self.symmetrize_mode!r}")


def enumerate_k_cliques(g: nx.Graph, k: int) -> list[tuple]:
    """Every complete subgraph on exactly `k` nodes, as sorted tuples.

    Nodes are ranked by (degree, label) and each clique is grown only through
    higher-ranked neighbours, so every clique is produced once.
    """
    if k < 1:
        raise ValueError("k must be positive")
    rank = {v: r for r, v in enumerate(sorted(g.nodes, key=lambda v: (g.degree(v), v)))}
    fwd = {v: {u for u in g.adj[v] if u != v and rank[u] > rank[v]} for v in g.nodes}
    out: list[tuple] = []

    def expand(clique: list, cands: set):
        if len(clique) == k:
            out.append(tuple(sorted(clique)))
            return
        need = k - len(clique)
        for v in sorted(cands, key=rank.__getitem__):
            nxt = cands & fwd[v]
            if len(nxt) >= need - 1:
                clique.append(v)
                expand(clique, nxt)
                clique.pop()

    for v in g.nodes:
        if len(fwd[v]) >= k - 1:
            expand([v], fwd[v])
    out.sort()
    return out


def percolate(cliques: Iterable[Iterable], k: int) -> list[frozenset]:
    """Union k-cliques that share k-1 nodes; one member set per component."""
    cliques = [tuple(sorted(c)) for c in cliques]
    for c in cliques:
        if len(set(c)) != k:
            raise ValueError(f"clique {c!r} does not have exactly {k} nodes")
    parent = list(range(len(cliques)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    # cliques sharing a (k-1)-face are adjacent
    face_owner: dict = {}
    for i, c in enumerate(cliques):
        for drop in range(k):
            face = c[:drop] + c[drop + 1:]
            j = face_owner.setdefault(face, i)
            if j != i:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj

    comps: dict = defaultdict(set)
    for i, c in enumerate(cliques):
        comps[find(i)].update(c)
    return sorted((frozenset(m) for m in comps.values()), key=sorted)


def extract_groups(snapshot: SnapshotGraph, config: GroupingConfig = GroupingConfig()) -> list[Group]:
    """Groups of one snapshot, ordered by their sorted member lists."""
    if config.method == CPM:
        u = symmetrize(snapshot, config.symmetrize_mode)
        sets = percolate(enumerate_k_cliques(u, config.k), config.k)
    else:
        u = symmetrize(snapshot, EITHER)
        sets = [frozenset(c) for c in nx.connected_components(u)]
    return groups_from_sets(snapshot.index, sets)


def groups_from_sets(timeframe: int, member_sets: Iterable[Iterable]) -> list[Group]:
    """Wrap member sets from any grouping algorithm as `Group` objects."""
    uniq = {frozenset(m) for m in member_sets if m}
    return [Group.from_members(timeframe, m) for m in sorted(uniq, key=sorted)]


def extract_all(network: TemporalNetwork, config: GroupingConfig = GroupingConfig()) -> list[list[Group]]:
    return [extract_groups(s, config) for s in network]


# --- CSV import / export -----------------------------------------------------

def write_groups_csv(groups: Iterable[Iterable[Group]], path) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["timeframe", "group_id", "member"])
        for frame in groups:
            for g in frame:
                for m in g.sorted_members():
                    w.writerow([g.timeframe, g.id, m])
    return path


def read_groups_csv(path, n_timeframes: int | None = None) -> list[list[Group]]:
    """Load externally computed groups; ids from the file are kept as-is."""
    members: dict = defaultdict(set)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = {"timeframe", "group_id", "member"} - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"{path}: missing column(s) {sorted(missing)}")
        for row in reader:
            members[int(row["timeframe"]), row["group_id"]].add(row["member"])
    n = max((t for t, _ in members), default=-1) + 1
    if n_timeframes is not None:
        if n > n_timeframes:
            raise ValueError(f"{path}: group timeframe {n - 1} beyond the {n_timeframes} snapshots")
        n = n_timeframes
    frames: list[list[Group]] = [[] for _ in range(n)]
    for (t, gid), ms in members.items():
        frames[t].append(Group(gid, t, frozenset(ms)))
    for frame in frames:
        frame.sort(key=lambda g: (g.sorted_members(), g.id))
    return frames
