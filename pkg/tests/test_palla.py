import pytest

from groupevo.community import Group, GroupingConfig, extract_groups
from groupevo.ged import EventType as E
from groupevo.palla import jaccard, join_snapshots, joined_groups, palla_match, palla_run
from groupevo.tsn import BOTH, SnapshotGraph


def undirected(index, *cliques):
    edges = {}
    for c in cliques:
        for x in c:
            for y in c:
                if x != y:
                    edges[x, y] = 1.0
    out = {}
    for (x, y) in edges:
        deg = sum(1 for (a, _) in edges if a == x)
        out[x, y] = 1.0 / deg
    return SnapshotGraph(index, frozenset(n for c in cliques for n in c), out)


def test_join_snapshots_union():
    s0 = undirected(0, "abc")
    s1 = undirected(1, "cde")
    j = join_snapshots(s0, s1)
    assert set(j.graph.nodes) == set("abcde")
    assert j.graph.number_of_edges() == 6
    one_way = SnapshotGraph(1, frozenset("xy"), {("x", "y"): 1.0})
    assert join_snapshots(s0, one_way, BOTH).graph.number_of_edges() == 3


def test_identical_continues():
    s0, s1 = undirected(0, "abcd"), undirected(1, "abcd")
    g0, g1 = Group.from_members(0, "abcd"), Group.from_members(1, "abcd")
    res = palla_match([g0], [g1], joined_groups(join_snapshots(s0, s1), 3), 3)
    assert [(e.group_from, e.group_to, e.event) for e in res.events] == [(g0.id, g1.id, E.CONTINUING)]
    assert res.containment_rate == 1.0


def test_two_triangles_merge_into_k5():
    s0 = undirected(0, "abc", "cde")
    s1 = undirected(1, "abcde")
    cfg = GroupingConfig(k=3)
    gi, gj = extract_groups(s0, cfg), extract_groups(s1, cfg)
    assert len(gi) == 2 and len(gj) == 1
    res = palla_match(gi, gj, joined_groups(join_snapshots(s0, s1), 3), 3)
    kinds = sorted(str(e.event) for e in res.events)
    assert kinds == ["growing", "merging"]
    # equal Jaccard for both triangles: the lower id wins the match
    grow = next(e for e in res.events if e.event == E.GROWING)
    assert grow.group_from == min(g.id for g in gi)


def test_uncontained_group_dies():
    a = Group.from_members(0, "abcdef")
    joined = [Group.from_members(0, "abxyz")]
    res = palla_match([a], [], joined)
    assert res.uncontained == [a]
    assert res.containment_rate == 0.0
    assert [e.event for e in res.events] == [E.DISSOLVING]


def test_growth_and_shrink_labels():
    a = Group.from_members(0, "abcd")
    b = Group.from_members(1, "abcde")
    joined = [Group.from_members(0, "abcde")]
    assert palla_match([a], [b], joined).events[0].event == E.GROWING
    a2 = Group.from_members(0, "abcde")
    b2 = Group.from_members(1, "abcd")
    assert palla_match([a2], [b2], joined).events[0].event == E.SHRINKING


def test_joined_required_and_size_check():
    with pytest.raises(ValueError, match="joined grouping required"):
        palla_match([], [], None)
    with pytest.raises(ValueError):
        palla_match([], [], [Group.from_members(0, "ab")], k=3)


def test_deterministic():
    s0 = undirected(0, "abcd", "defg", "ghij")
    s1 = undirected(1, "abcdefg", "ghij")
    cfg = GroupingConfig(k=3)
    groups = [extract_groups(s0, cfg), extract_groups(s1, cfg)]
    r1 = palla_run(groups, [s0, s1], cfg)
    r2 = palla_run(groups, [s0, s1], cfg)
    assert [e.key() for e in r1[0].events] == [e.key() for e in r2[0].events]


def test_jaccard():
    assert jaccard(Group.from_members(0, "ab"), Group.from_members(1, "bc")) == pytest.approx(1 / 3)
