from groupevo.community import Group
from groupevo.ged import EventRecord, EventType as E, build_chains, classify_timeframe_pair
from groupevo.synthgen import lifetime_scenario, synthesize
from groupevo.community import GroupingConfig, extract_all
from groupevo.pipeline import analyze


def test_single_forming_event_is_one_chain():
    (c,) = build_chains([EventRecord(0, None, 1, "x", E.FORMING)])
    assert [e.event for e in c.events] == [E.FORMING]


def test_three_frame_continuation():
    evs = [EventRecord(0, "a", 1, "b", E.CONTINUING), EventRecord(1, "b", 2, "c", E.CONTINUING)]
    (c,) = build_chains(evs)
    assert len(c) == 2 and c.seed_group == "a" and c.seed_timeframe == 0


def test_split_forks_and_merge_joins():
    evs = [EventRecord(0, "a", 1, "b1", E.SPLITTING), EventRecord(0, "a", 1, "b2", E.SPLITTING),
           EventRecord(1, "b1", 2, "m", E.MERGING), EventRecord(1, "b2", 2, "m", E.MERGING),
           EventRecord(2, "m", 3, None, E.DISSOLVING)]
    chains = build_chains(evs)
    assert len(chains) == 2
    for c in chains:
        assert [e.event for e in c.events] == [E.SPLITTING, E.MERGING, E.DISSOLVING]


def test_full_lifetime():
    data = synthesize(lifetime_scenario(4), 4)
    an = analyze(data.network, GroupingConfig(k=4))
    chains = build_chains(an.ged_events())
    seqs = sorted(tuple(str(e.event) for e in c.events) for c in chains)
    assert seqs == sorted([
        ("continuing",) * 5 + ("merging", "dissolving"),
        ("forming", "growing", "splitting", "continuing", "continuing", "merging", "dissolving"),
        ("forming", "growing", "splitting", "shrinking", "continuing", "merging", "dissolving"),
    ])
