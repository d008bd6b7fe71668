import pytest

from groupevo.synthgen import (KINDS, Scenario, ScriptedEvent, lifetime_scenario, generate,
                               random_scenario, single_event_scenario, synthesize)


def test_seed_only_matters_with_noise():
    a = synthesize(lifetime_scenario(4, seed=1), 4)
    b = synthesize(lifetime_scenario(4, seed=2), 4)
    assert a.records == b.records
    noisy = [synthesize(random_scenario(4, 5, 4, seed=s, noise=0.2), 4).records for s in (1, 1, 2)]
    assert noisy[0] == noisy[1] != noisy[2]


@pytest.mark.parametrize("kind", ["continuing", "shrinking", "growing", "splitting",
                                  "merging", "dissolving", "forming"])
def test_single_event_truth_contains_kind(kind):
    net, truth = generate(single_event_scenario(kind, 4), 4)
    assert kind in {str(e.event) for e in truth}
    assert len(net) >= 2


def test_validation():
    with pytest.raises(ValueError):
        Scenario(0)
    with pytest.raises(ValueError):
        Scenario(2, (ScriptedEvent(0, "grow", {"group": "A", "add": 1}),))
    with pytest.raises(ValueError):
        Scenario(2, (ScriptedEvent(5, "form", {"group": "A", "size": 5}),))
    with pytest.raises(ValueError):
        Scenario(2, (ScriptedEvent(0, "explode", {}),))
    with pytest.raises(ValueError):
        Scenario(2, noise=1.0)
    small = Scenario(1, (ScriptedEvent(0, "form", {"group": "A", "size": 4}),))
    with pytest.raises(ValueError, match="k\\+1"):
        synthesize(small, 4)
    assert set(KINDS) >= {"form", "grow", "shrink", "split", "merge", "dissolve", "continue"}


def test_json_round_trip(tmp_path):
    s = lifetime_scenario(5, seed=3)
    path = s.save(tmp_path / "s.json")
    assert Scenario.load(path) == s
