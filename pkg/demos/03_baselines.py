"""GED next to the union-overlap and joined-graph baselines.

The union baseline can label the same pair of groups twice when groups
overlap; the joined-graph baseline needs one extra clustering per boundary.
"""
from groupevo import GroupingConfig, analyze
from groupevo.asur import asur_events, find_anomalies
from groupevo.pipeline import compare
from groupevo.synthgen import random_scenario, synthesize
from groupevo.community import Group

data = synthesize(random_scenario(8, 15, k=4, seed=3, noise=0.2), 4)
analysis = analyze(data.network, GroupingConfig(k=4))

events = {
    "ged": analysis.ged_events(),
    "asur": analysis.asur_events(),
    "palla": [e for r in analysis.palla_results(GroupingConfig(k=4)) for e in r.events],
}
for method, evs in events.items():
    print(method, len(evs), "events")
for pair, counts in compare(events).items():
    print(pair, counts)

# %%
# Two overlapping groups, one of which survives unchanged: the union rule sees
# both a continuation and a merge for the same pair.
a = Group.from_members(0, [1, 2, 3, 4, 5, 6])
b = Group.from_members(0, [6, 7, 8])
a2 = Group.from_members(1, [1, 2, 3, 4, 5, 6])
for anomaly in find_anomalies(asur_events([a, b], [a2], range(1, 9), range(1, 9))):
    print(anomaly.as_dict())

# %%
containment = [round(r.containment_rate, 2) for r in analysis.palla_results(GroupingConfig(k=4))]
print("share of groups placed in a joined group, per boundary:", containment)
