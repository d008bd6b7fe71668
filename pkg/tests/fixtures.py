"""Small hand-built group configurations shared by unit and acceptance tests."""

from groupevo.community import Group


def overlapping_anomaly():
    """Two overlapping groups at t=0; the larger one persists unchanged.

    The persisting group both continues and, together with its overlapping
    neighbour, covers the t=1 group, so the union rule also reports a merge.
    """
    a = Group.from_members(0, [1, 2, 3, 4, 5, 6])
    b = Group.from_members(0, [6, 7, 8])
    a2 = Group.from_members(1, [1, 2, 3, 4, 5, 6])
    nodes0 = set(a.members | b.members)
    nodes1 = set(a2.members) | {7, 8}
    return [a, b], [a2], nodes0, nodes1


def disjoint_stable():
    gi = [Group.from_members(0, range(0, 5)), Group.from_members(0, range(10, 16))]
    gj = [Group.from_members(1, range(0, 5)), Group.from_members(1, range(10, 16))]
    return gi, gj, set(range(20)), set(range(20))
