"""Group evolution discovery in temporal social networks.

Build timeframe snapshots from an interaction log, extract overlapping groups
by clique percolation, weigh members by social position and classify how
groups continue, shrink, grow, split, merge, form and dissolve.  The Asur and
Palla event frameworks are included as baselines, and `synthgen` plants known
events for verification.
"""

from .asur import AsurConfig, asur_events, find_anomalies
from .community import (Group, GroupingConfig, enumerate_k_cliques, extract_groups, percolate,
                        read_groups_csv, write_groups_csv)
from .ged import (EventRecord, EventType, EvolutionChain, GedConfig, build_chains, classify_pair,
                  classify_timeframe_pair, count_matches, inclusion)
from .palla import join_snapshots, palla_match
from .pipeline import Analysis, RunConfig, analyze, run, sweep
from .position import commitment_from_graph, group_sp, social_position
from .synthgen import Scenario, generate
from .tsn import (InteractionRecord, SnapshotGraph, TemporalNetwork, WindowConfig,
                  build_timeframes, edge_weight, read_interactions, symmetrize)

__version__ = "0.1.0"
