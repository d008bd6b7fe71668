"""
Social position: an iterative, PageRank-like importance score.

    SP_{n+1}(x) = (1 - eps) + eps * sum_y SP_n(y) * C(y -> x),   SP_0 = 1

`C` is row-stochastic over a node scope, so the scores always sum to the scope
size.  Sources with no outgoing commitment inside the scope spread it evenly
over the other scope members.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
import scipy.sparse as sps

from .community import Group
from .tsn import SnapshotGraph

DEFAULT_EPSILON = 0.9
DEFAULT_TOLERANCE = 1e-6
DEFAULT_MAX_ITERATIONS = 200


@dataclass(frozen=True, eq=False)
class CommitmentMatrix:
    """Row-stochastic commitment over `scope`.

    `matrix` holds the explicit rows (CSR, indexed like `scope`); rows flagged in
    `dangling` are implicit and spread uniformly over the rest of the scope.
    """

    scope: tuple
    matrix: sps.csr_matrix
    dangling: np.ndarray

    @property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.scope)}

    def dense(self) -> np.ndarray:
        n = len(self.scope)
        c = self.matrix.toarray()
        if n > 1:
            for i in np.flatnonzero(self.dangling):
                c[i, :] = 1.0 / (n - 1)
                c[i, i] = 0.0
        return c

    @property
    def entries(self) -> dict:
        c = self.dense()
        rows, cols = np.nonzero(c)
        return {(self.scope[i], self.scope[j]): float(c[i, j]) for i, j in zip(rows, cols)}


@dataclass(frozen=True)
class SpVector:
    scope: tuple
    values: dict
    epsilon: float
    iterations_used: int
    residual: float
    converged: bool = field(default=True)

    def __getitem__(self, node):
        return self.values[node]


def commitment_from_graph(g: SnapshotGraph, scope: Iterable | None = None) -> CommitmentMatrix:
    """Edge weights restricted to ``scope x scope`` and renormalized per source."""
    scope = tuple(sorted(g.nodes if scope is None else set(scope)))
    if not scope:
        raise ValueError("empty scope")
    index = {v: i for i, v in enumerate(scope)}
    missing = [v for v in scope if v not in g.nodes]
    if missing:
        raise ValueError(f"scope nodes not in snapshot {g.index}: {missing[:5]!r}")
    rows, cols, vals = [], [], []
    for (x, y), w in g.edges.items():
        i, j = index.get(x), index.get(y)
        if i is not None and j is not None:
            rows.append(i)
            cols.append(j)
            vals.append(w)
    n = len(scope)
    m = sps.csr_matrix((vals, (rows, cols)), shape=(n, n), dtype=float)
    sums = np.asarray(m.sum(axis=1)).ravel()
    dangling = sums <= 0
    scale = np.divide(1.0, sums, out=np.zeros(n), where=~dangling)
    m = sps.diags(scale) @ m
    return CommitmentMatrix(scope, sps.csr_matrix(m), dangling)


def social_position(c: CommitmentMatrix, epsilon: float = DEFAULT_EPSILON,
                    tolerance: float = DEFAULT_TOLERANCE,
                    max_iterations: int = DEFAULT_MAX_ITERATIONS) -> SpVector:
    """Iterate from SP_0 = 1 until the largest per-node change drops below `tolerance`.

    On hitting `max_iterations` the last iterate is returned with
    ``converged=False``.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    n = len(c.scope)
    if n == 1:
        return SpVector(c.scope, {c.scope[0]: 1.0}, epsilon, 0, 0.0)

    ct = c.matrix.T.tocsr()
    dangling = c.dangling.astype(float)
    sp = np.ones(n)
    residual = np.inf
    it = 0
    while it < max_iterations:
        inflow = ct @ sp
        if dangling.any():
            # each dangling source y gives sp[y]/(n-1) to everyone but itself
            d = dangling * sp / (n - 1)
            inflow += d.sum() - d
        nxt = (1.0 - epsilon) + epsilon * inflow
        residual = float(np.max(np.abs(nxt - sp)))
        sp = nxt
        it += 1
        if residual < tolerance:
            break
    return SpVector(c.scope, dict(zip(c.scope, sp.tolist())), epsilon, it, residual,
                    converged=residual < tolerance)


def group_sp(g: SnapshotGraph, group: Group, epsilon: float = DEFAULT_EPSILON,
             tolerance: float = DEFAULT_TOLERANCE,
             max_iterations: int = DEFAULT_MAX_ITERATIONS) -> SpVector:
    """Social position inside the group-induced subgraph of `g`."""
    return social_position(commitment_from_graph(g, group.members),
                           epsilon, tolerance, max_iterations)


def global_sp(g: SnapshotGraph, epsilon: float = DEFAULT_EPSILON,
              tolerance: float = DEFAULT_TOLERANCE,
              max_iterations: int = DEFAULT_MAX_ITERATIONS) -> SpVector:
    """Social position over the whole snapshot."""
    return social_position(commitment_from_graph(g), epsilon, tolerance, max_iterations)


def slice_sp(sp: SpVector, members: Iterable) -> SpVector:
    members = tuple(sorted(members))
    return SpVector(members, {m: sp.values[m] for m in members}, sp.epsilon,
                    sp.iterations_used, sp.residual, sp.converged)
