"""Supermatrix assembly, weighting, limits, and priority extraction.

The supermatrix is laid out over the network's full node order (goal,
cluster nodes, elements). Assembly places each context's priority vector
in the control node's column at the peer rows, so every nonzero column
is itself column-stochastic. Weighting rescales element columns by
cluster weights and identity-fills the columns of nodes that control
nothing (sinks keep their own mass). The limit is taken by repeated
squaring with a fixed-point test, falling back to a Cesaro average over
a detected power cycle when the chain is periodic.

Rank extraction reads the goal column of the limit. In control-layer
networks the limit is reducible: the goal column carries the cluster
nodes' stationary weights while each cluster's elements mix only among
themselves. Extraction then cascades -- cluster weight from the goal
column times the element's weight in its own cluster's limit block --
which is the goal-column reading taken through one level of the
hierarchy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ConsistencyGateFailed,
    ContextMismatch,
    DegenerateLimit,
    MissingContext,
    NoLimit,
    NotStochastic,
)
from .judgments import PriorityVector, consistency
from .network import DecisionNetwork, comparison_contexts

UNWEIGHTED = "unweighted"
WEIGHTED = "weighted"
LIMIT = "limit"

_ZERO = 1e-15


@dataclass(frozen=True)
class Supermatrix:
    index: tuple[str, ...]
    entries: np.ndarray
    stage: str

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        n = len(self.index)
        if a.shape != (n, n):
            raise ContextMismatch(f"supermatrix shape {a.shape} does not match index of size {n}")
        if np.any(a < -_ZERO):
            raise NotStochastic("supermatrix entries must be nonnegative")
        if self.stage in (WEIGHTED, LIMIT):
            sums = a.sum(axis=0)
            if np.max(np.abs(sums - 1.0)) > 1e-9:
                raise NotStochastic(
                    f"{self.stage} supermatrix must be column-stochastic "
                    f"(worst column sum {sums[np.argmax(np.abs(sums - 1.0))]:.12g})"
                )
        object.__setattr__(self, "entries", a)

    def position(self, node_id: str) -> int:
        return self.index.index(node_id)

    def column(self, node_id: str) -> np.ndarray:
        return self.entries[:, self.position(node_id)]


@dataclass(frozen=True)
class ClusterWeightMatrix:
    """Cluster-level weights. Index holds cluster ids, optionally the goal.

    Column j gives the weight of each row block's influence on block j;
    columns are stochastic. Entry (i, j) stays 0 when block i exerts no
    influence on block j.
    """

    index: tuple[str, ...]
    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        n = len(self.index)
        if a.shape != (n, n):
            raise ContextMismatch(f"cluster weight matrix shape {a.shape} does not match index of size {n}")
        if np.any(a < 0):
            raise NotStochastic("cluster weights must be nonnegative")
        sums = a.sum(axis=0)
        if np.max(np.abs(sums - 1.0)) > 1e-12:
            raise NotStochastic("cluster weight matrix columns must sum to 1")
        object.__setattr__(self, "entries", a)

    def weight(self, row_block: str, col_block: str) -> float:
        return float(self.entries[self.index.index(row_block), self.index.index(col_block)])


@dataclass(frozen=True)
class RankedElement:
    id: str
    cluster: str
    weight: float
    rank: int


@dataclass(frozen=True)
class RankedCriterion:
    id: str
    weight: float
    rank: int


@dataclass(frozen=True)
class ConvergenceInfo:
    mode: str  # "power" | "cesaro"
    iterations: int
    max_column_drift: float = 0.0


@dataclass(frozen=True)
class RankedPriorities:
    elements: tuple[RankedElement, ...]
    criteria: tuple[RankedCriterion, ...]

    def element_order(self) -> list[str]:
        return [e.id for e in sorted(self.elements, key=lambda e: e.rank)]


def _gate_check(net: DecisionNetwork, priorities: dict[str, PriorityVector]) -> None:
    contexts = comparison_contexts(net)
    missing = [c.id for c in contexts if c.id not in priorities]
    if missing:
        raise MissingContext(f"no priority vector for context(s) {missing}", detail=missing)
    failing = []
    for c in contexts:
        report = consistency(priorities[c.id], c.size)
        if not report.passed:
            failing.append({"context": c.id, "cr": report.cr})
    if failing:
        raise ConsistencyGateFailed(
            "consistency gate failed for context(s) "
            + ", ".join(f"{f['context']} (CR={f['cr']:.6f})" for f in failing),
            detail=failing,
        )


def assemble_unweighted(net: DecisionNetwork, priorities: dict[str, PriorityVector]) -> Supermatrix:
    """Place every context's priorities in its control node's column.

    Requires a priority vector per context, each passing the consistency
    gate. Columns of nodes that control no context stay all zero here.
    """
    _gate_check(net, priorities)
    order = net.node_order
    pos = {n: i for i, n in enumerate(order)}
    n = len(order)
    a = np.zeros((n, n))
    for ctx in comparison_contexts(net):
        w = priorities[ctx.id].weights
        if len(w) != ctx.size:
            raise ContextMismatch(f"priority vector for context {ctx.id!r} has wrong length")
        col = pos[ctx.control]
        for peer, weight in zip(ctx.peers, w):
            a[pos[peer], col] = weight
    return Supermatrix(index=order, entries=a, stage=UNWEIGHTED)


def cluster_weight_matrix(net: DecisionNetwork, priorities: dict[str, PriorityVector]) -> ClusterWeightMatrix:
    """Cluster weights from the control-layer contexts.

    The goal column carries the goal context's cluster weights (self
    weight 1 for a lone cluster). Each cluster's own column describes
    what weighs on its element content; with element influence confined
    to the owning cluster, those columns are the identity.
    """
    contexts = {c.id: c for c in comparison_contexts(net)}
    cluster_ids = [c.id for c in net.clusters]
    index = tuple([net.goal] + cluster_ids)
    k = len(index)
    a = np.zeros((k, k))

    goal_ctx = contexts.get(net.goal)
    if goal_ctx is not None and set(goal_ctx.peers) == set(cluster_ids):
        w = priorities[goal_ctx.id].weights
        for peer, weight in zip(goal_ctx.peers, w):
            a[index.index(peer), 0] = weight
    elif len(cluster_ids) >= 1:
        # goal compares elements directly (lone cluster) or has no context:
        # all goal-column mass goes to the first influencing cluster level.
        a[1, 0] = 1.0
    for cid in cluster_ids:
        a[index.index(cid), index.index(cid)] = 1.0
    return ClusterWeightMatrix(index=index, entries=a)


def weight_supermatrix(u: Supermatrix, cw: ClusterWeightMatrix, net: DecisionNetwork) -> Supermatrix:
    """Rescale element columns by cluster weights; identity-fill sinks.

    Element column entries in the rows of cluster L are multiplied by
    cw(L, K) for an element of cluster K, then the column is renormalized.
    Control-layer columns (goal and cluster nodes) pass through: they are
    the control hierarchy itself and already carry one stochastic context
    each. A column that was nonzero but loses all mass to zero cluster
    weights signals inconsistent weights and raises NotStochastic; columns
    that were all zero absorb their own weight via the identity fill.
    """
    if u.stage != UNWEIGHTED:
        raise ContextMismatch(f"expected an unweighted supermatrix, got stage {u.stage!r}")
    order = u.index
    block: dict[str, str] = {net.goal: net.goal}
    for c in net.clusters:
        block[c.id] = c.id
        for e in c.elements:
            block[e.id] = c.id
    missing = [cid for cid in {c.id for c in net.clusters} if cid not in cw.index]
    if missing:
        raise ContextMismatch(f"cluster weight matrix lacks cluster(s) {sorted(missing)}")
    control = {net.goal} | {c.id for c in net.clusters}

    a = u.entries.copy()
    n = len(order)
    for j, col_node in enumerate(order):
        if col_node in control:
            continue
        col_block = block[col_node]
        for i, row_node in enumerate(order):
            if a[i, j] == 0.0:
                continue
            row_block = block[row_node]
            factor = cw.weight(row_block, col_block) if row_block in cw.index else 0.0
            a[i, j] *= factor
        total = a[:, j].sum()
        if total > _ZERO:
            a[:, j] /= total
        elif u.entries[:, j].sum() > _ZERO:
            raise NotStochastic(
                f"column {col_node!r} lost all mass under the cluster weights", detail=col_node
            )
    for j in range(n):
        if a[:, j].sum() <= _ZERO:
            a[:, j] = 0.0
            a[j, j] = 1.0
    return Supermatrix(index=order, entries=a, stage=WEIGHTED)


def limit_supermatrix(w: Supermatrix, tol: float = 1e-10, max_squarings: int = 64) -> tuple[Supermatrix, ConvergenceInfo]:
    """Limit of the power sequence of a column-stochastic supermatrix.

    Repeated squaring with the fixed-point test L @ W == L; the plain
    difference of successive squarings would accept the even-power
    pseudo-limit of a periodic chain. When no fixed point appears, a
    power cycle of period <= max_squarings is searched and its Cesaro
    average returned; failing that, NoLimit.
    """
    if w.stage not in (WEIGHTED, LIMIT):
        raise ContextMismatch(f"limit needs a column-stochastic matrix, got stage {w.stage!r}")
    base = w.entries
    s = base.copy()
    drift = float(np.max(np.abs(s.sum(axis=0) - 1.0)))
    for k in range(1, max_squarings + 1):
        s = s @ s
        drift = max(drift, float(np.max(np.abs(s.sum(axis=0) - 1.0))))
        if np.max(np.abs(s @ base - s)) < tol:
            info = ConvergenceInfo(mode="power", iterations=k, max_column_drift=drift)
            return Supermatrix(index=w.index, entries=s, stage=LIMIT), info

    # periodic tail: find c with s @ base^c == s, average over the cycle
    cycle = [s]
    q = s
    for c in range(1, max_squarings + 1):
        q = q @ base
        drift = max(drift, float(np.max(np.abs(q.sum(axis=0) - 1.0))))
        if np.max(np.abs(q - s)) < 1e-8:
            avg = np.mean(cycle, axis=0)
            info = ConvergenceInfo(mode="cesaro", iterations=max_squarings + c, max_column_drift=drift)
            return Supermatrix(index=w.index, entries=avg, stage=LIMIT), info
        cycle.append(q)
    raise NoLimit(f"no convergence and no power cycle of period <= {max_squarings} detected")


def extract_rank(l: Supermatrix, net: DecisionNetwork) -> RankedPriorities:
    """Global priorities from the limit supermatrix's goal column.

    Direct read when the goal column carries element mass (collapsed
    hierarchies, or a primitive limit where every column is the common
    stationary vector). Otherwise the goal column names the cluster
    weights and each cluster's limit block names its elements' weights;
    the product gives the global element weight.
    """
    if l.stage != LIMIT:
        raise ContextMismatch(f"rank extraction needs a limit supermatrix, got stage {l.stage!r}")
    pos = {n: i for i, n in enumerate(l.index)}
    goal_col = l.entries[:, pos[net.goal]]
    members: dict[str, list[str]] = {c.id: [e.id for e in c.elements] for c in net.clusters}
    element_ids = [eid for c in net.clusters for eid in members[c.id]]
    if not element_ids:
        raise DegenerateLimit("network has no elements to rank")

    direct = np.array([goal_col[pos[eid]] for eid in element_ids])
    if direct.sum() > _ZERO:
        weights = {eid: float(v) for eid, v in zip(element_ids, direct / direct.sum())}
    else:
        cluster_mass = np.array([goal_col[pos[c.id]] for c in net.clusters])
        if cluster_mass.sum() <= _ZERO:
            raise DegenerateLimit("limit goal column carries no element or cluster mass")
        cluster_mass = cluster_mass / cluster_mass.sum()
        weights = {}
        for c, cmass in zip(net.clusters, cluster_mass):
            rows = [pos[eid] for eid in members[c.id]]
            blockm = l.entries[np.ix_(rows, rows)]
            pi = blockm.mean(axis=1)
            if pi.sum() <= _ZERO:
                raise DegenerateLimit(f"limit block of cluster {c.id!r} is all zeros")
            pi = pi / pi.sum()
            for eid, v in zip(members[c.id], pi):
                weights[eid] = float(cmass * v)
        total = sum(weights.values())
        if total <= _ZERO:
            raise DegenerateLimit("element weights are all zero")
        weights = {k: v / total for k, v in weights.items()}

    owner = {eid: c.id for c in net.clusters for eid in members[c.id]}
    ordered = sorted(element_ids, key=lambda eid: (-weights[eid], eid))
    elements = tuple(
        RankedElement(id=eid, cluster=owner[eid], weight=weights[eid], rank=i + 1)
        for i, eid in enumerate(ordered)
    )
    cw = {c.id: sum(weights[eid] for eid in members[c.id]) for c in net.clusters}
    corder = sorted(cw, key=lambda cid: (-cw[cid], cid))
    criteria = tuple(RankedCriterion(id=cid, weight=cw[cid], rank=i + 1) for i, cid in enumerate(corder))
    return RankedPriorities(elements=elements, criteria=criteria)


def format_matrix(sm: Supermatrix) -> str:
    """Plain-text dump: one row per line, 12 significant digits."""
    lines = []
    for row in sm.entries:
        lines.append(" ".join(f"{v:.12g}" for v in row))
    return "\n".join(lines) + "\n"
