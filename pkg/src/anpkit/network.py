"""Decision network model: goal, clusters, elements, dependency links.

A :class:`DecisionNetwork` is an immutable description of what influences
what. Cluster-level influence is carried by ``outer`` links (between the
goal and clusters, or between clusters); element-level influence by
``inner`` links (between elements of the same cluster). The node index
order -- goal first, then cluster nodes, then elements cluster by
cluster -- is fixed at construction and every downstream matrix is laid
out against it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InvalidModel, NetworkInvalid

OUTER = "outer"
INNER = "inner"


@dataclass(frozen=True)
class Element:
    id: str
    label: str = ""
    definition: str = ""


@dataclass(frozen=True)
class Cluster:
    id: str
    label: str = ""
    elements: tuple[Element, ...] = ()


@dataclass(frozen=True)
class DependencyLink:
    source: str
    target: str
    kind: str  # "outer" | "inner"


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    subject: str = ""


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...] = ()


@dataclass(frozen=True)
class ComparisonContext:
    """One pairwise-comparison matrix to elicit.

    ``control`` is the node the comparison is made with respect to;
    ``peers`` is the ordered set of nodes being compared (always >= 2,
    never containing the control node). A context's id is its control
    node id: each node controls at most one context.
    """

    control: str
    peers: tuple[str, ...]
    kind: str  # "goal" | "criteria" | "inner"

    @property
    def id(self) -> str:
        return self.control

    @property
    def size(self) -> int:
        return len(self.peers)

    def pairs(self) -> list[tuple[str, str]]:
        """Unordered peer pairs in canonical (index) order."""
        out = []
        for i in range(len(self.peers)):
            for j in range(i + 1, len(self.peers)):
                out.append((self.peers[i], self.peers[j]))
        return out


@dataclass(frozen=True)
class DecisionNetwork:
    goal: str
    clusters: tuple[Cluster, ...]
    links: tuple[DependencyLink, ...]
    goal_label: str = ""

    @property
    def node_order(self) -> tuple[str, ...]:
        """Canonical index: goal, cluster nodes, then elements per cluster."""
        order = [self.goal]
        order += [c.id for c in self.clusters]
        for c in self.clusters:
            order += [e.id for e in c.elements]
        return tuple(order)

    def cluster_of(self, element_id: str) -> str | None:
        for c in self.clusters:
            for e in c.elements:
                if e.id == element_id:
                    return c.id
        return None

    def labels(self) -> dict[str, str]:
        out = {self.goal: self.goal_label or self.goal}
        for c in self.clusters:
            out[c.id] = c.label or c.id
            for e in c.elements:
                out[e.id] = e.label or e.id
        return out


def validate_network(net: DecisionNetwork) -> ValidationReport:
    """Structural validation. Violations are data, not exceptions."""
    violations: list[Violation] = []
    cluster_ids = [c.id for c in net.clusters]
    element_cluster: dict[str, str] = {}

    seen: set[str] = set()
    for nid in [net.goal] + cluster_ids + [e.id for c in net.clusters for e in c.elements]:
        if not nid or not isinstance(nid, str):
            violations.append(Violation("bad_id", "empty or non-string node id", str(nid)))
        elif nid in seen:
            violations.append(Violation("duplicate_id", f"node id {nid!r} appears more than once", nid))
        seen.add(nid)

    for c in net.clusters:
        if len(c.elements) == 0:
            violations.append(Violation("empty_cluster", f"cluster {c.id!r} has no elements", c.id))
        for e in c.elements:
            element_cluster[e.id] = c.id

    known = {net.goal} | set(cluster_ids) | set(element_cluster)
    control_level = {net.goal} | set(cluster_ids)
    for link in net.links:
        for end in (link.source, link.target):
            if end not in known:
                violations.append(
                    Violation("dangling_link", f"link {link.source}->{link.target} references missing node {end!r}", end)
                )
        if link.kind not in (OUTER, INNER):
            violations.append(Violation("bad_link_kind", f"unknown link kind {link.kind!r}", link.kind))
            continue
        if link.source == link.target:
            violations.append(
                Violation("self_link", f"link {link.source}->{link.target} connects a node to itself", link.source)
            )
            continue
        if link.kind == INNER:
            sc = element_cluster.get(link.source)
            tc = element_cluster.get(link.target)
            if sc is None or tc is None or sc != tc:
                violations.append(
                    Violation(
                        "inner_link_across_clusters",
                        f"inner link {link.source}->{link.target} must connect elements of one cluster",
                        f"{link.source}->{link.target}",
                    )
                )
        else:
            if link.source not in control_level or link.target not in control_level:
                violations.append(
                    Violation(
                        "outer_link_not_cluster_level",
                        f"outer link {link.source}->{link.target} must connect the goal or cluster nodes",
                        f"{link.source}->{link.target}",
                    )
                )

    # Reachability: every cluster must connect to the goal through the link
    # graph (traversed in either direction; elements stand in for their
    # cluster). A model with no links at all is a plain hierarchy under the
    # goal's implicit control, so the check only applies once links exist.
    if net.links and not any(v.code in ("dangling_link", "duplicate_id") for v in violations):
        adj: dict[str, set[str]] = {n: set() for n in known}
        for link in net.links:
            if link.source in known and link.target in known:
                adj[link.source].add(link.target)
                adj[link.target].add(link.source)
        # membership edges: cluster <-> its elements
        for eid, cid in element_cluster.items():
            adj[eid].add(cid)
            adj[cid].add(eid)
        reached = set()
        stack = [net.goal]
        while stack:
            n = stack.pop()
            if n in reached:
                continue
            reached.add(n)
            stack.extend(adj.get(n, ()))
        for cid in cluster_ids:
            if cid not in reached:
                violations.append(Violation("unreachable_cluster", f"cluster {cid!r} is not reachable from the goal", cid))

    return ValidationReport(ok=not violations, violations=tuple(violations))


def comparison_contexts(net: DecisionNetwork) -> list[ComparisonContext]:
    """Enumerate every pairwise-comparison context the network requires.

    The canonical rules, in order:

    1. goal context -- the clusters compared with respect to the goal.
       With a single cluster the hierarchy collapses: the goal compares
       that cluster's elements directly, provided the goal is linked to it.
    2. one context per cluster node, comparing the other clusters that
       influence it (outer links into it), when at least two do.
    3. one context per element, comparing the same-cluster elements that
       influence it (inner links into it), when at least two do.

    Peer sets are ordered by the canonical node order; a context is only
    emitted when its peer set has size >= 2.
    """
    report = validate_network(net)
    if not report.ok:
        raise NetworkInvalid(
            "network failed validation: " + "; ".join(v.message for v in report.violations),
            detail=[v.__dict__ for v in report.violations],
        )

    contexts: list[ComparisonContext] = []
    cluster_ids = [c.id for c in net.clusters]

    if len(cluster_ids) >= 2:
        contexts.append(ComparisonContext(net.goal, tuple(cluster_ids), "goal"))
    elif len(cluster_ids) == 1:
        only = net.clusters[0]
        goal_linked = any(
            net.goal in (l.source, l.target) and only.id in (l.source, l.target) for l in net.links
        )
        if goal_linked and len(only.elements) >= 2:
            contexts.append(ComparisonContext(net.goal, tuple(e.id for e in only.elements), "goal"))

    influencers: dict[str, set[str]] = {}
    for link in net.links:
        influencers.setdefault(link.target, set()).add(link.source)

    for c in net.clusters:
        peers = [cid for cid in cluster_ids if cid != c.id and cid in influencers.get(c.id, ())]
        if len(peers) >= 2:
            contexts.append(ComparisonContext(c.id, tuple(peers), "criteria"))

    for c in net.clusters:
        member_ids = [e.id for e in c.elements]
        for e in c.elements:
            peers = [f for f in member_ids if f != e.id and f in influencers.get(e.id, ())]
            if len(peers) >= 2:
                contexts.append(ComparisonContext(e.id, tuple(peers), "inner"))

    return contexts


def question_count(contexts: list[ComparisonContext]) -> int:
    return sum(c.size * (c.size - 1) // 2 for c in contexts)


# --- model file round-trip ------------------------------------------------

_TOP_KEYS = {"goal", "goal_label", "clusters", "links"}
_CLUSTER_KEYS = {"id", "label", "elements"}
_ELEMENT_KEYS = {"id", "label", "definition"}
_LINK_KEYS = {"source", "target", "kind"}


def _check_keys(obj: dict, allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise InvalidModel(f"unknown key(s) {sorted(unknown)} in {where}")


def network_from_dict(doc: dict) -> DecisionNetwork:
    if not isinstance(doc, dict):
        raise InvalidModel("model document must be a JSON object")
    _check_keys(doc, _TOP_KEYS, "model")
    for key in ("goal", "clusters", "links"):
        if key not in doc:
            raise InvalidModel(f"model is missing required key {key!r}")
    if not isinstance(doc["goal"], str):
        raise InvalidModel("'goal' must be a string node id")
    clusters = []
    if not isinstance(doc["clusters"], list):
        raise InvalidModel("'clusters' must be an array")
    for c in doc["clusters"]:
        if not isinstance(c, dict):
            raise InvalidModel("cluster entries must be objects")
        _check_keys(c, _CLUSTER_KEYS, f"cluster {c.get('id')!r}")
        elements = []
        for e in c.get("elements", []):
            if not isinstance(e, dict):
                raise InvalidModel("element entries must be objects")
            _check_keys(e, _ELEMENT_KEYS, f"element {e.get('id')!r}")
            elements.append(Element(id=str(e.get("id", "")), label=e.get("label", ""), definition=e.get("definition", "")))
        clusters.append(Cluster(id=str(c.get("id", "")), label=c.get("label", ""), elements=tuple(elements)))
    links = []
    if not isinstance(doc["links"], list):
        raise InvalidModel("'links' must be an array")
    for l in doc["links"]:
        if not isinstance(l, dict):
            raise InvalidModel("link entries must be objects")
        _check_keys(l, _LINK_KEYS, "link")
        for key in _LINK_KEYS:
            if key not in l:
                raise InvalidModel(f"link is missing required key {key!r}")
        links.append(DependencyLink(source=str(l["source"]), target=str(l["target"]), kind=str(l["kind"])))
    return DecisionNetwork(
        goal=doc["goal"],
        clusters=tuple(clusters),
        links=tuple(links),
        goal_label=doc.get("goal_label", ""),
    )


def network_to_dict(net: DecisionNetwork) -> dict:
    return {
        "goal": net.goal,
        "goal_label": net.goal_label,
        "clusters": [
            {
                "id": c.id,
                "label": c.label,
                "elements": [{"id": e.id, "label": e.label, "definition": e.definition} for e in c.elements],
            }
            for c in net.clusters
        ],
        "links": [{"source": l.source, "target": l.target, "kind": l.kind} for l in net.links],
    }


def load_network(path: str | Path) -> DecisionNetwork:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileNotFoundError(f"model not found: {p}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidModel(f"model file is not valid JSON: {exc}") from exc
    return network_from_dict(doc)


def save_network(net: DecisionNetwork, path: str | Path) -> None:
    Path(path).write_text(json.dumps(network_to_dict(net), indent=2) + "\n", encoding="utf-8")


def railway_model_path() -> Path:
    """Path of the bundled railway-heritage game design model."""
    return Path(__file__).parent / "data" / "railway.model.json"


def load_railway_model() -> DecisionNetwork:
    return load_network(railway_model_path())
