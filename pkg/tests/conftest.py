import json

import pytest

from anpkit.judgments import Judgment, SaatyValue, build_matrix
from anpkit.network import (
    Cluster,
    DecisionNetwork,
    DependencyLink,
    Element,
    comparison_contexts,
    load_railway_model,
)

# Planted per-context weights for the railway network. Ratios are spread
# far enough apart that rounding to the 9-point scale keeps every pair
# distinguishable and every context inside the consistency gate.
PLANTED = {
    "goal": {"C1": 5.0, "C2": 2.0, "C3": 3.0},
    "C1": {"e11": 8.0, "e12": 4.0, "e13": 1.0, "e14": 2.0},
    "C2": {"e21": 9.0, "e22": 5.0, "e23": 3.0, "e24": 1.8, "e25": 1.0},
    "C3": {"e31": 9.0, "e32": 5.5, "e33": 2.2, "e34": 3.5, "e35": 1.5, "e36": 1.0},
}
PLANTED_INTER = {
    "C1": {"C2": 1.0, "C3": 3.0},
    "C2": {"C1": 3.0, "C3": 2.0},
    "C3": {"C1": 7.0, "C2": 3.0},
}

# Published overall element weights (the fixture block for rank extraction).
TABLE3_WEIGHTS = {
    "e11": 0.11865,
    "e31": 0.11059,
    "e14": 0.10030,
    "e34": 0.08396,
    "e12": 0.07767,
    "e32": 0.07765,
    "e33": 0.07105,
    "e35": 0.07021,
    "e36": 0.06992,
    "e13": 0.05769,
    "e21": 0.03859,
    "e22": 0.03467,
    "e23": 0.03166,
    "e24": 0.03032,
    "e25": 0.02708,
}
TABLE3_ORDER = [
    "e11", "e31", "e14", "e34", "e12", "e32", "e33", "e35", "e36",
    "e13", "e21", "e22", "e23", "e24", "e25",
]


@pytest.fixture(scope="session")
def railway():
    return load_railway_model()


def planted_weights_for(net, ctx):
    if ctx.kind == "goal":
        src = PLANTED["goal"]
    elif ctx.kind == "criteria":
        src = PLANTED_INTER[ctx.control]
    else:
        src = PLANTED[net.cluster_of(ctx.control)]
    return {p: src[p] for p in ctx.peers}


def planted_judgment_rows(net, experts=("exp1",)):
    """Judgment-file rows for the planted weights, one set per expert."""
    rows = []
    for ctx in comparison_contexts(net):
        w = planted_weights_for(net, ctx)
        for a, b in ctx.pairs():
            token = SaatyValue.nearest(w[a] / w[b]).token
            for expert in experts:
                rows.append({"context": ctx.id, "row": a, "col": b, "value": token, "expert": expert})
    return rows


def planted_matrices(net, expert="exp1"):
    per_context = {}
    for ctx in comparison_contexts(net):
        w = planted_weights_for(net, ctx)
        judgments = [
            Judgment(ctx.id, a, b, SaatyValue.nearest(w[a] / w[b]), expert) for a, b in ctx.pairs()
        ]
        per_context[ctx.id] = [build_matrix(ctx, judgments)]
    return per_context


@pytest.fixture
def planted_rows(railway):
    return planted_judgment_rows(railway)


def write_json(path, payload):
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def single_cluster_network(n_elements=3, goal_link=True, inner=True):
    elements = tuple(Element(id=f"x{i}", label=f"X{i}") for i in range(1, n_elements + 1))
    links = []
    if goal_link:
        links.append(DependencyLink("goal", "K", "outer"))
    if inner:
        for a in elements:
            for b in elements:
                if a.id != b.id:
                    links.append(DependencyLink(a.id, b.id, "inner"))
    return DecisionNetwork(
        goal="goal",
        clusters=(Cluster(id="K", label="K", elements=elements),),
        links=tuple(links),
    )
