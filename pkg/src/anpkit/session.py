"""Elicitation sessions: questionnaires, judgment capture, and the
compute pipeline that turns a complete session into a ranked report.

Sessions are file-backed, one JSON document per session under a data
directory. Mutations take a per-session lock (single writer); reads see
the last persisted snapshot. All computation is deterministic: expert
aggregation sorts by expert id, report JSON has a fixed key order, and
identical inputs produce byte-identical report files.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    ConsistencyGateFailed,
    DuplicatePair,
    Incomplete,
    InvalidModel,
    UnknownContext,
    UnknownExpert,
    UnknownPair,
    UnknownSession,
)
from .judgments import (
    ComparisonMatrix,
    Judgment,
    SaatyValue,
    aggregate_experts,
    build_matrix,
    consistency,
    priority_vector_gm,
    worst_triad,
)
from .network import (
    ComparisonContext,
    DecisionNetwork,
    comparison_contexts,
    network_from_dict,
    network_to_dict,
    validate_network,
)
from .supermatrix import (
    ConvergenceInfo,
    RankedPriorities,
    Supermatrix,
    assemble_unweighted,
    cluster_weight_matrix,
    extract_rank,
    limit_supermatrix,
    weight_supermatrix,
)

PROMPT_TEMPLATE = "With respect to {control}, how much more important is {row} than {col}?"


def questionnaire(net: DecisionNetwork) -> list[dict]:
    """Ordered question list: one per unordered peer pair per context."""
    labels = net.labels()
    questions = []
    for ctx in comparison_contexts(net):
        for row, col in ctx.pairs():
            questions.append(
                {
                    "context": ctx.id,
                    "row": row,
                    "col": col,
                    "prompt": PROMPT_TEMPLATE.format(
                        control=labels.get(ctx.control, ctx.control),
                        row=labels.get(row, row),
                        col=labels.get(col, col),
                    ),
                }
            )
    return questions


@dataclass
class SubmissionResult:
    stored: bool
    expert: str
    context: str
    row: str
    col: str
    value: str
    context_filled: int
    context_expected: int
    total_filled: int
    total_expected: int
    status: str  # "incomplete" | "context-complete"
    consistency: dict | None  # {"ci","ri","cr","pass","worst_triad"} once context complete


class Session:
    """One elicitation session over a model and a fixed expert panel."""

    def __init__(self, session_id: str, net: DecisionNetwork, experts: list[str]):
        report = validate_network(net)
        if not report.ok:
            raise InvalidModel(
                "model failed validation: " + "; ".join(v.message for v in report.violations)
            )
        if not experts:
            raise InvalidModel("a session needs at least one expert")
        if len(set(experts)) != len(experts):
            raise InvalidModel("expert ids must be unique")
        self.session_id = session_id
        self.net = net
        self.experts = list(experts)
        self.contexts: dict[str, ComparisonContext] = {c.id: c for c in comparison_contexts(net)}
        # (expert, context, row, col) -> scale token, pair stored in canonical order
        self.judgments: dict[tuple[str, str, str, str], str] = {}
        self.report_json: str | None = None
        self._computed = False

    # -- accounting --------------------------------------------------------

    @property
    def expected_per_expert(self) -> int:
        return sum(len(c.pairs()) for c in self.contexts.values())

    @property
    def expected_total(self) -> int:
        return self.expected_per_expert * len(self.experts)

    @property
    def complete(self) -> bool:
        return len(self.judgments) == self.expected_total

    @property
    def status(self) -> str:
        if self.complete and self._computed:
            return "computed"
        if self.complete:
            return "complete"
        return "collecting"

    def missing_pairs(self) -> list[dict]:
        out = []
        for expert in self.experts:
            for ctx in self.contexts.values():
                for row, col in ctx.pairs():
                    if (expert, ctx.id, row, col) not in self.judgments:
                        out.append({"expert": expert, "context": ctx.id, "row": row, "col": col})
        return out

    # -- judgment capture ---------------------------------------------------

    def _canonical(self, ctx: ComparisonContext, row: str, col: str, value: SaatyValue):
        for a, b in ctx.pairs():
            if (row, col) == (a, b):
                return a, b, value
            if (row, col) == (b, a):
                return a, b, value.reciprocal
        raise UnknownPair(f"({row}, {col}) is not a peer pair of context {ctx.id!r}")

    def submit(self, expert: str, context_id: str, row: str, col: str, value) -> SubmissionResult:
        if expert not in self.experts:
            raise UnknownExpert(f"expert {expert!r} is not part of this session")
        ctx = self.contexts.get(context_id)
        if ctx is None:
            raise UnknownContext(f"context {context_id!r} does not exist in this model")
        sv = SaatyValue.parse(value)
        crow, ccol, cval = self._canonical(ctx, row, col, sv)
        self.judgments[(expert, ctx.id, crow, ccol)] = cval.token
        self._computed = False

        filled = self._context_filled(expert, ctx)
        report = None
        status = "incomplete"
        if filled == len(ctx.pairs()):
            status = "context-complete"
            report = self._context_report(expert, ctx)
        return SubmissionResult(
            stored=True,
            expert=expert,
            context=ctx.id,
            row=crow,
            col=ccol,
            value=cval.token,
            context_filled=filled,
            context_expected=len(ctx.pairs()),
            total_filled=self._expert_filled(expert),
            total_expected=self.expected_per_expert,
            status=status,
            consistency=report,
        )

    def _context_filled(self, expert: str, ctx: ComparisonContext) -> int:
        return sum(1 for (e, c, _, _) in self.judgments if e == expert and c == ctx.id)

    def _expert_filled(self, expert: str) -> int:
        return sum(1 for (e, _, _, _) in self.judgments if e == expert)

    def _expert_matrix(self, expert: str, ctx: ComparisonContext) -> ComparisonMatrix | None:
        judgments = []
        for row, col in ctx.pairs():
            token = self.judgments.get((expert, ctx.id, row, col))
            if token is None:
                return None
            judgments.append(Judgment(ctx.id, row, col, SaatyValue(token), expert))
        return build_matrix(ctx, judgments)

    def _context_report(self, expert: str, ctx: ComparisonContext) -> dict | None:
        m = self._expert_matrix(expert, ctx)
        if m is None:
            return None
        return matrix_report(m)

    def consistency_snapshot(self) -> dict:
        """Per-context consistency: aggregate plus per-expert reports."""
        contexts = []
        for ctx in self.contexts.values():
            per_expert = {}
            matrices = []
            for expert in self.experts:
                m = self._expert_matrix(expert, ctx)
                per_expert[expert] = matrix_report(m) if m is not None else None
                if m is not None:
                    matrices.append(m)
            aggregate = None
            if len(matrices) == len(self.experts):
                aggregate = matrix_report(aggregate_experts(matrices))
            contexts.append(
                {
                    "context": ctx.id,
                    "size": ctx.size,
                    "aggregate": aggregate,
                    "experts": per_expert,
                }
            )
        return {
            "session_id": self.session_id,
            "status": self.status,
            "progress": {
                "expected_total": self.expected_total,
                "stored_total": len(self.judgments),
                "per_expert": {
                    e: {"stored": self._expert_filled(e), "expected": self.expected_per_expert}
                    for e in self.experts
                },
            },
            "contexts": contexts,
        }

    # -- compute ------------------------------------------------------------

    def compute(self) -> dict:
        if not self.complete:
            missing = self.missing_pairs()
            raise Incomplete(f"session is missing {len(missing)} judgment(s)", detail=missing)
        per_context = {}
        for ctx in self.contexts.values():
            matrices = [self._expert_matrix(e, ctx) for e in sorted(self.experts)]
            per_context[ctx.id] = [m for m in matrices if m is not None]
        report = run_pipeline(self.net, per_context)
        self.report_json = render_report(report)
        self._computed = True
        return report

    # -- persistence ---------------------------------------------------------

    def to_dict(self) -> dict:
        rows = [
            {"expert": e, "context": c, "row": r, "col": col, "value": v}
            for (e, c, r, col), v in sorted(self.judgments.items())
        ]
        return {
            "session_id": self.session_id,
            "model": network_to_dict(self.net),
            "experts": self.experts,
            "status": self.status,
            "judgments": rows,
            "report": json.loads(self.report_json) if self.report_json else None,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Session":
        net = network_from_dict(doc["model"])
        session = cls(doc["session_id"], net, list(doc["experts"]))
        for row in doc.get("judgments", []):
            key = (row["expert"], row["context"], row["row"], row["col"])
            SaatyValue(row["value"])
            session.judgments[key] = row["value"]
        if doc.get("report") is not None:
            session.report_json = render_report(doc["report"])
            session._computed = True
        return session


def matrix_report(m: ComparisonMatrix) -> dict:
    """Consistency report plus revision hint for one matrix."""
    pv = priority_vector_gm(m)
    rep = consistency(pv, m.n)
    hint = None
    if m.n >= 3:
        i, j, severity = worst_triad(m, pv)
        hint = {"row": m.context.peers[i], "col": m.context.peers[j], "severity": severity}
    return {"ci": rep.ci, "ri": rep.ri, "cr": rep.cr, "pass": rep.passed, "worst_triad": hint}


def run_pipeline(net: DecisionNetwork, per_context: dict[str, list[ComparisonMatrix]]) -> dict:
    """Aggregate experts, gate consistency, and run the supermatrix chain.

    ``per_context`` maps context id to the expert matrices for that
    context. The gate applies to the aggregated matrix per context; the
    per-expert reports surfaced during elicitation are advisory.
    """
    contexts = comparison_contexts(net)
    aggregated: dict[str, ComparisonMatrix] = {}
    for ctx in contexts:
        matrices = per_context.get(ctx.id, [])
        if matrices:
            aggregated[ctx.id] = aggregate_experts(matrices)
    consistency_rows = []
    failing = []
    priorities = {}
    for ctx in contexts:
        m = aggregated.get(ctx.id)
        if m is None:
            continue
        pv = priority_vector_gm(m)
        rep = consistency(pv, ctx.size)
        priorities[ctx.id] = pv
        consistency_rows.append(
            {"context": ctx.id, "ci": rep.ci, "ri": rep.ri, "cr": rep.cr, "pass": rep.passed}
        )
        if not rep.passed:
            failing.append({"context": ctx.id, "cr": rep.cr})
    if failing:
        raise ConsistencyGateFailed(
            "consistency gate failed for context(s) "
            + ", ".join(f"{f['context']} (CR={f['cr']:.6f})" for f in failing),
            detail=failing,
        )

    unweighted = assemble_unweighted(net, priorities)
    cw = cluster_weight_matrix(net, priorities)
    weighted = weight_supermatrix(unweighted, cw, net)
    limit, info = limit_supermatrix(weighted)
    ranked = extract_rank(limit, net)
    return build_report(ranked, consistency_rows, info, matrices={
        "unweighted": unweighted, "weighted": weighted, "limit": limit,
    })


def build_report(
    ranked: RankedPriorities,
    consistency_rows: list[dict],
    info: ConvergenceInfo,
    matrices: dict[str, Supermatrix] | None = None,
) -> dict:
    report = {
        "criteria": [{"id": c.id, "weight": c.weight, "rank": c.rank} for c in ranked.criteria],
        "elements": [
            {"id": e.id, "cluster": e.cluster, "weight": e.weight, "rank": e.rank}
            for e in ranked.elements
        ],
        "consistency": consistency_rows,
        "convergence": {"mode": info.mode, "iterations": info.iterations},
    }
    if matrices is not None:
        # carried in-memory for debug dumps, never serialized
        report["_matrices"] = matrices
    return report


def render_report(report: dict) -> str:
    """Canonical report JSON text; byte-stable for identical inputs."""
    public = {k: v for k, v in report.items() if not k.startswith("_")}
    return json.dumps(public, indent=2, ensure_ascii=False) + "\n"


# -- judgment files ----------------------------------------------------------


def load_judgment_rows(path: str | Path) -> list[dict]:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileNotFoundError(f"judgments not found: {p}") from exc
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidModel(f"judgment file is not valid JSON: {exc}") from exc
    if not isinstance(rows, list):
        raise InvalidModel("judgment file must be a JSON array")
    for row in rows:
        if not isinstance(row, dict) or not {"context", "row", "col", "value", "expert"} <= set(row):
            raise InvalidModel("judgment entries need keys context, row, col, value, expert")
    return rows


def matrices_from_rows(net: DecisionNetwork, rows: list[dict]) -> dict[str, list[ComparisonMatrix]]:
    """Group judgment rows by context and expert, requiring completeness.

    Every expert appearing in the file must cover every pair of every
    context; anything short raises Incomplete with the exact missing list.
    """
    contexts = {c.id: c for c in comparison_contexts(net)}
    experts = sorted({str(r["expert"]) for r in rows})
    store: dict[tuple[str, str], dict[tuple[str, str], SaatyValue]] = {}
    for r in rows:
        ctx = contexts.get(r["context"])
        if ctx is None:
            raise UnknownContext(f"context {r['context']!r} does not exist in this model")
        value = SaatyValue.parse(r["value"])
        row, col = str(r["row"]), str(r["col"])
        canon = None
        for a, b in ctx.pairs():
            if (row, col) == (a, b):
                canon = (a, b, value)
            elif (row, col) == (b, a):
                canon = (a, b, value.reciprocal)
        if canon is None:
            raise UnknownPair(f"({row}, {col}) is not a peer pair of context {ctx.id!r}")
        key = (str(r["expert"]), ctx.id)
        pair_key = (canon[0], canon[1])
        bucket = store.setdefault(key, {})
        if pair_key in bucket:
            raise DuplicatePair(
                f"pair {pair_key} judged more than once by expert {r['expert']!r} in context {ctx.id!r}"
            )
        bucket[pair_key] = canon[2]

    missing = []
    for expert in experts:
        for ctx in contexts.values():
            bucket = store.get((expert, ctx.id), {})
            for pair in ctx.pairs():
                if pair not in bucket:
                    missing.append({"expert": expert, "context": ctx.id, "row": pair[0], "col": pair[1]})
    if missing:
        raise Incomplete(f"judgments are missing {len(missing)} pair(s)", detail=missing)

    per_context: dict[str, list[ComparisonMatrix]] = {}
    for ctx in contexts.values():
        matrices = []
        for expert in experts:
            bucket = store[(expert, ctx.id)]
            judgments = [Judgment(ctx.id, a, b, v, expert) for (a, b), v in bucket.items()]
            matrices.append(build_matrix(ctx, judgments))
        per_context[ctx.id] = matrices
    return per_context


# -- session store -------------------------------------------------------------


class SessionStore:
    """Directory of session documents with per-session write locks."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._registry = threading.Lock()

    def lock(self, session_id: str) -> threading.Lock:
        with self._registry:
            return self._locks.setdefault(session_id, threading.Lock())

    def path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.json"

    def create(self, model_doc: dict, experts: list[str]) -> Session:
        try:
            net = network_from_dict(model_doc)
        except InvalidModel:
            raise
        session = Session(uuid.uuid4().hex, net, experts)
        self.save(session)
        return session

    def save(self, session: Session) -> None:
        text = json.dumps(session.to_dict(), indent=2, ensure_ascii=False) + "\n"
        self.path(session.session_id).write_text(text, encoding="utf-8")

    def load(self, session_id: str) -> Session:
        p = self.path(session_id)
        if not p.exists():
            raise UnknownSession(f"no session {session_id!r}")
        return Session.from_dict(json.loads(p.read_text(encoding="utf-8")))
