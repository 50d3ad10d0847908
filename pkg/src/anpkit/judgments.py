"""Pairwise judgment matrices, priority vectors, and consistency checks.

Judgments arrive on the 9-point ratio scale (17 admissible values, from
1/9 up to 9). A complete set of judgments for one comparison context
builds a positive reciprocal matrix; priorities come out of it two ways:

* ``priority_vector_gm`` -- normalized row geometric means, the closed
  form used by the production pipeline,
* ``priority_vector_eig`` -- principal eigenvector by power iteration,
  kept as an independent cross-check of the first.

Consistency is judged by CI = (lambda_max - n)/(n - 1) against the
random-index table, with the CI <= 0.1 and CR <= 0.1 gates applied as
exact comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log

import numpy as np

from .errors import (
    ContextMismatch,
    DuplicatePair,
    ForeignNode,
    MissingPair,
    NoConvergence,
    RankOutOfTable,
    TooSmall,
    ValueNotOnScale,
)
from .network import ComparisonContext

# The 17 admissible scale values, reciprocals first.
SCALE_TOKENS = tuple(f"1/{d}" for d in range(9, 1, -1)) + tuple(str(d) for d in range(1, 10))
_TOKEN_VALUE = {t: float(Fraction(t)) for t in SCALE_TOKENS}

# Random index by matrix rank, ranks 1..15. Rank 12 is 1.48 in the
# published table this engine follows; the sequence is not monotone there.
RANDOM_INDEX = (0.00, 0.00, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49, 1.51, 1.48, 1.56, 1.57, 1.58)

CONSISTENCY_THRESHOLD = 0.1


@dataclass(frozen=True)
class SaatyValue:
    """One of the 17 admissible scale values, e.g. "1/3" or "7"."""

    token: str

    def __post_init__(self):
        if self.token not in _TOKEN_VALUE:
            raise ValueNotOnScale(f"value {self.token!r} is not on the 9-point scale")

    @property
    def value(self) -> float:
        return _TOKEN_VALUE[self.token]

    @property
    def reciprocal(self) -> "SaatyValue":
        if self.token == "1":
            return self
        if self.token.startswith("1/"):
            return SaatyValue(self.token[2:])
        return SaatyValue("1/" + self.token)

    @staticmethod
    def parse(token) -> "SaatyValue":
        if isinstance(token, SaatyValue):
            return token
        if not isinstance(token, str):
            raise ValueNotOnScale(f"value {token!r} is not on the 9-point scale")
        return SaatyValue(token)

    @staticmethod
    def nearest(ratio: float) -> "SaatyValue":
        """Closest scale value to a positive ratio, measured in log space.

        Log distance keeps rounding symmetric: the nearest value to 1/r is
        always the reciprocal of the nearest value to r.
        """
        if ratio <= 0:
            raise ValueNotOnScale(f"ratio must be positive, got {ratio}")
        best = min(SCALE_TOKENS, key=lambda t: abs(log(ratio) - log(_TOKEN_VALUE[t])))
        return SaatyValue(best)


@dataclass(frozen=True)
class Judgment:
    context: str  # context id (its control node)
    row: str
    col: str
    value: SaatyValue
    expert: str = ""


@dataclass(frozen=True)
class ComparisonMatrix:
    """Positive reciprocal judgment matrix over a context's peer set."""

    context: ComparisonContext
    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=float)
        n = len(self.context.peers)
        if a.shape != (n, n):
            raise ContextMismatch(f"matrix shape {a.shape} does not match context of size {n}")
        if np.any(a <= 0):
            raise ValueNotOnScale("comparison matrix entries must be positive")
        if np.max(np.abs(np.diag(a) - 1.0)) > 1e-12:
            raise ValueNotOnScale("comparison matrix diagonal must be 1")
        if np.max(np.abs(a * a.T - 1.0)) > 1e-9:
            raise ValueNotOnScale("comparison matrix must be reciprocal")
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class PriorityVector:
    weights: np.ndarray
    lambda_max: float
    method: str  # "geometric-mean" | "eigenvector"

    @property
    def n(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class ConsistencyReport:
    ci: float
    ri: float
    cr: float
    passed: bool

    def render(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"CI={self.ci:.6f} RI={self.ri:.2f} CR={self.cr:.6f} {verdict}"


def build_matrix(context: ComparisonContext, judgments: list[Judgment]) -> ComparisonMatrix:
    """Assemble the reciprocal matrix from one judgment per unordered pair.

    A judgment (row, col, v) sets a[row, col] = v and a[col, row] = 1/v.
    """
    peers = context.peers
    index = {p: i for i, p in enumerate(peers)}
    n = len(peers)
    a = np.ones((n, n))
    seen: set[frozenset] = set()
    for j in judgments:
        if j.row not in index or j.col not in index or j.row == j.col:
            raise ForeignNode(
                f"judgment ({j.row}, {j.col}) is not a valid peer pair of context {context.id!r}"
            )
        key = frozenset((j.row, j.col))
        if key in seen:
            raise DuplicatePair(f"pair ({j.row}, {j.col}) judged more than once in context {context.id!r}")
        seen.add(key)
        r, c = index[j.row], index[j.col]
        a[r, c] = j.value.value
        a[c, r] = 1.0 / j.value.value
    missing = [pair for pair in context.pairs() if frozenset(pair) not in seen]
    if missing:
        raise MissingPair(
            f"context {context.id!r} is missing judgments for pairs {missing}", detail=missing
        )
    return ComparisonMatrix(context=context, entries=a)


def _lambda_max(a: np.ndarray, w: np.ndarray) -> float:
    return float(np.mean((a @ w) / w))


def priority_vector_gm(m: ComparisonMatrix) -> PriorityVector:
    """Normalized row geometric means, lambda_max as mean of (A w)_i / w_i."""
    a = m.entries
    # log-space product avoids overflow for large ratios
    gm = np.exp(np.mean(np.log(a), axis=1))
    w = gm / gm.sum()
    return PriorityVector(weights=w, lambda_max=_lambda_max(a, w), method="geometric-mean")


def priority_vector_eig(m: ComparisonMatrix, tol: float = 1e-12, max_iter: int = 10_000) -> PriorityVector:
    """Principal right eigenvector by power iteration, sum-normalized.

    Starts from the uniform vector so results are permutation-equivariant
    and fully deterministic. Positive matrices always converge; hitting
    the iteration cap signals an internal error.
    """
    a = m.entries
    n = m.n
    x = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        y = a @ x
        y /= y.sum()
        if np.max(np.abs(y - x)) < tol:
            return PriorityVector(weights=y, lambda_max=_lambda_max(a, y), method="eigenvector")
        x = y
    raise NoConvergence(f"power iteration did not converge within {max_iter} iterations")


def random_index(n: int) -> float:
    """Random index for rank n, 1 <= n <= 15."""
    if not 1 <= n <= 15:
        raise RankOutOfTable(f"random index table covers ranks 1..15, got {n}")
    return RANDOM_INDEX[n - 1]


def consistency(pv: PriorityVector, n: int) -> ConsistencyReport:
    """CI/RI/CR report for a priority vector of an n x n matrix.

    CR is defined as 0 when RI is 0 (ranks 1 and 2), in which case the
    pass verdict rests on CI alone.
    """
    if n < 2:
        raise TooSmall(f"consistency needs n >= 2, got {n}")
    ci = (pv.lambda_max - n) / (n - 1)
    ri = random_index(n)
    cr = ci / ri if ri > 0 else 0.0
    passed = cr <= CONSISTENCY_THRESHOLD and ci <= CONSISTENCY_THRESHOLD
    return ConsistencyReport(ci=ci, ri=ri, cr=cr, passed=passed)


def aggregate_experts(matrices: list[ComparisonMatrix]) -> ComparisonMatrix:
    """Element-wise geometric mean across experts for one context.

    The only averaging rule that keeps the result reciprocal. The lower
    triangle is mirrored from the aggregated upper triangle so
    reciprocity holds exactly.
    """
    if not matrices:
        raise ContextMismatch("need at least one matrix to aggregate")
    ctx = matrices[0].context
    for m in matrices[1:]:
        if m.context.id != ctx.id or m.context.peers != ctx.peers:
            raise ContextMismatch(
                f"cannot aggregate matrices from different contexts ({m.context.id!r} vs {ctx.id!r})"
            )
    logs = np.mean([np.log(m.entries) for m in matrices], axis=0)
    agg = np.exp(logs)
    n = agg.shape[0]
    out = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            out[i, j] = agg[i, j]
            out[j, i] = 1.0 / agg[i, j]
    return ComparisonMatrix(context=ctx, entries=out)


def worst_triad(m: ComparisonMatrix, pv: PriorityVector) -> tuple[int, int, float]:
    """Most discordant pair: (i, j) with i < j maximizing |ln(a_ij w_j / w_i)|.

    Ties break toward the lexicographically smallest pair. Used as the
    revision hint when a matrix fails the consistency gate.
    """
    if m.n < 3:
        raise TooSmall(f"triad analysis needs n >= 3, got {m.n}")
    a = m.entries
    w = pv.weights
    best = (0, 1)
    best_sev = -1.0
    for i in range(m.n):
        for j in range(i + 1, m.n):
            sev = abs(log(a[i, j] * w[j] / w[i]))
            if sev > best_sev + 1e-15:
                best, best_sev = (i, j), sev
    return best[0], best[1], best_sev
