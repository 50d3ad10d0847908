"""Exception hierarchy for the ANP engine.

Every domain failure raises an ``AnpError`` subclass carrying a stable
``code`` string, which is what the HTTP layer and the CLI surface to
callers.
"""

from __future__ import annotations


class AnpError(Exception):
    """Base class for all domain errors."""

    code = "anp_error"

    def __init__(self, message: str, detail=None):
        super().__init__(message)
        self.detail = detail


class NetworkInvalid(AnpError):
    code = "network_invalid"


class InvalidModel(AnpError):
    code = "invalid_model"


class MissingPair(AnpError):
    code = "missing_pair"


class DuplicatePair(AnpError):
    code = "duplicate_pair"


class ForeignNode(AnpError):
    code = "foreign_node"


class ValueNotOnScale(AnpError):
    code = "value_not_on_scale"


class RankOutOfTable(AnpError):
    code = "rank_out_of_table"


class ContextMismatch(AnpError):
    code = "context_mismatch"


class TooSmall(AnpError):
    code = "too_small"


class NoConvergence(AnpError):
    code = "no_convergence"


class MissingContext(AnpError):
    code = "missing_context"


class ConsistencyGateFailed(AnpError):
    code = "consistency_gate_failed"


class NotStochastic(AnpError):
    code = "not_stochastic"


class NoLimit(AnpError):
    code = "no_limit"


class DegenerateLimit(AnpError):
    code = "degenerate_limit"


class Incomplete(AnpError):
    code = "incomplete"


class UnknownSession(AnpError):
    code = "unknown_session"


class UnknownExpert(AnpError):
    code = "unknown_expert"


class UnknownContext(AnpError):
    code = "unknown_context"


class UnknownPair(AnpError):
    code = "unknown_pair"
