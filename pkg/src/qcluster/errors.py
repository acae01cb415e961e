"""Exception hierarchy.

Every library error carries a stable ``code`` string; the CLI serializes it
verbatim so scripted callers can dispatch on it.
"""


class ClusterError(Exception):
    code = "cluster-error"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_json(self):
        out = {"code": self.code, "message": str(self)}
        out.update(self.details)
        return out


class DimensionMismatch(ClusterError, ValueError):
    code = "dimension-mismatch"


class NotSkewSymmetric(ClusterError, ValueError):
    code = "not-skew-symmetric"


class NotMutable(ClusterError, ValueError):
    code = "not-mutable"


class ContextMismatch(ClusterError, ValueError):
    code = "context-mismatch"


class NoExactQuotient(ClusterError, ArithmeticError):
    code = "no-exact-quotient"


class NotCompatible(ClusterError):
    code = "not-compatible"

    def __init__(self, message, reason, **details):
        super().__init__(message, reason=reason, **details)
        self.reason = reason


class NotEllCompatible(ClusterError):
    code = "not-ell-compatible"


class NotPerfectSquare(ClusterError):
    code = "not-perfect-square"


class HypothesisViolated(ClusterError):
    code = "hypothesis-violated"


class NotAcyclic(ClusterError):
    code = "not-acyclic"


class HasFrozen(ClusterError):
    code = "has-frozen"


class VerificationFailed(ClusterError):
    code = "verification-failed"


class InternalInconsistency(ClusterError):
    """A computation contradicted an identity that is supposed to be a theorem."""

    code = "internal-inconsistency"


class SeedFormatError(ClusterError, ValueError):
    code = "seed-format"
