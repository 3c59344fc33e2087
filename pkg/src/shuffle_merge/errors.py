"""Error types shared across the package."""


class ContractViolation(ValueError):
    """A documented precondition of an operation was violated."""


class VerificationError(RuntimeError):
    """A merge output failed post-hoc validation in the harness."""


def require(condition, message):
    if not condition:
        raise ContractViolation(message)
