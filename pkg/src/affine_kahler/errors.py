"""Exception taxonomy mirrored by the CLI exit-code contract."""


class DomainViolation(ValueError):
    """Input violates a mathematical precondition (CLI exit code 1)."""


class SchemaViolation(ValueError):
    """Malformed file payload or argument shape (CLI exit code 2)."""


class InternalCheckFailure(RuntimeError):
    """A guaranteed-by-construction invariant failed: a bug, not a user error
    (CLI exit code 3)."""
