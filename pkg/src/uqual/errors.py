"""Shared exception types."""


class SchemaError(ValueError):
    """A document or payload violates its declared schema."""


class EvaluationError(RuntimeError):
    """A model evaluation could not be completed."""


class SessionStateError(RuntimeError):
    """An operation is not allowed in the session's current state."""


class UnknownIdError(KeyError):
    """A referenced expert/assumption/criterion/session id is not registered."""

    def __str__(self) -> str:
        # KeyError wraps its message in quotes; keep it readable.
        return self.args[0] if self.args else ""
