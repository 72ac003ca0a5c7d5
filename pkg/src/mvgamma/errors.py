"""Shared error types."""


class InternalInvariantError(RuntimeError):
    """A structural fact the constructions guarantee failed to hold.

    This is never a report-worthy outcome: it means the machinery itself is
    broken (or was fed a hand-built object violating its stated invariants),
    and it maps to the dedicated process exit code in the CLI.
    """
