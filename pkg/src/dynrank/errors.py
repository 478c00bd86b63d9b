class InvariantError(RuntimeError):
    """An internal invariant of a tracker was observed to be broken."""
