"""Shared exception types."""


class InfeasibleError(Exception):
    """A construction request that provably has no solution."""
