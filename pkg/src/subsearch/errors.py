"""Exception types shared across environments, experts and searches."""


class SubsearchError(Exception):
    """Base class for package errors."""


class InvalidAction(SubsearchError):
    """Action index outside [0, action_count)."""


class MoveBlocked(SubsearchError):
    """Action is well-formed but inapplicable in this state (no-op).

    Searches catch this to skip the action without charging the budget.
    """


class InvalidState(SubsearchError):
    """State encoding fails the environment's validity checks."""


class ResourceLimit(SubsearchError):
    """An oracle or table exceeded its configured memory/state bound."""


class EmptyDataset(SubsearchError):
    """A fitted component was given no trajectories."""


class InternalSolverError(SubsearchError):
    """An expert solver violated one of its own stage invariants (a bug)."""


class Unsolved(SubsearchError):
    """A search-backed expert hit its node cap without finding a solution."""


class ConfigError(SubsearchError):
    """Experiment configuration is malformed or references missing files."""
