"""Exception hierarchy shared by all modules.

Each class carries the CLI exit status it maps to.
"""


class HomEulerError(Exception):
    exit_code = 1


class DomainError(HomEulerError, ValueError):
    """Argument outside the domain of a formula (origin, negative degree...)."""


class ParameterError(HomEulerError, ValueError):
    """Inadmissible constants; the message names the violated constraint."""
    exit_code = 2


class ContractError(HomEulerError, ValueError):
    """A precondition on an input object failed (uncertified profile, ...)."""


class NoConvergenceError(HomEulerError, RuntimeError):
    exit_code = 3

    def __init__(self, msg, best_residual=float("inf")):
        super().__init__(f"{msg} (best residual {best_residual:.3e})")
        self.best_residual = best_residual


class NoSolutionError(HomEulerError, RuntimeError):
    exit_code = 3

    def __init__(self, msg, t_range=None):
        if t_range is not None:
            msg = f"{msg}; attainable half-period range ({t_range[0]:.12g}, {t_range[1]:.12g})"
        super().__init__(msg)
        self.t_range = t_range
