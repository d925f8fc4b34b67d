"""Homogeneous solutions of the steady Euler equations in R^3.

Modules: special (explicit catalog), spectral (linearized operator),
bvp (profile solvers), fields (velocity/pressure fields), verify
(residual suites), levelset (stream-function level sets), cli.
"""
__version__ = "0.1.0"

from .errors import (ContractError, DomainError, HomEulerError, NoConvergenceError,
                     NoSolutionError, ParameterError)
from .params import ParamSet
from .profile import ProfileW
from .bvp import solve_autonomous, solve_nonautonomous
from .fields import build_25d, build_axisymmetric

__all__ = ["ContractError", "DomainError", "HomEulerError", "NoConvergenceError",
           "NoSolutionError", "ParameterError", "ParamSet", "ProfileW",
           "solve_autonomous", "solve_nonautonomous", "build_25d", "build_axisymmetric",
           "__version__"]
