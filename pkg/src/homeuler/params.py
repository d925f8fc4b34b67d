"""Constants of the reduced problems and their admissibility rules."""
from dataclasses import dataclass, asdict
import math

from .errors import ParameterError

AXI = "axisymmetric"
PLANAR = "planar25d"


@dataclass(frozen=True)
class ParamSet:
    """(alpha, beta, c1, c2, C1, C2) for one reduced problem.

    Axisymmetric mode: beta = alpha - 2, equation with c1 and c2.
    2.5D mode: beta = alpha - 1, one constant ``c`` stored in ``c1``
    (``c2`` is unused and zero).
    ``is_linear`` marks the explicit c1 = c2 = 0 branch (integer beta).
    """
    mode: str
    alpha: float
    beta: float
    c1: float
    c2: float
    C1: float
    C2: float
    is_linear: bool = False

    @property
    def c(self):
        return self.c1

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**{k: d[k] for k in cls.__dataclass_fields__ if k in d})

    # constructors -----------------------------------------------------
    @classmethod
    def axisymmetric(cls, alpha, C1=0.0, C2=0.0):
        alpha, C1, C2 = float(alpha), float(C1), float(C2)
        _check_axi_constants(alpha, C1, C2)
        beta = alpha - 2.0
        c1 = -2.0 * C1 * (1.0 + 2.0 / beta)
        c2 = C2 * C2 * (1.0 + 1.0 / beta)
        return cls(AXI, alpha, beta, c1 + 0.0, c2, C1, C2)

    @classmethod
    def from_coefficients(cls, beta, c1=0.0, c2=0.0):
        """Axisymmetric set given (beta, c1, c2); C1, C2 >= 0 recovered."""
        beta, c1, c2 = float(beta), float(c1), float(c2)
        if -2.0 <= beta <= 0.0:
            raise ParameterError(f"beta={beta} lies in the excluded range [-2, 0] (alpha in [0, 2])")
        if c1 < 0 or c2 < 0:
            raise ParameterError("c1 and c2 must be nonnegative")
        if c1 == 0 and c2 == 0:
            raise ParameterError("c1 and c2 are both zero; use ParamSet.linear for the linear branch")
        if c1 != 0 and -4.0 <= beta < -2.0:
            raise ParameterError("c1 must vanish for -4 <= beta < -2 (C1 = 0 for -2 <= alpha < 0)")
        C1 = -c1 / (2.0 * (1.0 + 2.0 / beta))
        C2 = math.sqrt(c2 / (1.0 + 1.0 / beta))
        return cls(AXI, beta + 2.0, beta, c1, c2, C1 + 0.0, C2)

    @classmethod
    def planar(cls, alpha, C1=0.0, C2=0.0):
        alpha, C1, C2 = float(alpha), float(C1), float(C2)
        if -1.0 <= alpha <= 1.0:
            raise ParameterError(f"alpha={alpha} lies in the 2.5D nonexistence range [-1, 1]")
        if not (-2.0 * C1 + C2 * C2 > 0):
            raise ParameterError("2.5D mode needs -2*C1 + C2**2 > 0")
        beta = alpha - 1.0
        c = (-2.0 * C1 + C2 * C2) * (1.0 + 1.0 / beta)
        return cls(PLANAR, alpha, beta, c, 0.0, C1, C2)

    @classmethod
    def planar_from_c(cls, beta, c):
        beta, c = float(beta), float(c)
        if -2.0 <= beta <= 0.0:
            raise ParameterError(f"beta={beta} lies in the excluded range [-2, 0]")
        if not c > 0:
            raise ParameterError("2.5D mode needs c > 0")
        C1 = -c / (2.0 * (1.0 + 1.0 / beta))
        return cls(PLANAR, beta + 1.0, beta, c, 0.0, C1 + 0.0, 0.0)

    @classmethod
    def linear(cls, beta, mode=AXI):
        beta = float(beta)
        if beta == 0.0:
            raise ParameterError("beta = 0 has no homogeneous stream profile")
        shift = 2.0 if mode == AXI else 1.0
        return cls(mode, beta + shift, beta, 0.0, 0.0, 0.0, 0.0, is_linear=True)


def _check_axi_constants(alpha, C1, C2):
    if 0.0 <= alpha <= 2.0:
        raise ParameterError(f"alpha={alpha} lies in the axisymmetric nonexistence range [0, 2]")
    if C1 > 0:
        raise ParameterError("C1 must be nonpositive")
    if C1 == 0 and C2 == 0:
        raise ParameterError("C1 and C2 are both zero (irrotational case; use the catalog)")
    if C1 != 0 and -2.0 <= alpha < 0.0:
        raise ParameterError("C1 must vanish for -2 <= alpha < 0")
