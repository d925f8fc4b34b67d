"""Small input-validation helpers (array coercion, finiteness, point checks)."""
import numpy as np
from sklearn.utils import check_array

from .errors import DomainError


def as_points(X, dim=3):
    """Coerce to a float (n, dim) array; a single point becomes (1, dim)."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    X = check_array(X, dtype=float, ensure_all_finite=True)
    if X.shape[1] != dim:
        raise DomainError(f"expected points of dimension {dim}, got {X.shape[1]}")
    return X


def as_vector(x, dim):
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != dim or not np.all(np.isfinite(x)):
        raise DomainError(f"expected a finite {dim}-vector")
    return x


def check_real(name, value):
    v = float(value)
    if not np.isfinite(v):
        raise DomainError(f"{name} must be finite")
    return v


def check_int(name, value, lo=None):
    if isinstance(value, bool) or int(value) != value:
        raise DomainError(f"{name} must be an integer")
    value = int(value)
    if lo is not None and value < lo:
        raise DomainError(f"{name} must be >= {lo}")
    return value
