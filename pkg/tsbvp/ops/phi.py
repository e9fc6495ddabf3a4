import math
import numpy as np
from dataclasses import dataclass, field


def _check_exponent(p):
    if not (isinstance(p, (int, float, np.floating, np.integer)) and math.isfinite(p) and p > 1):
        raise ValueError(f'The p-Laplacian exponent must be a finite number > 1, got {p!r}.')


def conjugate_exponent(p):
    """Hoelder conjugate q = p / (p - 1)."""
    _check_exponent(p)
    return p / (p - 1)


def phi(p, s):
    """The p-Laplacian scalar operator |s|^(p-2) * s.

    Computed as exp((p - 2) * log|s|) * s, with phi(p, 0) = 0 for every p > 1.
    Works element-wise on arrays.

    Args:
        p (float): Exponent, p > 1.
        s (float | ndarray): Argument.

    Returns:
        float | ndarray: float for scalar input, otherwise an array of the
            same shape.
    """
    _check_exponent(p)
    s = np.asarray(s, dtype=np.float64)
    magnitude = np.abs(s)
    nonzero = magnitude > 0
    with np.errstate(over='ignore', invalid='ignore'):
        scale = np.exp((p - 2) * np.log(np.where(nonzero, magnitude, 1.0)))
        out = np.where(nonzero, scale * s, 0.0)
    if out.ndim == 0:
        return float(out)
    return out


def phi_inverse(p, s):
    """Inverse of phi(p, .), i.e. phi(q, .) with q = p / (p - 1)."""
    return phi(conjugate_exponent(p), s)


@dataclass(frozen=True)
class PExponent:
    """The p-Laplacian exponent and its conjugate.

    Args:
        p (float): Exponent, p > 1.
    """
    p: float
    q: float = field(init=False)

    def __post_init__(self):
        _check_exponent(self.p)
        object.__setattr__(self, 'p', float(self.p))
        object.__setattr__(self, 'q', conjugate_exponent(self.p))
        assert abs(1 / self.p + 1 / self.q - 1) <= 1e-12, f'1/p + 1/q != 1 for p={self.p!r}'

    def phi(self, s):
        return phi(self.p, s)

    def phi_inverse(self, s):
        return phi(self.q, s)
