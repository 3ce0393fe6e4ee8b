"""Complete elliptic integrals and Jacobi sn via AGM / Landen iterations.

All routines use the *modulus* convention: ``ellipk(k)`` is K(k) with
k the elliptic modulus (not the parameter m = k^2).
"""

import math

from .errors import EllipticConvergenceError

_AGM_TOL = 1e-15
_MAX_ITER = 80


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two positive numbers."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError("agm requires positive arguments")
    for _ in range(_MAX_ITER):
        if abs(a - b) <= _AGM_TOL * max(a, b):
            return 0.5 * (a + b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    raise EllipticConvergenceError("AGM iteration did not converge")


def ellipk(k: float) -> float:
    """Complete elliptic integral K(k), modulus convention, 0 <= k < 1."""
    if not 0.0 <= k < 1.0:
        raise ValueError(f"modulus must be in [0, 1), got {k}")
    kp = math.sqrt((1.0 - k) * (1.0 + k))
    return math.pi / (2.0 * agm(1.0, kp))


def jacobi_sn(u: float, k: float) -> float:
    """Jacobi elliptic sn(u, k), modulus convention, 0 <= k < 1.

    Uses the descending Landen (AGM) scheme: build the AGM sequence
    (a_i, b_i, c_i), then recover the amplitude by the backward
    recurrence phi_{i-1} = (phi_i + asin(c_i/a_i * sin(phi_i))) / 2
    and close trigonometrically with sn = sin(phi_0).
    """
    if not 0.0 <= k < 1.0:
        raise ValueError(f"modulus must be in [0, 1), got {k}")
    if k < 1e-14:
        return math.sin(u)

    a, b, c = 1.0, math.sqrt((1.0 - k) * (1.0 + k)), k
    a_seq = [a]
    c_seq = [c]
    n = 0
    while abs(c) > _AGM_TOL * a:
        a, b, c = 0.5 * (a + b), math.sqrt(a * b), 0.5 * (a - b)
        n += 1
        a_seq.append(a)
        c_seq.append(c)
        if n >= _MAX_ITER:
            raise EllipticConvergenceError("Landen descent did not converge")

    phi = float(2 ** n) * a_seq[n] * u
    for i in range(n, 0, -1):
        s = c_seq[i] / a_seq[i] * math.sin(phi)
        s = min(1.0, max(-1.0, s))
        phi = 0.5 * (phi + math.asin(s))
    return math.sin(phi)
