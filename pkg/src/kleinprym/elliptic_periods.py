"""Half-period ratios of elliptic curves given as double covers of P^1.

The forward direction goes through the complex arithmetic-geometric mean,
the inverse through theta constants.  Both are the classical Legendre
normalization: the curve ``y^2 = x(x-1)(x-m)`` has half-period ratio
``tau = i K(1-m) / K(m)`` and ``m = lambda(tau) = theta_2^4 / theta_3^4``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .config_p1 import DISTINCT_TOL, INF, ProjPoint, chordal_distance, cross_ratio
from .errors import ConvergenceError, DegenerateError, KleinError

AGM_MAX_ITER = 64
THETA_TERM_TOL = 1e-18


def agm(a: complex, b: complex, tol: float = 4e-16) -> complex:
    """Principal arithmetic-geometric mean of two complex numbers.

    At each step the square root is chosen with ``|a' - b'| <= |a' + b'|``
    (the "right choice"), which converges to the principal value.
    """
    a, b = complex(a), complex(b)
    if a == 0 or b == 0:
        return 0j
    for _ in range(AGM_MAX_ITER):
        if abs(a - b) <= tol * abs(a):
            return (a + b) / 2
        a1 = (a + b) / 2
        b1 = cmath.sqrt(a * b)
        if abs(a1 - b1) > abs(a1 + b1):
            b1 = -b1
        a, b = a1, b1
    raise ConvergenceError(f"AGM did not converge in {AGM_MAX_ITER} iterations")


def ellipk(m: complex) -> complex:
    """Complete elliptic integral of the first kind, parameter ``m = k^2``."""
    return math.pi / (2 * agm(1, cmath.sqrt(1 - m)))


def ellipe(m: complex) -> complex:
    """Complete elliptic integral of the second kind via the AGM sequence."""
    a, b = 1 + 0j, cmath.sqrt(1 - complex(m))
    total = complex(m) / 2  # 2^{-1} c_0^2 with c_0^2 = m
    power = 0.5
    for _ in range(AGM_MAX_ITER):
        if abs(a - b) <= 4e-16 * abs(a):
            return math.pi / (2 * a) * (1 - total)
        c = (a - b) / 2
        a1 = (a + b) / 2
        b1 = cmath.sqrt(a * b)
        if abs(a1 - b1) > abs(a1 + b1):
            b1 = -b1
        power *= 2
        total += power * c * c
        a, b = a1, b1
    raise ConvergenceError(f"AGM did not converge in {AGM_MAX_ITER} iterations")


@dataclass(frozen=True)
class LevelTwoLabel:
    """Which of four branch points plays the 0-, 1-, INF- and b-point.

    Entries are positions into the branch tuple.  In the level-2 language
    the labels are the images of (0,1), (1,1), (1,0) and (0,0).
    """

    zero: int = 0
    one: int = 1
    inf: int = 2
    b: int = 3

    def __post_init__(self):
        if sorted((self.zero, self.one, self.inf, self.b)) != [0, 1, 2, 3]:
            raise KleinError("level-2 label must be a bijection onto 4 branch points")


IDENTITY_LABEL = LevelTwoLabel()


def reduce_gamma2(tau: complex) -> complex:
    """Move ``tau`` into the standard fundamental domain of Gamma(2).

    The domain is ``-1 <= Re tau < 1`` outside the discs ``|tau -+ 1/2| < 1/2``.
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise KleinError(f"tau must lie in the upper half-plane, got {tau}")
    for _ in range(200):
        tau -= 2 * math.floor((tau.real + 1) / 2)
        if abs(tau - 0.5) < 0.5 - 1e-15:
            tau = tau / (1 - 2 * tau)
        elif abs(tau + 0.5) < 0.5 - 1e-15:
            tau = tau / (1 + 2 * tau)
        else:
            return tau
    raise ConvergenceError("Gamma(2) reduction did not terminate")


def tau_from_legendre(m: complex) -> complex:
    """Half-period ratio ``i K(1-m)/K(m)`` reduced modulo Gamma(2)."""
    m = complex(m)
    if not all(math.isfinite(x) for x in (m.real, m.imag)):
        raise DegenerateError("Legendre parameter at infinity")
    for ref in (0j, 1 + 0j):
        if chordal_distance(m, ref) < DISTINCT_TOL:
            raise DegenerateError(f"Legendre parameter {m} is degenerate")
    tau = 1j * agm(1, cmath.sqrt(1 - m)) / agm(1, cmath.sqrt(m))
    if tau.imag <= 0:
        raise ConvergenceError(f"AGM branch produced tau={tau} outside the upper half-plane")
    return reduce_gamma2(tau)


def legendre_parameter(branch, label: LevelTwoLabel = IDENTITY_LABEL) -> complex:
    pts = tuple(branch)
    if len(pts) != 4:
        raise KleinError("need exactly 4 branch points")
    m = cross_ratio(pts[label.b], pts[label.zero], pts[label.one], pts[label.inf])
    if m is INF:
        raise DegenerateError("b-point coincides with the INF-point")
    return m


def tau_from_branch_points(
    branch: tuple[ProjPoint, ProjPoint, ProjPoint, ProjPoint],
    label: LevelTwoLabel = IDENTITY_LABEL,
) -> complex:
    """Half-period ratio of the double cover branched at four points."""
    return tau_from_legendre(legendre_parameter(branch, label))


def _theta_sums(q: complex) -> tuple[complex, complex]:
    """``sum q^{n(n+1)}`` (n >= 0) and ``1 + 2 sum q^{n^2}`` (n >= 1)."""
    s2, s3 = 0j, 1 + 0j
    n = 0
    while True:
        t2 = q ** (n * (n + 1))
        t3 = 2 * q ** ((n + 1) ** 2)
        s2 += t2
        s3 += t3
        if abs(t2) < THETA_TERM_TOL and abs(t3) < THETA_TERM_TOL:
            return s2, s3
        n += 1
        if n > 100000:
            raise ConvergenceError("theta series did not converge")


def _lambda_series(tau: complex) -> complex:
    q = cmath.exp(1j * math.pi * tau)
    s2, s3 = _theta_sums(q)
    # theta_2^4 = 16 q (sum q^{n(n+1)})^4
    return 16 * q * s2**4 / s3**4


def modular_lambda(tau: complex, reduce: bool = True) -> complex:
    """Modular lambda function ``theta_2(tau)^4 / theta_3(tau)^4``.

    With ``reduce`` the series is summed at an SL(2,Z)-equivalent point with
    ``Im >= sqrt(3)/2`` and mapped back through ``lambda(tau+1) =
    lambda/(lambda-1)`` and ``lambda(-1/tau) = 1 - lambda``; otherwise the
    series is summed at ``tau`` directly.
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise KleinError(f"tau must lie in the upper half-plane, got {tau}")
    if not reduce:
        return _lambda_series(tau)
    steps = []
    for _ in range(1000):
        n = round(tau.real)
        if n:
            tau -= n
            if n % 2:
                steps.append("T")
        if abs(tau) < 1 - 1e-15:
            tau = -1 / tau
            steps.append("S")
        else:
            break
    else:
        raise ConvergenceError("SL(2,Z) reduction did not terminate")
    lam = _lambda_series(tau)
    for s in reversed(steps):
        lam = lam / (lam - 1) if s == "T" else 1 - lam
    return lam
