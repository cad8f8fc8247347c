"""Closed-form geometry of isoparametric foliations of the unit sphere.

A Muenzner-normalized isoparametric function r on S^n satisfies
``|grad r|^2 = k^2 (1 - r^2)`` and ``lap r = (m2 - m1)/2 * k^2 - k (n + k - 1) r``
with k in {1, 2, 3, 4, 6} distinct principal curvatures of multiplicities
alternating m1, m2.  This module evaluates and validates every algebraic
object the profile analysis needs: the admissible parameter tuples, the
drift coefficients alpha/beta, the offset constant R, the phase-plane
quadratic A(x, r) with discriminant B(r), its roots eta_1 <= eta_2, the
critical band (a, b) where B < 0, and the scaled curves zeta_i.

All functions are pure and cheap; they are safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

ADMISSIBLE_K = (1, 2, 3, 4, 6)

# Absolute tolerance for algebraic identities (all formulas are closed-form
# in double precision).
ABS_TOL = 1e-10


class GeometryError(ValueError):
    """Base class for inadmissible geometric input."""


class BadK(GeometryError):
    """k is not one of 1, 2, 3, 4, 6."""


class UnequalMultiplicities(GeometryError):
    """k in {1, 3, 6} forces a single multiplicity, but m1 != m2."""


class DimensionMismatch(GeometryError):
    """k * (m1 + m2) / 2 != n - 1, or n, m1, m2 out of range."""


class ROutOfRange(GeometryError):
    """Derived constant R falls outside (-1, 1)."""


class DomainError(GeometryError):
    """Abscissa r outside the domain of the requested quantity."""


class BandInterior(GeometryError):
    """eta/zeta requested at r strictly inside (a, b) where they do not exist."""


@dataclass(frozen=True)
class Parameters:
    """Validated isoparametric datum (n, k, m1, m2) with derived constant R.

    m2 is the multiplicity of the smallest principal curvature; for
    k in {1, 3, 6} both multiplicities coincide and R = 0, for k in {2, 4}
    R = -1 + k*m2/(n-1).  Use :func:`validate_parameters` to construct.
    """

    n: int
    k: int
    m1: int
    m2: int
    R: float


@dataclass(frozen=True)
class Band:
    """Critical abscissas a < b: the roots of B, with B < 0 on (a, b)."""

    a: float
    b: float


def validate_parameters(n: int, k: int, m1: int, m2: int) -> Parameters:
    """Check Muenzner admissibility of (n, k, m1, m2) and derive R.

    Raises BadK, UnequalMultiplicities, DimensionMismatch or ROutOfRange
    for inadmissible tuples.
    """
    if k not in ADMISSIBLE_K:
        raise BadK(f"k must be one of {ADMISSIBLE_K}, got {k}")
    if k in (1, 3, 6) and m1 != m2:
        raise UnequalMultiplicities(
            f"k={k} forces equal multiplicities, got m1={m1}, m2={m2}"
        )
    if n < 2 or m1 < 1 or m2 < 1:
        raise DimensionMismatch(
            f"need n >= 2 and m1, m2 >= 1, got n={n}, m1={m1}, m2={m2}"
        )
    if k * (m1 + m2) != 2 * (n - 1):
        raise DimensionMismatch(
            f"k*(m1+m2)/2 = {k * (m1 + m2) / 2} != n-1 = {n - 1}"
        )
    if k in (1, 3, 6):
        R = 0.0
    else:
        R = -1.0 + k * m2 / (n - 1)
        if not -1.0 < R < 1.0:
            raise ROutOfRange(f"R = {R} outside (-1, 1)")
    return Parameters(n=n, k=k, m1=m1, m2=m2, R=R)


def alpha(r: float, p: Parameters) -> float:
    """|grad r|^2 as a function of the level: k^2 (1 - r^2), r in [-1, 1]."""
    if not -1.0 <= r <= 1.0:
        raise DomainError(f"alpha needs r in [-1, 1], got {r}")
    return p.k * p.k * (1.0 - r * r)


def alpha_prime(r: float, p: Parameters) -> float:
    """d/dr of alpha: -2 k^2 r."""
    if not -1.0 <= r <= 1.0:
        raise DomainError(f"alpha_prime needs r in [-1, 1], got {r}")
    return -2.0 * p.k * p.k * r


def beta(r: float, p: Parameters) -> float:
    """lap r as a function of the level: (m2-m1)/2 * k^2 - k (n+k-1) r."""
    if not -1.0 <= r <= 1.0:
        raise DomainError(f"beta needs r in [-1, 1], got {r}")
    return 0.5 * (p.m2 - p.m1) * p.k * p.k - p.k * (p.n + p.k - 1) * r


def discriminant_B(r: float, p: Parameters) -> float:
    """Discriminant B(r) = ((n-1)^2+4) r^2 - 2 (n-1)^2 R r + (n-1)^2 R^2 - 4.

    Negative exactly on (a, b), zero at {a, b}, positive on
    (-1, a) u (b, 1).
    """
    if not -1.0 < r < 1.0:
        raise DomainError(f"discriminant_B needs r in (-1, 1), got {r}")
    q = (p.n - 1.0) ** 2
    return (q + 4.0) * r * r - 2.0 * q * p.R * r + q * p.R * p.R - 4.0


def quadratic_A(x: float, r: float, p: Parameters) -> float:
    """Phase-plane quadratic A(x, r) = sqrt(1-r^2) x^2 - (n-1)(r-R) x + sqrt(1-r^2).

    The sign of d(psi)/dr is minus the sign of A(psi, r); the roots in x are
    eta_1(r) <= eta_2(r) wherever B(r) >= 0.
    """
    if not -1.0 < r < 1.0:
        raise DomainError(f"quadratic_A needs r in (-1, 1), got {r}")
    s = math.sqrt(1.0 - r * r)
    return s * x * x - (p.n - 1.0) * (r - p.R) * x + s


def band_bounds(p: Parameters) -> Band:
    """Roots a < b of B in (-1, 1); the band (a, b) brackets R."""
    q = (p.n - 1.0) ** 2
    den = q + 4.0
    s = 2.0 * math.sqrt(q * (1.0 - p.R * p.R) + 4.0)
    return Band(a=(q * p.R - s) / den, b=(q * p.R + s) / den)


def _eta_pair(r: float, p: Parameters) -> tuple[float, float]:
    """Both roots of A(., r), ordered, using the cancellation-free form.

    The larger-magnitude root is computed from the quadratic formula; the
    other follows from the product-of-roots identity eta_1 * eta_2 = 1.
    """
    if not -1.0 < r < 1.0:
        raise DomainError(f"eta needs r in (-1, 1), got {r}")
    band = band_bounds(p)
    if band.a < r < band.b:
        raise BandInterior(
            f"eta undefined for r={r} inside the band ({band.a}, {band.b})"
        )
    disc = discriminant_B(r, p)
    root = math.sqrt(max(disc, 0.0))
    q = (p.n - 1.0) * (r - p.R)
    s = math.sqrt(1.0 - r * r)
    if q >= 0.0:
        big = (q + root) / (2.0 * s)  # both roots positive, big = eta_2
        return 1.0 / big, big
    big = (q - root) / (2.0 * s)  # both roots negative, big = eta_1
    return big, 1.0 / big


def eta(i: int, r: float, p: Parameters) -> float:
    """Root eta_i(r) of A(., r) for i in {1, 2}; defined on (-1, a] u [b, 1)."""
    if i not in (1, 2):
        raise ValueError(f"eta index must be 1 or 2, got {i}")
    pair = _eta_pair(r, p)
    return pair[i - 1]


def zeta(i: int, r: float, p: Parameters) -> float:
    """Scaled root zeta_i(r) = eta_i(r) / (k sqrt(1 - r^2)).

    zeta_i is the height-derivative level at which the profile slope field
    crosses zero; same domain and ordering as eta_i.
    """
    val = eta(i, r, p)
    return val / (p.k * math.sqrt(1.0 - r * r))
