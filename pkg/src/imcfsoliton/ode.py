"""Phase-plane ODE of the soliton profile and singularity-aware integration.

The profile height V(r) and its phase variable psi(r) = k sqrt(1-r^2) V'(r)
obey first/second order ODEs with poles at r = +-1 and finite-r blow-ups.
Integration runs in the substituted variable theta with r = sin(theta),
which knocks one power of 1/(1-r^2) out of the right-hand side and makes
the sphere poles ordinary endpoints of the theta interval.

A Dormand-Prince 5(4) pair with adaptive steps drives the integration;
each accepted step is scanned for band crossings (r passing a or b), psi
sign changes and psi - eta_i crossings, localized by bisection on the
cubic Hermite interpolant.  Termination is one of: finite-r blow-up
(|psi| past the cap while steps shrink, with the blow-up abscissa
Richardson-extrapolated from the final nodes), boundary reached (|r| at
1 - boundary_eps, with a limit flag fitted from the final decade of
samples), or step budget exhausted.

Trajectories that track the eta band toward a sphere pole also grow
without bound, so the blow-up cap alone cannot distinguish an interior
singularity from a boundary escape; a capped state that still lies
between eta_1 and eta_2 is treated as boundary-bound and integration
continues.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .geometry import Band, DomainError, Parameters, band_bounds, eta

__all__ = [
    "ProfileState",
    "StepControl",
    "EventKind",
    "Event",
    "TerminationKind",
    "LimitFlag",
    "Termination",
    "Trace",
    "IllConditioned",
    "HypothesisUnmet",
    "ComparisonReport",
    "psi_rhs",
    "vpp_rhs",
    "integrate_psi",
    "integrate_profile",
    "comparison_bound_h",
]


class IllConditioned(RuntimeError):
    """Step size collapsed below h_min away from any known singularity."""


class HypothesisUnmet(ValueError):
    """Trace does not satisfy the precondition of the requested bound."""


@dataclass(frozen=True)
class ProfileState:
    """A point on a profile curve: abscissa r, phase psi, optionally V, V'."""

    r: float
    psi: float
    V: Optional[float] = None
    Vp: Optional[float] = None


@dataclass(frozen=True)
class StepControl:
    """Integrator tolerances, step bounds and termination thresholds.

    h_min/h_max bound the step in the integration variable theta.
    psi_cap is the blow-up threshold on |psi|; boundary_eps the stopping
    distance from r = +-1.  The default cap is 1e4: stepping in double
    precision cannot resolve the approach to a finite-r blow-up much past
    |psi| ~ 2e4, where the required theta step falls below the spacing of
    floats.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    h_min: float = 1e-15
    h_max: float = 1e-2
    psi_cap: float = 1e4
    boundary_eps: float = 1e-9
    max_steps: int = 200_000

    def __post_init__(self) -> None:
        if min(self.rel_tol, self.abs_tol, self.h_min, self.h_max,
               self.psi_cap, self.boundary_eps) <= 0.0 or self.max_steps <= 0:
            raise ValueError("all StepControl fields must be positive")
        if self.h_min > self.h_max:
            raise ValueError("h_min must not exceed h_max")
        if self.psi_cap < 1e3:
            raise ValueError("psi_cap must be at least 1e3")


class EventKind(Enum):
    ENTER_BAND = "EnterBand"
    EXIT_BAND = "ExitBand"
    ZERO_CROSS = "ZeroCross"
    ETA_TOUCH_1 = "EtaTouch(1)"
    ETA_TOUCH_2 = "EtaTouch(2)"
    BLOW_UP_MINUS = "BlowUp(-)"
    BLOW_UP_PLUS = "BlowUp(+)"
    BOUNDARY_PLUS = "BoundaryReached(+1)"
    BOUNDARY_MINUS = "BoundaryReached(-1)"


#: Kinds that end a trace.
TERMINAL_EVENTS = {
    EventKind.BLOW_UP_MINUS,
    EventKind.BLOW_UP_PLUS,
    EventKind.BOUNDARY_PLUS,
    EventKind.BOUNDARY_MINUS,
}


@dataclass(frozen=True)
class Event:
    """A detected event; psi_at is None for blow-up kinds."""

    kind: EventKind
    r_at: float
    psi_at: Optional[float] = None


class TerminationKind(Enum):
    BLOW_UP_MINUS = "BlowUpMinus"
    BLOW_UP_PLUS = "BlowUpPlus"
    HIT_PLUS_ONE = "HitPlusOne"
    HIT_MINUS_ONE = "HitMinusOne"
    STEP_LIMIT = "StepLimit"


class LimitFlag(Enum):
    PLUS_INF = "+inf"
    MINUS_INF = "-inf"
    ZERO = "0"
    FINITE = "finite"


@dataclass(frozen=True)
class Termination:
    """Terminal verdict: blow-up abscissa r1 or boundary limit flag."""

    kind: TerminationKind
    r1: Optional[float] = None
    limit: Optional[LimitFlag] = None


@dataclass
class Trace:
    """Ordered integration record.

    Arrays run in integration order (r strictly increasing for forward
    traces, strictly decreasing for backward ones) and stay strictly
    inside (-1, 1).  V/Vp are None unless the profile was carried.
    """

    r: np.ndarray
    psi: np.ndarray
    V: Optional[np.ndarray]
    Vp: Optional[np.ndarray]
    events: list[Event]
    termination: Termination
    direction: int

    @property
    def samples(self) -> list[ProfileState]:
        if self.V is None:
            return [ProfileState(r=float(r), psi=float(p))
                    for r, p in zip(self.r, self.psi)]
        return [ProfileState(r=float(r), psi=float(p), V=float(v), Vp=float(w))
                for r, p, v, w in zip(self.r, self.psi, self.V, self.Vp)]


# ----------------------------------------------------------------------
# Right-hand sides (scalar, in r)
# ----------------------------------------------------------------------

def psi_rhs(r: float, psi: float, p: Parameters) -> float:
    """d(psi)/dr for the phase variable psi = k sqrt(1-r^2) V'.

    Equals -(psi^2+1) A(psi, r) / (k (1-r^2)) with the phase-plane
    quadratic A of :mod:`imcfsoliton.geometry`.
    """
    if not -1.0 < r < 1.0:
        raise DomainError(f"psi_rhs needs r in (-1, 1), got {r}")
    s = math.sqrt(1.0 - r * r)
    quad = s * psi * psi - (p.n - 1.0) * (r - p.R) * psi + s
    return -(psi * psi + 1.0) * quad / (p.k * (1.0 - r * r))


def vpp_rhs(r: float, Vp: float, p: Parameters) -> float:
    """V'' as a quartic polynomial in V' with the pole inhomogeneity."""
    if not -1.0 < r < 1.0:
        raise DomainError(f"vpp_rhs needs r in (-1, 1), got {r}")
    k = float(p.k)
    omr2 = 1.0 - r * r
    return (-k * k * omr2 * Vp ** 4
            + k * (p.n - 1.0) * (r - p.R) * Vp ** 3
            - 2.0 * Vp * Vp
            + ((p.n + k - 1.0) * r - (p.n - 1.0) * p.R) * Vp / (k * omr2)
            - 1.0 / (k * k * omr2))


# ----------------------------------------------------------------------
# Dormand-Prince 5(4) machinery
# ----------------------------------------------------------------------

_DP_C = (0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0)
_DP_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0),
    (19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0),
    (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0,
     -5103.0 / 18656.0),
)
_DP_B = (35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0,
         11.0 / 84.0)
# b - b*: weights of the embedded error estimate (7 stages, FSAL stage last)
_DP_E = (71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0,
         -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)


def _hermite(theta0, h, y0, f0, y1, f1, theta):
    """Cubic Hermite value on one step; theta inside [theta0, theta0+h]."""
    s = (theta - theta0) / h
    s2 = s * s
    s3 = s2 * s
    return ((2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * h * f0
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * h * f1)


class _Step:
    """One accepted step with enough data for dense evaluation."""

    __slots__ = ("theta0", "h", "y0", "f0", "y1", "f1")

    def __init__(self, theta0, h, y0, f0, y1, f1):
        self.theta0 = theta0
        self.h = h
        self.y0 = y0
        self.f0 = f0
        self.y1 = y1
        self.f1 = f1

    def psi(self, theta: float) -> float:
        return _hermite(self.theta0, self.h, self.y0[0], self.f0[0],
                        self.y1[0], self.f1[0], theta)


# ----------------------------------------------------------------------
# Event localization
# ----------------------------------------------------------------------

_EVENT_R_TOL = 1e-10


def _bisect_theta(fun, lo: float, hi: float, flo: float) -> float:
    """Root of fun (sign change between lo, hi) to |sin hi - sin lo| <= 1e-10."""
    for _ in range(200):
        if abs(math.sin(hi) - math.sin(lo)) <= _EVENT_R_TOL:
            break
        mid = 0.5 * (lo + hi)
        fmid = fun(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _collect_events(step: _Step, band: Band, p: Parameters,
                    direction: int) -> list[Event]:
    """Events inside one accepted step, ordered along the integration."""
    events: list[tuple[float, Event]] = []
    lo = min(step.theta0, step.theta0 + step.h)
    hi = max(step.theta0, step.theta0 + step.h)

    # Band-edge crossings happen at fixed theta; they also split the step
    # into sub-intervals that lie uniformly inside or outside the band.
    cuts = []
    for edge, r_edge in (("a", band.a), ("b", band.b)):
        th_edge = math.asin(r_edge)
        if lo < th_edge < hi:
            cuts.append(th_edge)
            r_increasing = direction > 0
            entering = (edge == "a" and r_increasing) or (
                edge == "b" and not r_increasing)
            kind = EventKind.ENTER_BAND if entering else EventKind.EXIT_BAND
            events.append((th_edge, Event(kind=kind, r_at=r_edge,
                                          psi_at=float(step.psi(th_edge)))))

    pieces = sorted([lo, hi] + cuts)

    for ta, tb in zip(pieces[:-1], pieces[1:]):
        if tb <= ta:
            continue
        pa, pb = step.psi(ta), step.psi(tb)
        if pa == 0.0:
            events.append((ta, Event(EventKind.ZERO_CROSS, math.sin(ta), 0.0)))
        elif (pa > 0.0) != (pb > 0.0):
            th = _bisect_theta(step.psi, ta, tb, pa)
            events.append((th, Event(EventKind.ZERO_CROSS, math.sin(th),
                                     float(step.psi(th)))))
        # psi - eta_i sign changes exist only where eta does
        r_mid = math.sin(0.5 * (ta + tb))
        if band.a < r_mid < band.b:
            continue
        for i, kind in ((1, EventKind.ETA_TOUCH_1), (2, EventKind.ETA_TOUCH_2)):
            def g(theta: float, _i=i) -> float:
                return step.psi(theta) - eta(_i, math.sin(theta), p)
            try:
                ga, gb = g(ta), g(tb)
            except Exception:
                continue  # endpoint numerically inside the band
            if ga == 0.0:
                events.append((ta, Event(kind, math.sin(ta),
                                         float(step.psi(ta)))))
            elif (ga > 0.0) != (gb > 0.0):
                th = _bisect_theta(g, ta, tb, ga)
                events.append((th, Event(kind, math.sin(th),
                                         float(step.psi(th)))))

    events.sort(key=lambda te: te[0] * direction)
    return [e for _, e in events]


# ----------------------------------------------------------------------
# Terminal diagnostics
# ----------------------------------------------------------------------

def _limit_flag(r: Sequence[float], psi: Sequence[float]) -> LimitFlag:
    """Classify the boundary limit from the final decade of samples.

    Least-squares slope of log|psi| against log(1 - |r|); decay at least
    as fast as sqrt distance with |psi| already small means limit 0,
    growth with |psi| already large means +-inf, anything else stays
    'finite'.
    """
    r = np.asarray(r, dtype=float)
    psi = np.asarray(psi, dtype=float)
    d = np.maximum(1.0 - np.abs(r), 1e-300)
    amp = np.maximum(np.abs(psi), 1e-300)
    d_end = d[-1]
    psi_end = psi[-1]
    mask = d <= 10.0 * d_end
    if mask.sum() < 3:
        mask = d <= 100.0 * d_end
    if mask.sum() < 2:
        return LimitFlag.FINITE
    slope = float(np.polyfit(np.log10(d[mask]), np.log10(amp[mask]), 1)[0])
    if abs(psi_end) <= 1e-4 and slope >= 0.5:
        return LimitFlag.ZERO
    if abs(psi_end) >= 1e2 and slope <= -0.1:
        return LimitFlag.PLUS_INF if psi_end > 0 else LimitFlag.MINUS_INF
    return LimitFlag.FINITE


def _richardson_r1(thetas: Sequence[float]) -> float:
    """Extrapolate the blow-up abscissa from the last three accepted nodes.

    Steps shrink geometrically into the singularity; summing the geometric
    tail of the last ratio locates the blow-up point.
    """
    if len(thetas) < 3:
        return math.sin(thetas[-1])
    t3, t2, t1 = thetas[-3], thetas[-2], thetas[-1]
    d1 = t1 - t2
    d2 = t2 - t3
    if d2 == 0.0:
        return math.sin(t1)
    rho = d1 / d2
    if not 0.0 < rho < 0.95:
        return math.sin(t1)
    return math.sin(t1 + d1 * rho / (1.0 - rho))


def _inside_eta_band(r: float, psi: float, band: Band, p: Parameters) -> bool:
    """True when (r, psi) lies between eta_1 and eta_2 (boundary-bound)."""
    if band.a < r < band.b:
        return False
    try:
        return eta(1, r, p) <= psi <= eta(2, r, p)
    except Exception:
        return False


# ----------------------------------------------------------------------
# The integrator
# ----------------------------------------------------------------------

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
_SHRINK_RUN = 5       # consecutive shrinking steps that confirm a blow-up
_PSI_STALL = 1e3      # |psi| above which a step-size collapse means blow-up
_PSI_ESCAPE = 10.0    # |psi| at which a band-trapped state is pole-bound


def _integrate(ic: ProfileState, direction: int, p: Parameters,
               ctl: StepControl, carry_profile: bool) -> Trace:
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    eps = ctl.boundary_eps
    if not -1.0 + eps < ic.r < 1.0 - eps:
        raise DomainError(f"initial r={ic.r} not inside (-1+eps, 1-eps)")

    n, k, R = float(p.n), float(p.k), p.R
    band = band_bounds(p)

    def f(theta: float, y: Sequence[float]) -> list[float]:
        c = math.cos(theta)
        r = math.sin(theta)
        psi = y[0]
        quad = c * (psi * psi + 1.0) - (n - 1.0) * (r - R) * psi
        dpsi = -(psi * psi + 1.0) * quad / (k * c)
        if not carry_profile:
            return [dpsi]
        Vp = y[2]
        omr2 = c * c
        dVp = (-k * k * omr2 * Vp ** 4
               + k * (n - 1.0) * (r - R) * Vp ** 3
               - 2.0 * Vp * Vp
               + ((n + k - 1.0) * r - (n - 1.0) * R) * Vp / (k * omr2)
               - 1.0 / (k * k * omr2)) * c
        # dV/dtheta = V'(r) cos(theta)
        return [dpsi, Vp * c, dVp]

    theta = math.asin(ic.r)
    theta_stop = math.copysign(math.asin(1.0 - eps), direction)
    if carry_profile:
        V0 = 0.0 if ic.V is None else float(ic.V)
        Vp0 = (float(ic.Vp) if ic.Vp is not None
               else ic.psi / (k * math.sqrt(1.0 - ic.r * ic.r)))
        y = [float(ic.psi), V0, Vp0]
    else:
        y = [float(ic.psi)]
    ndim = len(y)

    thetas = [theta]
    rows = [list(y)]
    events: list[Event] = []
    f0 = f(theta, y)

    h = direction * min(ctl.h_max, 1e-3)
    prev_h_abs = None
    shrink_run = 0
    n_steps = 0
    termination: Optional[Termination] = None

    def handle_step_collapse() -> Termination:
        r_now = math.sin(theta)
        if abs(y[0]) >= _PSI_STALL and not _inside_eta_band(r_now, y[0], band, p):
            r1 = _richardson_r1(thetas)
            sign_minus = y[0] < 0
            events.append(Event(
                kind=EventKind.BLOW_UP_MINUS if sign_minus
                else EventKind.BLOW_UP_PLUS,
                r_at=r1))
            return Termination(
                kind=TerminationKind.BLOW_UP_MINUS if sign_minus
                else TerminationKind.BLOW_UP_PLUS,
                r1=r1)
        raise IllConditioned(
            f"step collapsed below h_min={ctl.h_min} at r={r_now}, psi={y[0]}")

    while termination is None:
        if n_steps >= ctl.max_steps:
            termination = Termination(kind=TerminationKind.STEP_LIMIT)
            break
        if direction * (theta + h) >= direction * theta_stop:
            h = theta_stop - theta

        # one DP5(4) attempt
        ks = [f0]
        failed = False
        for stage in range(1, 6):
            yi = [y[j] + h * sum(_DP_A[stage][m] * ks[m][j]
                                 for m in range(stage)) for j in range(ndim)]
            if not math.isfinite(yi[0]) or abs(yi[0]) > 1e100:
                failed = True
                break
            try:
                ks.append(f(theta + _DP_C[stage] * h, yi))
            except (ValueError, OverflowError, ZeroDivisionError):
                failed = True
                break
        err = math.inf
        if not failed:
            y_new = [y[j] + h * sum(_DP_B[m] * ks[m][j] for m in range(6))
                     for j in range(ndim)]
            try:
                f_new = f(theta + h, y_new)
                ks.append(f_new)
                err = 0.0
                for j in range(ndim):
                    e = h * sum(_DP_E[m] * ks[m][j] for m in range(7))
                    scale = ctl.abs_tol + ctl.rel_tol * max(abs(y[j]),
                                                            abs(y_new[j]))
                    err += (e / scale) ** 2
                err = math.sqrt(err / ndim)
                if not math.isfinite(err):
                    err = math.inf
            except (ValueError, OverflowError, ZeroDivisionError):
                err = math.inf

        if err > 1.0:
            factor = _MIN_FACTOR if err == math.inf else max(
                _MIN_FACTOR, _SAFETY * err ** -0.2)
            h *= factor
            if abs(h) < ctl.h_min:
                termination = handle_step_collapse()
            continue

        # accepted
        n_steps += 1
        step = _Step(theta, h, y, ks[0], y_new, ks[6])
        events.extend(_collect_events(step, band, p, direction))

        if prev_h_abs is not None and abs(h) < prev_h_abs:
            shrink_run += 1
        else:
            shrink_run = 0
        prev_h_abs = abs(h)
        theta += h
        y = y_new
        f0 = ks[6]  # FSAL
        thetas.append(theta)
        rows.append(list(y))

        # Band-trapped escape: between the eta curves beyond the outer
        # band edge and moving toward the pole, the slope field traps the
        # trajectory and its boundary limit is certain.  Following the
        # band any further is a stiff crawl (the attracting rate grows
        # like psi^3), so the trace terminates here with the pole verdict.
        r_now = math.sin(theta)
        if abs(y[0]) >= _PSI_ESCAPE and _inside_eta_band(r_now, y[0], band, p):
            pole_bound = ((direction > 0 and r_now >= band.b and y[0] > 0)
                          or (direction < 0 and r_now <= band.a and y[0] < 0))
            if pole_bound:
                plus_side = direction > 0
                events.append(Event(
                    kind=EventKind.BOUNDARY_PLUS if plus_side
                    else EventKind.BOUNDARY_MINUS,
                    r_at=r_now, psi_at=float(y[0])))
                termination = Termination(
                    kind=TerminationKind.HIT_PLUS_ONE if plus_side
                    else TerminationKind.HIT_MINUS_ONE,
                    limit=LimitFlag.PLUS_INF if plus_side
                    else LimitFlag.MINUS_INF)
                break

        if (abs(y[0]) >= ctl.psi_cap and shrink_run >= _SHRINK_RUN
                and not _inside_eta_band(math.sin(theta), y[0], band, p)):
            r1 = _richardson_r1(thetas)
            sign_minus = y[0] < 0
            events.append(Event(
                kind=EventKind.BLOW_UP_MINUS if sign_minus
                else EventKind.BLOW_UP_PLUS,
                r_at=r1))
            termination = Termination(
                kind=TerminationKind.BLOW_UP_MINUS if sign_minus
                else TerminationKind.BLOW_UP_PLUS,
                r1=r1)
            break

        if theta == theta_stop:
            r_arr = np.sin(np.array(thetas))
            psi_arr = np.array([row[0] for row in rows])
            flag = _limit_flag(r_arr, psi_arr)
            plus_side = direction > 0
            events.append(Event(
                kind=EventKind.BOUNDARY_PLUS if plus_side
                else EventKind.BOUNDARY_MINUS,
                r_at=float(r_arr[-1]), psi_at=float(psi_arr[-1])))
            termination = Termination(
                kind=TerminationKind.HIT_PLUS_ONE if plus_side
                else TerminationKind.HIT_MINUS_ONE,
                limit=flag)
            break

        factor = _MAX_FACTOR if err == 0.0 else min(
            _MAX_FACTOR, _SAFETY * err ** -0.2)
        h *= max(factor, _MIN_FACTOR)
        if abs(h) > ctl.h_max:
            h = math.copysign(ctl.h_max, h)
        if abs(h) < ctl.h_min:
            h = math.copysign(ctl.h_min, h)

    r_arr = np.sin(np.array(thetas))
    data = np.array(rows)
    return Trace(
        r=r_arr,
        psi=data[:, 0],
        V=data[:, 1] if carry_profile else None,
        Vp=data[:, 2] if carry_profile else None,
        events=events,
        termination=termination,
        direction=direction,
    )


def integrate_psi(ic: ProfileState, direction: int, p: Parameters,
                  ctl: StepControl = StepControl()) -> Trace:
    """Integrate the phase equation from ic in the given direction.

    Returns a Trace ending in a terminal event: interior blow-up, boundary
    reached, or step limit.
    """
    return _integrate(ic, direction, p, ctl, carry_profile=False)


def integrate_profile(ic: ProfileState, direction: int, p: Parameters,
                      ctl: StepControl = StepControl()) -> Trace:
    """Integrate psi together with the profile height V and slope V'.

    V' is advanced through its own second-order equation, so the carried
    psi and V' are two independent routes to the same profile; their
    consistency along the trace is an integration-quality check.  A
    missing ic.V defaults to 0 (the equation is invariant under vertical
    shifts); a missing ic.Vp is derived from ic.psi.
    """
    return _integrate(ic, direction, p, ctl, carry_profile=True)


# ----------------------------------------------------------------------
# Closed-form comparison bounds from the blow-up arguments
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ComparisonReport:
    """Worst signed violation of a comparison bound along a trace."""

    which: str
    max_violation: float
    argmax_r: float
    n_samples: int


def _h_comparison(r: np.ndarray, r0: float, psi0: float,
                  p: Parameters) -> np.ndarray:
    """The comparison curve anchored at (r0, psi0).

    Antiderivative of the frozen-coefficient bound on d(arctan psi)/dr,
    F(r) = -(1+psi0^2)/k asin r - psi0 (n-1)/(2k) log(1-r^2)
           - psi0 (n-1) R/(2k) log((1+r)/(1-r)),
    shifted so the curve passes through arctan(psi0) at r0.
    """
    n, k, R = float(p.n), float(p.k), p.R

    def F(x):
        return (-(1.0 + psi0 * psi0) / k * np.arcsin(x)
                - psi0 * (n - 1.0) / (2.0 * k) * np.log(1.0 - x * x)
                - psi0 * (n - 1.0) * R / (2.0 * k)
                * np.log((1.0 + x) / (1.0 - x)))

    return F(r) - F(np.float64(r0)) + math.atan(psi0)


def comparison_bound_h(trace: Trace, which: str,
                       p: Parameters) -> ComparisonReport:
    """Check a trace against the closed-form comparison curve h1 or h2.

    h1 majorizes arctan(psi) along forward blow-down traces (anchored at
    the first sample, psi < 0); h2 minorizes arctan(psi) along forward
    band traces.  max_violation is positive where the bound fails:
    arctan(psi) - h1 for which="h1", h2 - arctan(psi) for which="h2".
    """
    if which not in ("h1", "h2"):
        raise ValueError(f"which must be 'h1' or 'h2', got {which}")
    if len(trace.r) < 2 or trace.direction != 1:
        raise HypothesisUnmet("comparison bounds need a forward trace")
    band = band_bounds(p)
    r0 = float(trace.r[0])
    psi0 = float(trace.psi[0])
    if which == "h1":
        below_eta1 = r0 <= band.a and psi0 < eta(1, r0, p)
        if not (below_eta1 or (band.a < r0 < 1.0 and psi0 < 0.0)):
            raise HypothesisUnmet(
                f"h1 anchor (r0={r0}, psi0={psi0}) matches neither blow-down "
                "hypothesis")
    else:
        in_band = (band.b < r0 < 1.0
                   and eta(1, r0, p) < psi0 < eta(2, r0, p))
        if not in_band:
            raise HypothesisUnmet(
                f"h2 anchor (r0={r0}, psi0={psi0}) is not inside the eta "
                "band over (b, 1)")

    h = _h_comparison(trace.r, r0, psi0, p)
    atan_psi = np.arctan(trace.psi)
    violation = atan_psi - h if which == "h1" else h - atan_psi
    idx = int(np.argmax(violation))
    return ComparisonReport(
        which=which,
        max_violation=float(violation[idx]),
        argmax_r=float(trace.r[idx]),
        n_samples=len(trace.r),
    )
