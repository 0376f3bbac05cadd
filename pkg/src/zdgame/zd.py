"""Construction, recovery, and validation of zero-determinant (ZD) strategies.

A ZD strategy for player X pins the two discounted payoffs to a line
``s_X - kappa = chi * (s_Y - kappa)`` no matter what the opponent plays.
The positively correlated family (chi >= 1, "pcZD") covers extortionate
and generous play and only exists above a critical discount factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError, DomainError, InfeasibleError
from .game import PayoffParams, Strategy, strategy_tuple, validate_delta
from .payoffs import payoff_determinant

__all__ = [
    "ZDParams",
    "NotZD",
    "PcZDReport",
    "make_zd",
    "recover_zd",
    "critical_discount",
    "is_pczd",
    "verify_linear_relation",
    "zd_consistency_residual",
    "feasible_phi_interval",
    "sample_pczd",
]


@dataclass(frozen=True)
class ZDParams:
    """Enforcer parameterization: scale ``phi``, slope ``chi``, baseline ``kappa``.

    The underlying linear-constraint coefficients are recovered as
    ``alpha = phi``, ``beta = -phi*chi``, ``gamma = phi*(chi-1)*kappa``.
    """

    phi: float
    chi: float
    kappa: float

    def __post_init__(self):
        if float(self.phi) == 0.0:
            raise DomainError("phi must be nonzero (zero scale is the equalizer branch)")
        for name in ("phi", "chi", "kappa"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def alpha(self) -> float:
        return self.phi

    @property
    def beta(self) -> float:
        return -self.phi * self.chi

    @property
    def gamma(self) -> float:
        return self.phi * (self.chi - 1.0) * self.kappa


@dataclass(frozen=True)
class NotZD:
    """Returned by :func:`recover_zd` when the four defining equations are inconsistent."""

    residual: float

    def __bool__(self):
        return False


def _zd_targets(zd: ZDParams, params: PayoffParams):
    """Right-hand sides of the four conditional-probability equations."""
    T, S = params.T, params.S
    phi, chi, kappa = zd.phi, zd.chi, zd.kappa
    return (
        1.0 - phi * (chi - 1.0) * (1.0 - kappa),
        1.0 - phi * (chi * T - S - (chi - 1.0) * kappa),
        phi * (T - chi * S + (chi - 1.0) * kappa),
        phi * (chi - 1.0) * kappa,
    )


def make_zd(zd: ZDParams, p0: float, delta: float, params: PayoffParams) -> Strategy:
    """Solve the enforcer equations for the four conditional probabilities.

    The first-round probability ``p0`` is a free input.  Raises
    :class:`InfeasibleError` listing every entry that left [0, 1]; this is
    how a discount factor at or below the critical value manifests.
    """
    delta = validate_delta(delta)
    p0 = float(p0)
    if not (0.0 <= p0 <= 1.0):
        raise DomainError(f"p0={p0} outside [0, 1]")
    base = (1.0 - delta) * p0
    targets = _zd_targets(zd, params)
    entries = [(t - base) / delta for t in targets]
    # Absorb pure float noise at the cube boundary before feasibility checks.
    snapped = []
    violations = []
    for name, v in zip(("p1", "p2", "p3", "p4"), entries):
        if -1e-12 <= v < 0.0:
            v = 0.0
        elif 1.0 < v <= 1.0 + 1e-12:
            v = 1.0
        if not (0.0 <= v <= 1.0):
            violations.append((name, v))
        snapped.append(v)
    if violations:
        detail = ", ".join(f"{n}={v:.6g}" for n, v in violations)
        raise InfeasibleError(
            f"no valid strategy for phi={zd.phi}, chi={zd.chi}, kappa={zd.kappa}, "
            f"p0={p0}, delta={delta}: {detail}",
            violations=violations,
        )
    return Strategy(p0, *snapped)


def recover_zd(p, delta, params: PayoffParams, tol: float = 1e-10, alpha_tol: float = 1e-12):
    """Fit the enforcer coefficients to a strategy.

    The four defining equations form an overdetermined linear system in
    (alpha, beta, gamma); it is solved by least squares and accepted only
    when the worst equation residual stays below ``tol``.  Returns
    :class:`ZDParams`, or :class:`NotZD` when inconsistent.  Raises
    :class:`DegenerateError` on the equalizer branch (alpha ~ 0), where the
    slope is undefined.
    """
    pt = strategy_tuple(p)
    delta = validate_delta(delta)
    T, S = params.T, params.S
    p0, p1, p2, p3, p4 = pt
    base = (1.0 - delta) * p0
    b = np.array(
        [
            -1.0 + delta * p1 + base,
            -1.0 + delta * p2 + base,
            delta * p3 + base,
            delta * p4 + base,
        ]
    )
    a = np.array(
        [
            [1.0, 1.0, 1.0],
            [S, T, 1.0],
            [T, S, 1.0],
            [0.0, 0.0, 1.0],
        ]
    )
    coeffs, *_ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.max(np.abs(a @ coeffs - b)))
    if residual > tol:
        return NotZD(residual=residual)
    alpha, beta, gamma = (float(v) for v in coeffs)
    if abs(alpha) <= alpha_tol:
        raise DegenerateError(
            f"alpha={alpha:.3e} vanishes: equalizer strategy, slope undefined"
        )
    phi = alpha
    chi = -beta / alpha
    scale = phi * (chi - 1.0)
    kappa = gamma / scale if abs(scale) > 1e-300 else 0.0
    return ZDParams(phi=phi, chi=chi, kappa=kappa)


def critical_discount(params: PayoffParams) -> float:
    """Largest discount factor at which no positively correlated enforcer exists."""
    return max((params.T - 1.0) / params.T, -params.S / (1.0 - params.S))


def zd_consistency_residual(p, delta, params: PayoffParams) -> float:
    """Scalar consequence of the four enforcer equations; ~0 for every ZD strategy."""
    _, p1, p2, p3, p4 = strategy_tuple(p)
    delta = validate_delta(delta)
    theta = params.theta
    return abs(
        delta * p2 + delta * p3 - 1.0 - 2.0 * delta * p4
        + (1.0 - delta * p1 + delta * p4) * theta
    )


@dataclass(frozen=True)
class PcZDReport:
    """Outcome of the positively-correlated check, with diagnostics."""

    is_pczd: bool
    chi: float | None
    kappa: float | None
    zd_ok: bool
    equalizer: bool
    chi_ok: bool
    delta_ok: bool
    ordering_ok: bool
    critical_delta: float

    def __bool__(self):
        return self.is_pczd


def is_pczd(p, delta, params: PayoffParams, tol: float = 1e-10) -> PcZDReport:
    """True iff the strategy is ZD with slope chi >= 1 and delta above critical.

    The report also carries the conditional-probability ordering checks
    p1 > p2 and p3 > p4 that every positively correlated enforcer satisfies.
    """
    pt = strategy_tuple(p)
    delta = validate_delta(delta)
    dc = critical_discount(params)
    delta_ok = delta > dc
    ordering_ok = pt[1] > pt[2] and pt[3] > pt[4]
    try:
        recovered = recover_zd(pt, delta, params, tol=tol)
    except DegenerateError:
        return PcZDReport(
            is_pczd=False, chi=None, kappa=None, zd_ok=True, equalizer=True,
            chi_ok=False, delta_ok=delta_ok, ordering_ok=ordering_ok, critical_delta=dc,
        )
    if isinstance(recovered, NotZD):
        return PcZDReport(
            is_pczd=False, chi=None, kappa=None, zd_ok=False, equalizer=False,
            chi_ok=False, delta_ok=delta_ok, ordering_ok=ordering_ok, critical_delta=dc,
        )
    chi_ok = recovered.chi >= 1.0 - 1e-12
    return PcZDReport(
        is_pczd=chi_ok and delta_ok,
        chi=recovered.chi,
        kappa=recovered.kappa,
        zd_ok=True,
        equalizer=False,
        chi_ok=chi_ok,
        delta_ok=delta_ok,
        ordering_ok=ordering_ok,
        critical_delta=dc,
    )


def verify_linear_relation(p, zd: ZDParams, delta, params: PayoffParams, q) -> float:
    """Residual of the enforced payoff line at one opponent strategy."""
    pair = payoff_determinant(p, q, delta, params)
    return abs(pair.s_x - zd.kappa - zd.chi * (pair.s_y - zd.kappa))


def feasible_phi_interval(chi, kappa, p0, delta, params: PayoffParams):
    """Open interval of scale values phi > 0 yielding a valid strategy, or None.

    Each conditional probability is affine in phi, so the cube constraints
    intersect to a single interval.
    """
    delta = validate_delta(delta)
    T, S = params.T, params.S
    base = (1.0 - delta) * float(p0)
    # p_j = (const_j + slope_j * phi) / delta
    const = (1.0 - base, 1.0 - base, -base, -base)
    slope = (
        -(chi - 1.0) * (1.0 - kappa),
        -(chi * T - S - (chi - 1.0) * kappa),
        T - chi * S + (chi - 1.0) * kappa,
        (chi - 1.0) * kappa,
    )
    lo, hi = 0.0, float("inf")
    for c, s in zip(const, slope):
        if abs(s) < 1e-300:
            if not (0.0 <= c / delta <= 1.0):
                return None
            continue
        bound_a = -c / s
        bound_b = (delta - c) / s
        left, right = min(bound_a, bound_b), max(bound_a, bound_b)
        lo, hi = max(lo, left), min(hi, right)
    if not (lo < hi):
        return None
    return (lo, hi)


def sample_pczd(rng, params: PayoffParams, delta=None, p0=None, kappa=None,
                chi_max: float = 6.0, tries: int = 500):
    """Draw a random feasible positively correlated enforcer.

    Returns ``(strategy, zd_params, delta)``.  ``rng`` is a numpy Generator;
    fixing ``delta``, ``p0``, or ``kappa`` narrows the draw (``p0=1,
    kappa=1`` gives the family with p0 = p1 = 1).  Raises ``RuntimeError``
    if no feasible draw is found, which signals an infeasible fixed
    combination rather than bad luck.
    """
    dc = critical_discount(params)
    for _ in range(tries):
        d = delta if delta is not None else rng.uniform(dc + 0.01, 0.995)
        if not (dc < d < 1.0):
            raise DomainError(f"delta={d} not above critical value {dc}")
        chi = rng.uniform(1.0 + 1e-6, chi_max)
        k = kappa if kappa is not None else rng.uniform(0.0, 1.0)
        start = p0 if p0 is not None else rng.uniform(0.0, 1.0)
        window = feasible_phi_interval(chi, k, start, d, params)
        if window is None:
            continue
        lo, hi = window
        span = hi - lo
        phi = rng.uniform(lo + 0.01 * span, hi - 0.01 * span)
        if phi <= 0.0:
            continue
        zd = ZDParams(phi=phi, chi=chi, kappa=k)
        try:
            strat = make_zd(zd, start, d, params)
        except InfeasibleError:
            continue
        return strat, zd, d
    raise RuntimeError(
        f"no feasible pcZD draw in {tries} tries "
        f"(delta={delta}, p0={p0}, kappa={kappa}, T={params.T}, S={params.S})"
    )
