"""Regime classification, asymptotic scalings and bounds on the step count.

The infrared behaviour of every spectral sum is controlled by a single
exponent zeta built from the channel exponents and the relevant spatial
dimension.  Sign and size of zeta against a boundary (twice the dynamical
exponent for single-qubit dephasing, the dynamical exponent itself for the
pair-correlation sums) select one of four regimes: saturating, logarithmic,
power-law growth, or strong-infrared growth set by the bath size.  Each
regime comes with a closed-form growth law and a matching bound M_max on the
number of correction periods before a trace-distance criterion is violated.

Asymptotic formulas carry dimensionless order-one prefactors that the theory
does not fix; they enter here as calibration constants (c_cal for the
single-qubit bound, b_cal for the multi-qubit one) multiplying the distance
criterion, so that setting them to 1 reproduces the bare formulas and a
one-point fit against the numerically exact sums pins them down.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .bath import BathChannel, BathGeometry, ModeGrid, QubitLayout, gamma, gamma_infinity, w_sum
from .coupling import EffectiveCoupling
from .errors import ConfigError, CriterionUnreachableError, CapabilityError

ZETA_TOL = 1e-12
_SEARCH_CAP = 2**40


class SumKind(Enum):
    SINGLE_DEPHASING = "single_dephasing"
    W_SELF = "w_self"
    W_CORRELATED = "w_correlated"


class Regime(Enum):
    SUPER_OHMIC = "SuperOhmic"
    OHMIC = "Ohmic"
    SUB_OHMIC = "SubOhmic"
    STRONG_IR = "StrongIR"


@dataclass(frozen=True)
class RegimeReport:
    """zeta exponent, its regime boundary and the resulting classification."""

    zeta: float
    boundary: float
    z_exp: float
    kind: SumKind
    regime: Regime


@dataclass(frozen=True)
class BoundInput:
    """Criterion and calibration data shared by the bound formulas."""

    d_crit: float
    sigma_plus_abs: float
    n_logical: int
    delta: float
    c_cal: float = 1.0
    b_cal: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.d_crit < 1.0:
            raise ValueError("distance criterion must lie strictly between 0 and 1")
        if not 0.0 <= self.sigma_plus_abs <= 0.5:
            raise ValueError("initial coherence |<sigma+>| must lie in [0, 1/2]")
        if self.delta <= 0:
            raise ValueError("correction period must be positive")
        if self.n_logical < 0:
            raise ValueError("logical-qubit count must be non-negative")


def zeta_and_regime(
    ch: BathChannel, geom: BathGeometry, kind: SumKind, D_x: int = 0
) -> RegimeReport:
    """Classify the infrared regime of one spectral sum.

    zeta = 2*(z - s) - D for single-qubit dephasing and self-correlation
    sums; the correlated pair sum gains the qubit-array dimension,
    zeta = 2*(z - s) + D_x - D.  A zeta within 1e-12 of zero is logarithmic
    (Ohmic); a zeta at or beyond the boundary is classified strong-infrared
    (worst case).
    """
    if kind == SumKind.W_CORRELATED:
        if D_x < 0 or D_x > geom.D:
            raise ConfigError(f"D_x must lie between 0 and the bath dimension {geom.D}")
        zeta = 2.0 * (ch.z_exp - ch.s_exp) + D_x - geom.D
    else:
        zeta = 2.0 * (ch.z_exp - ch.s_exp) - geom.D
    boundary = 2.0 * ch.z_exp if kind == SumKind.SINGLE_DEPHASING else ch.z_exp
    if abs(zeta) <= ZETA_TOL:
        regime = Regime.OHMIC
    elif zeta < 0:
        regime = Regime.SUPER_OHMIC
    elif zeta < boundary:
        regime = Regime.SUB_OHMIC
    else:
        regime = Regime.STRONG_IR
    return RegimeReport(zeta=zeta, boundary=boundary, z_exp=ch.z_exp, kind=kind, regime=regime)


def trace_distance_single(gamma_val: float, sigma_plus_abs: float) -> float:
    """Exact single-qubit trace distance under pure dephasing.

    D = |<sigma+>| * (1 - exp(-4*gamma)); monotone in gamma, saturating at
    |<sigma+>|.
    """
    if gamma_val < 0:
        raise ValueError("decoherence function must be non-negative")
    return sigma_plus_abs * (-math.expm1(-4.0 * gamma_val))


def _require_kind(report: RegimeReport, *kinds: SumKind) -> None:
    if report.kind not in kinds:
        allowed = ", ".join(k.value for k in kinds)
        raise ConfigError(
            f"regime report of kind '{report.kind.value}' passed where {allowed} is required"
        )


def gamma_asymptotic(
    report: RegimeReport,
    inputs: BoundInput,
    lambda_star: float,
    geom: BathGeometry,
    M: int,
) -> float:
    """Long-time growth law of the dephasing function after M periods.

    Saturating regime: lambda*^2 * Delta^(-zeta/z); logarithmic:
    lambda*^2 * ln M; power law: lambda*^2 * (Delta*M)^(zeta/z); strong
    infrared: (lambda* * Delta)^2 * (L/2pi)^(zeta-2z) * M^2.  The calibration
    constant c_cal multiplies the result.
    """
    _require_kind(report, SumKind.SINGLE_DEPHASING)
    if M < 1:
        raise ValueError("step count must be at least 1")
    z = report.z_exp
    lam2 = lambda_star**2
    delta = inputs.delta
    if report.regime == Regime.SUPER_OHMIC:
        value = lam2 * delta ** (-report.zeta / z)
    elif report.regime == Regime.OHMIC:
        value = lam2 * math.log(M)
    elif report.regime == Regime.SUB_OHMIC:
        value = lam2 * (delta * M) ** (report.zeta / z)
    else:
        value = lam2 * delta**2 * (geom.L / (2.0 * math.pi)) ** (report.zeta - 2.0 * z) * M**2
    return inputs.c_cal * value


def w_sum_asymptotic(
    report: RegimeReport, N: int, geom: BathGeometry, delta: float, M: int
) -> float:
    """Growth law of |sum over qubit pairs of W| after M periods (unit prefactor)."""
    _require_kind(report, SumKind.W_SELF, SumKind.W_CORRELATED)
    if M < 1:
        raise ValueError("step count must be at least 1")
    z = report.z_exp
    if report.regime == Regime.SUPER_OHMIC:
        return N * delta ** (-report.zeta / z)
    if report.regime == Regime.OHMIC:
        return N * math.log(M)
    if report.regime == Regime.SUB_OHMIC:
        return N * (delta * M) ** (report.zeta / z)
    return N * delta * (geom.L / (2.0 * math.pi)) ** (report.zeta - z) * M


def d_sat(grid: ModeGrid, lambda_star: float, sigma_plus_abs: float) -> float:
    """Saturation value of the single-qubit trace distance.

    Uses the long-time mean of gamma (static sum; the oscillatory cosine
    term time-averages to zero, which is the Cesaro-mean convention for a
    discrete quasi-periodic spectrum).  Meaningful as a limit only in the
    saturating regime; elsewhere it is just the cutoff-dominated mean.
    """
    return trace_distance_single(gamma_infinity(grid, lambda_star), sigma_plus_abs)


def _floor_steps(value: float) -> int | float:
    if math.isinf(value):
        return math.inf
    return max(0, math.floor(value))


def mmax_single(
    report: RegimeReport,
    inputs: BoundInput,
    lambda_star: float,
    geom: BathGeometry,
    mode: str = "asymptotic",
    grid: ModeGrid | None = None,
) -> int | float:
    """Largest number of correction periods an isolated logical qubit survives.

    Asymptotic mode inverts the growth law case by case: infinite in the
    saturating regime (requires the criterion to sit above the saturation
    value, checked when a grid is supplied), exp[c_cal * D_crit / lambda*^2]
    in the logarithmic regime, (c_cal * D_crit)^(z/zeta) * lambda*^(-2z/zeta)
    / Delta in the power-law regime, and (2pi/L)^(zeta-2z) *
    sqrt(c_cal * D_crit) / (lambda* * Delta) in the strong-infrared regime;
    the result is floored to an integer.

    Numeric mode searches the exact sums on the supplied grid for the
    smallest M whose trace distance exceeds the criterion and returns M - 1.
    """
    _require_kind(report, SumKind.SINGLE_DEPHASING)
    if mode not in ("asymptotic", "numeric"):
        raise ValueError(f"unknown mode {mode!r}")
    if lambda_star == 0.0:
        return math.inf
    if mode == "numeric":
        return _mmax_single_numeric(inputs, lambda_star, grid)

    z = report.z_exp
    scaled = inputs.c_cal * inputs.d_crit
    if report.regime == Regime.SUPER_OHMIC:
        if grid is not None and d_sat(grid, lambda_star, inputs.sigma_plus_abs) >= inputs.d_crit:
            raise ValueError(
                "saturating regime with criterion at or below the saturation value; "
                "the asymptotic bound does not apply"
            )
        return math.inf
    if report.regime == Regime.OHMIC:
        try:
            return _floor_steps(math.exp(scaled / lambda_star**2))
        except OverflowError:
            return math.inf
    if report.regime == Regime.SUB_OHMIC:
        value = scaled ** (z / report.zeta) * lambda_star ** (-2.0 * z / report.zeta) / inputs.delta
        return _floor_steps(value)
    value = (
        (2.0 * math.pi / geom.L) ** (report.zeta - 2.0 * z)
        * math.sqrt(scaled)
        / (lambda_star * inputs.delta)
    )
    return _floor_steps(value)


def _mmax_single_numeric(
    inputs: BoundInput, lambda_star: float, grid: ModeGrid | None
) -> int | float:
    if grid is None:
        raise ConfigError("numeric mode requires a mode grid")
    if inputs.d_crit >= inputs.sigma_plus_abs:
        raise CriterionUnreachableError(
            f"criterion {inputs.d_crit} can never be exceeded: the trace distance "
            f"saturates at |<sigma+>| = {inputs.sigma_plus_abs}"
        )
    # a hard upper bound: gamma(T) <= 2 * static sum for every T
    ceiling = trace_distance_single(
        2.0 * gamma_infinity(grid, lambda_star), inputs.sigma_plus_abs
    )
    if ceiling <= inputs.d_crit:
        return math.inf

    def exceeded(M: int) -> bool:
        g = gamma(grid, lambda_star, M * inputs.delta)
        return trace_distance_single(g, inputs.sigma_plus_abs) > inputs.d_crit

    if exceeded(1):
        return 0
    hi = 2
    while not exceeded(hi):
        hi *= 2
        if hi > _SEARCH_CAP:
            raise CapabilityError(
                "criterion not exceeded within the search cap; the grid's "
                "infrared resolution may be too coarse for this coupling"
            )
    lo = hi // 2  # exceeded(lo) is False
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if exceeded(mid):
            hi = mid
        else:
            lo = mid
    return lo


def calibrate_c_cal(
    report: RegimeReport,
    inputs: BoundInput,
    lambda_star: float,
    geom: BathGeometry,
    grid: ModeGrid,
) -> float:
    """One-point calibration: the c_cal making the asymptotic bound match numerics.

    Solves the matching regime case of the asymptotic formula for c_cal at
    the numerically exact M_max.  In the saturating regime both routes are
    infinite and c_cal is returned unchanged.
    """
    if report.regime == Regime.SUPER_OHMIC:
        return inputs.c_cal
    m_num = _mmax_single_numeric(inputs, lambda_star, grid)
    if not m_num or math.isinf(m_num):
        raise ValueError(f"numeric bound {m_num} cannot calibrate the asymptotic formula")
    z = report.z_exp
    if report.regime == Regime.OHMIC:
        return math.log(m_num) * lambda_star**2 / inputs.d_crit
    if report.regime == Regime.SUB_OHMIC:
        return (m_num * inputs.delta) ** (report.zeta / z) * lambda_star**2 / inputs.d_crit
    root = m_num * lambda_star * inputs.delta / (2.0 * math.pi / geom.L) ** (report.zeta - 2.0 * z)
    return root**2 / inputs.d_crit


def mmax_multi(
    report: RegimeReport,
    inputs: BoundInput,
    lambda_star: float,
    geom: BathGeometry,
) -> int | float:
    """Bound on the step count from one channel of an N-qubit register.

    Case by case: infinite (saturating); exp[b_cal * D_crit / (N lambda*)]
    (logarithmic); Delta^-1 * [b_cal * D_crit / (N lambda*)]^(z/zeta)
    (power law); (2pi/L)^(zeta-z) * b_cal * D_crit / (N lambda* Delta)
    (strong infrared).  Floored to an integer.  The overall register bound
    is the minimum over channels.
    """
    _require_kind(report, SumKind.W_SELF, SumKind.W_CORRELATED)
    if inputs.n_logical == 0:
        raise ConfigError("logical-qubit count N must be positive for the register bound")
    if lambda_star == 0.0:
        return math.inf
    z = report.z_exp
    scaled = inputs.b_cal * inputs.d_crit / (inputs.n_logical * lambda_star)
    if report.regime == Regime.SUPER_OHMIC:
        return math.inf
    if report.regime == Regime.OHMIC:
        try:
            return _floor_steps(math.exp(scaled))
        except OverflowError:
            return math.inf
    if report.regime == Regime.SUB_OHMIC:
        return _floor_steps(scaled ** (z / report.zeta) / inputs.delta)
    value = (2.0 * math.pi / geom.L) ** (report.zeta - z) * scaled / inputs.delta
    return _floor_steps(value)


def hs_distance(
    grids: Mapping[str, ModeGrid],
    couplings: EffectiveCoupling,
    layout: QubitLayout,
    T: float,
    proportionality: float = 1.0,
) -> float:
    """Hilbert-Schmidt distance bound for the full register.

    D_HS = proportionality * sqrt(sum over channels of lambda*^2 * |sum over
    position pairs of W(T)|^2), with the pair sum running over all ordered
    logical-position pairs including the diagonal.
    """
    n = layout.n_logical
    strongest = couplings.max_value
    if strongest**2 * n > 0.1:
        warnings.warn(
            f"perturbative bound stretched: (max lambda*)^2 * N = {strongest**2 * n:.3g} > 0.1",
            stacklevel=2,
        )
    acc = 0.0
    for axis, lam_star in couplings.lambda_star.items():
        if lam_star == 0.0:
            continue
        if axis not in grids:
            raise ConfigError(f"no mode grid supplied for channel '{axis}'")
        grid = grids[axis]
        positions = layout.padded_logical_positions(grid.D)
        total = w_sum(grid, positions, T)
        acc += lam_star**2 * abs(total) ** 2
    return proportionality * math.sqrt(acc)


def mmax_multi_numeric(
    grids: Mapping[str, ModeGrid],
    couplings: EffectiveCoupling,
    layout: QubitLayout,
    inputs: BoundInput,
    proportionality: float = 1.0,
) -> int | float:
    """Smallest M - 1 whose Hilbert-Schmidt bound exceeds the criterion."""
    if all(v == 0.0 for v in couplings.lambda_star.values()):
        return math.inf
    # hard ceiling: |sum of W| <= 2 * prefactor * N^2 * static sum per channel
    n = layout.n_logical
    ceiling_sq = 0.0
    for axis, lam_star in couplings.lambda_star.items():
        if lam_star == 0.0:
            continue
        grid = grids[axis]
        ceiling_sq += (lam_star * 2.0 * grid.prefactor * n**2 * grid.static_sum) ** 2
    if proportionality * math.sqrt(ceiling_sq) <= inputs.d_crit:
        return math.inf

    def exceeded(M: int) -> bool:
        return (
            hs_distance(grids, couplings, layout, M * inputs.delta, proportionality)
            > inputs.d_crit
        )

    if exceeded(1):
        return 0
    hi = 2
    while not exceeded(hi):
        hi *= 2
        if hi > _SEARCH_CAP:
            raise CapabilityError(
                "criterion not exceeded within the search cap; couplings may be "
                "too weak for a finite register bound on this grid"
            )
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if exceeded(mid):
            hi = mid
        else:
            lo = mid
    return lo


def fit_loglog_slope(series: Sequence[tuple[float, float]]) -> tuple[float, float]:
    """Least-squares slope of ln(value) against ln(M).

    Returns (slope, max absolute residual).  Requires at least 8 strictly
    increasing M values; non-positive values are a domain error (they signal
    the wrong regime, e.g. a saturated decoherence function).
    """
    if len(series) < 8:
        raise ValueError("need at least 8 points for a slope fit")
    m = np.asarray([p[0] for p in series], dtype=np.float64)
    vals = np.asarray([p[1] for p in series], dtype=np.float64)
    if np.any(np.diff(m) <= 0):
        raise ValueError("M values must be strictly increasing")
    if np.any(vals <= 0):
        raise ValueError(
            "series contains non-positive values; the quantity is not in a "
            "power-law regime (it may be saturated or identically zero)"
        )
    x = np.log(m)
    y = np.log(vals)
    design = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(design, y, rcond=None)
    residuals = y - (slope * x + intercept)
    return float(slope), float(np.max(np.abs(residuals)))
