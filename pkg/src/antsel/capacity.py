"""Outage and ergodic capacity of the best-antenna selection link.

Rates are in bits/s/Hz over a flat channel with average SINR ``rho``
(linear; dB conversion is a CLI concern).  The exact routes invert or
integrate the selection-gain law from :mod:`antsel.orderstats`; the
approximate routes use the Gumbel fit; the bounds sandwich the ergodic
capacity between two closed-form quantile expressions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable

from scipy.integrate import quad

from .gumbel import EULER_GAMMA, FitStrategy, normalizing_constants
from .orderstats import (
    SelectionConfig,
    SolverError,
    characteristic_largest,
    max_cdf,
    max_pdf,
    quantile,
    tail_quantile,
)

__all__ = [
    "Method",
    "LinkParams",
    "CapacityResult",
    "outage_probability",
    "outage_capacity",
    "ergodic_capacity",
    "ergodic_bounds",
    "ergodic_approx",
    "mean_selection_gain",
    "selection_gain_variance",
]

_LN2 = math.log(2.0)
_EXP_GAMMA = math.exp(EULER_GAMMA)

# Adaptive quadrature settings: absolute tolerance and the tail mass left
# outside the truncated integration interval.
QUAD_ABS_TOL = 1e-9
_TRUNCATION_MASS = 1e-12


class Method(str, Enum):
    """How a capacity value was obtained."""

    EXACT_QUADRATURE = "exact-quadrature"
    BOUND_LOWER = "bound-lower"
    BOUND_UPPER = "bound-upper"
    GUMBEL_APPROX = "gumbel-approx"
    QUANTILE_APPROX = "quantile-approx"
    MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class LinkParams:
    """Average SINR of the link as a linear power ratio."""

    rho: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.rho) and self.rho > 0.0):
            raise ValueError(f"rho must be a positive finite number, got {self.rho!r}")


@dataclass(frozen=True)
class CapacityResult:
    """A capacity value (bits/s/Hz) with its method tag and error estimate.

    ``error_estimate`` is the quadrature error bound or the Monte Carlo
    standard error; zero for closed forms.  ``degenerate`` marks a Gumbel
    approximation that strayed below the physical support and was clamped
    to zero.
    """

    value: float
    method: Method
    error_estimate: float = 0.0
    degenerate: bool = False

    def __post_init__(self) -> None:
        if self.value < 0.0:
            raise ValueError(f"capacity must be nonnegative, got {self.value!r}")


def _log2_1p(y: float) -> float:
    return math.log1p(y) / _LN2


def _upper_cutoff(cfg: SelectionConfig) -> float:
    """Selection-gain quantile leaving _TRUNCATION_MASS above it."""
    branch_tail = -math.expm1(math.log1p(-_TRUNCATION_MASS) / cfg.m)
    return tail_quantile(cfg.n, branch_tail)


def _expect(cfg: SelectionConfig, fn: Callable[[float], float]) -> tuple[float, float]:
    """E[fn(X)] over the selection gain; returns (value, error estimate)."""
    x_hi = _upper_cutoff(cfg)
    peak = characteristic_largest(cfg)
    points = [peak] if 0.0 < peak < x_hi else None
    out = quad(
        lambda x: fn(x) * max_pdf(cfg, x),
        0.0,
        x_hi,
        epsabs=QUAD_ABS_TOL,
        epsrel=1e-10,
        limit=200,
        points=points,
        full_output=1,
    )
    value, abserr = out[0], out[1]
    if len(out) > 3:
        raise SolverError(
            f"quadrature did not converge for n={cfg.n}, m={cfg.m} "
            f"(partial estimate {value!r}, error {abserr!r}): {out[3]}"
        )
    return value, abserr


def outage_probability(
    cfg: SelectionConfig, link: LinkParams, c0: float, mode: str = "exact"
) -> float:
    """Probability that the instantaneous rate falls at or below ``c0``.

    The rate threshold maps to the gain threshold (2^c0 - 1)/rho.  Mode
    "exact" evaluates the selection-gain cdf there; "gumbel" evaluates the
    MRL-constants Gumbel fit instead.
    """
    if c0 < 0.0:
        raise ValueError(f"rate threshold must be nonnegative, got {c0!r}")
    threshold = math.expm1(c0 * _LN2) / link.rho
    if mode == "exact":
        return max_cdf(cfg, threshold)
    if mode == "gumbel":
        fit = normalizing_constants(cfg, FitStrategy.MRL)
        return fit.cdf(threshold)
    raise ValueError(f"mode must be 'exact' or 'gumbel', got {mode!r}")


def outage_capacity(
    cfg: SelectionConfig, link: LinkParams, p0: float, mode: str = "exact"
) -> CapacityResult:
    """Largest rate whose outage probability is ``p0``.

    Exact: log2(1 + rho F^{-1}(p0^{1/m})).  Gumbel: the fitted quantile
    a - b ln(-ln p0); if that strays below zero the result is clamped to a
    zero rate and flagged degenerate.
    """
    if not 0.0 < p0 < 1.0:
        raise ValueError(f"outage probability must lie in (0, 1), got {p0!r}")
    if mode == "exact":
        branch_p = math.exp(math.log(p0) / cfg.m)
        value = _log2_1p(link.rho * quantile(cfg.n, branch_p))
        return CapacityResult(value, Method.EXACT_QUADRATURE)
    if mode == "gumbel":
        fit = normalizing_constants(cfg, FitStrategy.MRL)
        gain = fit.location - fit.scale * math.log(-math.log(p0))
        if gain < 0.0:
            return CapacityResult(0.0, Method.GUMBEL_APPROX, degenerate=True)
        return CapacityResult(_log2_1p(link.rho * gain), Method.GUMBEL_APPROX)
    raise ValueError(f"mode must be 'exact' or 'gumbel', got {mode!r}")


@lru_cache(maxsize=None)
def ergodic_capacity(cfg: SelectionConfig, link: LinkParams) -> CapacityResult:
    """E[log2(1 + rho X)] over the selection gain, by adaptive quadrature."""
    rho = link.rho
    value, abserr = _expect(cfg, lambda x: _log2_1p(rho * x))
    return CapacityResult(value, Method.EXACT_QUADRATURE, abserr)


def ergodic_bounds(
    cfg: SelectionConfig, link: LinkParams
) -> tuple[CapacityResult, CapacityResult]:
    """Closed-form sandwich around the ergodic capacity.

    Lower: log2(1 + rho q) at the (1 - 1/m) quantile q.  Upper: the same
    expression at the quantile with tail level 1/(e^γ (m+1)).
    """
    rho = link.rho
    lower = _log2_1p(rho * characteristic_largest(cfg))
    q_hi = tail_quantile(cfg.n, 1.0 / (_EXP_GAMMA * (cfg.m + 1)))
    upper = _log2_1p(rho * q_hi)
    return (
        CapacityResult(lower, Method.BOUND_LOWER),
        CapacityResult(upper, Method.BOUND_UPPER),
    )


def ergodic_approx(cfg: SelectionConfig, link: LinkParams) -> CapacityResult:
    """Closed-form approximation log2(1 + rho (q + γ)) with q the
    (1 - 1/m) quantile; lies inside the sandwich bounds."""
    value = _log2_1p(link.rho * (characteristic_largest(cfg) + EULER_GAMMA))
    return CapacityResult(value, Method.QUANTILE_APPROX)


@lru_cache(maxsize=None)
def mean_selection_gain(cfg: SelectionConfig) -> float:
    """E[X] of the selection gain by quadrature (harmonic sum for n = 1)."""
    return _expect(cfg, lambda x: x)[0]


@lru_cache(maxsize=None)
def selection_gain_variance(cfg: SelectionConfig) -> float:
    """Var[X] of the selection gain by quadrature."""
    second = _expect(cfg, lambda x: x * x)[0]
    mean = mean_selection_gain(cfg)
    return second - mean * mean
