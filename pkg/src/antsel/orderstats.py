"""Order statistics of the selection gain over i.i.d. chi-square branch gains.

A receive array of ``n`` antennas over unit-power Rayleigh fading yields a
branch power gain distributed as half a chi-square with ``2n`` degrees of
freedom, i.e. Gamma(n, 1):

    pdf       f(x) = e^{-x} x^{n-1} / (n-1)!
    survival  1 - F(x) = e^{-x} sum_{k<n} x^k / k!

Picking the best of ``m`` independent branches makes the selection gain the
maximum order statistic with cdf F^m.  Everything here is evaluated
tail-first: the survival sum is computed directly (never as one minus a
near-one cdf) and powers of F go through log1p of the survival, which keeps
m up to 1e4 and deep tail levels exact to roundoff.

All functions are pure and thread-safe.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

__all__ = [
    "SolverError",
    "SelectionConfig",
    "TailValue",
    "pdf",
    "survival",
    "cdf",
    "max_cdf",
    "max_pdf",
    "quantile",
    "tail_quantile",
    "characteristic_largest",
    "mean_residual_life",
    "upper_density_root",
]

_MAX_ITER = 200
_LOG_TAIL_TOL = 1e-12


class SolverError(RuntimeError):
    """An internal root solve or quadrature failed to converge.

    Raised instead of returning a wrong value; indicates a bug or an input
    far outside the supported regime, never a routine condition.
    """


@dataclass(frozen=True)
class SelectionConfig:
    """Best-of-``m`` selection over branch gains with ``n`` receive antennas."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m!r}")


class TailValue(NamedTuple):
    """Survival probability paired with its natural log.

    The log form stays informative where the probability itself underflows.
    """

    survival: float
    log_survival: float


def _log_tail_sum(n: int, x: float) -> float:
    """log(sum_{k=0}^{n-1} x^k / k!) for x > 0, stable for any n."""
    if n == 1:
        return 0.0
    lx = math.log(x)
    terms = [k * lx - math.lgamma(k + 1) for k in range(n)]
    hi = max(terms)
    return hi + math.log(math.fsum(math.exp(t - hi) for t in terms))


def _log_survival(n: int, x: float) -> float:
    if x <= 0.0:
        return 0.0
    return -x + _log_tail_sum(n, x)


def pdf(n: int, x: float) -> float:
    """Branch-gain density e^{-x} x^{n-1}/(n-1)!; zero for x < 0."""
    if x < 0.0:
        return 0.0
    if n == 1:
        return math.exp(-x)
    if x == 0.0:
        return 0.0
    return math.exp(-x + (n - 1) * math.log(x) - math.lgamma(n))


def survival(n: int, x: float) -> TailValue:
    """Upper tail 1 - F(x), computed directly from the tail sum."""
    if x <= 0.0:
        return TailValue(1.0, 0.0)
    ls = _log_survival(n, x)
    return TailValue(math.exp(ls), ls)


def cdf(n: int, x: float) -> float:
    """Branch-gain cdf; zero for x <= 0."""
    if x <= 0.0:
        return 0.0
    # -expm1(log survival) keeps small cdf values exact near x = 0.
    return -math.expm1(_log_survival(n, x))


def max_cdf(cfg: SelectionConfig, x: float) -> float:
    """cdf of the selection gain, F^m(x), via m*log1p(-survival)."""
    if x <= 0.0:
        return 0.0
    s = math.exp(_log_survival(cfg.n, x))
    if s >= 1.0:
        return 0.0
    return math.exp(cfg.m * math.log1p(-s))


def max_pdf(cfg: SelectionConfig, x: float) -> float:
    """Density of the selection gain, m F^{m-1}(x) f(x)."""
    if x < 0.0:
        return 0.0
    f = pdf(cfg.n, x)
    if cfg.m == 1:
        return f
    if x == 0.0:
        return 0.0
    s = math.exp(_log_survival(cfg.n, x))
    if s >= 1.0:
        return 0.0
    return cfg.m * math.exp((cfg.m - 1) * math.log1p(-s)) * f


def _tail_seed(n: int, log_tail: float) -> float:
    """Asymptotic location of the tail level exp(log_tail)."""
    t = -log_tail
    if n == 1:
        return t
    return t + (n - 1) * math.log(max(t, 2.0)) - math.lgamma(n)


def tail_quantile(n: int, tail: float) -> float:
    """The x >= 0 at which the survival function equals ``tail``.

    Safeguarded Newton iteration on the log survival, bracketed and with
    bisection fallback; meets |F(x) - p| <= 1e-12 with large margin.
    """
    if not 0.0 < tail <= 1.0:
        raise ValueError(f"tail level must lie in (0, 1], got {tail!r}")
    if tail == 1.0:
        return 0.0
    if n == 1:
        return -math.log(tail)
    log_t = math.log(tail)

    lo = 0.0
    hi = max(_tail_seed(n, log_t), 1.0)
    for _ in range(_MAX_ITER):
        if _log_survival(n, hi) <= log_t:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise SolverError(f"tail bracket failed for n={n}, tail={tail!r}")

    x = 0.5 * (lo + hi)
    for _ in range(_MAX_ITER):
        ls = _log_survival(n, x)
        if abs(ls - log_t) <= _LOG_TAIL_TOL:
            return x
        if ls > log_t:
            lo = x
        else:
            hi = x
        f = pdf(n, x)
        s = math.exp(ls)
        step = (ls - log_t) * s / f if f > 0.0 else math.inf
        nxt = x + step
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 1e-16 * (1.0 + x):
            return nxt
        x = nxt
    raise SolverError(f"tail quantile stalled for n={n}, tail={tail!r}")


def quantile(n: int, p: float) -> float:
    """Inverse cdf; requires 0 <= p < 1 and returns 0 at p = 0."""
    if not 0.0 <= p < 1.0:
        raise ValueError(f"probability must lie in [0, 1), got {p!r}")
    return tail_quantile(n, 1.0 - p)


def characteristic_largest(cfg: SelectionConfig) -> float:
    """The (1 - 1/m) branch quantile: the typical scale of the best of m.

    Equals ln m when n = 1; zero when m = 1.
    """
    if cfg.m == 1:
        return 0.0
    return tail_quantile(cfg.n, 1.0 / cfg.m)


def mean_residual_life(n: int, t: float) -> float:
    """Expected exceedance of a branch gain beyond t, given it exceeds t.

    Closed form: both the integrated tail and the tail itself reduce to
    e^{-t} times a polynomial, so the ratio is polynomial.  Equals 1 for
    n = 1 and approaches 1 + (n-1)/t from above as t grows.
    """
    if t <= 0.0:
        raise ValueError(f"t must be positive, got {t!r}")
    if n == 1:
        return 1.0
    num = 0.0
    den = 0.0
    term = 1.0  # t^i / i!
    for i in range(n):
        if i:
            term *= t / i
        num += (n - i) * term
        den += term
    return num / den


def _log_peak_density(n: int) -> float:
    """Log of the branch pdf at its mode x = n - 1 (n >= 2)."""
    mode = float(n - 1)
    return -mode + (n - 1) * math.log(mode) - math.lgamma(n)


def upper_density_root(cfg: SelectionConfig) -> float:
    """Largest x at which the branch pdf equals 1/m.

    For n >= 2 the pdf is unimodal with peak at x = n - 1; the level 1/m
    must sit below the peak for the crossing to exist, and the root right
    of the mode is returned.  For n = 1 this is exactly ln m.
    """
    n, m = cfg.n, cfg.m
    if n == 1:
        return math.log(m)
    log_level = -math.log(m)
    if log_level >= _log_peak_density(n):
        raise ValueError(
            f"density level 1/m is not below the pdf peak for n={n}, m={m}; "
            "no upper crossing exists (fall back to quantile-based constants)"
        )
    mode = float(n - 1)

    # phi(x) = log pdf(x) - log(1/m), strictly decreasing right of the mode.
    def phi(x: float) -> float:
        return -x + (n - 1) * math.log(x) - math.lgamma(n) - log_level

    lo = mode
    step = max(_tail_seed(n, log_level) - mode, 1.0)
    hi = mode + step
    for _ in range(_MAX_ITER):
        if phi(hi) <= 0.0:
            break
        lo, hi = hi, hi + 2.0 * (hi - mode)
    else:
        raise SolverError(f"density-root bracket failed for n={n}, m={m}")

    x = min(max(_tail_seed(n, log_level), lo + 1e-12), hi)
    for _ in range(_MAX_ITER):
        val = phi(x)
        if abs(val) <= 1e-13:
            return x
        if val > 0.0:
            lo = x
        else:
            hi = x
        slope = (n - 1) / x - 1.0
        nxt = x - val / slope if slope < 0.0 else 0.5 * (lo + hi)
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 1e-16 * (1.0 + x):
            return nxt
        x = nxt
    raise SolverError(f"density root stalled for n={n}, m={m}")
