"""Infimum machinery for the mean-tail probability of NB(r, p).

On each parameter interval p in (r/(n+r+1), r/(n+r)] the mean-tail
probability P(NB(r, p) <= mean) is a fixed n+1 term sum whose infimum is
approached, but never attained, as p decreases to the left endpoint.  The
per-interval infimum sequence

    seq(r, n) = (r/(n+r+1))^r * sum_{k=0..n} C(k+r-1, k) (1 - r/(n+r+1))^k

is therefore the whole story: it starts at (r/(r+1))^r and is strictly
increasing in n, so the global infimum over p in (0, 1] is (r/(r+1))^r,
again unattained.  This module evaluates the sequence in its two
equivalent forms (finite sum and incomplete Beta integral), exposes the
per-interval and global infima, and provides the numerical checks for
every identity and inequality that the strict-increase argument rests on:

* sum form vs integral form of the sequence,
* the coefficient identity behind that equivalence,
* the improper tail integral with closed form
  r^r (n+1)^(n+1) / (n+r+1)^(n+r+2),
* the strict bound of the single-panel integral by the same closed form,
  and the strict decrease of its integrand,
* strict increase of consecutive sequence values,
* the brute-force argmin check for the binomial mean-tail probability,
  which is smallest at m closest to 2n/3 (Chvatal's theorem).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConvergenceError
from .nbdist import NBParams, nb_cdf_sum
from .quadrature import integrate
from .specfun import beta, gen_binomial, reg_inc_beta

__all__ = [
    "SeqEntry",
    "VerifyReport",
    "FORM_SUM",
    "FORM_INTEGRAL",
    "SEQ_NOISE_FLOOR",
    "infimum_seq_sum",
    "infimum_seq_integral",
    "interval_infimum",
    "global_infimum",
    "monotonicity_check",
    "tail_closed_form",
    "tail_identity_check",
    "panel_bound_check",
    "panel_decrease_check",
    "coefficient_identity_check",
    "binomial_chvatal_argmin",
]

FORM_SUM = "sum"
FORM_INTEGRAL = "integral"

# Strict-increase gaps must clear this margin to count as genuine.
SEQ_NOISE_FLOOR = 1e-14


@dataclass(frozen=True)
class SeqEntry:
    """One value of the per-interval infimum sequence, tagged with its form."""

    n: int
    value: float
    form: str


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one numerical identity or inequality check."""

    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    passed: bool
    tolerance: float
    label: str = ""
    error: str = ""


def _residual_report(lhs: float, rhs: float, tol: float, label: str) -> VerifyReport:
    abs_err = abs(lhs - rhs)
    if rhs == 0.0:
        rel_err = abs_err
    else:
        rel_err = abs_err / abs(rhs)
    return VerifyReport(lhs, rhs, abs_err, rel_err, rel_err <= tol, tol, label)


def _check_shape(r: float) -> float:
    r = float(r)
    if not math.isfinite(r) or r <= 0.0:
        raise ValueError(f"shape r must be a positive finite real, got {r!r}")
    return r


def infimum_seq_sum(r: float, n: int) -> SeqEntry:
    """Sequence value by its finite-sum form (the primary evaluation path).

    The sum equals P(NB(r, lam) <= n) at lam = r/(n+r+1), the left-endpoint
    limit of the n-th parameter interval.
    """
    r = _check_shape(r)
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a natural number, got {n!r}")
    n = int(n)
    lam = r / (n + r + 1.0)
    return SeqEntry(n, nb_cdf_sum(NBParams(r, lam), n).value, FORM_SUM)


def infimum_seq_integral(r: float, n: int) -> SeqEntry:
    """Sequence value by its incomplete-Beta form, the cross-check path.

    Evaluates I_x(r, n+1) at x = r/(n+1+r), which equals the normalized
    integral of t^(r-1) (1-t)^n over [0, x].
    """
    r = _check_shape(r)
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a natural number, got {n!r}")
    n = int(n)
    x = r / (n + 1.0 + r)
    return SeqEntry(n, reg_inc_beta(x, r, n + 1.0), FORM_INTEGRAL)


def interval_infimum(r: float, n: int) -> float:
    """Infimum of the mean-tail probability over p in (r/(n+r+1), r/(n+r)].

    The value is a one-sided limit as p decreases to the open left
    endpoint; it is not attained by any p in the interval.
    """
    return infimum_seq_sum(r, n).value


def global_infimum(r: float) -> float:
    """The unattained infimum (r / (r + 1))^r of the mean-tail probability.

    Equals ``infimum_seq_sum(r, 0).value`` exactly: both evaluate the same
    power expression.
    """
    r = _check_shape(r)
    return (r / (r + 1.0)) ** r


def monotonicity_check(r: float, n_max: int) -> list[VerifyReport]:
    """Strict-increase reports for consecutive sequence values.

    One report per n in 0..n_max-1 with lhs the n+1 value and rhs the n
    value; passed means the gap exceeds ``SEQ_NOISE_FLOOR``.
    """
    r = _check_shape(r)
    if int(n_max) != n_max or n_max < 1:
        raise ValueError(f"n_max must be a positive integer, got {n_max!r}")
    values = [infimum_seq_sum(r, n).value for n in range(int(n_max) + 1)]
    reports = []
    for n in range(int(n_max)):
        lhs = values[n + 1]
        rhs = values[n]
        abs_err = abs(lhs - rhs)
        rel_err = abs_err / abs(rhs) if rhs != 0.0 else abs_err
        reports.append(
            VerifyReport(
                lhs,
                rhs,
                abs_err,
                rel_err,
                lhs - rhs > SEQ_NOISE_FLOOR,
                SEQ_NOISE_FLOOR,
                f"seq gap r={r:.17g} n={n}",
            )
        )
    return reports


def tail_closed_form(r: float, n: int) -> float:
    """The closed form r^r (n+1)^(n+1) / (n+r+1)^(n+r+2), in the log domain."""
    r = _check_shape(r)
    n = int(n)
    return math.exp(
        r * math.log(r) + (n + 1) * math.log(n + 1.0) - (n + r + 2.0) * math.log(n + r + 1.0)
    )


def tail_identity_check(r: float, n: int, tol: float = 1e-8) -> VerifyReport:
    """Quadrature vs closed form for the weighted tail integral.

    The improper integral of (u-1)^n u^(-n-r-2) (r u/(n+1+r) - 1) over
    [(n+1+r)/r, inf) maps, through the substitution x = 1/u, onto

        mu * int_0^mu (1-x)^n x^(r-1) dx  -  int_0^mu (1-x)^n x^r dx

    with mu = r/(n+r+1).  That finite form is integrated adaptively and
    compared against ``tail_closed_form``.
    """
    r = _check_shape(r)
    if not (tol > 0.0):
        raise ValueError(f"tol must be positive, got {tol!r}")
    n = int(n)
    mu = r / (n + r + 1.0)
    rhs = tail_closed_form(r, n)
    quad_tol = max(rhs * 1e-12, 1e-290)
    label = f"tail identity r={r:.17g} n={n}"
    try:
        first = integrate(
            lambda x: (1.0 - x) ** n * x ** (r - 1.0),
            0.0,
            mu,
            quad_tol,
            singular_power=r if r < 1.0 else None,
        )
        second = integrate(lambda x: (1.0 - x) ** n * x**r, 0.0, mu, quad_tol)
    except ConvergenceError as exc:
        return VerifyReport(math.nan, rhs, math.nan, math.nan, False, tol, label, str(exc))
    lhs = mu * first.value - second.value
    report = _residual_report(lhs, rhs, tol, label)
    return report


def panel_bound_check(r: float, n: int) -> VerifyReport:
    """Strict bound of the single-panel integral by the tail closed form.

    Integrates (u-1)^(n+1) u^(-n-r-2) over the width-1/r panel
    [(n+1+r)/r, (n+2+r)/r]; because the integrand decreases strictly there,
    the integral is strictly below ``tail_closed_form(r, n)``.
    """
    r = _check_shape(r)
    n = int(n)
    lo = (n + 1.0 + r) / r
    hi = (n + 2.0 + r) / r
    rhs = tail_closed_form(r, n)
    quad_tol = max(rhs * 1e-12, 1e-290)
    label = f"panel bound r={r:.17g} n={n}"

    def integrand(u: float) -> float:
        return math.exp((n + 1) * math.log(u - 1.0) - (n + r + 2.0) * math.log(u))

    try:
        result = integrate(integrand, lo, hi, quad_tol)
    except ConvergenceError as exc:
        return VerifyReport(math.nan, rhs, math.nan, math.nan, False, 0.0, label, str(exc))
    lhs = result.value
    abs_err = abs(lhs - rhs)
    rel_err = abs_err / abs(rhs) if rhs != 0.0 else abs_err
    return VerifyReport(lhs, rhs, abs_err, rel_err, lhs < rhs, 0.0, label)


def panel_decrease_check(r: float, n: int, points: int = 100) -> VerifyReport:
    """Strict decrease of (u-1)^(n+1) u^(-n-r-2) across the panel.

    Samples the integrand's logarithm on an evenly spaced grid over
    [(n+1+r)/r, (n+2+r)/r]; lhs is the largest adjacent difference, which
    must be strictly negative.
    """
    r = _check_shape(r)
    n = int(n)
    if points < 2:
        raise ValueError(f"need at least 2 grid points, got {points!r}")
    lo = (n + 1.0 + r) / r
    hi = (n + 2.0 + r) / r
    step = (hi - lo) / (points - 1)
    log_vals = []
    for i in range(points):
        u = hi if i == points - 1 else lo + i * step
        log_vals.append((n + 1) * math.log(u - 1.0) - (n + r + 2.0) * math.log(u))
    worst = max(b - a for a, b in zip(log_vals, log_vals[1:]))
    return VerifyReport(
        worst,
        0.0,
        abs(worst),
        abs(worst),
        worst < 0.0,
        0.0,
        f"panel decrease r={r:.17g} n={n}",
    )


def coefficient_identity_check(r: float, n: int, m: int, tol: float = 1e-10) -> VerifyReport:
    """Summation identity behind the sum/integral equivalence.

    Checks sum_{i=m..n} C(i+r-1, i) C(i, m) against
    C(n, m) / ((r + m) B(n+1, r)) for 1 <= m <= n, by direct summation of
    generalized binomial products on the left and Beta evaluation on the
    right.
    """
    r = _check_shape(r)
    if int(m) != m or int(n) != n or m < 1 or m > n:
        raise ValueError(f"need integers 1 <= m <= n, got m={m!r}, n={n!r}")
    n = int(n)
    m = int(m)
    lhs = math.fsum(
        gen_binomial(i + r - 1.0, i) * gen_binomial(float(i), m) for i in range(m, n + 1)
    )
    rhs = gen_binomial(float(n), m) / ((r + m) * beta(n + 1.0, r))
    return _residual_report(lhs, rhs, tol, f"coefficient identity r={r:.17g} n={n} m={m}")


def _binom_cdf_exact(n: int, m: int) -> Fraction:
    p = Fraction(m, n)
    q = 1 - p
    return sum(
        Fraction(math.comb(n, k)) * p**k * q ** (n - k) for k in range(m + 1)
    )


def _binom_cdf_float(n: int, m: int) -> float:
    if m == 0 or m == n:
        return 1.0
    p = m / n
    log_p = math.log(p)
    log_q = math.log1p(-p)
    total = 0.0
    for k in range(m + 1):
        total += math.exp(
            math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
            + k * log_p + (n - k) * log_q
        )
    return total


def binomial_chvatal_argmin(n: int) -> list[int]:
    """Arguments m in 0..n minimizing P(B(n, m/n) <= m), by brute force.

    Uses exact rational arithmetic for n <= 40 so that ties are decided
    without rounding; the minimizing set consists of the value(s) of m
    closest to 2n/3.
    """
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    if n <= 40:
        values = [_binom_cdf_exact(n, m) for m in range(n + 1)]
    else:
        values = [_binom_cdf_float(n, m) for m in range(n + 1)]
    smallest = min(values)
    return [m for m, v in enumerate(values) if v == smallest]
