"""Negative binomial and Pascal distribution evaluation.

The negative binomial law NB(r, p) counts failures before the r-th success,
generalized to real shape r > 0:

    P(NB(r, p) = l) = C(r + l - 1, l) * p^r * (1 - p)^l,  l = 0, 1, 2, ...

with mean r (1 - p) / p.  The partial sums of this pmf can be evaluated two
ways: directly (``nb_cdf_sum``) or through the regularized incomplete Beta
function (``nb_cdf_beta``); the two routes agreeing is one of the identities
this package verifies.

``mean_tail_prob`` is P(NB(r, p) <= mean).  The number of pmf terms in that
probability is constant on parameter intervals p in (r/(n+r+1), r/(n+r)]
(right endpoint included, with r/(0+r) = 1 covering p = 1), and
``mean_interval_index`` locates the interval with exact rational
comparisons so that boundary values of p are never misclassified by
float rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .specfun import log_gamma, reg_inc_beta

__all__ = [
    "NBParams",
    "ProbValue",
    "PATH_DIRECT_SUM",
    "PATH_INCOMPLETE_BETA",
    "nb_pmf",
    "nb_cdf_sum",
    "nb_cdf_beta",
    "nb_mean",
    "mean_interval_index",
    "mean_tail_prob",
    "pascal_pmf",
    "pascal_mean_tail",
]

PATH_DIRECT_SUM = "direct-sum"
PATH_INCOMPLETE_BETA = "incomplete-beta"


@dataclass(frozen=True)
class NBParams:
    """Parameter pair (r, p) with r > 0 and 0 < p <= 1."""

    r: float
    p: float

    def __post_init__(self) -> None:
        r = float(self.r)
        p = float(self.p)
        if not math.isfinite(r) or r <= 0.0:
            raise ValueError(f"shape r must be a positive finite real, got {self.r!r}")
        if not math.isfinite(p) or p <= 0.0 or p > 1.0:
            raise ValueError(f"success probability p must lie in (0, 1], got {self.p!r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "p", p)

    @property
    def q(self) -> float:
        return 1.0 - self.p


@dataclass(frozen=True)
class ProbValue:
    """A probability in [0, 1] tagged with the evaluation path that produced it."""

    value: float
    path: str

    def __float__(self) -> float:
        return self.value


def _check_natural(name: str, value: int) -> int:
    if isinstance(value, bool) or int(value) != value or value < 0:
        raise ValueError(f"{name} must be a natural number, got {value!r}")
    return int(value)


def nb_pmf(params: NBParams, l: int) -> ProbValue:
    """P(NB(r, p) = l), computed in the log domain."""
    l = _check_natural("l", l)
    r, p = params.r, params.p
    if p == 1.0:
        return ProbValue(1.0 if l == 0 else 0.0, PATH_DIRECT_SUM)
    if l == 0:
        return ProbValue(p**r, PATH_DIRECT_SUM)
    ln_pmf = (
        log_gamma(r + l)
        - log_gamma(l + 1.0)
        - log_gamma(r)
        + r * math.log(p)
        + l * math.log1p(-p)
    )
    return ProbValue(math.exp(ln_pmf), PATH_DIRECT_SUM)


def nb_cdf_sum(params: NBParams, n: int) -> ProbValue:
    """P(NB(r, p) <= n) as the direct partial sum of pmf terms.

    Terms follow the ratio recurrence pmf(k+1) = pmf(k) * q (k + r)/(k + 1),
    which keeps every intermediate in [0, 1]; the accumulation is
    Neumaier-compensated.
    """
    n = _check_natural("n", n)
    r, p = params.r, params.p
    if p == 1.0:
        return ProbValue(1.0, PATH_DIRECT_SUM)
    q = 1.0 - p
    term = p**r
    total = term
    comp = 0.0
    for k in range(n):
        term *= q * (k + r) / (k + 1.0)
        fresh = total + term
        if abs(total) >= abs(term):
            comp += (total - fresh) + term
        else:
            comp += (term - fresh) + total
        total = fresh
    return ProbValue(min(total + comp, 1.0), PATH_DIRECT_SUM)


def nb_cdf_beta(params: NBParams, n: int) -> ProbValue:
    """P(NB(r, p) <= n) through the regularized incomplete Beta function.

    The partial sum of pmf terms equals I_p(r, n + 1); this is the identity
    route cross-checked against ``nb_cdf_sum``.
    """
    n = _check_natural("n", n)
    if params.p == 1.0:
        return ProbValue(1.0, PATH_INCOMPLETE_BETA)
    return ProbValue(reg_inc_beta(params.p, params.r, n + 1.0), PATH_INCOMPLETE_BETA)


def nb_mean(params: NBParams) -> float:
    """The expectation r (1 - p) / p."""
    return params.r * (1.0 - params.p) / params.p


def mean_interval_index(params: NBParams) -> int:
    """The unique n >= 0 with r/(n+r+1) < p <= r/(n+r).

    Equals floor(mean) away from interval boundaries.  Membership is decided
    by exact rational comparisons on the stored double values (p (n + r) <= r
    and p (n + r + 1) > r), so p landing exactly on r/(n+r) is classified
    into interval n, never off by one through float flooring.
    """
    r_exact = Fraction(params.r)
    p_exact = Fraction(params.p)
    n = max(0, math.floor(nb_mean(params)))
    while p_exact * (n + r_exact) > r_exact:
        n -= 1
    while p_exact * (n + r_exact + 1) <= r_exact:
        n += 1
    return n


def mean_tail_prob(params: NBParams) -> ProbValue:
    """P(NB(r, p) <= mean), i.e. the partial sum up to the interval index.

    Strictly greater than (r / (r + 1))^r for every valid parameter pair;
    that closed form is the unattained infimum over p.
    """
    return nb_cdf_sum(params, mean_interval_index(params))


def _check_pascal_shape(r: int) -> int:
    if isinstance(r, bool) or float(r) != int(r) or int(r) < 1:
        raise ValueError(f"Pascal shape r must be a positive integer, got {r!r}")
    return int(r)


def pascal_pmf(r: int, p: float, j: int) -> ProbValue:
    """P(B*(r, p) = j) for the Pascal (trials-to-r-th-success) law.

    P(B*(r, p) = j) = C(j - 1, r - 1) (1 - p)^(j - r) p^r for j >= r.
    The binomial coefficient is taken exactly for moderate j, in the log
    domain beyond that.
    """
    r = _check_pascal_shape(r)
    if not (0.0 < p <= 1.0):
        raise ValueError(f"success probability p must lie in (0, 1], got {p!r}")
    if int(j) != j or j < r:
        raise ValueError(f"Pascal support starts at j = r; got j={j!r}, r={r}")
    j = int(j)
    p = float(p)
    if p == 1.0:
        return ProbValue(1.0 if j == r else 0.0, PATH_DIRECT_SUM)
    if j <= 1000:
        value = math.comb(j - 1, r - 1) * p**r * (1.0 - p) ** (j - r)
    else:
        ln_pmf = (
            log_gamma(float(j))
            - log_gamma(float(r))
            - log_gamma(j - r + 1.0)
            + r * math.log(p)
            + (j - r) * math.log1p(-p)
        )
        value = math.exp(ln_pmf)
    return ProbValue(value, PATH_DIRECT_SUM)


def pascal_mean_tail(r: int, p: float) -> ProbValue:
    """P(B*(r, p) <= r / p) for integer r.

    Term-by-term this is the same sum as ``mean_tail_prob`` shifted by r,
    since B*(r, p) has the law of NB(r, p) + r.
    """
    r = _check_pascal_shape(r)
    params = NBParams(float(r), p)
    top = mean_interval_index(params) + r
    total = math.fsum(pascal_pmf(r, p, j).value for j in range(r, top + 1))
    return ProbValue(min(total, 1.0), PATH_DIRECT_SUM)
