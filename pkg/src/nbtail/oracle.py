"""Independent ground-truth generators.

``exact_cdf_rational`` evaluates negative binomial partial sums in exact
rational arithmetic (integer shape only), giving reference values the
floating-point routines must reproduce.

``SampleStream`` draws NB(r, p) variates through the Gamma-Poisson mixture:
G ~ Gamma(shape r, scale (1-p)/p), then a Poisson count with mean G.  All
randomness comes from a splitmix64 generator written out here, so seeded
sequences are reproducible bit for bit regardless of platform or language.
Gamma variates use the Marsaglia-Tsang squeeze method (with the
power-of-uniform boost below shape 1); Poisson counts use CDF inversion
below mean 10 and Hormann's transformed rejection (PTRS) above.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = ["exact_cdf_rational", "SampleStream", "nb_sample", "mc_cdf_estimate"]

_MASK64 = (1 << 64) - 1
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_TWO_POW_MINUS_53 = 2.0**-53


def exact_cdf_rational(r: int, p: Fraction, n: int) -> Fraction:
    """Exact P(NB(r, p) <= n) for integer r >= 1 and rational p in (0, 1]."""
    if isinstance(r, bool) or int(r) != r or r < 1:
        raise ValueError(f"shape r must be a positive integer, got {r!r}")
    r = int(r)
    p = Fraction(p)
    if not (0 < p <= 1):
        raise ValueError(f"success probability p must lie in (0, 1], got {p!r}")
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a natural number, got {n!r}")
    q = 1 - p
    total = Fraction(0)
    for k in range(int(n) + 1):
        total += math.comb(k + r - 1, k) * q**k
    return p**r * total


class SampleStream:
    """Seeded stream of NB(r, p) variates via the Gamma-Poisson mixture.

    A stream is single-owner: advancing it from concurrent contexts is not
    supported.  Parallel sampling should use independently seeded streams.
    """

    def __init__(self, r: float, p: float, seed: int):
        r = float(r)
        p = float(p)
        if not math.isfinite(r) or r <= 0.0:
            raise ValueError(f"shape r must be a positive finite real, got {r!r}")
        if not math.isfinite(p) or p <= 0.0 or p > 1.0:
            raise ValueError(f"success probability p must lie in (0, 1], got {p!r}")
        self.r = r
        self.p = p
        self.seed = int(seed) & _MASK64
        self._state = self.seed
        self._spare_normal: float | None = None

    def _next_uniform(self) -> float:
        """Uniform variate strictly inside (0, 1) from splitmix64."""
        self._state = (self._state + _SPLITMIX_GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        z ^= z >> 31
        return ((z >> 11) + 0.5) * _TWO_POW_MINUS_53

    def _next_normal(self) -> float:
        """Standard normal via the Marsaglia polar method."""
        spare = self._spare_normal
        if spare is not None:
            self._spare_normal = None
            return spare
        while True:
            u = 2.0 * self._next_uniform() - 1.0
            v = 2.0 * self._next_uniform() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                scale = math.sqrt(-2.0 * math.log(s) / s)
                self._spare_normal = v * scale
                return u * scale

    def _next_gamma(self, shape: float) -> float:
        """Gamma(shape, scale 1) variate, Marsaglia-Tsang squeeze method."""
        if shape < 1.0:
            # boost: G(a) = G(a + 1) * U^(1/a)
            return self._next_gamma(shape + 1.0) * self._next_uniform() ** (1.0 / shape)
        d = shape - 1.0 / 3.0
        c = 1.0 / math.sqrt(9.0 * d)
        while True:
            x = self._next_normal()
            t = 1.0 + c * x
            if t <= 0.0:
                continue
            v = t * t * t
            u = self._next_uniform()
            x2 = x * x
            if u < 1.0 - 0.0331 * x2 * x2:
                return d * v
            if math.log(u) < 0.5 * x2 + d * (1.0 - v + math.log(v)):
                return d * v

    def _next_poisson(self, lam: float) -> int:
        if lam <= 0.0:
            return 0
        if lam < 10.0:
            # CDF inversion; the pmf guard stops the scan once the running
            # term underflows, which can only happen past all relevant mass.
            u = self._next_uniform()
            pmf = math.exp(-lam)
            cdf = pmf
            k = 0
            while u > cdf and pmf > 0.0:
                k += 1
                pmf *= lam / k
                cdf += pmf
            return k
        # Hormann's PTRS transformed rejection
        b = 0.931 + 2.53 * math.sqrt(lam)
        a = -0.059 + 0.02483 * b
        inv_alpha = 1.1239 + 1.1328 / (b - 3.4)
        v_r = 0.9277 - 3.6224 / (b - 2.0)
        log_lam = math.log(lam)
        while True:
            u = self._next_uniform() - 0.5
            v = self._next_uniform()
            us = 0.5 - abs(u)
            k = math.floor((2.0 * a / us + b) * u + lam + 0.43)
            if us >= 0.07 and v <= v_r:
                return int(k)
            if k < 0 or (us < 0.013 and v > us):
                continue
            if math.log(v * inv_alpha / (a / (us * us) + b)) <= (
                k * log_lam - lam - math.lgamma(k + 1.0)
            ):
                return int(k)

    def draw(self) -> int:
        """One NB(r, p) variate; advances the stream deterministically."""
        if self.p == 1.0:
            return 0
        scale = (1.0 - self.p) / self.p
        return self._next_poisson(self._next_gamma(self.r) * scale)


def nb_sample(stream: SampleStream) -> int:
    """Draw one variate from the stream."""
    return stream.draw()


def mc_cdf_estimate(
    r: float, p: float, n: int, draws: int, seed: int
) -> tuple[float, float]:
    """Monte Carlo estimate of P(NB(r, p) <= n) with its standard error."""
    if int(draws) != draws or draws < 1:
        raise ValueError(f"draws must be a positive integer, got {draws!r}")
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a natural number, got {n!r}")
    draws = int(draws)
    n = int(n)
    stream = SampleStream(r, p, seed)
    hits = 0
    draw = stream.draw
    for _ in range(draws):
        if draw() <= n:
            hits += 1
    estimate = hits / draws
    std_error = math.sqrt(estimate * (1.0 - estimate) / draws)
    return estimate, std_error
