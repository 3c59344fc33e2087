"""Order-statistic distributions for i.i.d. integer samples, and the
closed-form probability products behind the Lemma 1 / Lemma 2 bounds.

The sampling model is N keys drawn independently and uniformly from
1..M (M > N, M = 4N in the reproduced experiments). For the n-th order
statistic X_(n) of such a sample,

    F(x)   = x / M
    G_n(x) = P(X_(n) <= x) = sum_{j=n}^{N} C(N,j) F(x)^j (1-F(x))^(N-j)

with G_n(0) = 0 by convention. The cross probability

    P(X_(n-k) > Y_(n)) = sum_{x=1}^{M} (1 - G_{n-k}(x)) (G_n(x) - G_n(x-1))

is what the analysis evaluates for various N, n and k. The binomial tail
is summed in log space with compensated addition, good to about 1e-12
absolute for N up to 5000.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import require


@dataclass(frozen=True)
class SampleModel:
    """N i.i.d. draws from the integer universe 1..M, M > N >= 1."""

    N: int
    M: int

    def __post_init__(self):
        require(self.N >= 1, f"sample size must be >= 1, got {self.N}")
        require(self.M > self.N, f"universe size must exceed N, got M={self.M} N={self.N}")


@dataclass(frozen=True)
class ProbCell:
    """One evaluated cross probability P(X_(n-k) > Y_(n))."""

    N: int
    M: int
    n: int
    k: int
    value: float

    def __post_init__(self):
        require(1 <= self.n <= self.N, f"rank {self.n} outside 1..{self.N}")
        require(0 <= self.k <= self.n - 1, f"offset {self.k} outside 0..{self.n - 1}")
        require(0.0 <= self.value <= 1.0, f"probability {self.value} outside [0, 1]")


def _check_x(model: SampleModel, x: int) -> None:
    require(0 <= x <= model.M, f"x={x} outside 0..{model.M}")


def uniform_cdf(model: SampleModel, x: int) -> float:
    """F(x) = x/M for a single draw (F(0) = 0)."""
    _check_x(model, x)
    return x / model.M


def min_cdf(model: SampleModel, x: int) -> float:
    """P(X_(1) <= x) = 1 - (1 - x/M)^N, computed cancellation-free."""
    _check_x(model, x)
    if x == 0:
        return 0.0
    if x == model.M:
        return 1.0
    return -math.expm1(model.N * math.log1p(-x / model.M))


def order_stat_cdf(model: SampleModel, n: int, x: int) -> float:
    """G_n(x) = P(X_(n) <= x), the binomial upper tail at threshold n."""
    require(1 <= n <= model.N, f"rank {n} outside 1..{model.N}")
    _check_x(model, x)
    if x == 0:
        return 0.0
    if x == model.M:
        return 1.0
    N = model.N
    f = x / model.M
    log_f = math.log(f)
    log_1mf = math.log1p(-f)
    lg_n1 = math.lgamma(N + 1)
    terms = [
        math.exp(lg_n1 - math.lgamma(j + 1) - math.lgamma(N - j + 1)
                 + j * log_f + (N - j) * log_1mf)
        for j in range(n, N + 1)
    ]
    return min(1.0, math.fsum(terms))


def prob_cross(model: SampleModel, n: int, k: int) -> float:
    """P(X_(n-k) > Y_(n)) for independent samples X and Y from the model."""
    require(n <= model.N, f"rank {n} exceeds sample size {model.N}")
    require(k >= 0, f"offset must be >= 0, got {k}")
    require(n - k >= 1, f"need n - k >= 1, got n={n} k={k}")
    terms = []
    g_prev = 0.0
    for x in range(1, model.M + 1):
        g_n = order_stat_cdf(model, n, x)
        terms.append((1.0 - order_stat_cdf(model, n - k, x)) * (g_n - g_prev))
        g_prev = g_n
    return min(1.0, max(0.0, math.fsum(terms)))


def lemma1_prob(n: int, m: int, r: int) -> float:
    """Pr(|D| = 2r) under the i.i.d. arrangement model: the product
    n * m (m-1) ... (m-r+1) / ((n+m)(n+m-1) ... (n+m-r))."""
    require(n >= m >= r >= 1, f"lemma1 needs n >= m >= r >= 1, got n={n} m={m} r={r}")
    value = n / (n + m - r)
    for t in range(r):
        value *= (m - t) / (n + m - t)
    return value


def lemma2_prob(m: int, n: int, p: int) -> float:
    """Pr(|P_b| = p) under the i.i.d. arrangement model: the product
    m (m-1) ... (m-p+1) / ((m+n)(m+n-1) ... (m+n-p+1))."""
    require(abs(m - n) <= 1, f"lemma2 needs m within one of n, got m={m} n={n}")
    require(1 <= p <= m, f"lemma2 needs 1 <= p <= m, got p={p} m={m}")
    value = 1.0
    for t in range(p):
        value *= (m - t) / (m + n - t)
    return value
