"""Floating-point cross-checks of the exact exponents.

The monomial integral ``I(r) = int_(0,1]^N x^b dx / sum x^a r^s`` is
evaluated after ``x = exp(-y)`` by a tensor-product midpoint rule on
``[0, L]^N``; the profile integral ``J(r) = int dx / Lambda(x, r)`` over
``(-1, 1)^v`` by Monte Carlo.  A log-domain regression then estimates the
exponents.  The estimate of d0 is reported but never trusted: ``ln ln(1/r)``
is nearly collinear with ``ln(1/r)`` over any practical ladder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .errors import DegenerateDesign, DomainError
from .exponents import IndexPairSet
from .nsw import NSWProfile

DEFAULT_NODES = 256
MC_BLOCK = 1 << 15


def default_truncation(r: float, G: IndexPairSet) -> float:
    """Box side L; the discarded tail is below ``e^-50`` of the peak scale."""
    amax = max(sum(a) for a, _ in G.pairs)
    return max(50.0, 3.0 * math.log(1.0 / r) * amax + 50.0)


def _check_r(r):
    if not 0.0 < r < 1.0:
        raise DomainError(f"r must lie in (0, 1), got {r}")


def eval_I(G: IndexPairSet, r: float, nodes: int = DEFAULT_NODES,
           truncation: Callable[[float, IndexPairSet], float] = default_truncation,
           backend: str | None = None) -> float:
    _check_r(r)
    if G.N > 3:
        raise ValueError("tensor quadrature supports N <= 3; use eval_J instead")
    A = np.array([a for a, _ in G.pairs], dtype=np.float64)
    logw = np.array([s for _, s in G.pairs], dtype=np.float64) * math.log(r)
    b1 = np.array(G.b, dtype=np.float64) + 1.0
    L = truncation(r, G)
    return _kernels.quad_sum(A, logw, b1, nodes, L / nodes, backend)


def eval_I_charts(charts: Sequence[IndexPairSet], r: float, **kw) -> float:
    return sum(eval_I(G, r, **kw) for G in charts)


def _profile_arrays(profile: NSWProfile):
    owner, coeff, exps, degs = [], [], [], []
    deg = profile.degenerate_vars
    for q, L in enumerate(profile.lambdas):
        p = L.poly.restrict(deg)
        degs.append(L.degree)
        for e, c in p.items():
            owner.append(q)
            coeff.append(float(c))
            exps.append(e)
    exps = np.array(exps, dtype=np.int64).reshape(len(coeff), len(deg))
    return np.array(owner), np.array(coeff), exps, np.array(degs, dtype=np.float64)


def monte_carlo_J(profile: NSWProfile, r: float, n_samples: int = 100_000, seed: int = 0,
                  backend: str | None = None) -> tuple[float, float]:
    """(estimate, standard error) of ``int_(-1,1)^v dx / Lambda(x, r)``.

    Samples are drawn in fixed-size blocks from one seeded generator and
    block sums are combined in order, so the result depends only on the seed.
    """
    _check_r(r)
    if n_samples < 10_000:
        raise DomainError("n_samples must be at least 10^4")
    owner, coeff, exps, degs = _profile_arrays(profile)
    rpow = r ** degs
    v = profile.v
    if v == 0:
        return 1.0 / float(np.abs(np.bincount(owner, weights=coeff, minlength=len(degs))) @ rpow), 0.0
    rng = np.random.default_rng(seed)
    s1 = s2 = 0.0
    left = n_samples
    while left:
        k = min(MC_BLOCK, left)
        X = rng.uniform(-1.0, 1.0, size=(k, v))
        vals = _kernels.inv_lambda(X, owner, coeff, exps, rpow, len(degs), backend)
        s1 += math.fsum(vals)
        s2 += math.fsum(vals * vals)
        left -= k
    mean = s1 / n_samples
    var = max(s2 / n_samples - mean * mean, 0.0)
    vol = 2.0 ** v
    return vol * mean, vol * math.sqrt(var / n_samples)


def eval_J(profile: NSWProfile, r: float, n_samples: int = 100_000, seed: int = 0,
           backend: str | None = None) -> float:
    return monte_carlo_J(profile, r, n_samples, seed, backend)[0]


@dataclass(frozen=True)
class FitResult:
    Q0_hat: float
    d0_hat: float
    residual: float
    r_grid: tuple[float, ...]


def fit_exponents(samples: Sequence[tuple[float, float]]) -> FitResult:
    """Least squares of ``ln value = Q0 ln(1/r) + d0 ln ln(1/r) + c``."""
    if len(samples) < 4:
        raise DegenerateDesign("need at least 4 samples")
    samples = sorted(samples, key=lambda t: -t[0])
    r = np.array([s[0] for s in samples], dtype=np.float64)
    val = np.array([s[1] for s in samples], dtype=np.float64)
    if np.any((r <= 0) | (r >= 1)):
        raise DomainError("r values must lie in (0, 1)")
    if len(np.unique(r)) != len(r):
        raise DegenerateDesign("r values must be distinct")
    if np.any(val <= 0):
        raise DomainError("values must be positive")
    L = np.log(1.0 / r)
    X = np.column_stack([L, np.log(L), np.ones_like(L)])
    if np.linalg.matrix_rank(X) < 3:
        raise DegenerateDesign("regression matrix is rank deficient")
    coef, *_ = np.linalg.lstsq(X, np.log(val), rcond=None)
    res = np.log(val) - X @ coef
    return FitResult(float(coef[0]), float(coef[1]), float(np.sqrt(np.mean(res ** 2))),
                     tuple(float(x) for x in r))


def r_ladder(r_min: float, r_max: float, points: int) -> list[float]:
    """Geometrically spaced, strictly decreasing from r_max to r_min."""
    if not 0.0 < r_min < r_max < 1.0:
        raise DomainError("need 0 < r_min < r_max < 1")
    if points < 4:
        raise DegenerateDesign("need at least 4 ladder points")
    return [float(x) for x in np.geomspace(r_max, r_min, points)]


@dataclass(frozen=True)
class Ladder:
    r: tuple[float, ...]
    values: tuple[float, ...]
    fit: FitResult

    @property
    def monotone(self) -> bool:
        # r decreases along the ladder, so values must not decrease
        return all(b >= a for a, b in zip(self.values, self.values[1:]))


def ladder_I(charts: Sequence[IndexPairSet], r_min=1e-5, r_max=1e-2, points=7, **kw) -> Ladder:
    rs = r_ladder(r_min, r_max, points)
    vals = [eval_I_charts(charts, r, **kw) for r in rs]
    return Ladder(tuple(rs), tuple(vals), fit_exponents(list(zip(rs, vals))))


def ladder_J(profile: NSWProfile, r_min=1e-5, r_max=1e-2, points=7, n_samples=100_000,
             seed=0, **kw) -> Ladder:
    rs = r_ladder(r_min, r_max, points)
    vals = [eval_J(profile, r, n_samples, seed + i, **kw) for i, r in enumerate(rs)]
    return Ladder(tuple(rs), tuple(vals), fit_exponents(list(zip(rs, vals))))
