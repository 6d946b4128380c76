"""Asymptotic exponents (Q0, d0) of ``J(r) = int dx / Lambda(x, r) ~ r^-Q0 |ln r|^d0``.

Three routes lead to the exponents:

* no degenerate variable: ``(Q, 0)``;
* one degenerate variable ``x_j``: closed form in ``Q - w`` and ``alpha_j``;
* several: the integrand restricted to the degenerate variables must be a
  sum of monomials ``x^a r^s``.  After ``x = exp(-y ln(1/r))`` each pair
  (a, s) dominates on a polyhedron ``P_{a,s}``, and its contribution follows
  from maximising ``<a - b - 1, y>`` over it.

Users who resolve singularities by hand may feed the monomial index sets
directly ("charts"), with a Jacobian exponent ``b``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (Divergent, ImpossibleProfile, NeedsResolution,
                     NoFullDimensionalPair)
from .nsw import NSWProfile
from .polyalg import Poly, inverse_q
from .polyhedra import RationalPolyhedron, Status, is_full_dim, lp_maximize, optimal_face

Pair = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class IndexPairSet:
    """Denominator ``sum x^a r^s`` over pairs, numerator ``x^b`` on (0,1]^N."""

    N: int
    pairs: tuple[Pair, ...]
    b: tuple[int, ...]

    def __init__(self, pairs: Iterable[Pair], b: Sequence[int] | None = None, N: int | None = None):
        canon = sorted({(tuple(int(v) for v in a), int(s)) for a, s in pairs})
        if not canon:
            raise ValueError("an index set needs at least one pair")
        if N is None:
            N = len(canon[0][0])
        if any(len(a) != N for a, _ in canon):
            raise ValueError("every multi-index must have length N")
        if any(v < 0 for a, s in canon for v in (*a, s)):
            raise ValueError("exponents must be non-negative")
        b = tuple(int(v) for v in b) if b is not None else (0,) * N
        if len(b) != N or any(v < 0 for v in b):
            raise ValueError("b must be a non-negative multi-index of length N")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "pairs", tuple(canon))
        object.__setattr__(self, "b", b)

    def polyhedron(self, pair: Pair) -> RationalPolyhedron:
        """Region of [0, inf)^N where ``pair`` has the smallest ``<a,y> + s``."""
        a, s = pair
        rows = []
        for a2, s2 in self.pairs:
            if (a2, s2) == (a, s):
                continue
            rows.append((tuple(x - x2 for x, x2 in zip(a, a2)), s2 - s))
        return RationalPolyhedron(self.N, tuple(rows))

    def objective(self, pair: Pair) -> tuple[int, ...]:
        return tuple(x - bb - 1 for x, bb in zip(pair[0], self.b))

    def dominating(self, y: Sequence) -> list[Pair]:
        """Pairs whose polyhedron contains y (all minimisers of <a,y> + s)."""
        vals = {p: sum((Fraction(ai) * Fraction(yi) for ai, yi in zip(p[0], y)), Fraction(0)) + p[1]
                for p in self.pairs}
        lo = min(vals.values())
        return [p for p, v in vals.items() if v == lo]


class Derivation(str, enum.Enum):
    TRIVIAL = "TrivialCase"
    SINGLE = "SingleComponent"
    MONOMIAL_LP = "MonomialLP"
    USER_CHART = "UserChart"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PairContribution:
    pair: Pair
    status: str  # "Skipped_NotFullDim" | "Counted" | "Divergent"
    m: Fraction | None = None
    d: int | None = None

    @property
    def rate(self) -> Fraction | None:
        return None if self.m is None else self.pair[1] + self.m


@dataclass(frozen=True)
class ExponentResult:
    Q0: Fraction
    d0: int
    derivation: Derivation
    contributions: tuple[PairContribution, ...] = ()


@dataclass(frozen=True)
class AsymptoticLaw:
    counting_exponent: Fraction
    counting_log_power: int
    eigen_exponent: Fraction
    eigen_log_power: Fraction

    def counting_str(self) -> str:
        return f"N(lambda) ~ lambda^({_q(self.counting_exponent)}) * (ln lambda)^{self.counting_log_power}"

    def eigen_str(self) -> str:
        s = f"lambda_k ~ k^({_q(self.eigen_exponent)})"
        if self.eigen_log_power:
            s += f" * (ln k)^({_q(self.eigen_log_power)})"
        return s


def _q(x: Fraction) -> str:
    return str(Fraction(x))


# -- reduction ---------------------------------------------------------------

@dataclass(frozen=True)
class Reduction:
    """Outcome of restricting the profile to its degenerate variables.

    ``kind`` is "Trivial", "Single" or "Multi"; ``var`` is the 0-based index
    for "Single"; ``polys`` are (degree, polynomial in v variables).
    """

    kind: str
    v: int
    var: int | None = None
    polys: tuple[tuple[int, Poly], ...] = ()


def reduce_profile(profile: NSWProfile) -> Reduction:
    deg = profile.degenerate_vars
    polys = tuple((L.degree, L.poly.restrict(deg)) for L in profile.lambdas)
    if not deg:
        return Reduction("Trivial", 0, polys=polys)
    if len(deg) == 1:
        return Reduction("Single", 1, var=deg[0], polys=polys)
    return Reduction("Multi", len(deg), polys=polys)


def exponents_trivial(profile: NSWProfile) -> ExponentResult:
    return ExponentResult(Fraction(profile.Q), 0, Derivation.TRIVIAL)


def exponents_single(profile: NSWProfile, j: int) -> ExponentResult:
    """Closed form for one degenerate variable ``x_j`` (0-based)."""
    Q, w, aj = profile.Q, profile.w, profile.weights.alpha[j]
    if Q - w < aj:
        raise ImpossibleProfile(f"Q - w = {Q - w} < alpha_j = {aj}")
    return ExponentResult(Fraction(Q - aj), 1 if Q - w == aj else 0, Derivation.SINGLE)


def build_index_set(polys: Sequence[tuple[int, Poly]], v: int) -> IndexPairSet:
    """Read off the pairs (a, d(I)) from monomial polynomials; b = 0.

    Raises :class:`NeedsResolution` listing every non-monomial entry (made
    monic, since constant factors are irrelevant).
    """
    bad = []
    for _, p in polys:
        if not p.is_monomial() and p.normalized() not in bad:
            bad.append(p.normalized())
    if bad:
        raise NeedsResolution(bad)
    return IndexPairSet(((p.leading()[0], d) for d, p in polys), N=v)


def apply_substitution(polys: Sequence[tuple[int, Poly]], v: int, T: Sequence[Sequence]):
    """Rewrite in ``u = T x``, i.e. compose with ``x = T^-1 u``."""
    Tinv = inverse_q(T)
    if len(Tinv) != v:
        raise ValueError(f"substitution must be {v}x{v}")
    return tuple((d, p.compose_linear(Tinv)) for d, p in polys)


def pair_contribution(G: IndexPairSet, pair: Pair) -> PairContribution:
    P = G.polyhedron(pair)
    if not is_full_dim(P):
        return PairContribution(pair, "Skipped_NotFullDim")
    c = G.objective(pair)
    if not any(c):
        face = optimal_face(P, c, 0)
        if not face.bounded:
            return PairContribution(pair, "Divergent")
        # the integral over P is (ln 1/r)^N r^-s vol(P)
        return PairContribution(pair, "Counted", Fraction(0), G.N)
    out = lp_maximize(P, c)
    if out.status is Status.UNBOUNDED:
        return PairContribution(pair, "Divergent")
    face = optimal_face(P, c, out.value)
    if not face.bounded:
        return PairContribution(pair, "Divergent")
    return PairContribution(pair, "Counted", out.value, face.dim)


def exponents_from_index_set(G: IndexPairSet,
                             derivation: Derivation = Derivation.MONOMIAL_LP) -> ExponentResult:
    contributions = tuple(pair_contribution(G, p) for p in G.pairs)
    for pc in contributions:
        if pc.status == "Divergent":
            raise Divergent(pc.pair, contributions)
    counted = [pc for pc in contributions if pc.status == "Counted"]
    if not counted:
        raise NoFullDimensionalPair("no pair has a full-dimensional polyhedron")
    Q0 = max(pc.rate for pc in counted)
    d0 = max(pc.d for pc in counted if pc.rate == Q0)
    return ExponentResult(Q0, d0, derivation, contributions)


def combine_charts(results: Sequence[tuple[Fraction, int]]) -> tuple[Fraction, int]:
    """Dominant term of a finite sum of ``r^-Q0 |ln r|^d0``."""
    if not results:
        raise ValueError("no chart results to combine")
    Q0 = max(Fraction(q) for q, _ in results)
    return Q0, max(d for q, d in results if q == Q0)


def exponents_from_charts(charts: Sequence[IndexPairSet]) -> ExponentResult:
    results = [exponents_from_index_set(G, Derivation.USER_CHART) for G in charts]
    Q0, d0 = combine_charts([(r.Q0, r.d0) for r in results])
    contributions = tuple(pc for r in results for pc in r.contributions)
    return ExponentResult(Q0, d0, Derivation.USER_CHART, contributions)


def eigen_law(res: ExponentResult) -> AsymptoticLaw:
    Q0 = Fraction(res.Q0)
    return AsymptoticLaw(
        counting_exponent=Q0 / 2,
        counting_log_power=res.d0,
        eigen_exponent=2 / Q0,
        eigen_log_power=Fraction(-2 * res.d0) / Q0,
    )


def check_bounds(profile: NSWProfile, res: ExponentResult) -> None:
    """Assert ``max{w, Q - alpha(X)} <= Q0 <= Q - 1`` and ``d0 <= v``,
    or ``(Q0, d0) = (Q, 0)`` in the non-degenerate case."""
    Q, w = profile.Q, profile.w
    if w == Q:
        ok = res.Q0 == Q and res.d0 == 0
    else:
        ok = (profile.n <= max(w, Q - profile.alphaX) <= res.Q0 <= Q - 1
              and 0 <= res.d0 <= profile.v)
    if not ok:
        raise ImpossibleProfile(f"exponents ({res.Q0}, {res.d0}) violate the a priori bounds")


def profile_index_set(profile: NSWProfile, subst: Sequence[Sequence] | None = None) -> IndexPairSet:
    """Monomial index set for the degenerate variables (a single pair (0, Q)
    on one dummy variable when there are none)."""
    red = reduce_profile(profile)
    if red.kind == "Trivial":
        return IndexPairSet([((0,), profile.Q)])
    polys = red.polys
    if subst is not None:
        polys = apply_substitution(polys, red.v, subst)
    return build_index_set(polys, red.v)


def compute_exponents(profile: NSWProfile, subst: Sequence[Sequence] | None = None) -> ExponentResult:
    """Route a profile to the right procedure and check the a priori bounds."""
    red = reduce_profile(profile)
    if red.kind == "Trivial":
        res = exponents_trivial(profile)
    elif red.kind == "Single" and subst is None:
        res = exponents_single(profile, red.var)
    else:
        res = exponents_from_index_set(profile_index_set(profile, subst))
    check_bounds(profile, res)
    return res
