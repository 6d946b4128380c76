"""Commutators, the determinant family lambda_I and the volume profile.

For a system of vector fields ``X_1..X_m`` that are homogeneous of degree 1
under a dilation, all right-nested commutators of length at most ``alpha_n``
are enumerated, and every n-tuple ``I`` of them with total degree
``d(I) <= Q`` contributes the determinant ``lambda_I``.  The profile

    Lambda(x, r) = sum_I |lambda_I(x)| r^d(I)

controls the volume of small sub-unit balls and hence the spectral
exponents computed in :mod:`weylexp.exponents`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (DimensionMismatch, HoermanderViolation, HomogeneityViolation,
                     ImpossibleProfile, LinearDependence, ResourceLimit)
from .polyalg import (DilationWeights, Homogeneous, Poly, VectorField, det_fields,
                      field_is_homogeneous, independent_over_q, lie_bracket, poly_eval,
                      weighted_degree)

MAX_BASIS = 40
MAX_TUPLES = 2_000_000


@dataclass(frozen=True)
class VectorFieldSystem:
    """Input system; construction checks homogeneity and linear independence."""

    weights: DilationWeights
    fields: tuple[VectorField, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.weights, DilationWeights):
            object.__setattr__(self, "weights", DilationWeights(self.weights))
        object.__setattr__(self, "fields", tuple(self.fields))
        if not self.fields:
            raise LinearDependence("the system needs at least one vector field")
        names = tuple(self.names) or tuple(f"X{i + 1}" for i in range(len(self.fields)))
        if len(names) != len(self.fields):
            raise ValueError("one name per field is required")
        object.__setattr__(self, "names", names)
        n = self.weights.n
        for name, f in zip(names, self.fields):
            if f.nvars != n:
                raise DimensionMismatch(f"{name} lives in dimension {f.nvars}, expected {n}")
            if not field_is_homogeneous(f, self.weights, 1):
                raise HomogeneityViolation(f"{name} is not homogeneous of degree 1")
        if not independent_over_q([f.as_vector() for f in self.fields]):
            raise LinearDependence("the vector fields are linearly dependent")

    @property
    def n(self) -> int:
        return self.weights.n

    @property
    def Q(self) -> int:
        return self.weights.homogeneous_dimension


@dataclass(frozen=True)
class Commutator:
    field: VectorField
    degree: int
    word: str


@dataclass(frozen=True)
class CommutatorBasis:
    entries: tuple[Commutator, ...]

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator[Commutator]:
        return iter(self.entries)

    def __getitem__(self, i) -> Commutator:
        return self.entries[i]


def enumerate_commutators(sys: VectorFieldSystem, max_basis: int = MAX_BASIS) -> CommutatorBasis:
    """All nonzero right-nested brackets of length <= alpha_n, up to scalar multiples.

    Length ``k`` brackets are ``[X_j, Y]`` with ``Y`` of length ``k - 1``;
    each is checked to be homogeneous of degree ``k``.  Brackets one step
    past ``alpha_n`` must vanish.
    """
    top = sys.weights.alpha[-1]
    entries: list[Commutator] = []
    layer: list[Commutator] = []
    seen: set = set()
    for f, name in zip(sys.fields, sys.names):
        key = f.normalized()
        if key not in seen:
            seen.add(key)
            layer.append(Commutator(f, 1, name))
    entries.extend(layer)

    for k in range(2, top + 2):
        nxt: list[Commutator] = []
        for f, name in zip(sys.fields, sys.names):
            for c in layer:
                b = lie_bracket(f, c.field)
                if b.is_zero():
                    continue
                word = f"[{name},{c.word}]"
                if k > top or not field_is_homogeneous(b, sys.weights, k):
                    raise HomogeneityViolation(
                        f"commutator {word} is nonzero but not homogeneous of degree {k}")
                key = b.normalized()
                if key in seen:
                    continue
                seen.add(key)
                nxt.append(Commutator(b, k, word))
        entries.extend(nxt)
        if len(entries) > max_basis:
            raise ResourceLimit(f"commutator basis exceeds {max_basis} entries")
        layer = nxt
        if not layer:
            break
    return CommutatorBasis(tuple(entries))


@dataclass(frozen=True)
class Lambda:
    """One determinant lambda_I with its formal degree d(I)."""

    index: tuple[int, ...]
    degree: int
    poly: Poly


def _tuples(degrees: Sequence[int], n: int, budget: int) -> Iterator[tuple[int, ...]]:
    # degrees are sorted ascending, which makes the pruning a simple break
    q = len(degrees)

    def rec(start, chosen, total):
        if len(chosen) == n:
            yield tuple(chosen)
            return
        need = n - len(chosen)
        for i in range(start, q - need + 1):
            if total + degrees[i] * need > budget:
                break
            chosen.append(i)
            yield from rec(i + 1, chosen, total + degrees[i])
            chosen.pop()

    yield from rec(0, [], 0)


def assemble_lambdas(basis: CommutatorBasis, sys: VectorFieldSystem,
                     max_tuples: int = MAX_TUPLES) -> list[Lambda]:
    """Nonzero determinants over unordered n-tuples with d(I) <= Q.

    Tuples with d(I) > Q are never formed, since those determinants vanish
    identically.  Entries equal up to a nonzero scalar at the same degree are
    merged; the kept representative has positive leading coefficient.
    """
    if not len(basis):
        raise ValueError("empty commutator basis")
    n, Q = sys.n, sys.Q
    order = sorted(range(len(basis)), key=lambda i: (basis[i].degree, i))
    degrees = [basis[i].degree for i in order]
    out: list[Lambda] = []
    seen: set = set()
    count = 0
    for tup in _tuples(degrees, n, Q):
        count += 1
        if count > max_tuples:
            raise ResourceLimit(f"more than {max_tuples} admissible tuples")
        idx = tuple(sorted(order[i] for i in tup))
        dI = sum(basis[i].degree for i in idx)
        p = det_fields([basis[i].field for i in idx])
        if p.is_zero():
            continue
        deg = weighted_degree(p, sys.weights)
        if not isinstance(deg, Homogeneous) or deg.degree != Q - dI:
            raise ImpossibleProfile(f"determinant for {idx} fails the scaling identity")
        key = (dI, p.normalized())
        if key in seen:
            continue
        seen.add(key)
        out.append(Lambda(idx, dI, p.sign_normalized()))
    out.sort(key=lambda L: (L.degree, L.index))
    return out


@dataclass(frozen=True)
class NSWProfile:
    """The lambda_I family plus the scalars derived from it.

    ``degenerate_vars`` holds 0-based variable indices.
    """

    weights: DilationWeights
    lambdas: tuple[Lambda, ...]
    Q: int
    w: int
    hoermander_index: int
    degenerate_vars: tuple[int, ...]
    alphaX: int
    fQ0: Fraction
    basis: CommutatorBasis | None = field(default=None, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.weights.n

    @property
    def v(self) -> int:
        return len(self.degenerate_vars)

    def coefficient_classes(self) -> dict[int, list[Poly]]:
        """Polynomials grouped by degree: ``f_k ~ sum |p|`` for p in the class."""
        out: dict[int, list[Poly]] = {}
        for L in self.lambdas:
            out.setdefault(L.degree, []).append(L.poly)
        return out

    def Lambda(self, x: Sequence, r) -> Fraction:
        """Exact value of ``sum |lambda_I(x)| r^d(I)`` at rational (x, r)."""
        r = Fraction(r)
        return sum((abs(poly_eval(L.poly, x)) * r ** L.degree for L in self.lambdas), Fraction(0))


def nsw_profile(sys: VectorFieldSystem, basis: CommutatorBasis | None = None) -> NSWProfile:
    if basis is None:
        basis = enumerate_commutators(sys)
    lambdas = assemble_lambdas(basis, sys)
    Q = sys.Q
    top = [L for L in lambdas if L.degree == Q]
    if not any(L.poly.is_constant() for L in top):
        raise HoermanderViolation("no nonzero constant determinant of degree Q: "
                                  "the fields do not span at the origin")
    for L in lambdas:
        if L.degree == Q and not L.poly.is_constant():
            raise ImpossibleProfile("degree-Q determinant is not constant")
        if L.degree < Q and poly_eval(L.poly, [0] * sys.n) != 0:
            raise ImpossibleProfile("low-degree determinant does not vanish at the origin")
    degenerate = sorted(set().union(*(L.poly.variables() for L in lambdas)))
    if sys.n - 1 in degenerate:
        raise ImpossibleProfile("the last variable cannot be degenerate")
    w = min(L.degree for L in lambdas)
    if not sys.n <= w <= Q:
        raise ImpossibleProfile(f"w = {w} outside [n, Q]")
    return NSWProfile(
        weights=sys.weights,
        lambdas=tuple(lambdas),
        Q=Q,
        w=w,
        hoermander_index=sys.weights.alpha[-1],
        degenerate_vars=tuple(degenerate),
        alphaX=sum(sys.weights.alpha[j] for j in degenerate),
        fQ0=sum((abs(L.poly.constant_term()) for L in top), Fraction(0)),
        basis=basis,
    )


def pointwise_dimension(profile: NSWProfile, x: Sequence) -> int:
    """``nu(x)``: the least d(I) with lambda_I(x) != 0."""
    if len(x) != profile.n:
        raise DimensionMismatch(f"point has {len(x)} coordinates, expected {profile.n}")
    return min(L.degree for L in profile.lambdas if poly_eval(L.poly, x) != 0)


@dataclass(frozen=True)
class Classification:
    degenerate_count: int

    @property
    def degenerate(self) -> bool:
        return self.degenerate_count > 0

    def __str__(self):
        if not self.degenerate_count:
            return "NonDegenerate"
        return f"Degenerate({self.degenerate_count})"


def classify(profile: NSWProfile) -> Classification:
    v = len(profile.degenerate_vars)
    if (v == 0) != (profile.w == profile.Q):
        raise ImpossibleProfile("degenerate set and w disagree")
    return Classification(v)
