"""Exact polynomial arithmetic over the rationals and polynomial vector fields.

Everything here is immutable and uses :class:`fractions.Fraction`
coefficients, so identities such as the Jacobi identity hold exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, SingularMatrix

Exponent = tuple[int, ...]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not accepted")
    return Fraction(c)


def grlex_key(e: Exponent):
    return (sum(e), e)


class Poly:
    """Sparse multivariate polynomial with rational coefficients.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero Fractions.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != nvars:
                raise DimensionMismatch(f"exponent {e} has length != {nvars}")
            if any(k < 0 for k in e):
                raise ValueError(f"negative exponent {e}")
            c = _frac(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self._terms = dict(sorted(clean.items(), key=lambda t: grlex_key(t[0]), reverse=True))
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> Poly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> Poly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> Poly:
        return cls(len(exps), {tuple(exps): c})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def leading(self) -> tuple[Exponent, Fraction]:
        """Leading (exponent, coefficient) in graded-lex order."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return next(iter(self._terms.items()))

    def variables(self) -> frozenset[int]:
        """Indices of the variables that actually occur."""
        return frozenset(i for e in self._terms for i, k in enumerate(e) if k)

    # arithmetic
    def _check(self, other: Poly):
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"nvars {self.nvars} != {other.nvars}")

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> Poly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Poly:
        return self._coerce(other) - self

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            c = _frac(other)
            return Poly(self.nvars, {e: c * v for e, v in self._terms.items()})
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, c) -> Poly:
        return self * (1 / _frac(c))

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power")
        out = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def diff(self, i: int) -> Poly:
        """Partial derivative in variable ``i``; total, constants map to 0."""
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(self.nvars, out)

    def normalized(self) -> Poly:
        """Scalar multiple with leading coefficient 1 (zero stays zero)."""
        if not self._terms:
            return self
        return self / self.leading()[1]

    def sign_normalized(self) -> Poly:
        """``±self`` with positive leading coefficient."""
        if self._terms and self.leading()[1] < 0:
            return -self
        return self

    def restrict(self, keep: Sequence[int]) -> Poly:
        """Re-express in the variables ``keep`` (others must not occur)."""
        keep = list(keep)
        dropped = set(range(self.nvars)) - set(keep)
        if self.variables() & dropped:
            raise ValueError("polynomial depends on a dropped variable")
        return Poly(len(keep), {tuple(e[i] for i in keep): c for e, c in self._terms.items()})

    def compose_linear(self, M: Sequence[Sequence]) -> Poly:
        """Substitute ``x_i = sum_j M[i][j] u_j``; result is a polynomial in u."""
        if len(M) != self.nvars:
            raise DimensionMismatch("substitution matrix has wrong row count")
        k = len(M[0]) if M else 0
        images = [Poly(k, {tuple(int(j == jj) for jj in range(k)): M[i][j] for j in range(k)})
                  for i in range(self.nvars)]
        out = Poly.zero(k)
        for e, c in self._terms.items():
            t = Poly.const(k, c)
            for i, p in enumerate(e):
                if p:
                    t = t * images[i] ** p
            out = out + t
        return out

    def __call__(self, x):
        return poly_eval(self, x)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


def _var_names(nvars, names):
    return list(names) if names is not None else [f"x{i + 1}" for i in range(nvars)]


def format_poly(p: Poly, names: Sequence[str] | None = None) -> str:
    """Human-readable form, e.g. ``2*x1^2*x2 - x3 + 1/2``."""
    if p.is_zero():
        return "0"
    names = _var_names(p.nvars, names)
    out = []
    for k, (e, c) in enumerate(p.items()):
        mono = "*".join(n if d == 1 else f"{n}^{d}" for n, d in zip(names, e) if d)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def poly_eval(p: Poly, x: Sequence) -> Fraction:
    if len(x) != p.nvars:
        raise DimensionMismatch(f"point has {len(x)} coordinates, expected {p.nvars}")
    x = [_frac(v) for v in x]
    total = Fraction(0)
    for e, c in p.items():
        t = c
        for xi, k in zip(x, e):
            if k:
                t *= xi ** k
        total += t
    return total


@dataclass(frozen=True)
class DilationWeights:
    """Exponents of the dilation ``(t^a1 x1, ..., t^an xn)``."""

    alpha: tuple[int, ...]

    def __init__(self, alpha: Iterable[int]):
        alpha = tuple(int(a) for a in alpha)
        if not alpha:
            raise ValueError("at least one weight is required")
        if alpha[0] != 1:
            raise ValueError("the first weight must be 1")
        if any(a < 1 for a in alpha) or any(b < a for a, b in zip(alpha, alpha[1:])):
            raise ValueError(f"weights must be non-decreasing positive integers: {alpha}")
        object.__setattr__(self, "alpha", alpha)

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def homogeneous_dimension(self) -> int:
        return sum(self.alpha)

    def __len__(self):
        return len(self.alpha)

    def __iter__(self):
        return iter(self.alpha)

    def __getitem__(self, i):
        return self.alpha[i]

    def dilate(self, x: Sequence, t) -> list[Fraction]:
        t = _frac(t)
        return [_frac(v) * t ** a for v, a in zip(x, self.alpha)]


class Degree(enum.Enum):
    ZERO = "zero"
    NOT_HOMOGENEOUS = "not-homogeneous"


@dataclass(frozen=True)
class Homogeneous:
    degree: int


def weighted_degree(p: Poly, w: DilationWeights) -> Homogeneous | Degree:
    if p.nvars != len(w):
        raise DimensionMismatch("weights do not match the number of variables")
    if p.is_zero():
        return Degree.ZERO
    degs = {sum(a * k for a, k in zip(w.alpha, e)) for e, _ in p.items()}
    if len(degs) == 1:
        return Homogeneous(degs.pop())
    return Degree.NOT_HOMOGENEOUS


@dataclass(frozen=True)
class VectorField:
    """``sum_j coeffs[j] * d/dx_j``."""

    coeffs: tuple[Poly, ...]

    def __init__(self, coeffs: Iterable[Poly]):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a vector field needs at least one coefficient")
        if any(c.nvars != len(coeffs) for c in coeffs):
            raise DimensionMismatch("every coefficient must live in nvars = len(coeffs) variables")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def partial(cls, n: int, j: int) -> VectorField:
        return cls(Poly.const(n, 1) if k == j else Poly.zero(n) for k in range(n))

    @classmethod
    def from_terms(cls, n: int, terms: Mapping[int, Poly]) -> VectorField:
        return cls(terms.get(k, Poly.zero(n)) for k in range(n))

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def apply(self, f: Poly) -> Poly:
        """Directional derivative ``Y f``."""
        out = Poly.zero(self.nvars)
        for k, mu in enumerate(self.coeffs):
            if mu:
                out = out + mu * f.diff(k)
        return out

    def __add__(self, other: VectorField) -> VectorField:
        return VectorField(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> VectorField:
        return VectorField(-c for c in self.coeffs)

    def __sub__(self, other: VectorField) -> VectorField:
        return self + (-other)

    def scale(self, c) -> VectorField:
        return VectorField(p * c for p in self.coeffs)

    def leading_coefficient(self) -> Fraction:
        for c in self.coeffs:
            if c:
                return c.leading()[1]
        raise ValueError("zero field")

    def normalized(self) -> VectorField:
        """Scalar multiple whose first nonzero leading coefficient is 1."""
        return self.scale(1 / self.leading_coefficient())

    def as_vector(self) -> dict[tuple[int, Exponent], Fraction]:
        """Coordinates over Q in the basis ``x^e d/dx_j``."""
        return {(j, e): c for j, p in enumerate(self.coeffs) for e, c in p.items()}

    def __str__(self):
        return format_field(self)


def format_field(Y: VectorField, names: Sequence[str] | None = None) -> str:
    parts = []
    for j, p in enumerate(Y.coeffs):
        if p.is_zero():
            continue
        if p.is_constant() and abs(p.constant_term()) == 1:
            parts.append(("-" if p.constant_term() < 0 else "") + f"d{j + 1}")
            continue
        s = format_poly(p, names)
        if len(p) > 1:
            s = f"({s})"
        parts.append(f"{s}*d{j + 1}")
    if not parts:
        return "0"
    return " + ".join(parts).replace("+ -", "- ")


def field_is_homogeneous(Y: VectorField, w: DilationWeights, sigma: int) -> bool:
    if Y.nvars != len(w):
        raise DimensionMismatch("weights do not match the field dimension")
    for mu, a in zip(Y.coeffs, w.alpha):
        deg = weighted_degree(mu, w)
        if deg is Degree.ZERO:
            continue
        if deg is Degree.NOT_HOMOGENEOUS or deg.degree != a - sigma:
            return False
    return True


def lie_bracket(Y: VectorField, Z: VectorField) -> VectorField:
    if Y.nvars != Z.nvars:
        raise DimensionMismatch("fields live in different dimensions")
    return VectorField(Y.apply(mz) - Z.apply(my) for my, mz in zip(Y.coeffs, Z.coeffs))


def det_poly_matrix(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by Laplace expansion with memoised minors."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("matrix is not square")
    if n == 0:
        raise ValueError("empty matrix")
    nv = rows[0][0].nvars
    memo: dict[tuple[int, ...], Poly] = {}

    def minor(i: int, cols: tuple[int, ...]) -> Poly:
        # det of rows[i:] restricted to cols
        if i == n:
            return Poly.const(nv, 1)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        acc = Poly.zero(nv)
        for k, j in enumerate(cols):
            entry = rows[i][j]
            if entry:
                sub = minor(i + 1, cols[:k] + cols[k + 1:])
                if sub:
                    term = entry * sub
                    acc = acc - term if k % 2 else acc + term
        memo[cols] = acc
        return acc

    return minor(0, tuple(range(n)))


def det_fields(fields: Sequence[VectorField]) -> Poly:
    n = len(fields)
    if any(f.nvars != n for f in fields):
        raise DimensionMismatch(f"need exactly {n} fields in dimension {n}")
    return det_poly_matrix([f.coeffs for f in fields])


def _to_integer_rows(rows):
    out = []
    for r in rows:
        r = [_frac(v) for v in r]
        den = 1
        for v in r:
            den = den * v.denominator // _gcd(den, v.denominator)
        out.append([int(v * den) for v in r])
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def rank_q(rows: Sequence[Sequence]) -> int:
    """Exact rank over Q by fraction-free (Bareiss) elimination."""
    A = _to_integer_rows(rows)
    if not A:
        return 0
    m, ncols = len(A), len(A[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((i for i in range(rank, m) if A[i][col]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][col]
        for i in range(rank + 1, m):
            for j in range(col + 1, ncols):
                A[i][j] = (p * A[i][j] - A[i][col] * A[rank][j]) // prev
            A[i][col] = 0
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def inverse_q(M: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse of a square rational matrix."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise DimensionMismatch("matrix is not square")
    A = [[_frac(v) for v in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M)]
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular over Q")
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [v / p for v in A[col]]
        for i in range(n):
            if i != col and A[i][col]:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[col])]
    return [r[n:] for r in A]


def independent_over_q(vectors: Sequence[Mapping]) -> bool:
    """Whether sparse coordinate dicts are linearly independent over Q."""
    keys = sorted({k for v in vectors for k in v})
    rows = [[v.get(k, 0) for k in keys] for v in vectors]
    if not keys:
        return not vectors
    return rank_q(rows) == len(vectors)


__all__ = [
    "Poly", "VectorField", "DilationWeights", "Homogeneous", "Degree",
    "poly_eval", "weighted_degree", "field_is_homogeneous", "lie_bracket",
    "det_fields", "det_poly_matrix", "rank_q", "inverse_q", "independent_over_q",
    "format_poly", "format_field",
]
