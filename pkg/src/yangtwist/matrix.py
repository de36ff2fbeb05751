"""Dense exact matrices over the Gaussian rationals.

A :class:`Matrix` stores integer numerator arrays for the real and imaginary
parts over one shared positive denominator, kept in lowest terms.  Numerators
are held as ``int64`` whenever a worst-case bound proves no intermediate can
overflow; otherwise the arrays fall back to Python integers (``dtype=object``).
No floating point is involved anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .scalar import GaussRational, as_gauss

__all__ = [
    "Matrix",
    "MatrixError",
    "NotNilpotentError",
    "TensorLeg",
    "identity",
    "zeros",
    "matrix_unit",
    "matmul",
    "kron",
    "embed_leg",
    "flip",
    "commutator",
    "nilpotency_index",
    "unipotent_exp",
    "unipotent_log",
    "unipotent_pow",
    "first_difference",
]

# keep numerators and every intermediate sum strictly inside int64
_LIMIT = 1 << 62

TensorLeg = Tuple[int, ...]


class MatrixError(ValueError):
    """Dimension or placement mismatch."""


class NotNilpotentError(ArithmeticError):
    """A unipotent-calculus routine received a non-nilpotent argument."""


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(np.abs(a).max())


def _array_gcd(a: np.ndarray, g: int) -> int:
    if g == 1 or a.size == 0:
        return g
    if a.dtype == object:
        vals = {abs(int(v)) for v in a.flat if v}
        return reduce(math.gcd, vals, g)
    return math.gcd(int(np.gcd.reduce(a, axis=None)), g)


def _narrow(a: np.ndarray) -> np.ndarray:
    if a.dtype == object and _maxabs(a) < _LIMIT:
        return a.astype(np.int64)
    return a


def _widen(a: np.ndarray) -> np.ndarray:
    return a if a.dtype == object else a.astype(object)


class Matrix:
    """Immutable dense matrix of :class:`GaussRational` entries.

    ``legs`` records the tensor-factor dimensions (``(M, M)`` for an operator
    on the tensor square, ...).  It is bookkeeping only; every operation
    checks actual shapes.
    """

    __slots__ = ("_re", "_im", "_den", "legs", "_real")

    def __init__(self, rows: Sequence[Sequence], legs: Optional[Sequence[int]] = None):
        entries = [[as_gauss(x) for x in row] for row in rows]
        nrows = len(entries)
        ncols = len(entries[0]) if nrows else 0
        if any(len(row) != ncols for row in entries):
            raise MatrixError("ragged rows")
        den = 1
        for row in entries:
            for x in row:
                den = den * x.re.denominator // math.gcd(den, x.re.denominator)
                den = den * x.im.denominator // math.gcd(den, x.im.denominator)
        re = np.empty((nrows, ncols), dtype=object)
        im = np.empty((nrows, ncols), dtype=object)
        for i, row in enumerate(entries):
            for j, x in enumerate(row):
                re[i, j] = int(x.re * den)
                im[i, j] = int(x.im * den)
        self._set(re, im, den, legs)

    @classmethod
    def from_parts(cls, re: np.ndarray, im: np.ndarray, den: int = 1, legs=None) -> "Matrix":
        """Build from integer numerator arrays over a common denominator."""
        self = cls.__new__(cls)
        self._set(np.asarray(re), np.asarray(im), int(den), legs)
        return self

    def _set(self, re, im, den, legs):
        if re.shape != im.shape or re.ndim != 2:
            raise MatrixError("real and imaginary parts must be equal-shaped 2-d arrays")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if re.dtype != object:
            re = re.astype(np.int64, copy=False)
        if im.dtype != object:
            im = im.astype(np.int64, copy=False)
        if den < 0:
            re, im, den = -re, -im, -den
        g = _array_gcd(im, _array_gcd(re, den))
        if g > 1:
            re, im, den = re // g, im // g, den // g
        re, im = _narrow(re), _narrow(im)
        if re.dtype != im.dtype:
            re, im = _widen(re), _widen(im)
        re.flags.writeable = False
        im.flags.writeable = False
        if legs is None:
            legs = (re.shape[0],) if re.shape[0] == re.shape[1] else None
        else:
            legs = tuple(int(x) for x in legs)
            if math.prod(legs) != re.shape[0]:
                raise MatrixError(f"legs {legs} do not multiply to dimension {re.shape[0]}")
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "legs", legs)
        object.__setattr__(self, "_real", not im.any())

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- shape and access ----------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return self._re.shape

    @property
    def rows(self) -> int:
        return self._re.shape[0]

    @property
    def cols(self) -> int:
        return self._re.shape[1]

    @property
    def parts(self) -> Tuple[np.ndarray, np.ndarray, int]:
        return self._re, self._im, self._den

    def __getitem__(self, ij) -> GaussRational:
        i, j = ij
        return GaussRational(Fraction(int(self._re[i, j]), self._den), Fraction(int(self._im[i, j]), self._den))

    def entries(self):
        """Nested lists of :class:`GaussRational`, row-major."""
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def with_legs(self, legs) -> "Matrix":
        return Matrix.from_parts(self._re, self._im, self._den, legs)

    def is_zero(self) -> bool:
        return not self._re.any() and not self._im.any()

    def is_square(self) -> bool:
        return self.rows == self.cols

    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self._re | self._im)) if self._re.dtype != object else int(
            np.count_nonzero((self._re != 0) | (self._im != 0))
        )

    # -- algebra -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self._den == other._den
            and np.array_equal(self._re, other._re)
            and np.array_equal(self._im, other._im)
        )

    __hash__ = None

    def _aligned(self, other: "Matrix"):
        if self.shape != other.shape:
            raise MatrixError(f"shape mismatch {self.shape} vs {other.shape}")
        den = self._den * other._den // math.gcd(self._den, other._den)
        sa, sb = den // self._den, den // other._den
        bound = (max(_maxabs(self._re), _maxabs(self._im)) * sa
                 + max(_maxabs(other._re), _maxabs(other._im)) * sb)
        a_re, a_im, b_re, b_im = self._re, self._im, other._re, other._im
        if bound >= _LIMIT or sa >= _LIMIT or sb >= _LIMIT:
            a_re, a_im, b_re, b_im = map(_widen, (a_re, a_im, b_re, b_im))
        elif a_re.dtype == object or b_re.dtype == object:
            a_re, a_im, b_re, b_im = map(_widen, (a_re, a_im, b_re, b_im))
        return a_re * sa, a_im * sa, b_re * sb, b_im * sb, den

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        a_re, a_im, b_re, b_im, den = self._aligned(other)
        return Matrix.from_parts(a_re + b_re, a_im + b_im, den, self.legs)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        a_re, a_im, b_re, b_im, den = self._aligned(other)
        return Matrix.from_parts(a_re - b_re, a_im - b_im, den, self.legs)

    def __neg__(self):
        return Matrix.from_parts(-self._re, -self._im, self._den, self.legs)

    def scale(self, c) -> "Matrix":
        """Multiply every entry by the scalar ``c``."""
        c = as_gauss(c)
        cden = c.re.denominator * c.im.denominator // math.gcd(c.re.denominator, c.im.denominator)
        p = int(c.re * cden)
        q = int(c.im * cden)
        bound = (abs(p) + abs(q)) * max(_maxabs(self._re), _maxabs(self._im))
        re, im = self._re, self._im
        if bound >= _LIMIT or re.dtype == object:
            re, im = _widen(re), _widen(im)
        return Matrix.from_parts(p * re - q * im, p * im + q * re, self._den * cden, self.legs)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return matmul(self, other)

    def conj(self) -> "Matrix":
        return Matrix.from_parts(self._re, -self._im, self._den, self.legs)

    @property
    def T(self) -> "Matrix":
        return Matrix.from_parts(self._re.T, self._im.T, self._den, self.legs)

    def trace(self) -> GaussRational:
        return GaussRational(
            Fraction(int(np.trace(self._re)), self._den), Fraction(int(np.trace(self._im)), self._den)
        )

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = identity(self.rows, self.legs)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, legs={self.legs}, den={self._den})"

    def __str__(self):
        from .scalar import format_scalar

        return "\n".join(" ".join(format_scalar(x) for x in row) for row in self.entries())


# -- constructors --------------------------------------------------------------


def zeros(n: int, m: Optional[int] = None, legs=None) -> Matrix:
    m = n if m is None else m
    z = np.zeros((n, m), dtype=np.int64)
    return Matrix.from_parts(z, z, 1, legs)


def identity(n: int, legs=None) -> Matrix:
    return Matrix.from_parts(np.eye(n, dtype=np.int64), np.zeros((n, n), dtype=np.int64), 1, legs)


def matrix_unit(i: int, j: int, n: int) -> Matrix:
    """``e_ij`` with 1-based indices."""
    re = np.zeros((n, n), dtype=np.int64)
    re[i - 1, j - 1] = 1
    return Matrix.from_parts(re, np.zeros_like(re), 1)


# -- products ------------------------------------------------------------------


def _product(a_re, a_im, b_re, b_im, a_real, b_real, op):
    rr = op(a_re, b_re)
    if a_real and b_real:
        return rr, np.zeros_like(rr)
    if a_real:
        return rr, op(a_re, b_im)
    if b_real:
        return rr, op(a_im, b_re)
    return rr - op(a_im, b_im), op(a_re, b_im) + op(a_im, b_re)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """Exact product ``a @ b``."""
    if a.cols != b.rows:
        raise MatrixError(f"cannot multiply {a.shape} by {b.shape}")
    a_re, a_im, da = a.parts
    b_re, b_im, db = b.parts
    bound = a.cols * (_maxabs(a_re) + _maxabs(a_im)) * (_maxabs(b_re) + _maxabs(b_im))
    if bound >= _LIMIT or a_re.dtype == object or b_re.dtype == object:
        a_re, a_im, b_re, b_im = map(_widen, (a_re, a_im, b_re, b_im))
    re, im = _product(a_re, a_im, b_re, b_im, a._real, b._real, np.matmul)
    legs = a.legs if a.legs is not None and len(a.legs) > 1 else b.legs
    return Matrix.from_parts(re, im, da * db, legs)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; leg metadata is concatenated."""
    a_re, a_im, da = a.parts
    b_re, b_im, db = b.parts
    bound = (_maxabs(a_re) + _maxabs(a_im)) * (_maxabs(b_re) + _maxabs(b_im))
    if bound >= _LIMIT or a_re.dtype == object or b_re.dtype == object:
        a_re, a_im, b_re, b_im = map(_widen, (a_re, a_im, b_re, b_im))
    re, im = _product(a_re, a_im, b_re, b_im, a._real, b._real, np.kron)
    legs = None
    if a.legs is not None and b.legs is not None:
        legs = a.legs + b.legs
    return Matrix.from_parts(re, im, da * db, legs)


def embed_leg(x: Matrix, legs: Sequence[int], placement: Sequence[int]) -> Matrix:
    """Place ``x`` on the (1-based) tensor legs ``placement`` of ``legs``.

    ``x`` must carry ``len(placement)`` legs whose dimensions match the
    targeted ones; identity acts on the remaining legs.  Placement ``(2, 1)``
    on a two-leg space is the flip ``X_21``; ``(1, 3)`` on three legs gives
    ``X_13``.
    """
    legs = tuple(int(d) for d in legs)
    placement = tuple(int(p) - 1 for p in placement)
    n = len(legs)
    if len(set(placement)) != len(placement) or any(p < 0 or p >= n for p in placement):
        raise MatrixError(f"placement {tuple(p + 1 for p in placement)} invalid for {n} legs")
    sub = tuple(legs[p] for p in placement)
    if x.shape != (math.prod(sub), math.prod(sub)):
        raise MatrixError(f"matrix {x.shape} does not act on legs of dimensions {sub}")
    rest = [i for i in range(n) if i not in placement]
    order = list(placement) + rest
    full = kron(x, identity(math.prod(legs[i] for i in rest)))
    dims = [legs[i] for i in order]
    axes = [order.index(l) for l in range(n)]
    axes = axes + [n + a for a in axes]
    re, im, den = full.parts

    def permute(arr):
        return arr.reshape(dims + dims).transpose(axes).reshape(full.shape)

    return Matrix.from_parts(permute(re), permute(im), den, legs)


def flip(x: Matrix) -> Matrix:
    """``tau`` on a two-leg operator: ``X_12 -> X_21``."""
    legs = x.legs if x.legs is not None and len(x.legs) == 2 else None
    if legs is None:
        m = math.isqrt(x.rows)
        if m * m != x.rows:
            raise MatrixError("flip needs a two-leg operator")
        legs = (m, m)
    return embed_leg(x, legs, (2, 1))


def commutator(a: Matrix, b: Matrix) -> Matrix:
    if not (a.is_square() and a.shape == b.shape):
        raise MatrixError(f"commutator needs equal square shapes, got {a.shape}, {b.shape}")
    return a @ b - b @ a


def first_difference(a: Matrix, b: Matrix):
    """Lexicographically first ``(row, col, a_entry, b_entry)`` where a != b, or None."""
    if a.shape != b.shape:
        raise MatrixError(f"shape mismatch {a.shape} vs {b.shape}")
    d = a - b
    re, im, _ = d.parts
    hits = np.argwhere((re != 0) | (im != 0))
    if len(hits) == 0:
        return None
    i, j = (int(v) for v in hits[0])
    return i, j, a[i, j], b[i, j]


# -- unipotent calculus ----------------------------------------------------------


def _nilpotent_powers(n: Matrix) -> list:
    """``[n, n^2, ..., n^(k-1)]`` with ``n^k = 0``; raises if not nilpotent."""
    if not n.is_square():
        raise MatrixError("nilpotency is defined for square matrices")
    powers = []
    p = n
    for _ in range(n.rows):
        if p.is_zero():
            return powers
        powers.append(p)
        p = p @ n
    if p.is_zero():
        return powers
    raise NotNilpotentError(f"{n!r} is not nilpotent")


def nilpotency_index(x: Matrix) -> Optional[int]:
    """Smallest k with x^k = 0, or None when x is not nilpotent."""
    try:
        return len(_nilpotent_powers(x)) + 1
    except NotNilpotentError:
        return None


def _series(powers, coeffs, n: int, legs) -> Matrix:
    out = identity(n, legs)
    for c, p in zip(coeffs, powers):
        if c:
            out = out + p.scale(c)
    return out


def unipotent_exp(n: Matrix) -> Matrix:
    """``exp(n)`` for nilpotent ``n`` as the exact finite series."""
    powers = _nilpotent_powers(n)
    coeffs = [Fraction(1, math.factorial(k)) for k in range(1, len(powers) + 1)]
    return _series(powers, coeffs, n.rows, n.legs)


def unipotent_log(u: Matrix) -> Matrix:
    """``log(u)`` for unipotent ``u``; exp(log(u)) == u."""
    n = u - identity(u.rows, u.legs)
    powers = _nilpotent_powers(n)
    out = zeros(u.rows, legs=u.legs)
    for k, p in enumerate(powers, start=1):
        out = out + p.scale(Fraction((-1) ** (k + 1), k))
    return out


def _binomial(s: Fraction, k: int) -> Fraction:
    c = Fraction(1)
    for i in range(k):
        c = c * (s - i) / (i + 1)
    return c


def unipotent_pow(u: Matrix, s) -> Matrix:
    """``u**s`` for unipotent ``u`` and rational ``s`` via the binomial series."""
    s = Fraction(s)
    n = u - identity(u.rows, u.legs)
    powers = _nilpotent_powers(n)
    coeffs = [_binomial(s, k) for k in range(1, len(powers) + 1)]
    return _series(powers, coeffs, u.rows, u.legs)


def sum_matrices(items: Iterable[Matrix], n: int, legs=None) -> Matrix:
    return reduce(lambda acc, m: acc + m, items, zeros(n, legs=legs))
