"""Root systems of B_N / D_N and the defining representation of so(M).

Generators are written in the Okubo basis ``M_ij = (e_ij - e_ji) / 2``.  With
this normalization the coroot-normalized Cartan element of ``e_i + e_j`` is
``-i (M_{2i-1,2i} + M_{2j-1,2j})`` and the carrier relation ``[H, E] = E``
holds on the nose.  The table is validated at construction: every pair of
root generators must close with the expected weight.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .matrix import Matrix, MatrixError, commutator, matrix_unit, zeros
from .scalar import GaussRational, I

__all__ = [
    "Root",
    "RepTable",
    "RepTableError",
    "CarrierQuadruple",
    "CarrierError",
    "e",
    "build_root_system",
    "positive_roots",
    "okubo",
    "okubo_coordinates",
    "build_rep_table",
    "carrier_quadruple",
    "proportionality",
]

SERIES = ("B", "D")


@dataclass(frozen=True, order=True)
class Root:
    """Integer coefficient vector over the orthonormal basis e_1..e_N."""

    coeffs: Tuple[int, ...]

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Root":
        return Root(tuple(-a for a in self.coeffs))

    def dot(self, other: "Root") -> int:
        return sum(a * b for a, b in zip(self.coeffs, other.coeffs))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def support(self) -> Tuple[int, ...]:
        """1-based indices with nonzero coefficient."""
        return tuple(i + 1 for i, c in enumerate(self.coeffs) if c)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_positive(self) -> bool:
        for c in self.coeffs:
            if c:
                return c > 0
        return False

    @property
    def label(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}e{i}")
        return "".join(parts) or "0"

    def __str__(self):
        return self.label


def e(n: int, *terms: int) -> Root:
    """``e(3, 1, -2)`` is e1 - e2 in rank 3 (signed 1-based indices)."""
    coeffs = [0] * n
    for t in terms:
        coeffs[abs(t) - 1] += 1 if t > 0 else -1
    return Root(tuple(coeffs))


def _check_series(series: str, N: int) -> None:
    if series not in SERIES:
        raise ValueError(f"series must be one of {SERIES}, got {series!r}")
    if N < 2:
        raise ValueError(f"rank must be at least 2, got {N}")


def build_root_system(series: str, N: int, window: Optional[Tuple[int, int]] = None) -> List[Root]:
    """All roots of B_N (2N^2 of them) or D_N (2N(N-1)), sorted.

    ``window=(lo, hi)`` restricts to roots supported on e_lo..e_hi, which is
    the root system of the same series on that block of coordinates.
    """
    _check_series(series, N)
    lo, hi = window or (1, N)
    idx = range(lo - 1, hi)
    roots = set()
    for i in idx:
        if series == "B":
            for s in (1, -1):
                c = [0] * N
                c[i] = s
                roots.add(Root(tuple(c)))
        for j in idx:
            if j <= i:
                continue
            for si, sj in itertools.product((1, -1), repeat=2):
                c = [0] * N
                c[i], c[j] = si, sj
                roots.add(Root(tuple(c)))
    return sorted(roots, reverse=True)


def positive_roots(series: str, N: int) -> List[Root]:
    return [r for r in build_root_system(series, N) if r.is_positive()]


def okubo(i: int, j: int, dim: int) -> Matrix:
    """Antisymmetric basis matrix ``M_ij = (e_ij - e_ji) / 2`` (1-based, i < j)."""
    if not (1 <= i < j <= dim):
        raise MatrixError(f"okubo index ({i},{j}) out of range for dimension {dim}")
    return (matrix_unit(i, j, dim) - matrix_unit(j, i, dim)).scale(Fraction(1, 2))


def okubo_coordinates(x: Matrix) -> Dict[Tuple[int, int], GaussRational]:
    """Coefficients of ``x`` over {M_ij}; raises if ``x`` is not in their span."""
    n = x.rows
    coords = {}
    rebuilt = zeros(n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            c = x[i - 1, j - 1] * 2
            if c:
                coords[(i, j)] = c
                rebuilt = rebuilt + okubo(i, j, n).scale(c)
    if rebuilt != x:
        raise MatrixError("matrix is not a combination of Okubo matrices")
    return coords


def proportionality(x: Matrix, y: Matrix) -> Optional[GaussRational]:
    """The scalar c with x == c*y (y nonzero), else None."""
    if y.is_zero():
        return None
    re, im, _ = y.parts
    i, j = next((int(a), int(b)) for a, b in zip(*((re != 0) | (im != 0)).nonzero()))
    c = x[i, j] / y[i, j]
    return c if y.scale(c) == x else None


class RepTableError(ValueError):
    """A generator pair failed the closure check."""


@dataclass(frozen=True)
class RepTable:
    """Defining-representation matrices of so(2N+1) (B) or so(2N) (D).

    ``gen`` holds the positive-root generators, ``cartan`` the elements
    ``H_{i+j}`` keyed by ``(i, j)``, and ``constants`` the structure constants
    ``[gen(a), gen(b)] = c gen(a+b)`` found by the closure check.
    """

    series: str
    N: int
    dim: int
    gen: Dict[Root, Matrix] = field(repr=False)
    cartan: Dict[Tuple[int, int], Matrix] = field(repr=False)
    constants: Dict[Tuple[Root, Root], GaussRational] = field(repr=False, default_factory=dict)

    @property
    def roots(self) -> List[Root]:
        return build_root_system(self.series, self.N)

    def generator(self, root: Root) -> Matrix:
        """d(L_root); negative roots are the complex conjugates of positive ones."""
        if root in self.gen:
            return self.gen[root]
        if -root in self.gen:
            return self.gen[-root].conj()
        raise KeyError(f"{root} is not a root of {self.series}{self.N}")

    def coordinate_cartan(self, k: int) -> Matrix:
        """-2i M_{2k-1,2k}: acts on root vectors by the k-th coordinate."""
        return okubo(2 * k - 1, 2 * k, self.dim).scale(-2 * I)

    def cartan_for(self, root: Root) -> Matrix:
        """Coroot-normalized H with [H, gen(root)] = gen(root)."""
        s = root.support()
        if len(s) == 2 and all(root.coeffs[k - 1] == 1 for k in s):
            return self.cartan[s]
        norm = root.dot(root)
        out = zeros(self.dim)
        for k in s:
            out = out + self.coordinate_cartan(k).scale(Fraction(root.coeffs[k - 1], norm))
        return out


def _short_gen(k: int, N: int, dim: int) -> Matrix:
    return okubo(2 * k, 2 * N + 1, dim) - okubo(2 * k - 1, 2 * N + 1, dim).scale(I)


def _long_gen(i: int, j: int, sign: int, dim: int) -> Matrix:
    # (-M_{2i,2j} +- i M_{2i,2j-1} + i M_{2i-1,2j} +- M_{2i-1,2j-1}) / 2
    m = (
        -okubo(2 * i, 2 * j, dim)
        + okubo(2 * i, 2 * j - 1, dim).scale(sign * I)
        + okubo(2 * i - 1, 2 * j, dim).scale(I)
        + okubo(2 * i - 1, 2 * j - 1, dim).scale(sign)
    )
    return m.scale(Fraction(1, 2))


def _in_cartan_span(x: Matrix, table: RepTable) -> bool:
    out = zeros(table.dim)
    for k in range(1, table.N + 1):
        h = table.coordinate_cartan(k)
        # h has a single nonzero entry pair at (2k-1, 2k)
        c = x[2 * k - 2, 2 * k - 1] / h[2 * k - 2, 2 * k - 1]
        out = out + h.scale(c)
    return out == x


def _validate(table: RepTable) -> None:
    roots = table.roots
    root_set = set(roots)
    hs = [table.coordinate_cartan(k) for k in range(1, table.N + 1)]
    gens = {r: table.generator(r) for r in roots}
    for r, g in gens.items():
        if g.T != -g:
            raise RepTableError(f"generator of {r} is not antisymmetric")
        for k, h in enumerate(hs):
            if commutator(h, g) != g.scale(r.coeffs[k]):
                raise RepTableError(f"generator of {r} has the wrong weight under H_{k + 1}")
    for a, b in itertools.product(roots, repeat=2):
        c = commutator(gens[a], gens[b])
        s = a + b
        if s.is_zero():
            if c.is_zero() or not _in_cartan_span(c, table):
                raise RepTableError(f"[{a}, {b}] is not a nonzero Cartan element")
        elif s in root_set:
            k = proportionality(c, gens[s])
            if k is None:
                raise RepTableError(f"[{a}, {b}] is not a multiple of the generator of {s}")
            table.constants[(a, b)] = k
        elif not c.is_zero():
            raise RepTableError(f"[{a}, {b}] should vanish: {s} is not a root")
    for (i, j), h in table.cartan.items():
        if commutator(h, table.gen[table_root(table.N, i, j)]) != table.gen[table_root(table.N, i, j)]:
            raise RepTableError(f"[H_{i}+{j}, E_{i}+{j}] != E_{i}+{j}")


def table_root(N: int, i: int, j: int) -> Root:
    return e(N, i, j)


@lru_cache(maxsize=None)
def build_rep_table(series: str, N: int) -> RepTable:
    """Build and validate the generator table for B_N or D_N (N >= 2)."""
    _check_series(series, N)
    dim = 2 * N + 1 if series == "B" else 2 * N
    gen: Dict[Root, Matrix] = {}
    for k in range(1, N + 1):
        if series == "B":
            gen[e(N, k)] = _short_gen(k, N, dim)
        for j in range(k + 1, N + 1):
            gen[e(N, k, j)] = _long_gen(k, j, 1, dim)
            gen[e(N, k, -j)] = _long_gen(k, j, -1, dim)
    cartan = {
        (i, j): (okubo(2 * i - 1, 2 * i, dim) + okubo(2 * j - 1, 2 * j, dim)).scale(-I)
        for i in range(1, N + 1)
        for j in range(i + 1, N + 1)
    }
    table = RepTable(series, N, dim, gen, cartan)
    _validate(table)
    return table


class CarrierError(ValueError):
    """A carrier-algebra relation failed."""


@dataclass(frozen=True)
class CarrierQuadruple:
    """Matrices (H, E, A, B) obeying [H,E]=E, [H,A]=aA, [H,B]=bB, [A,B]=E,
    [E,A]=[E,B]=0 with a + b = 1.  ``b_scale`` is the factor applied to
    d(L_{lambda0 - lambda'}) to normalize [A, B] = E."""

    H: Matrix
    E: Matrix
    A: Matrix
    B: Matrix
    alpha: Fraction
    beta: Fraction
    lambda0: Root
    lambda_p: Root
    b_scale: GaussRational


def _rational(c: Optional[GaussRational], what: str) -> Fraction:
    if c is None or not c.is_real():
        raise CarrierError(f"{what} is not a real multiple")
    return c.re


def carrier_quadruple(table: RepTable, lambda0: Root, lambda_p: Root) -> CarrierQuadruple:
    """Carrier matrices for the initial root ``lambda0`` and constituent ``lambda_p``."""
    lambda_pp = lambda0 - lambda_p
    root_set = set(table.roots)
    for r in (lambda0, lambda_p, lambda_pp):
        if r not in root_set:
            raise CarrierError(f"{r} is not a root of {table.series}{table.N}")
    H = table.cartan_for(lambda0)
    E = table.generator(lambda0)
    A = table.generator(lambda_p)
    b_raw = table.generator(lambda_pp)
    c = proportionality(E, commutator(A, b_raw))
    if c is None:
        raise CarrierError(f"[L_{lambda_p}, L_{lambda_pp}] is not a multiple of L_{lambda0}")
    B = b_raw.scale(c)
    if commutator(H, E) != E:
        raise CarrierError("[H,E] = E fails")
    if not commutator(E, A).is_zero():
        raise CarrierError("[E,A] = 0 fails")
    if not commutator(E, B).is_zero():
        raise CarrierError("[E,B] = 0 fails")
    if commutator(A, B) != E:
        raise CarrierError("[A,B] = E fails")
    alpha = _rational(proportionality(commutator(H, A), A), "[H,A]")
    beta = _rational(proportionality(commutator(H, B), B), "[H,B]")
    if alpha + beta != 1:
        raise CarrierError(f"alpha + beta = {alpha + beta} != 1")
    return CarrierQuadruple(H, E, A, B, alpha, beta, lambda0, lambda_p, c)
