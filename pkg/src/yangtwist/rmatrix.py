"""First-order twist data, constant and spectral R-matrices of a chain."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .chain import ChainSpec, chain_factors, level_carriers
from .matrix import Matrix, flip, identity, kron, matmul, unipotent_pow, zeros
from .ortho import RepTable, build_rep_table

__all__ = [
    "RhoMatrix",
    "SpectralRMatrix",
    "PoleError",
    "rho",
    "classical_r",
    "twisted_R",
    "lemma_R",
    "p_and_k",
    "spectral_r_matrix",
    "yangian_R",
    "yangian_R_truncated",
    "rescaled_nilpotency",
    "xi_degree_bound",
    "xi_coefficients",
]


class PoleError(ZeroDivisionError):
    """The spectral parameter hit the pole u = -(M/2 - 1)."""


def _table(spec: ChainSpec, table: Optional[RepTable]) -> RepTable:
    return table or build_rep_table(spec.series, spec.N)


@dataclass(frozen=True)
class RhoMatrix:
    """d(rho) for the whole chain, its flip, and the per-level summands."""

    rho: Matrix
    rho_flip: Matrix
    levels: Tuple[Matrix, ...] = field(repr=False)


def _level_rho(spec: ChainSpec, table: RepTable, k: int) -> Matrix:
    H, E, quads = level_carriers(spec, table, k)
    out = kron(H, E)
    for q in quads:
        out = out + kron(q.A, q.B)
    return out.scale(spec.levels[k].eta)


def rho(spec: ChainSpec, table: Optional[RepTable] = None) -> RhoMatrix:
    """sum_k eta_k (H (x) E + sum_s A_s (x) B_s): the xi-linear term of d(F)."""
    table = _table(spec, table)
    d = table.dim
    levels = tuple(_level_rho(spec, table, k) for k in range(spec.p + 1))
    total = zeros(d * d, legs=(d, d))
    for m in levels:
        total = total + m
    return RhoMatrix(total, flip(total), levels)


def classical_r(spec: ChainSpec, table: Optional[RepTable] = None) -> Matrix:
    """r = rho - tau(rho)."""
    r = rho(spec, table)
    return r.rho - r.rho_flip


def twisted_R(spec: ChainSpec, table: Optional[RepTable] = None, order: str = "EJ") -> Matrix:
    """(F_p)_21 ... (F_0)_21 F_0^-1 ... F_p^-1."""
    table = _table(spec, table)
    d = table.dim
    factors = [f.with_legs((d, d)) for f in chain_factors(spec, table, order=order)]
    out = identity(d * d, (d, d))
    for f in factors:
        out = out @ flip(f)
    for f in reversed(factors):
        out = out @ unipotent_pow(f, -1)
    return out


def lemma_R(spec: ChainSpec, table: Optional[RepTable] = None, literal: bool = False) -> Matrix:
    """Quadratic closed form of R_F built from rho alone.

    The default takes the linear term as -xi (rho - tau rho), which is what
    the expansion of F_21 F^-1 gives.  ``literal=True`` keeps the bare
    ``-xi rho`` linear term.
    """
    r = rho(spec, table)
    p, q = r.rho, r.rho_flip
    xi = spec.xi
    one = identity(p.rows, p.legs)
    linear = p if literal else p - q
    quad = (p @ p + q @ q).scale(Fraction(1, 2)) - q @ p
    return one - linear.scale(xi) + quad.scale(xi * xi)


def p_and_k(dim: int) -> Tuple[Matrix, Matrix]:
    """P = sum e_ij (x) e_ji and its first-leg transpose K = sum e_ij (x) e_ij."""
    if dim < 2:
        raise ValueError("dimension must be at least 2")
    import numpy as np

    n = dim * dim
    P = np.zeros((n, n), dtype=np.int64)
    K = np.zeros((n, n), dtype=np.int64)
    for i in range(dim):
        for j in range(dim):
            P[i * dim + j, j * dim + i] = 1
            K[i * dim + i, j * dim + j] = 1
    z = np.zeros_like(P)
    return Matrix.from_parts(P, z, 1, (dim, dim)), Matrix.from_parts(K, z, 1, (dim, dim))


@dataclass(frozen=True)
class SpectralRMatrix:
    """R(u) = u F_21 F^-1 + P - u/(u + kappa) F_21 K F^-1 with kappa = M/2 - 1."""

    dim: int
    F: Matrix = field(repr=False)
    F21: Matrix = field(repr=False)
    Finv: Matrix = field(repr=False)
    P: Matrix = field(repr=False)
    K: Matrix = field(repr=False)
    kappa_shift: Fraction

    @property
    def R_const(self) -> Matrix:
        return self.F21 @ self.Finv

    def __call__(self, u) -> Matrix:
        u = Fraction(u)
        if u + self.kappa_shift == 0:
            raise PoleError(f"u = {u} is the pole -{self.kappa_shift}")
        twisted_k = self.F21 @ self.K @ self.Finv
        return self.R_const.scale(u) + self.P - twisted_k.scale(u / (u + self.kappa_shift))


def spectral_r_matrix(spec: ChainSpec, table: Optional[RepTable] = None) -> SpectralRMatrix:
    table = _table(spec, table)
    d = table.dim
    factors = [f.with_legs((d, d)) for f in chain_factors(spec, table)]
    F = identity(d * d, (d, d))
    for f in factors:
        F = F @ f
    Finv = identity(d * d, (d, d))
    for f in reversed(factors):
        Finv = Finv @ unipotent_pow(f, -1)
    P, K = p_and_k(d)
    return SpectralRMatrix(d, F, flip(F), Finv, P, K, Fraction(d, 2) - 1)


def yangian_R(spec: ChainSpec, table: Optional[RepTable] = None, u=0) -> Matrix:
    return spectral_r_matrix(spec, table)(u)


def yangian_R_truncated(spec: ChainSpec, table: Optional[RepTable] = None, u=0) -> Matrix:
    """R(u) assembled from rho only, with d(F^-1) = I - xi rho + xi^2/2 rho^2."""
    table = _table(spec, table)
    d = table.dim
    u = Fraction(u)
    kappa = Fraction(d, 2) - 1
    if u + kappa == 0:
        raise PoleError(f"u = {u} is the pole -{kappa}")
    r = rho(spec, table)
    xi = spec.xi
    p, q = r.rho, r.rho_flip
    one = identity(d * d, (d, d))
    P, K = p_and_k(d)
    half = Fraction(1, 2)
    f21 = one + q.scale(xi) + (q @ q).scale(half * xi * xi)
    finv = one - p.scale(xi) + (p @ p).scale(half * xi * xi)
    return lemma_R(spec, table).scale(u) + P - (f21 @ K @ finv).scale(u / (u + kappa))


# -- exact xi-expansions ----------------------------------------------------------


def rescaled_nilpotency(spec: ChainSpec, table: Optional[RepTable] = None) -> int:
    """Nilpotency index of the associative algebra generated by the xi-scaled
    generators (every E_k and B_{k,s}): the smallest L with all words of
    length L equal to zero."""
    table = _table(spec, table)
    letters = []
    for k in range(spec.p + 1):
        _, E, quads = level_carriers(spec, table, k)
        letters.append(E)
        letters.extend(q.B for q in quads)
    words = [w for w in letters if not w.is_zero()]
    length = 1
    while words:
        if length > table.dim:
            raise ArithmeticError("rescaled generators do not generate a nilpotent algebra")
        nxt = []
        for w in words:
            for g in letters:
                m = w @ g
                if not m.is_zero() and all(m != x for x in nxt):
                    nxt.append(m)
        words = nxt
        length += 1
    return length


def xi_degree_bound(spec: ChainSpec, table: Optional[RepTable] = None) -> int:
    """Upper bound on the xi-degree of F_21 F^-1.

    Each power of xi enters with one scaled generator on a tensor leg, so d(F)
    and d(F^-1) have degree < nu and their product degree <= 2(nu - 1).
    """
    return 2 * (rescaled_nilpotency(spec, table) - 1)


def _lagrange_coefficients(points: Sequence[Fraction]) -> List[List[Fraction]]:
    """basis[i][m]: coefficient of xi^m in the i-th Lagrange polynomial."""
    basis = []
    for i, xi_i in enumerate(points):
        poly = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(points):
            if j == i:
                continue
            poly = [Fraction(0)] + poly
            for m in range(len(poly) - 1):
                poly[m] -= xj * poly[m + 1]
            denom *= xi_i - xj
        basis.append([c / denom for c in poly])
    return basis


def xi_coefficients(fn: Callable[[ChainSpec], Matrix], spec: ChainSpec, degree: int) -> List[Matrix]:
    """Exact coefficients c_0..c_degree of the polynomial xi -> fn(spec at xi).

    ``degree`` must be a proven upper bound (see :func:`xi_degree_bound`).
    """
    points = [Fraction(n) for n in range(degree + 1)]
    values = [fn(spec.with_xi(x)) for x in points]
    basis = _lagrange_coefficients(points)
    out = []
    for m in range(degree + 1):
        acc = zeros(values[0].rows, legs=values[0].legs)
        for b, v in zip(basis, values):
            if b[m]:
                acc = acc + v.scale(b[m])
        out.append(acc)
    return out
