"""Chains of extended Jordanian twists in the defining representation.

Level ``k`` of a chain lives on the coordinate window ``e_{2k+1} .. e_N``
(the tower so(M) > so(M-4) > ...), uses the initial root
``e_{2k+1} + e_{2k+2}`` and carries the factor

    F_k = exp(sum_s A_s (x) xi_k B_s (1 + xi_k E)^(-1/2)) . exp(H (x) log(1 + xi_k E))

with ``xi_k = xi * eta_k``.  The full element is ``F_p ... F_1 F_0``.

Factors are assembled from carrier matrices pushed through a pair of
representation maps (one per tensor leg).  The defining representation, the
coproduct image ``x -> x(x)1 + 1(x)x`` and the counit ``x -> 0`` are all such
maps, so the twist-equation sides and the counit conditions reuse the same
construction.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from .matrix import (
    Matrix,
    identity,
    kron,
    unipotent_exp,
    unipotent_log,
    unipotent_pow,
    zeros,
)
from .ortho import (
    CarrierQuadruple,
    RepTable,
    Root,
    build_rep_table,
    build_root_system,
    carrier_quadruple,
    e,
)

__all__ = [
    "ChainLevel",
    "ChainSpec",
    "ChainSpecError",
    "TwistFactorMatrices",
    "Rep",
    "DEFINING",
    "COPRODUCT",
    "COUNIT",
    "constituent_roots",
    "build_chain_spec",
    "level_carriers",
    "factor_matrices",
    "factor_in_reps",
    "chain_element",
    "chain_factors",
    "coproduct_image",
]

EXTENSION_BETA = Fraction(1, 2)


class ChainSpecError(ValueError):
    """A chain violates one of the construction conditions."""


@dataclass(frozen=True)
class ChainLevel:
    k: int
    window: Tuple[int, int]
    lambda0: Root
    pi_prime: Tuple[Root, ...]
    pi_dprime: Tuple[Root, ...]
    eta: Fraction


@dataclass(frozen=True)
class ChainSpec:
    series: str
    N: int
    p: int
    levels: Tuple[ChainLevel, ...]
    xi: Fraction

    @property
    def dim(self) -> int:
        return 2 * self.N + 1 if self.series == "B" else 2 * self.N

    @property
    def etas(self) -> Tuple[Fraction, ...]:
        return tuple(lv.eta for lv in self.levels)

    def xi_k(self, k: int) -> Fraction:
        return self.xi * self.levels[k].eta

    def with_xi(self, xi) -> "ChainSpec":
        return ChainSpec(self.series, self.N, self.p, self.levels, Fraction(xi))

    def describe(self) -> dict:
        return {
            "series": self.series,
            "rank": self.N,
            "depth": self.p,
            "xi": str(self.xi),
            "etas": [str(x) for x in self.etas],
        }


def constituent_roots(lambda0: Root, roots: Sequence[Root]) -> Tuple[List[Root], List[Root]]:
    """Pairs (l', l'') of roots with l' + l'' = lambda0 and neither l' + lambda0
    nor l'' + lambda0 a root.

    ``l'`` is the member with coefficient +1 on the first basis vector of
    ``lambda0``'s support; the lists are index-aligned partners.
    """
    root_set = set(roots)
    if lambda0 not in root_set:
        raise ChainSpecError(f"{lambda0} is not a root")
    lead = lambda0.support()[0] - 1
    prime = []
    for r in sorted(root_set, reverse=True):
        partner = lambda0 - r
        if partner not in root_set:
            continue
        if r + lambda0 in root_set or partner + lambda0 in root_set:
            continue
        if r.coeffs[lead] == 1:
            prime.append(r)
    return prime, [lambda0 - r for r in prime]


def _project(r: Root, lo: int) -> Tuple[int, ...]:
    return r.coeffs[lo - 1:]


def build_chain_spec(series: str, N: int, p: int, xi, etas: Sequence) -> ChainSpec:
    """Validated chain of ``p + 1`` levels on the tower of subalgebras."""
    if series not in ("B", "D"):
        raise ChainSpecError(f"series must be B or D, got {series!r}")
    if N < 2:
        raise ChainSpecError(f"rank must be at least 2, got {N}")
    if p < 0:
        raise ChainSpecError(f"depth must be non-negative, got {p}")
    if p + 1 > N // 2:
        raise ChainSpecError(f"depth {p} needs {p + 1} levels but {series}{N} admits at most {N // 2}")
    if len(etas) != p + 1:
        raise ChainSpecError(f"expected {p + 1} eta values, got {len(etas)}")
    levels = []
    for k in range(p + 1):
        lo = 2 * k + 1
        lam0 = e(N, lo, lo + 1)
        window_roots = build_root_system(series, N, (lo, N))
        prime, dprime = constituent_roots(lam0, window_roots)
        levels.append(ChainLevel(k, (lo, N), lam0, tuple(prime), tuple(dprime), Fraction(etas[k])))
    spec = ChainSpec(series, N, p, tuple(levels), Fraction(xi))
    _check_conditions(spec)
    return spec


def _check_conditions(spec: ChainSpec) -> None:
    for lv in spec.levels:
        lo = lv.window[0]
        window_roots = set(build_root_system(spec.series, spec.N, lv.window))
        for a, b in zip(lv.pi_prime, lv.pi_dprime):
            if a + b != lv.lambda0:
                raise ChainSpecError(f"level {lv.k}: {a} + {b} != {lv.lambda0}")
            for r in (a, b):
                if r + lv.lambda0 in window_roots:
                    raise ChainSpecError(f"level {lv.k}: {r} + {lv.lambda0} is a root")
        # orthogonality to the roots of every deeper subalgebra
        if lv.k < spec.p:
            for r in build_root_system(spec.series, spec.N, spec.levels[lv.k + 1].window):
                if r.dot(lv.lambda0):
                    raise ChainSpecError(f"level {lv.k}: {lv.lambda0} is not orthogonal to {r}")
        # pi' and pi'' must carry conjugate weights of the centralizing subalgebra
        w_prime = Counter(_project(r, lo + 2) for r in lv.pi_prime)
        w_dual = Counter(_project(-r, lo + 2) for r in lv.pi_dprime)
        if w_prime != w_dual:
            raise ChainSpecError(f"level {lv.k}: pi' and pi'' are not conjugate weight diagrams")


# -- representation maps ---------------------------------------------------------


@dataclass(frozen=True)
class Rep:
    """A representation of the carrier, given by its action on d-matrices."""

    name: str
    image: Callable[[Matrix], Matrix]
    dim: Callable[[int], int]


def _coproduct(x: Matrix) -> Matrix:
    i = identity(x.rows)
    return kron(x, i) + kron(i, x)


DEFINING = Rep("d", lambda x: x, lambda d: d)
COPRODUCT = Rep("delta", _coproduct, lambda d: d * d)
COUNIT = Rep("epsilon", lambda x: zeros(1), lambda d: 1)


@dataclass(frozen=True)
class TwistFactorMatrices:
    """Jordanian and extension factors of one chain level in d (x) d."""

    k: int
    jordanian: Matrix
    extension: Matrix
    sigma: Matrix
    exponent_terms: Tuple[Tuple[Matrix, Matrix, Fraction], ...] = field(repr=False)
    carriers: Tuple[CarrierQuadruple, ...] = field(repr=False)

    @property
    def factor(self) -> Matrix:
        return self.extension @ self.jordanian


def level_carriers(spec: ChainSpec, table: RepTable, k: int):
    """``(H, E, quadruples)`` for level k; quadruples may be empty."""
    lv = spec.levels[k]
    quads = tuple(carrier_quadruple(table, lv.lambda0, lp) for lp in lv.pi_prime)
    H = table.cartan_for(lv.lambda0)
    E = table.generator(lv.lambda0)
    return H, E, quads


def _pieces(spec: ChainSpec, table: RepTable, k: int, left: Rep, right: Rep):
    H, E, quads = level_carriers(spec, table, k)
    x = spec.xi_k(k)
    d = table.dim
    dl, dr = left.dim(d), right.dim(d)
    one_r = identity(dr)
    shifted = one_r + right.image(E).scale(x)
    sigma = unipotent_log(shifted)
    jordanian = unipotent_exp(kron(left.image(H), sigma).with_legs(None))
    exponent = zeros(dl * dr)
    terms = []
    for q in quads:
        dressed = right.image(q.B).scale(x) @ unipotent_pow(shifted, -EXTENSION_BETA)
        terms.append((q.A, q.B.scale(x), EXTENSION_BETA))
        exponent = exponent + kron(left.image(q.A), dressed).with_legs(None)
    extension = unipotent_exp(exponent)
    return jordanian, extension, sigma, tuple(terms), quads


def factor_in_reps(
    spec: ChainSpec,
    table: RepTable,
    k: int,
    left: Rep = DEFINING,
    right: Rep = DEFINING,
    order: str = "EJ",
) -> Matrix:
    """F_k evaluated in ``left (x) right``; ``order="JE"`` swaps the two factors."""
    jordanian, extension, *_ = _pieces(spec, table, k, left, right)
    if order == "EJ":
        return extension @ jordanian
    if order == "JE":
        return jordanian @ extension
    raise ValueError(f"unknown factor order {order!r}")


def factor_matrices(spec: ChainSpec, k: int, table: Optional[RepTable] = None) -> TwistFactorMatrices:
    if not 0 <= k <= spec.p:
        raise IndexError(f"level {k} outside 0..{spec.p}")
    table = table or build_rep_table(spec.series, spec.N)
    legs = (table.dim, table.dim)
    jordanian, extension, sigma, terms, quads = _pieces(spec, table, k, DEFINING, DEFINING)
    return TwistFactorMatrices(
        k, jordanian.with_legs(legs), extension.with_legs(legs), sigma, terms, quads
    )


def chain_factors(spec: ChainSpec, table: RepTable, left: Rep = DEFINING, right: Rep = DEFINING,
                  order: str = "EJ") -> List[Matrix]:
    """``[F_p, ..., F_0]`` in the order they multiply."""
    return [factor_in_reps(spec, table, k, left, right, order) for k in range(spec.p, -1, -1)]


def _product(mats: List[Matrix], n: int) -> Matrix:
    out = identity(n)
    for m in mats:
        out = out @ m
    return out


def chain_element(spec: ChainSpec, table: Optional[RepTable] = None, order: str = "EJ") -> Matrix:
    """d(F) = F_p ... F_0 in d (x) d."""
    table = table or build_rep_table(spec.series, spec.N)
    d = table.dim
    return _product(chain_factors(spec, table, order=order), d * d).with_legs((d, d))


def coproduct_image(spec: ChainSpec, k: int, side: str, table: Optional[RepTable] = None,
                    order: str = "EJ") -> Matrix:
    """(Delta (x) id)(F_k) for ``side="left"``, (id (x) Delta)(F_k) for ``"right"``."""
    table = table or build_rep_table(spec.series, spec.N)
    d = table.dim
    if side == "left":
        m = factor_in_reps(spec, table, k, COPRODUCT, DEFINING, order)
    elif side == "right":
        m = factor_in_reps(spec, table, k, DEFINING, COPRODUCT, order)
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return m.with_legs((d, d, d))
