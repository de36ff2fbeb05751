"""Exact verdicts for the identities a twist chain must satisfy.

Every check compares two exact matrices.  A failure carries the
lexicographically first differing entry as its witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple

from .chain import (
    COPRODUCT,
    COUNIT,
    DEFINING,
    ChainSpec,
    build_chain_spec,
    chain_element,
    chain_factors,
    factor_matrices,
    factor_in_reps,
)
from .matrix import (
    Matrix,
    commutator,
    embed_leg,
    first_difference,
    flip,
    identity,
    kron,
    unipotent_exp,
    zeros,
)
from .ortho import RepTable, build_rep_table, okubo, proportionality
from .rmatrix import (
    PoleError,
    classical_r,
    lemma_R,
    p_and_k,
    rho,
    spectral_r_matrix,
    twisted_R,
    xi_coefficients,
    xi_degree_bound,
)
from .scalar import I, format_scalar

__all__ = [
    "Verdict",
    "compare",
    "check_twist_equation",
    "check_cybe",
    "check_qybe_constant",
    "check_qybe_spectral",
    "check_lemma",
    "check_worked_example",
    "default_spectral_samples",
    "SPECTRAL_DEGREE",
    "CONVENTIONS",
]

# (u - v + k)(u + k)(v + k) * residual is a polynomial of degree <= 4 in u and in v
SPECTRAL_DEGREE = 4

CONVENTIONS = ("difference", "reflected", "flipped")


@dataclass(frozen=True)
class Verdict:
    check_name: str
    passed: bool
    witness: Optional[Tuple[int, int, str, str]] = None
    config: dict = field(default_factory=dict)
    subchecks: Tuple["Verdict", ...] = ()
    note: str = ""

    def to_dict(self) -> dict:
        out = {
            "check": self.check_name,
            "passed": self.passed,
            "witness": None,
        }
        if self.witness is not None:
            row, col, lhs, rhs = self.witness
            out["witness"] = {"row": row, "col": col, "lhs": lhs, "rhs": rhs}
        out["config"] = self.config
        if self.note:
            out["note"] = self.note
        if self.subchecks:
            out["subchecks"] = [v.to_dict() for v in self.subchecks]
        return out


def compare(name: str, lhs: Matrix, rhs: Matrix, config: Optional[dict] = None, note: str = "") -> Verdict:
    diff = first_difference(lhs, rhs)
    witness = None
    if diff is not None:
        i, j, a, b = diff
        witness = (i, j, format_scalar(a), format_scalar(b))
    return Verdict(name, diff is None, witness, dict(config or {}), note=note)


def combine(name: str, parts: Sequence[Verdict], config: Optional[dict] = None, note: str = "") -> Verdict:
    """Parent verdict: passes iff all parts pass; carries the first failing witness."""
    failed = next((v for v in parts if not v.passed), None)
    witness = None
    if failed is not None:
        witness = failed.witness
        while witness is None and failed.subchecks:
            failed = next(v for v in failed.subchecks if not v.passed)
            witness = failed.witness
    return Verdict(name, failed is None, witness, dict(config or {}), tuple(parts), note)


def _table(spec: ChainSpec, table: Optional[RepTable]) -> RepTable:
    return table or build_rep_table(spec.series, spec.N)


def _legs3(R: Matrix, d: int):
    legs = (d, d, d)
    return (
        embed_leg(R, legs, (1, 2)),
        embed_leg(R, legs, (1, 3)),
        embed_leg(R, legs, (2, 3)),
    )


# -- twist equation ------------------------------------------------------------------


def check_twist_equation(spec: ChainSpec, table: Optional[RepTable] = None, order: str = "EJ") -> Verdict:
    """F_12 (Delta x id)(F) == F_23 (id x Delta)(F) in d(x)3, plus both counit conditions.

    ``order="JE"`` multiplies each factor as Jordanian-then-extension, a
    corrupted chain that must fail.
    """
    table = _table(spec, table)
    d = table.dim
    cfg = spec.describe()
    F = chain_element(spec, table, order=order)
    legs = (d, d, d)
    lhs = embed_leg(F, legs, (1, 2))
    for m in chain_factors(spec, table, COPRODUCT, DEFINING, order):
        lhs = lhs @ m
    rhs = embed_leg(F, legs, (2, 3))
    for m in chain_factors(spec, table, DEFINING, COPRODUCT, order):
        rhs = rhs @ m
    te = compare("twist_equation", lhs, rhs, cfg)

    counits = []
    for name, left, right in (("counit_left", COUNIT, DEFINING), ("counit_right", DEFINING, COUNIT)):
        val = identity(d)
        for m in chain_factors(spec, table, left, right, order):
            val = val @ m
        counits.append(compare(name, val, identity(d), cfg))
    return combine("twist", [te] + counits, cfg, note=f"factor order {order}")


# -- Yang-Baxter equations --------------------------------------------------------------


def _cybe_residual(r: Matrix, d: int) -> Matrix:
    r12, r13, r23 = _legs3(r, d)
    return commutator(r12, r13) + commutator(r12, r23) + commutator(r13, r23)


def check_cybe(spec: ChainSpec, table: Optional[RepTable] = None, r: Optional[Matrix] = None) -> Verdict:
    """[r12,r13] + [r12,r23] + [r13,r23] == 0; ``r`` overrides the chain's r-matrix."""
    table = _table(spec, table)
    d = table.dim
    if r is None:
        r = classical_r(spec, table)
    res = _cybe_residual(r, d)
    return compare("cybe", res, zeros(res.rows), spec.describe())


def check_qybe_constant(R: Matrix, config: Optional[dict] = None) -> Verdict:
    """R12 R13 R23 == R23 R13 R12 in d(x)3."""
    import math

    d = math.isqrt(R.rows)
    if d * d != R.rows or not R.is_square():
        raise ValueError(f"R of shape {R.shape} is not an operator on a tensor square")
    R12, R13, R23 = _legs3(R, d)
    return compare("qybe_constant", R12 @ R13 @ R23, R23 @ R13 @ R12, config)


def default_spectral_samples() -> List[Tuple[Fraction, Fraction]]:
    """A 5x5 grid plus diagonal and sign-flipped points.

    u-values have denominators 3 and 7, v-values 5 and 11, so u, v and u - v
    are never integers or half-integers and cannot hit a pole.
    """
    us = [Fraction(1, 3), Fraction(2, 7), Fraction(5, 3), Fraction(9, 7), Fraction(11, 3)]
    vs = [Fraction(1, 5), Fraction(3, 11), Fraction(7, 5), Fraction(13, 11), Fraction(12, 5)]
    grid = list(product(us, vs))
    diagonal = [(Fraction(2, 3), Fraction(2, 3)), (Fraction(5, 7), Fraction(5, 7)), (Fraction(-4, 3), Fraction(-4, 3))]
    flipped = [(-u, -v) for u, v in grid[:3]]
    return grid + diagonal + flipped


def _has_complete_grid(samples, degree: int) -> bool:
    us = sorted({u for u, _ in samples})
    vs = sorted({v for _, v in samples})
    present = set(samples)
    # look for degree+1 u-values sharing a common set of degree+1 v-values
    for u_pick in _subsets(us, degree + 1):
        common = set(vs)
        for u in u_pick:
            common &= {v for (uu, v) in present if uu == u}
        if len(common) >= degree + 1:
            return True
    return False


def _subsets(items, k):
    from itertools import combinations

    if len(items) > 12:
        items = items[:12]
    return combinations(items, k)


def _spectral_eval(sr, u, convention: str) -> Matrix:
    if convention == "difference":
        return sr(u)
    if convention == "reflected":
        return sr(-u)
    if convention == "flipped":
        return flip(sr(u))
    raise ValueError(f"unknown convention {convention!r}")


def _spectral_run(sr, d: int, samples, convention: str, cfg: dict) -> Verdict:
    legs = (d, d, d)
    records = []
    for u, v in samples:
        R12 = embed_leg(_spectral_eval(sr, u - v, convention), legs, (1, 2))
        R13 = embed_leg(_spectral_eval(sr, u, convention), legs, (1, 3))
        R23 = embed_leg(_spectral_eval(sr, v, convention), legs, (2, 3))
        sample_cfg = dict(cfg, u=str(u), v=str(v))
        records.append(compare("sample", R12 @ R13 @ R23, R23 @ R13 @ R12, sample_cfg))
    return combine(f"qybe_spectral[{convention}]", records, cfg)


def check_qybe_spectral(
    spec: ChainSpec,
    table: Optional[RepTable] = None,
    samples: Optional[Sequence[Tuple]] = None,
) -> Verdict:
    """R12(u-v) R13(u) R23(v) == R23(v) R13(u) R12(u-v) at every sample.

    If the difference form fails for a deformed chain while the undeformed
    R-matrix passes on the same samples, the other argument conventions are
    tried and the outcome is reported in the verdict note.
    """
    table = _table(spec, table)
    d = table.dim
    samples = [(Fraction(u), Fraction(v)) for u, v in (samples or default_spectral_samples())]
    kappa = Fraction(d, 2) - 1
    for u, v in samples:
        for name, x in (("u", u), ("v", v), ("u-v", u - v)):
            if x + kappa == 0:
                raise PoleError(f"sample ({u}, {v}): {name} = {x} is the pole -{kappa}")
    cfg = spec.describe()
    complete = _has_complete_grid(samples, SPECTRAL_DEGREE)
    scope = (
        f"{len(samples)} samples contain a {SPECTRAL_DEGREE + 1}x{SPECTRAL_DEGREE + 1} grid: a pass is the identity in u, v"
        if complete
        else f"{len(samples)} samples, no complete grid: a pass holds at the samples only"
    )
    sr = spectral_r_matrix(spec, table)
    first = _spectral_run(sr, d, samples, "difference", cfg)
    if first.passed or spec.xi == 0:
        return Verdict("qybe_spectral", first.passed, first.witness, cfg, first.subchecks,
                       f"convention difference; {scope}")
    baseline = _spectral_run(spectral_r_matrix(spec.with_xi(0), table), d, samples, "difference", cfg)
    tried = [first]
    if baseline.passed:
        for conv in CONVENTIONS[1:]:
            run = _spectral_run(sr, d, samples, conv, cfg)
            tried.append(run)
            if run.passed:
                return combine("qybe_spectral", tried, cfg,
                               f"difference form fails; convention {conv} passes; {scope}")
    return combine("qybe_spectral", tried, cfg,
                   f"no convention passes (undeformed baseline {'passes' if baseline.passed else 'fails'}); {scope}")


# -- closed-form identities --------------------------------------------------------------


def check_lemma(spec: ChainSpec, table: Optional[RepTable] = None) -> Verdict:
    """(1) rho^3 == 0, (2) d(F_k) == exp(xi rho_k) for every level,
    (3) the quadratic closed form equals F_21 F^-1."""
    table = _table(spec, table)
    cfg = spec.describe()
    r = rho(spec, table)
    item1 = compare("lemma.rho_cubed", r.rho @ r.rho @ r.rho, zeros(r.rho.rows), cfg)
    item2_parts = []
    for k, rk in enumerate(r.levels):
        fk = factor_matrices(spec, k, table).factor
        item2_parts.append(compare(f"level {k}", fk, unipotent_exp(rk.scale(spec.xi)), cfg))
    item2 = combine("lemma.factor_exponential", item2_parts, cfg)
    item3 = compare("lemma.closed_form_R", lemma_R(spec, table), twisted_R(spec, table), cfg,
                    note="linear term -xi(rho - tau rho)")
    return combine("lemma", [item1, item2, item3], cfg)


# -- worked so(2N+1) example ---------------------------------------------------------------


class _Reference:
    """Generators exactly as written for so(2N+1), independent of RepTable."""

    def __init__(self, N: int):
        self.N = N
        self.d = d = 2 * N + 1
        M = lambda i, j: okubo(i, j, d)
        self.H12 = (M(1, 2) + M(3, 4)).scale(-I)
        self.E = {k: M(2 * k, d) - M(2 * k - 1, d).scale(I) for k in range(1, N + 1)}
        half = Fraction(1, 2)

        def long(i, j, s):
            return (-M(2 * i, 2 * j) + M(2 * i, 2 * j - 1).scale(s * I)
                    + M(2 * i - 1, 2 * j).scale(I) + M(2 * i - 1, 2 * j - 1).scale(s)).scale(half)

        self.Ep = {(i, j): long(i, j, 1) for i in range(1, N + 1) for j in range(i + 1, N + 1)}
        self.Em = {(i, j): long(i, j, -1) for i in range(1, N + 1) for j in range(i + 1, N + 1)}

    def pm(self, i: int, s: int, j: int) -> Matrix:
        """E_{i +- j} for sign s."""
        return self.Ep[(i, j)] if s > 0 else self.Em[(i, j)]

    def pair_terms(self):
        """[(E_{1 s j}, E_{2 -s j})] for j > 2 and both signs."""
        return [(self.pm(1, s, j), self.pm(2, -s, j)) for j in range(3, self.N + 1) for s in (1, -1)]

    def extension_exponent(self) -> Matrix:
        out = kron(self.E[1], self.E[2])
        for a, b in self.pair_terms():
            out = out + kron(a, b).scale(2)
        return out

    def rho(self) -> Matrix:
        return kron(self.H12, self.Ep[(1, 2)]) + self.extension_exponent()

    def R_linear(self) -> Matrix:
        h, e12 = self.H12, self.Ep[(1, 2)]
        return -(kron(h, e12) - kron(e12, h) + self.extension_exponent())

    def R_linear_antisymmetrized(self) -> Matrix:
        x = self.rho()
        return -(x - flip(x))

    def R_quadratic_short(self) -> Matrix:
        E1, E2, e12 = self.E[1], self.E[2], self.Ep[(1, 2)]
        return (kron(E1 @ E1, E2 @ E2) + kron(E2 @ E2, E1 @ E1) + kron(e12, e12).scale(2)
                - kron(E2 @ E1, E1 @ E2).scale(2)).scale(Fraction(1, 2))

    def R_quadratic_long(self) -> Matrix:
        out = zeros(self.d * self.d, legs=(self.d, self.d))
        for j in range(3, self.N + 1):
            for s in (1, -1):
                a, a_bar = self.pm(1, s, j), self.pm(1, -s, j)
                b, b_bar = self.pm(2, -s, j), self.pm(2, s, j)
                term = kron(a @ a_bar, b @ b_bar) + kron(b @ b_bar, a @ a_bar) - kron(b @ a, a @ b).scale(2)
                out = out + term.scale(2)
        return out

    def R_quadratic(self) -> Matrix:
        return self.R_quadratic_short() + self.R_quadratic_long()


def _quadratic_part(x: Matrix) -> Matrix:
    """xi^2 coefficient of exp(xi x)_21 exp(-xi x) for x^3 = 0."""
    f = flip(x)
    return (x @ x + f @ f).scale(Fraction(1, 2)) - f @ x


def check_worked_example(N: int, table: Optional[RepTable] = None,
                         xis: Iterable = (1, Fraction(1, 2), -2)) -> Verdict:
    """Compare the single-level so(2N+1) chain against hand-written reference forms of
    d(Phi_J), d(Phi_E), d(rho) and the xi-expansion of R_B0, entry by entry."""
    if N < 3:
        raise ValueError("the worked example needs N >= 3 so the j > 2 sums are nonempty")
    table = table or build_rep_table("B", N)
    ref = _Reference(N)
    spec = build_chain_spec("B", N, 0, 1, [1])
    cfg = spec.describe()
    parts = []

    jord, ext = [], []
    for xi in xis:
        s = spec.with_xi(xi)
        fm = factor_matrices(s, 0, table)
        c = dict(cfg, xi=str(Fraction(xi)))
        jord.append(compare(f"xi={Fraction(xi)}", fm.jordanian, unipotent_exp(kron(ref.H12, ref.Ep[(1, 2)]).scale(xi)), c))
        ext.append(compare(f"xi={Fraction(xi)}", fm.extension, unipotent_exp(ref.extension_exponent().scale(xi)), c))
    parts.append(combine("jordanian_factor", jord, cfg))
    parts.append(combine("extension_factor", ext, cfg))
    parts.append(compare("rho", rho(spec, table).rho, ref.rho(), cfg))

    degree = xi_degree_bound(spec, table)
    coeffs = xi_coefficients(lambda s: twisted_R(s, table), spec, degree)
    d = table.dim
    orders = [compare("xi^0", coeffs[0], identity(d * d, (d, d)), cfg)]
    linear = [
        compare("as written", coeffs[1], ref.R_linear(), cfg),
        compare("every term antisymmetrized", coeffs[1], ref.R_linear_antisymmetrized(), cfg),
    ]
    orders.append(combine("xi^1", linear[:1], cfg))
    orders.append(Verdict("xi^1 reading", linear[1].passed, linear[1].witness, cfg, (linear[1],),
                          "linear term with H^E12 and every extension term read as wedges"))

    # split the computed xi^2 coefficient along the reference blocks
    long_ = ref.extension_exponent() - kron(ref.E[1], ref.E[2])
    long_part = _quadratic_part(long_)
    quad = [compare("long-root block", long_part, ref.R_quadratic_long(), cfg)]
    rest = compare("short-root block and E12 (x) E12", coeffs[2] - long_part, ref.R_quadratic_short(), cfg)
    if not rest.passed:
        e12 = ref.Ep[(1, 2)]
        c = proportionality(ref.R_quadratic() - coeffs[2], kron(e12, e12))
        if c is not None:
            rest = Verdict(rest.check_name, False, rest.witness, cfg,
                           note=f"reference - computed = {format_scalar(c)} E12 (x) E12")
    quad.append(rest)
    orders.append(combine("xi^2", quad, cfg))
    for m in range(3, len(coeffs)):
        orders.append(compare(f"xi^{m}", coeffs[m], zeros(d * d, legs=(d, d)), cfg))
    parts.append(combine("R_B0", orders, cfg, note=f"exact xi-coefficients up to proven degree {degree}"))
    return combine("worked_example", parts, cfg)
