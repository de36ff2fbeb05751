from fractions import Fraction
import itertools

import pytest

from yangtwist.chain import (
    ChainSpecError,
    build_chain_spec,
    chain_element,
    coproduct_image,
    constituent_roots,
    factor_in_reps,
    factor_matrices,
    level_carriers,
)
from yangtwist.matrix import identity, kron, nilpotency_index, unipotent_exp, unipotent_pow
from yangtwist.ortho import build_rep_table, build_root_system, e
from yangtwist.rmatrix import rho, xi_coefficients, xi_degree_bound

ACCEPTANCE = [("B", 2, 0, [1]), ("B", 3, 0, [1]), ("B", 4, 1, [1, 1]), ("B", 4, 1, [1, 3]), ("D", 4, 1, [1, 1])]


def brute_pairs(lam0, roots):
    """Unordered pairs {a, b} of roots with a + b = lam0 and neither a + lam0 nor b + lam0 a root."""
    rs = set(roots)
    out = set()
    for a, b in itertools.product(rs, repeat=2):
        if a + b == lam0 and a + lam0 not in rs and b + lam0 not in rs:
            out.add(frozenset((a, b)))
    return out


@pytest.mark.parametrize("series, N", [("B", 2), ("B", 3), ("B", 4), ("B", 5), ("D", 3), ("D", 4), ("D", 5)])
def test_constituent_roots_match_brute_force(series, N):
    roots = build_root_system(series, N)
    lam0 = e(N, 1, 2)
    prime, dprime = constituent_roots(lam0, roots)
    assert {frozenset(p) for p in zip(prime, dprime)} == brute_pairs(lam0, roots)
    assert all(r.coeffs[0] == 1 for r in prime)


def test_constituent_examples():
    assert constituent_roots(e(2, 1, 2), build_root_system("B", 2)) == ([e(2, 1)], [e(2, 2)])
    prime, _ = constituent_roots(e(3, 1, 2), build_root_system("B", 3))
    assert set(prime) == {e(3, 1), e(3, 1, -3), e(3, 1, 3)}
    prime, _ = constituent_roots(e(3, 1, 2), build_root_system("D", 3))
    assert set(prime) == {e(3, 1, -3), e(3, 1, 3)}


def test_constituent_requires_root():
    with pytest.raises(ChainSpecError):
        constituent_roots(e(3, 1, 2), build_root_system("B", 3, (2, 3)))


def test_chain_spec_examples():
    spec = build_chain_spec("B", 2, 0, Fraction(1, 3), [1])
    assert spec.levels[0].lambda0 == e(2, 1, 2)
    assert spec.levels[0].pi_prime == (e(2, 1),)
    spec = build_chain_spec("B", 4, 1, 1, [2, 5])
    lv = spec.levels[1]
    assert lv.lambda0 == e(4, 3, 4)
    assert lv.window == (3, 4)
    assert spec.xi_k(1) == 5
    assert spec.describe() == {"series": "B", "rank": 4, "depth": 1, "xi": "1", "etas": ["2", "5"]}


@pytest.mark.parametrize(
    "args",
    [("B", 3, 1, 1, [1, 1]), ("B", 2, 0, 1, [1, 1]), ("C", 3, 0, 1, [1]), ("B", 1, 0, 1, [1]), ("D", 4, -1, 1, [])],
)
def test_chain_spec_errors(args):
    with pytest.raises(ChainSpecError):
        build_chain_spec(*args)


def test_xi_zero_gives_identity_factors():
    spec = build_chain_spec("B", 3, 0, 0, [1])
    fm = factor_matrices(spec, 0)
    one = identity(49)
    assert fm.jordanian == one and fm.extension == one
    assert chain_element(spec) == one
    assert coproduct_image(spec, 0, "left") == identity(343)


@pytest.mark.parametrize("xi", [1, Fraction(1, 2), -2])
def test_b2_jordanian_factor(xi):
    spec = build_chain_spec("B", 2, 0, xi, [1])
    table = build_rep_table("B", 2)
    H, E, _ = level_carriers(spec, table, 0)
    assert factor_matrices(spec, 0, table).jordanian == unipotent_exp(kron(H, E).scale(xi))


@pytest.mark.parametrize("series, N, p, etas", ACCEPTANCE)
def test_dressing_collapses_in_defining_rep(series, N, p, etas):
    spec = build_chain_spec(series, N, p, Fraction(-3, 2), etas)
    table = build_rep_table(series, N)
    for k in range(p + 1):
        _, E, quads = level_carriers(spec, table, k)
        x = spec.xi_k(k)
        dressing = unipotent_pow(identity(table.dim) + E.scale(x), Fraction(-1, 2))
        for q in quads:
            assert kron(q.A, q.B.scale(x) @ dressing) == kron(q.A, q.B.scale(x))


def test_single_level_element_is_extension_times_jordanian():
    spec = build_chain_spec("B", 3, 0, 2, [1])
    fm = factor_matrices(spec, 0)
    assert chain_element(spec) == fm.extension @ fm.jordanian == fm.factor


def test_factor_order_shows_up_in_the_coproduct():
    spec = build_chain_spec("B", 2, 0, 1, [1])
    table = build_rep_table("B", 2)
    # in d (x) d the two orders happen to agree; the coproduct image separates them
    assert factor_in_reps(spec, table, 0, order="EJ") == factor_in_reps(spec, table, 0, order="JE")
    assert coproduct_image(spec, 0, "right", table) != coproduct_image(spec, 0, "right", table, order="JE")
    with pytest.raises(ValueError):
        factor_in_reps(spec, table, 0, order="XY")


def test_multi_level_element_multiplies_highest_level_first():
    spec = build_chain_spec("B", 4, 1, 1, [1, 3])
    f0 = factor_matrices(spec, 0).factor
    f1 = factor_matrices(spec, 1).factor
    assert chain_element(spec) == f1 @ f0


@pytest.mark.parametrize("series, N, p, etas", ACCEPTANCE)
def test_chain_element_is_unipotent(series, N, p, etas):
    spec = build_chain_spec(series, N, p, 1, etas)
    F = chain_element(spec)
    n = F - identity(F.rows)
    idx = nilpotency_index(n)
    assert idx is not None and idx <= 5
    assert F @ unipotent_pow(F, -1) == identity(F.rows)


@pytest.mark.parametrize("series, N, p, etas", ACCEPTANCE[:3])
def test_first_order_term_is_rho(series, N, p, etas):
    spec = build_chain_spec(series, N, p, 1, etas)
    table = build_rep_table(series, N)
    coeffs = xi_coefficients(lambda s: chain_element(s, table), spec, xi_degree_bound(spec, table))
    assert coeffs[0] == identity(table.dim ** 2)
    assert coeffs[1] == rho(spec, table).rho


def test_coproduct_image_shape_and_errors():
    spec = build_chain_spec("B", 2, 0, 1, [1])
    m = coproduct_image(spec, 0, "right")
    assert m.shape == (125, 125) and m.legs == (5, 5, 5)
    with pytest.raises(ValueError):
        coproduct_image(spec, 0, "middle")
    with pytest.raises(IndexError):
        factor_matrices(spec, 1)


def test_jordanian_coproduct_left_leg_is_primitive():
    """(Delta x id) exp(H (x) sigma) = exp((H(x)1 + 1(x)H) (x) sigma) when there is no extension."""
    spec = build_chain_spec("D", 4, 1, 1, [1, 1])
    table = build_rep_table("D", 4)
    H, E, quads = level_carriers(spec, table, 1)
    assert not quads
    d = table.dim
    sigma = factor_matrices(spec, 1, table).sigma
    one = identity(d)
    expected = unipotent_exp(kron(kron(H, one) + kron(one, H), sigma))
    assert coproduct_image(spec, 1, "left", table) == expected
