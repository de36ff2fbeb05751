from fractions import Fraction
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from yangtwist.chain import build_chain_spec
from yangtwist.matrix import Matrix, flip, identity, kron, zeros
from yangtwist.ortho import build_rep_table, e
from yangtwist.rmatrix import (
    PoleError,
    classical_r,
    lemma_R,
    p_and_k,
    rescaled_nilpotency,
    rho,
    spectral_r_matrix,
    twisted_R,
    xi_coefficients,
    xi_degree_bound,
    yangian_R,
    yangian_R_truncated,
)


def spec(series="B", N=2, p=0, xi=1, etas=None):
    return build_chain_spec(series, N, p, xi, etas or [1] * (p + 1))


@pytest.mark.parametrize("d", [2, 3, 5])
def test_p_and_k_identities(d):
    P, K = p_and_k(d)
    one = identity(d * d)
    assert P @ P == one
    assert P @ K == K and K @ P == K
    assert K @ K == K.scale(d)


def unit_vector(i, n):
    return Matrix([[1 if r == i else 0] for r in range(n)])


def test_p_swaps_vectors():
    P, _ = p_and_k(3)
    for i, j in itertools.product(range(3), repeat=2):
        x, y = unit_vector(i, 3), unit_vector(j, 3)
        assert P @ kron(x, y) == kron(y, x)


def test_p_and_k_reject_small_dim():
    with pytest.raises(ValueError):
        p_and_k(1)


def test_rho_b2():
    table = build_rep_table("B", 2)
    H, E = table.cartan[(1, 2)], table.generator(e(2, 1, 2))
    E1, E2 = table.generator(e(2, 1)), table.generator(e(2, 2))
    c = table.constants[(e(2, 1), e(2, 2))]
    # B is rescaled so that [A, B] = E
    assert rho(spec(), table).rho == kron(H, E) + kron(E1, E2.scale(1 / c))


def test_rho_independent_of_xi():
    assert rho(spec(xi=1)).rho == rho(spec(xi=Fraction(-7, 3))).rho


@pytest.mark.parametrize("args", [("B", 2, 0), ("B", 3, 0), ("B", 4, 1), ("D", 4, 1)])
def test_rho_cubed_vanishes(args):
    r = rho(spec(*args)).rho
    assert (r @ r @ r).is_zero()


def test_classical_r_is_antisymmetric():
    r = classical_r(spec("B", 3))
    assert flip(r) == -r


def test_b2_classical_r_wedge_form():
    table = build_rep_table("B", 2)
    s = spec()
    H, E = table.cartan[(1, 2)], table.generator(e(2, 1, 2))
    q = rho(s, table).levels[0] - kron(H, E)
    wedge = lambda x, y: kron(x, y) - kron(y, x)
    assert classical_r(s, table) == wedge(H, E) + q - flip(q)


@pytest.mark.parametrize("args", [("B", 2, 0), ("B", 4, 1)])
def test_twisted_R_at_zero_xi_is_identity(args):
    s = spec(*args, xi=0)
    assert twisted_R(s) == identity(s.dim ** 2)
    assert lemma_R(s) == identity(s.dim ** 2)


@pytest.mark.parametrize("N", [2, 3])
@pytest.mark.parametrize("xi", [1, Fraction(1, 2), -2])
def test_lemma_closed_form_single_level(N, xi):
    s = spec("B", N, xi=xi)
    assert lemma_R(s) == twisted_R(s)


def test_literal_lemma_linear_term_differs():
    s = spec("B", 2)
    assert lemma_R(s, literal=True) != twisted_R(s)


def test_first_order_of_twisted_R():
    s = spec("B", 3)
    table = build_rep_table("B", 3)
    coeffs = xi_coefficients(lambda t: twisted_R(t, table), s, xi_degree_bound(s, table))
    assert coeffs[1] == -classical_r(s, table)


@pytest.mark.parametrize("args, nu", [(("B", 2, 0), 3), (("B", 3, 0), 3), (("B", 4, 1), 5), (("D", 4, 1), 4)])
def test_rescaled_nilpotency(args, nu):
    assert rescaled_nilpotency(spec(*args)) == nu


def test_xi_coefficients_recover_a_polynomial():
    s = spec()
    a, b, c = identity(2), Matrix([[0, 1], [0, 0]]), Matrix([[3, 0], [1, 0]])
    fn = lambda t: a + b.scale(t.xi) + c.scale(t.xi ** 3)
    assert xi_coefficients(fn, s, 4) == [a, b, zeros(2), c, zeros(2)]


@pytest.mark.parametrize("N", [2, 3])
def test_undeformed_yangian_R(N):
    s = spec("B", N, xi=0)
    d = s.dim
    P, K = p_and_k(d)
    u = Fraction(2, 7)
    kappa = Fraction(d, 2) - 1
    assert kappa == N - Fraction(1, 2)
    assert yangian_R(s, u=u) == identity(d * d).scale(u) + P - K.scale(u / (u + kappa))


def test_yangian_R_at_zero_is_P():
    s = spec("B", 2)
    P, _ = p_and_k(5)
    assert yangian_R(s, u=0) == P
    assert yangian_R_truncated(s, u=0) == P


def test_pole_raises():
    with pytest.raises(PoleError):
        yangian_R(spec("B", 2), u=Fraction(-3, 2))
    with pytest.raises(PoleError):
        yangian_R_truncated(spec("B", 3), u=Fraction(-5, 2))
    with pytest.raises(PoleError):
        yangian_R(spec("D", 4, 1), u=-3)


def test_spectral_matrix_inverse():
    sr = spectral_r_matrix(spec("B", 4, 1, etas=[1, 3]))
    assert sr.F @ sr.Finv == identity(81)
    assert sr.R_const == twisted_R(spec("B", 4, 1, etas=[1, 3]))


@settings(max_examples=10, deadline=None)
@given(st.fractions(min_value=-4, max_value=4, max_denominator=9).filter(lambda u: u != Fraction(-3, 2)))
def test_truncated_form_matches_exact_single_level(u):
    s = spec("B", 2)
    assert yangian_R_truncated(s, u=u) == yangian_R(s, u=u)


def test_truncated_form_matches_exact_b3():
    s = spec("B", 3, xi=Fraction(-1, 2))
    for u in (Fraction(1, 3), 2, Fraction(-7, 4)):
        assert yangian_R_truncated(s, u=u) == yangian_R(s, u=u)
