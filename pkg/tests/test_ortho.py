import itertools
from fractions import Fraction

import pytest

from yangtwist.chain import build_chain_spec
from yangtwist.matrix import MatrixError, commutator, matrix_unit
from yangtwist.ortho import (
    CarrierError,
    Root,
    build_rep_table,
    build_root_system,
    carrier_quadruple,
    e,
    okubo,
    okubo_coordinates,
    positive_roots,
)
from yangtwist.scalar import GaussRational, I


def brute_roots(series, N):
    """Integer vectors in {-1,0,1}^N of squared length 2 (plus 1 for B)."""
    norms = {1, 2} if series == "B" else {2}
    return {
        Root(c) for c in itertools.product((-1, 0, 1), repeat=N) if sum(x * x for x in c) in norms
    }


@pytest.mark.parametrize("series, N", [("B", 2), ("B", 3), ("B", 4), ("D", 3), ("D", 4), ("D", 5)])
def test_root_system_matches_enumeration(series, N):
    roots = build_root_system(series, N)
    assert set(roots) == brute_roots(series, N)
    assert len(roots) == (2 * N * N if series == "B" else 2 * N * (N - 1))
    assert len(positive_roots(series, N)) == len(roots) // 2


def test_b2_roots():
    expected = {e(2, 1), e(2, -1), e(2, 2), e(2, -2)} | {e(2, a, b) for a in (1, -1) for b in (2, -2)}
    assert set(build_root_system("B", 2)) == expected


def test_window_restricts_support():
    roots = build_root_system("B", 4, (3, 4))
    assert len(roots) == 8
    assert all(set(r.support()) <= {3, 4} for r in roots)


def test_rank_one_rejected():
    with pytest.raises(ValueError):
        build_root_system("B", 1)
    with pytest.raises(ValueError):
        build_rep_table("D", 1)


def test_okubo_normalization_and_antisymmetry():
    m = okubo(1, 2, 5)
    assert m == (matrix_unit(1, 2, 5) - matrix_unit(2, 1, 5)).scale(Fraction(1, 2))
    assert m.T == -m
    with pytest.raises(MatrixError):
        okubo(2, 2, 5)
    with pytest.raises(MatrixError):
        okubo(1, 6, 5)


def test_okubo_commutator_sign():
    assert commutator(okubo(1, 2, 5), okubo(2, 3, 5)) == okubo(1, 3, 5).scale(Fraction(1, 2))


def test_cartan_of_e1_plus_e2_in_so5():
    table = build_rep_table("B", 2)
    assert table.cartan[(1, 2)] == (okubo(1, 2, 5) + okubo(3, 4, 5)).scale(-I)


def test_cartan_raises_its_root():
    table = build_rep_table("B", 2)
    H, E = table.cartan[(1, 2)], table.generator(e(2, 1, 2))
    assert commutator(H, E) == E


def test_short_root_constant_recorded():
    table = build_rep_table("B", 2)
    c = table.constants[(e(2, 1), e(2, 2))]
    assert c != 0
    assert commutator(table.generator(e(2, 1)), table.generator(e(2, 2))) == table.generator(e(2, 1, 2)).scale(c)


@pytest.mark.parametrize("series, N", [("B", 2), ("B", 3), ("D", 4)])
def test_generators_are_okubo_combinations(series, N):
    table = build_rep_table(series, N)
    for r in table.roots:
        g = table.generator(r)
        assert g.T == -g
        assert okubo_coordinates(g)
    for h in table.cartan.values():
        assert okubo_coordinates(h)


@pytest.mark.parametrize("series, N", [("B", 3), ("D", 4)])
def test_commutators_vanish_off_the_root_lattice(series, N):
    table = build_rep_table(series, N)
    roots = set(table.roots)
    for a, b in itertools.product(roots, repeat=2):
        s = a + b
        if not s.is_zero() and s not in roots:
            assert commutator(table.generator(a), table.generator(b)).is_zero()


@pytest.mark.parametrize("series, N", [("B", 3), ("D", 4)])
def test_generator_weights(series, N):
    table = build_rep_table(series, N)
    for r in table.roots:
        g = table.generator(r)
        for k in range(1, N + 1):
            assert commutator(table.coordinate_cartan(k), g) == g.scale(r.coeffs[k - 1])


def test_so5_quadruple():
    table = build_rep_table("B", 2)
    q = carrier_quadruple(table, e(2, 1, 2), e(2, 1))
    assert (q.alpha, q.beta) == (Fraction(1, 2), Fraction(1, 2))
    assert commutator(q.E, q.A).is_zero()
    assert commutator(q.H, q.A) == q.A.scale(Fraction(1, 2))


@pytest.mark.parametrize(
    "series, N, p", [("B", 2, 0), ("B", 3, 0), ("B", 4, 0), ("B", 4, 1), ("D", 4, 0), ("D", 4, 1)]
)
def test_carrier_relations_for_every_constituent_pair(series, N, p):
    table = build_rep_table(series, N)
    spec = build_chain_spec(series, N, p, 1, [1] * (p + 1))
    # the D_2 window of a deepest D level has no constituent pairs
    assert spec.levels[0].pi_prime
    for lv in spec.levels:
        for lp in lv.pi_prime:
            q = carrier_quadruple(table, lv.lambda0, lp)
            assert commutator(q.H, q.E) == q.E
            assert commutator(q.A, q.B) == q.E
            assert commutator(q.E, q.A).is_zero() and commutator(q.E, q.B).is_zero()
            assert commutator(q.H, q.A) == q.A.scale(q.alpha)
            assert commutator(q.H, q.B) == q.B.scale(q.beta)
            assert q.alpha + q.beta == 1


def test_carrier_rejects_non_root():
    table = build_rep_table("B", 2)
    with pytest.raises(CarrierError):
        carrier_quadruple(table, e(2, 1, 2), e(2, -1))


def test_negative_root_generator_is_conjugate():
    table = build_rep_table("B", 2)
    assert table.generator(e(2, -1)) == table.generator(e(2, 1)).conj()
    with pytest.raises(KeyError):
        table.generator(Root((2, 0)))


def test_root_labels():
    assert e(3, 1, -3).label == "e1-e3"
    assert e(3, 2).label == "e2"
    assert e(3, 1, 2).dot(e(3, 1, -2)) == 0
