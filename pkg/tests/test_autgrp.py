import pytest

from linsets.autgrp import (GroupDescription, group_check, predicted_aut_binomial, predicted_aut_cmmz,
                            sample_non_stabilizers, stabilizer, stabilizes)
from linsets.errors import BadTheta, SearchSpaceTooLarge
from linsets.families import cmmz_poly, cmpz_poly
from linsets.gf import Elem, field_new, rel_norm, roots_x2_plus_x_minus_1
from linsets.linpoly import QPoly
from linsets.linset import SemilinearMap, apply_semilinear, linset_of

F = field_new(3, 1, 6)


def _cmmz(ctx):
    theta = roots_x2_plus_x_minus_1(ctx)[0]
    return theta, linset_of(cmmz_poly(ctx, theta))


# -- group_check -------------------------------------------------------------------------

def test_group_check_trivial():
    assert group_check(GroupDescription([SemilinearMap.identity(F)]))


def test_group_check_rejects_non_closed():
    phi = SemilinearMap(F.one, F.zero, F.zero, F.gen)  # order 728, not an involution
    assert not group_check(GroupDescription([SemilinearMap.identity(F), phi]))


def test_group_check_rejects_missing_identity():
    swap = SemilinearMap(F.zero, F.one, F.one, F.zero)
    assert not group_check(GroupDescription([swap]))
    assert group_check(GroupDescription([SemilinearMap.identity(F), swap]))


def test_group_check_rejects_unnormalised():
    raw = SemilinearMap(F.gen, F.zero, F.zero, F.gen, normalize=False)
    assert not group_check(GroupDescription([raw]))


def test_group_check_frobenius_cycle():
    frob = SemilinearMap(F.one, F.zero, F.zero, F.one, 1)
    cyc = [SemilinearMap(F.one, F.zero, F.zero, F.one, r) for r in range(6)]
    assert group_check(GroupDescription(cyc))
    assert not group_check(GroupDescription(cyc[:3]))
    assert frob in GroupDescription(cyc)


# -- CMMZ ----------------------------------------------------------------------------------

def test_predicted_cmmz_q3():
    theta, _ = _cmmz(F)
    G = predicted_aut_cmmz(F, theta)
    assert G.order == 24 and group_check(G)
    diag = [phi for phi in G.elements if phi.b == F.zero]
    assert len(diag) == 12


def test_stabilizer_cmmz_q3_equals_prediction():
    theta, L = _cmmz(F)
    S = stabilizer(L)
    assert S.closed and S.keys() == predicted_aut_cmmz(F, theta).keys()


def test_predicted_cmmz_q5():
    F5 = field_new(5, 1, 6)
    theta, L = _cmmz(F5)
    assert theta == F5(2)
    G = predicted_aut_cmmz(F5, theta)
    assert G.order == 72 and group_check(G)
    assert all(stabilizes(phi, L) for phi in G.elements)
    res = sample_non_stabilizers(L, G, 20000, seed=3)
    assert res["tested"] == 20000 and res["stabilizing"] == 0


@pytest.mark.slow
def test_predicted_cmmz_q11_has_no_c_part():
    F11 = field_new(11, 1, 6)
    theta = roots_x2_plus_x_minus_1(F11)[0]
    G = predicted_aut_cmmz(F11, theta)
    assert all(phi.b == F11.zero for phi in G.elements)
    assert G.order == 6 * 12


def test_predicted_cmmz_rejects_bad_theta():
    with pytest.raises(BadTheta):
        predicted_aut_cmmz(F, F.gen)
    with pytest.raises(BadTheta):
        predicted_aut_cmmz(field_new(2, 1, 6), 1)


# -- binomials -----------------------------------------------------------------------------

def test_binomial_prediction_contains_identity_and_stabilizes():
    for ctx, m in ((F, 3), (field_new(2, 1, 8), 4), (field_new(3, 1, 8), 4)):
        for k in (0, 1, 5):
            theta = Elem(ctx, k)
            G = predicted_aut_binomial(ctx, theta)
            L = linset_of(cmpz_poly(ctx, m, 1, theta))
            assert SemilinearMap.identity(ctx) in G and group_check(G)
            assert all(stabilizes(phi, L) for phi in G.elements)
            if rel_norm(ctx, theta, m) == ctx.one:
                assert all(phi.b == ctx.zero for phi in G.elements)


def test_binomial_prediction_q3_norm_not_one():
    G = predicted_aut_binomial(F, F.gen)
    S = stabilizer(linset_of(cmpz_poly(F, 3, 1, F.gen)))
    assert G.order == 52 and S.keys() == G.keys()


def test_binomial_prediction_q2_n8():
    F8 = field_new(2, 1, 8)
    G = predicted_aut_binomial(F8, F8.gen)
    S = stabilizer(linset_of(cmpz_poly(F8, 4, 1, F8.gen)))
    assert G.order == 60 and S.keys() == G.keys()


def test_binomial_prediction_rejects_zero():
    with pytest.raises(BadTheta):
        predicted_aut_binomial(F, F.zero)


# -- stabilizer edge cases -------------------------------------------------------------------

def test_stabilizer_of_single_point_refuses():
    with pytest.raises(SearchSpaceTooLarge):
        stabilizer(linset_of(QPoly.identity(F)))


def test_stabilizer_of_small_field_point_pair():
    F4 = field_new(2, 1, 2)
    L = linset_of(QPoly.monomial(F4, 1))  # 3 points on a line of 5
    S = stabilizer(L)
    # PGammaL(2, 4) acts as S_5 on the five points; a 3-set has stabilizer S_3 x S_2
    assert S.closed and S.order == 12
    for phi in S.elements:
        assert apply_semilinear(phi, L) == L
