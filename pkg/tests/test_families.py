import pytest

from linsets.equiv import gammal_equivalent, norm_condition, verify_gammal
from linsets.errors import BadShape, BadTheta, NoSolution
from linsets.families import (binomial_inverse, cmmz_frobenius_witness, cmmz_inverse, cmmz_poly, cmmz_witness_chain,
                              cmpz_poly, equivalence_witness_binomial, norm_class_representatives, reduce_to_s1)
from linsets.gf import Elem, field_new, rel_norm, roots_x2_plus_x_minus_1
from linsets.linpoly import QPoly, is_scattered, qp_adjoint, qp_compose_mod
from linsets.linset import apply_semilinear, linset_of

F = field_new(3, 1, 6)
F5 = field_new(5, 1, 6)


def X(ctx):
    return QPoly.identity(ctx)


# -- CMMZ ----------------------------------------------------------------------------------

def test_cmmz_construction():
    f = cmmz_poly(F5, 2)
    assert f == QPoly.from_terms(F5, {1: 1, 3: 1, 5: 2})
    assert is_scattered(f)
    for theta in roots_x2_plus_x_minus_1(F):
        assert is_scattered(cmmz_poly(F, theta))
    with pytest.raises(BadTheta):
        cmmz_poly(F, 1)
    with pytest.raises(BadTheta):
        cmmz_poly(field_new(3, 1, 4), 1)


def test_cmmz_inverse_q5():
    h = cmmz_inverse(F5, 2)
    assert h == QPoly.from_terms(F5, {1: 2, 3: 1, 5: 1})
    assert qp_compose_mod(h, cmmz_poly(F5, 2)) == X(F5)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_cmmz_inverse_both_sides(p):
    ctx = field_new(p, 1, 6)
    for theta in roots_x2_plus_x_minus_1(ctx):
        f, h = cmmz_poly(ctx, theta), cmmz_inverse(ctx, theta)
        assert qp_compose_mod(h, f) == X(ctx) and qp_compose_mod(f, h) == X(ctx)


def test_cmmz_inverse_adjoint_shape_for_base_field_root():
    # when theta lies in F_q the inverse is (-theta-1)X^q + X^(q^3) + X^(q^5)
    ctx = F5
    theta = ctx(2)
    h = cmmz_inverse(ctx, theta)
    assert h == QPoly.from_terms(ctx, {1: -theta - 1, 3: 1, 5: 1})
    assert qp_adjoint(h) == QPoly.from_terms(ctx, {1: 1, 3: 1, 5: (-theta - 1).qfrob(5)})


@pytest.mark.parametrize("p", [3, 5, 7])
def test_cmmz_witness_chain(p):
    ctx = field_new(p, 1, 6)
    roots = roots_x2_plus_x_minus_1(ctx)
    for t1 in roots:
        t2 = -t1 - 1
        assert t2 in roots
        phi, steps = cmmz_witness_chain(ctx, t1, t2)
        assert all(steps.values())
        assert apply_semilinear(phi, linset_of(cmmz_poly(ctx, t1))) == linset_of(cmmz_poly(ctx, t2))
    if len(roots) == 2:
        with pytest.raises(NoSolution):
            cmmz_witness_chain(ctx, roots[0], roots[0])


def test_cmmz_frobenius_witness():
    t1, t2 = roots_x2_plus_x_minus_1(F)
    phi = cmmz_frobenius_witness(F, t1, t2)
    assert phi.rho == 1 and verify_gammal(cmmz_poly(F, t1), cmmz_poly(F, t2), phi)
    with pytest.raises(NoSolution):
        cmmz_frobenius_witness(F, t1, t1)


# -- CMPZ binomials ------------------------------------------------------------------------

def test_cmpz_construction():
    assert cmpz_poly(F, 3, 1, 0) == QPoly.monomial(F, 1)
    assert cmpz_poly(F, 3, 2, F.gen) == QPoly.from_terms(F, {2: 1, 5: F.gen})
    F8 = field_new(3, 1, 8)
    assert cmpz_poly(F8, 4, 1, F8.gen).support() == [1, 5]
    with pytest.raises(BadShape):
        cmpz_poly(F, 4, 1, 1)
    with pytest.raises(BadShape):
        cmpz_poly(F, 3, 3, 1)


def test_binomial_inverse():
    assert binomial_inverse(F, 3, F.zero) == QPoly.monomial(F, 5)
    g = F.gen
    h = binomial_inverse(F, 3, g)
    f = cmpz_poly(F, 3, 1, g)
    assert qp_compose_mod(h, f) == X(F) and qp_compose_mod(f, h) == X(F)
    one_norm = next(Elem(F, k) for k in range(728) if rel_norm(F, Elem(F, k), 3) == F.one)
    assert binomial_inverse(F, 3, one_norm) is None


def test_binomial_inverse_n8():
    for p in (2, 3):
        ctx = field_new(p, 1, 8)
        for k in (1, 2, 7):
            theta = Elem(ctx, k)
            h = binomial_inverse(ctx, 4, theta)
            f = cmpz_poly(ctx, 4, 1, theta)
            if rel_norm(ctx, theta, 4) == ctx.one:
                assert h is None
            else:
                assert qp_compose_mod(h, f) == X(ctx)


def test_binomial_witness():
    g = F.gen
    phi = equivalence_witness_binomial(F, 3, g, g, 0)
    assert phi.d == F.one and phi.rho == 0
    delta = g ** 3
    rho = norm_condition(F, delta, g, 3)
    assert rho == 1
    phi = equivalence_witness_binomial(F, 3, delta, g, rho)
    assert apply_semilinear(phi, linset_of(cmpz_poly(F, 3, 1, g))) == linset_of(cmpz_poly(F, 3, 1, delta))
    with pytest.raises(NoSolution):
        equivalence_witness_binomial(F, 3, g ** 2, g, 0)


def test_binomial_witness_all_classes_q3():
    reps = norm_class_representatives(F, 3)
    assert len(reps) == 26
    built = 0
    for theta in reps:
        for delta in reps:
            rho = norm_condition(F, delta, theta, 3)
            if rho is not None:
                equivalence_witness_binomial(F, 3, delta, theta, rho)  # verifies internally
                built += 1
    assert built == 74


def test_norm_class_representatives_cover_norms():
    reps = norm_class_representatives(F, 3)
    assert len({rel_norm(F, r, 3) for r in reps}) == 26


# -- reduction to s = 1 --------------------------------------------------------------------

def test_reduce_s1_is_identity():
    f, phi = reduce_to_s1(F, 3, 1, F.gen)
    assert f == cmpz_poly(F, 3, 1, F.gen) and phi.is_identity()


def test_reduce_s2():
    g, phi = reduce_to_s1(F, 3, 2, F.gen)
    assert g.support() == [1, 4]
    assert verify_gammal(cmpz_poly(F, 3, 2, F.gen), g, phi)


def test_reduce_rejects_zero():
    with pytest.raises(BadShape):
        reduce_to_s1(F, 3, 2, F.zero)
