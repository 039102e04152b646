import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from linsets.errors import SingularMatrix
from linsets.gf import Elem, field_new, roots_x2_plus_x_minus_1
from linsets.linpoly import QPoly, is_scattered, qp_adjoint, random_qpoly
from linsets.linset import (LinearSet, ProjPoint, SemilinearMap, apply_semilinear, fiber_counts, linset_of,
                            transport, weight_spectrum)

F = field_new(3, 1, 6)
F8 = field_new(2, 1, 8)
polys = st.lists(st.integers(-1, 727), min_size=6, max_size=6).map(
    lambda logs: QPoly(F, [Elem(F, v) for v in logs]))
nz = st.integers(-1, 727)


def _nonsingular(t):
    a, b, c, d = (Elem(F, v) for v in t[:4])
    return bool(a * d - b * c)


def maps():
    return st.tuples(nz, nz, nz, nz, st.integers(0, 5)).filter(_nonsingular).map(
        lambda t: SemilinearMap(*(Elem(F, v) for v in t[:4]), t[4]))


def mono(i, ctx=F):
    return QPoly.monomial(ctx, i)


def _apply_scalar(phi, P):
    """Reference action on a point, with vectors and scalar arithmetic only."""
    ctx = phi.ctx
    x, y = (ctx.zero, ctx.one) if P.slope is None else (ctx.one, P.slope)
    x, y = x.frob(phi.rho), y.frob(phi.rho)
    u, v = phi.a * x + phi.b * y, phi.c * x + phi.d * y
    return ProjPoint(None) if not u else ProjPoint(v / u)


# -- construction --------------------------------------------------------------------

def test_pseudoregulus_is_subgroup():
    L = linset_of(mono(1))
    assert len(L) == 364 and not L.has_infinity
    slopes = {P.slope.log for P in L.points()}
    # the (q-1)-th powers: an index-2 subgroup of F^*, closed under products
    assert slopes == set(range(0, 728, 2))
    assert all((a + b) % 728 in slopes for a in list(slopes)[:30] for b in list(slopes)[:30])


def test_identity_poly_single_point():
    L = linset_of(QPoly.identity(F))
    assert [P.slope for P in L.points()] == [F.one]


def test_pseudoregulus_independent_of_s():
    L = linset_of(mono(1))
    for s in (1, 5):
        assert linset_of(mono(s)) == L


def test_weight_spectrum_examples():
    assert weight_spectrum(mono(1)) == {1: 364}
    assert weight_spectrum(QPoly.identity(F)) == {6: 1}
    assert weight_spectrum(mono(2)) == {2: 91}


@settings(max_examples=40)
@given(polys)
def test_weight_spectrum_counts_all_vectors(f):
    spec = weight_spectrum(f)
    if f.support():
        assert sum(cnt * (3**w - 1) // 2 for w, cnt in spec.items()) == 364
        assert sum(spec.values()) == len(linset_of(f))


@settings(max_examples=40)
@given(polys)
def test_cardinality_bound_and_scattered(f):
    L = linset_of(f)
    assert len(L) <= 364 and not L.has_infinity
    assert (len(L) == 364) == is_scattered(f)


# -- adjoint lemma -------------------------------------------------------------------

def test_adjoint_fibers_exhaustive(rng):
    for ctx, count in ((F, 40), (F8, 15)):
        for i in range(count):
            f = random_qpoly(ctx, rng, (1.0, 0.5, 0.3)[i % 3])
            fa = qp_adjoint(f)
            assert np.array_equal(fiber_counts(f), fiber_counts(fa))
            assert linset_of(f) == linset_of(fa)


# -- serialisation -------------------------------------------------------------------

def test_json_round_trip():
    L = linset_of(QPoly.from_terms(F, {1: 1, 4: F.gen}))
    obj = L.to_json()
    assert set(obj) == {"card", "slopes_dlog", "infinity"}
    assert LinearSet.from_json(F, obj) == L
    phi = SemilinearMap(F.zero, F.one, F.one, F.gen, 3)
    assert SemilinearMap.from_json(F, phi.to_json()) == phi


def test_projpoint_codes():
    assert ProjPoint(None).code(F) == F.order
    assert ProjPoint(F.one).code(F) == 1
    assert ProjPoint(F.zero).code(F) == 0
    for c in (0, 1, 17, F.order):
        assert ProjPoint.from_code(F, c).code(F) == c


# -- semilinear action ---------------------------------------------------------------

def test_singular_rejected():
    with pytest.raises(SingularMatrix):
        SemilinearMap(F.one, F.one, F.one, F.one)


@given(maps())
def test_normalisation(phi):
    lead = next(v for v in phi.matrix if v)
    assert lead == F.one


def test_identity_and_swap():
    L = linset_of(QPoly.from_terms(F, {1: 1, 4: F.gen}))
    assert apply_semilinear(SemilinearMap.identity(F), L) == L
    swap = SemilinearMap(F.zero, F.one, F.one, F.zero)
    for s in (1, 5, 100):
        assert swap(ProjPoint(Elem(F, s))) == ProjPoint(Elem(F, -s % 728))
    assert swap(ProjPoint(None)) == ProjPoint(F.zero)
    assert swap(ProjPoint(F.zero)) == ProjPoint(None)


@given(maps(), st.integers(0, F.order))
def test_action_matches_scalar_reference(phi, code):
    P = ProjPoint.from_code(F, code)
    assert phi(P) == _apply_scalar(phi, P)


@given(maps(), maps())
def test_group_action(phi, psi):
    codes = np.arange(F.order + 1)
    assert np.array_equal(phi.apply_codes(psi.apply_codes(codes)), (phi @ psi).apply_codes(codes))


@given(maps())
def test_inverse_map(phi):
    assert (phi @ phi.inverse()).is_identity() and (phi.inverse() @ phi).is_identity()


@given(maps(), polys)
def test_cardinality_preserved(phi, f):
    L = linset_of(f)
    assert len(apply_semilinear(phi, L)) == len(L)


@settings(max_examples=30)
@given(st.lists(st.integers(0, F.order), min_size=6, max_size=6, unique=True), st.integers(0, 5))
def test_transport_hits_targets(pts, rho):
    src, dst = pts[:3], pts[3:]
    phi = transport(F, src, dst, rho)
    assert phi.rho == rho
    assert [int(c) for c in phi.apply_codes(np.array(src))] == dst


def test_cmmz_diagonal_stabilises():
    theta = roots_x2_plus_x_minus_1(F)[0]
    L = linset_of(QPoly.from_terms(F, {1: 1, 3: 1, 5: theta}))
    units = [Elem(F, k) for k in range(0, 728, 182)]  # d^(q+1) = 1
    for rho in range(6):
        if theta.frob(rho) != theta:
            continue
        for d in units:
            assert d ** 4 == F.one
            assert apply_semilinear(SemilinearMap(F.one, F.zero, F.zero, d, rho), L) == L
