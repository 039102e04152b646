"""Closed-form families: CMMZ trinomials and CMPZ binomials.

Includes their explicit compositional inverses, the reduction of a binomial
X^(q^s) + delta X^(q^(s+m)) to one with s = 1, and constructive
equivalence witnesses.  Everything returned here is checked before it is
handed back.
"""

from __future__ import annotations

from math import gcd

from .equiv import gammal_search, verify_gammal
from .errors import BadShape, BadTheta, NoSolution, SearchExhausted
from .gf import Elem, power_roots, rel_norm
from .linpoly import QPoly, qp_adjoint, qp_compose_mod, qp_eval_many, qp_inverse
from .linset import SemilinearMap, apply_semilinear, linset_of


def _check_cmmz(ctx, theta):
    theta = ctx(theta)
    if ctx.p == 2:
        raise BadTheta("the CMMZ family needs odd q")
    if ctx.n != 6:
        raise BadTheta(f"the CMMZ family lives over F_q^6, not F_q^{ctx.n}")
    if theta * theta + theta != ctx.one:
        raise BadTheta(f"{theta} is not a root of X^2 + X - 1")
    return theta


def cmmz_poly(ctx, theta):
    """X^q + X^(q^3) + theta X^(q^5) over F_{q^6}."""
    theta = _check_cmmz(ctx, theta)
    return QPoly.from_terms(ctx, {1: 1, 3: 1, 5: theta})


def _same_map(f, g):
    xs = f.ctx.elements()
    return bool((qp_eval_many(f, xs) == qp_eval_many(g, xs)).all())


def _checked_inverse(f, h):
    ident = QPoly.identity(f.ctx)
    if qp_compose_mod(h, f) != ident or qp_compose_mod(f, h) != ident:
        raise AssertionError("closed-form inverse does not invert f")
    ref = qp_inverse(f)
    if ref is None or not _same_map(ref, h):
        raise AssertionError("closed-form inverse disagrees with the matrix inverse")
    return h


def cmmz_inverse(ctx, theta):
    """-(theta^q + 1) X^q + X^(q^3) + X^(q^5); for theta in F_q this is (-theta - 1) X^q + ..."""
    f = cmmz_poly(ctx, theta)
    theta = ctx(theta)
    h = QPoly.from_terms(ctx, {1: -(theta.qfrob(1) + 1), 3: 1, 5: 1})
    return _checked_inverse(f, h)


def cmpz_poly(ctx, m, s, delta):
    """X^(q^s) + delta X^(q^(s+m)) over F_{q^(2m)}."""
    if ctx.n != 2 * m:
        raise BadShape(f"need n = 2m, got n = {ctx.n}, m = {m}")
    if s <= 0 or gcd(s, m) != 1:
        raise BadShape(f"s = {s} must be positive and coprime to m = {m}")
    n = ctx.n
    return QPoly.from_terms(ctx, {s % n: 1, (s + m) % n: delta})


def binomial_inverse(ctx, m, theta):
    """Inverse of X^q + theta X^(q^(m+1)), or None when N_{q^2m/q^m}(theta) = 1."""
    f = cmpz_poly(ctx, m, 1, theta)
    theta = ctx(theta)
    q, n = ctx.q, ctx.n
    scale = ctx.one - theta ** (q ** (m - 1) + q ** (2 * m - 1))
    if not scale:
        return None
    inv = scale.inverse()
    h0 = {(m - 1) % n: -theta.qfrob(2 * m - 1), (2 * m - 1) % n: ctx.one}
    h = QPoly.from_terms(ctx, {i: c * inv for i, c in h0.items()})
    return _checked_inverse(f, h)


def equivalence_witness_binomial(ctx, m, delta, theta, rho):
    """diag(1, d) with Frobenius p^rho carrying L of X^q + theta X^(q^(m+1)) onto that of delta.

    d solves d^((q^m - 1)/(q - 1)) = (delta / theta^(p^rho))^(q^(m-1)).
    """
    delta, theta = ctx(delta), ctx(theta)
    if rel_norm(ctx, delta, m) != rel_norm(ctx, theta, m).frob(rho):
        raise NoSolution("norm condition fails for this rho")
    q = ctx.q
    E = (q**m - 1) // (q - 1)
    th = theta.frob(rho)
    if not th:
        d = ctx.one
    else:
        roots = power_roots(ctx, E, (delta / th).qfrob(m - 1)) if delta else []
        if not roots:
            raise NoSolution("no d solves the power equation")
        d = roots[0]
    phi = SemilinearMap(ctx.one, ctx.zero, ctx.zero, d, rho)
    src = linset_of(cmpz_poly(ctx, m, 1, theta))
    dst = linset_of(cmpz_poly(ctx, m, 1, delta))
    if apply_semilinear(phi, src) != dst:
        raise AssertionError("diagonal witness does not map the linear sets")
    return phi


def norm_class_representatives(ctx, m):
    """g^i, i < q^m - 1: one element per value of N_{q^n/q^m}."""
    return [Elem(ctx, i) for i in range(ctx.q**m - 1)]


def reduce_to_s1(ctx, m, s, delta, budget=None):
    """(f_b, phi) with f_b = X^q + b X^(q^(m+1)) and U_{delta,s}^phi = U_{f_b}."""
    delta = ctx(delta)
    if not delta:
        raise BadShape("delta = 0 is excluded")
    f = cmpz_poly(ctx, m, s, delta)
    if s % ctx.n == 1:
        return f, SemilinearMap.identity(ctx)
    nd = rel_norm(ctx, delta, m)
    autos = range(ctx.e * m)

    def promising(b):
        nb = rel_norm(ctx, b, m)
        return any(nb.frob(r) * nd == ctx.one or nb.frob(r) == nd for r in autos)

    cands = [Elem(ctx, i) for i in range(ctx.M)]
    cands = [b for b in cands if promising(b)] + [b for b in cands if not promising(b)]
    kw = {} if budget is None else {"budget": budget}
    for b in cands:
        g = cmpz_poly(ctx, m, 1, b)
        res = gammal_search(f, g, **kw)
        if res.witness is not None:
            if not verify_gammal(f, g, res.witness):
                raise AssertionError("reduction witness failed verification")
            return g, res.witness
    raise SearchExhausted(f"no s = 1 binomial is GammaL-equivalent to s = {s}, delta = {delta}")


def cmmz_witness_chain(ctx, theta1, theta2):
    """Constructive map from L_{f1} to L_{f2}, f_i = cmmz_poly(theta_i).

    f1 is invertible with inverse h, and the coordinate swap sends
    <(x, f1(x))> to <(y, h(y))>, so it carries L_{f1} onto L_h.  The adjoint
    of h is f2, and a q-polynomial and its adjoint define the same linear
    set, hence L_h = L_{f2}.  The adjoint of h has theta = -theta1 - 1, so
    the chain only links a root to the other root.  Returns (phi, steps).
    """
    f1, f2 = cmmz_poly(ctx, theta1), cmmz_poly(ctx, theta2)
    if ctx(theta2) != -ctx(theta1) - 1:
        raise NoSolution("the chain links theta to -theta - 1 only")
    h = cmmz_inverse(ctx, theta1)
    L1, L2, Lh = linset_of(f1), linset_of(f2), linset_of(h)
    swap = SemilinearMap(ctx.zero, ctx.one, ctx.one, ctx.zero, 0)
    steps = {
        "h_inverts_f1": True,
        "adjoint_h_is_f2": qp_adjoint(h) == f2,
        "swap_maps_Lf1_to_Lh": apply_semilinear(swap, L1) == Lh,
        "Lh_equals_Lf2": Lh == L2,
    }
    if not all(steps.values()):
        raise AssertionError(f"witness chain broken: {steps}")
    return swap, steps


def cmmz_frobenius_witness(ctx, theta1, theta2):
    """For conjugate roots (theta1^q = theta2): x -> x^q maps U_{f1} onto U_{f2}."""
    theta1, theta2 = ctx(theta1), ctx(theta2)
    if theta1.qfrob(1) != theta2:
        raise NoSolution("roots are not q-conjugate")
    phi = SemilinearMap(ctx.one, ctx.zero, ctx.zero, ctx.one, ctx.e, normalize=False)
    if not verify_gammal(cmmz_poly(ctx, theta1), cmmz_poly(ctx, theta2), phi):
        raise AssertionError("Frobenius witness failed")
    return phi
