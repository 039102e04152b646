"""q-polynomials over F_{q^n} as length-n coefficient vectors.

``coeffs[i]`` is the coefficient of X^(q^i); everything is reduced modulo
X^(q^n) - X, so index arithmetic is mod n.
"""

from __future__ import annotations

import numpy as np

from . import _linalg
from .errors import CtxMismatch, NotABasis, ShapeMismatch, SingularMatrix
from .gf import Elem, rel_trace


class QPoly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        coeffs = [ctx(c) for c in coeffs]
        if len(coeffs) > ctx.n:
            raise ShapeMismatch(f"{len(coeffs)} coefficients for n = {ctx.n}")
        coeffs += [ctx.zero] * (ctx.n - len(coeffs))
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_terms(cls, ctx, terms):
        """``{i: coefficient}`` -> sum of coefficient * X^(q^i)."""
        coeffs = [ctx.zero] * ctx.n
        for i, c in terms.items():
            if not 0 <= i < ctx.n:
                raise ShapeMismatch(f"index {i} outside 0..{ctx.n - 1}")
            coeffs[i] = coeffs[i] + ctx(c)
        return cls(ctx, coeffs)

    @classmethod
    def monomial(cls, ctx, i, c=1):
        return cls.from_terms(ctx, {i % ctx.n: c})

    @classmethod
    def identity(cls, ctx):
        return cls.monomial(ctx, 0)

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, [])

    @property
    def n(self):
        return self.ctx.n

    def support(self):
        return [i for i, a in enumerate(self.coeffs) if a]

    def _check(self, other):
        if not isinstance(other, QPoly) or other.ctx is not self.ctx:
            raise CtxMismatch("q-polynomials over different fields")

    def __eq__(self, other):
        return isinstance(other, QPoly) and other.ctx is self.ctx and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(tuple(a.log for a in self.coeffs))

    def __add__(self, other):
        self._check(other)
        return QPoly(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return QPoly(self.ctx, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return QPoly(self.ctx, [-a for a in self.coeffs])

    def scale(self, c):
        """c * f (left multiplication by a field element)."""
        c = self.ctx(c)
        return QPoly(self.ctx, [c * a for a in self.coeffs])

    def twist(self, rho):
        """Raise every coefficient to the p^rho-th power."""
        return QPoly(self.ctx, [a.frob(rho) for a in self.coeffs])

    def substitute_scalar(self, alpha):
        """x -> f(alpha x) / alpha; has the same multiset of values f(x)/x."""
        alpha = self.ctx(alpha)
        ainv = alpha.inverse()
        return QPoly(self.ctx, [a * alpha.qfrob(i) * ainv for i, a in enumerate(self.coeffs)])

    def __call__(self, x):
        return qp_eval(self, x)

    def __repr__(self):
        from .parser import format_qpoly

        return f"QPoly({format_qpoly(self)!r})"


def qp_eval(f, x):
    x = f.ctx(x)
    total = f.ctx.zero
    for i, a in enumerate(f.coeffs):
        if a:
            total = total + a * x.qfrob(i)
    return total


def qp_eval_many(f, xs):
    """Evaluate on a dlog array."""
    ctx = f.ctx
    xs = np.asarray(xs, dtype=np.int64)
    out = np.full(xs.shape, -1, dtype=np.int64)
    for i, a in enumerate(f.coeffs):
        if a:
            out = ctx.vadd(out, ctx.vmul(a.log, ctx.vfrob(xs, ctx.e * i)))
    return out


def slope_values(f, xs=None):
    """f(x)/x for x in ``xs`` (default: all of F_{q^n}^*), as dlogs."""
    ctx = f.ctx
    if xs is None:
        xs = np.arange(ctx.M, dtype=np.int64)
    return ctx.vdiv(qp_eval_many(f, xs), xs)


def qp_adjoint(f):
    """Adjoint with respect to (x, y) -> Tr_{q^n/q}(xy)."""
    n = f.n
    out = [f.ctx.zero] * n
    for i, a in enumerate(f.coeffs):
        out[(n - i) % n] = a.qfrob(n - i)
    return QPoly(f.ctx, out)


def qp_compose_mod(f, g):
    """f o g modulo X^(q^n) - X."""
    f._check(g)
    n = f.n
    out = [f.ctx.zero] * n
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in enumerate(g.coeffs):
            if b:
                out[(i + j) % n] = out[(i + j) % n] + a * b.qfrob(i)
    return QPoly(f.ctx, out)


def default_basis(ctx):
    # g has degree n over F_q, so its first n powers are always independent
    return [ctx.gen ** i for i in range(ctx.n)]


def _dual_basis(ctx, basis):
    n = ctx.n
    if len(basis) != n:
        raise NotABasis(f"need {n} elements, got {len(basis)}")
    gram = [[rel_trace(ctx, bi * bj, 1) for bj in basis] for bi in basis]
    try:
        ginv = _linalg.inverse(gram, ctx.zero, ctx.one)
    except SingularMatrix:
        raise NotABasis("elements are F_q-linearly dependent") from None
    return [sum((ginv[j][k] * basis[k] for k in range(n)), ctx.zero) for j in range(n)]


def fq_coordinates(ctx, w, basis, dual=None):
    dual = dual or _dual_basis(ctx, basis)
    return [rel_trace(ctx, w * d, 1) for d in dual]


def qp_matrix(f, basis=None):
    """Matrix over F_q of the F_q-linear map x -> f(x); column j = f(basis[j])."""
    ctx = f.ctx
    basis = [ctx(b) for b in (basis or default_basis(ctx))]
    dual = _dual_basis(ctx, basis)
    cols = [fq_coordinates(ctx, qp_eval(f, b), basis, dual) for b in basis]
    return [[cols[j][i] for j in range(ctx.n)] for i in range(ctx.n)]


def qp_rank(f, basis=None):
    return _linalg.rank(qp_matrix(f, basis), f.ctx.zero, f.ctx.one)


def qp_inverse(f, basis=None):
    """The compositional inverse modulo X^(q^n) - X, or None when f is singular."""
    ctx = f.ctx
    basis = [ctx(b) for b in (basis or default_basis(ctx))]
    try:
        minv = _linalg.inverse(qp_matrix(f, basis), ctx.zero, ctx.one)
    except SingularMatrix:
        return None
    n = ctx.n
    images = [sum((minv[i][j] * basis[i] for i in range(n)), ctx.zero) for j in range(n)]
    # interpolate: sum_k r_k b_j^(q^k) = images[j]  (Moore matrix is invertible)
    moore = [[b.qfrob(k) for k in range(n)] for b in basis]
    g = QPoly(ctx, _linalg.solve(moore, images, ctx.zero, ctx.one))
    ident = QPoly.identity(ctx)
    if qp_compose_mod(g, f) != ident or qp_compose_mod(f, g) != ident:
        raise AssertionError("matrix inverse did not reconstruct a compositional inverse")
    return g


def is_scattered(f):
    """True iff x -> f(x)/x is injective on F_q^*-coset representatives."""
    xs = f.ctx.transversal()
    vals = slope_values(f, xs)
    return np.unique(vals).size == xs.size


def kernel_size(f):
    """#{x : f(x) = 0}, by exhaustive evaluation."""
    ctx = f.ctx
    return int(np.count_nonzero(qp_eval_many(f, ctx.elements()) < 0))


def random_qpoly(ctx, rng, density=1.0):
    """Random q-polynomial; each coefficient nonzero with probability ``density``."""
    logs = rng.integers(-1, ctx.M, size=ctx.n)
    mask = rng.random(ctx.n) < density
    return QPoly(ctx, [Elem(ctx, int(v) if m else -1) for v, m in zip(logs, mask)])
