"""Linear sets of PG(1, q^n) and the action of PGammaL(2, q^n).

A point <(x, y)> is stored by an integer code: ``dlog(y/x) + 1`` for finite
slopes (so slope 0 has code 0) and ``q^n`` for the point at infinity
<(0, 1)>.  Codes are dense in ``[0, q^n]``, which makes membership a lookup
in a boolean mask.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CtxMismatch, SingularMatrix
from .gf import Elem
from .linpoly import slope_values


@dataclass(frozen=True)
class ProjPoint:
    """A point of PG(1, q^n): ``slope`` is y/x for <(x, y)>, None for <(0, 1)>."""

    slope: Elem | None

    @property
    def is_infinity(self):
        return self.slope is None

    def code(self, ctx):
        return ctx.order if self.slope is None else self.slope.log + 1

    @classmethod
    def from_code(cls, ctx, code):
        code = int(code)
        return cls(None) if code == ctx.order else cls(Elem(ctx, code - 1))


def _as_code(ctx, point):
    if isinstance(point, ProjPoint):
        return point.code(ctx)
    if isinstance(point, Elem):
        return point.log + 1
    return int(point)


class LinearSet:
    """A sorted, deduplicated set of points, optionally remembering the f it came from."""

    def __init__(self, ctx, codes, source=None):
        self.ctx = ctx
        self.codes = np.unique(np.asarray(codes, dtype=np.int64))
        self.source = source
        self._mask = None
        self._cache = {}

    @property
    def mask(self):
        if self._mask is None:
            m = np.zeros(self.ctx.order + 1, dtype=bool)
            m[self.codes] = True
            self._mask = m
        return self._mask

    def __len__(self):
        return int(self.codes.size)

    def __contains__(self, point):
        c = _as_code(self.ctx, point)
        return 0 <= c <= self.ctx.order and bool(self.mask[c])

    def __eq__(self, other):
        return (isinstance(other, LinearSet) and other.ctx is self.ctx
                and np.array_equal(other.codes, self.codes))

    def __hash__(self):
        return hash(self.codes.tobytes())

    def __repr__(self):
        return f"LinearSet(card={len(self)}, field={self.ctx.spec})"

    def points(self):
        return [ProjPoint.from_code(self.ctx, c) for c in self.codes]

    @property
    def has_infinity(self):
        return bool(self.codes.size) and int(self.codes[-1]) == self.ctx.order

    def to_json(self):
        finite = self.codes[self.codes < self.ctx.order] - 1
        return {"card": len(self), "slopes_dlog": [int(s) for s in finite],
                "infinity": self.has_infinity}

    @classmethod
    def from_json(cls, ctx, obj):
        codes = [int(s) + 1 for s in obj["slopes_dlog"]]
        if obj.get("infinity"):
            codes.append(ctx.order)
        out = cls(ctx, codes)
        if "card" in obj and obj["card"] != len(out):
            raise ValueError("card does not match the listed points")
        return out


def linset_of(f):
    """L_f = {<(x, f(x))> : x != 0}, one evaluation per F_q^*-coset."""
    return LinearSet(f.ctx, slope_values(f, f.ctx.transversal()) + 1, source=f)


def fiber_counts(f):
    """#{x in F^* : f(x)/x = b} indexed by point code (infinity never occurs)."""
    ctx = f.ctx
    return np.bincount(slope_values(f) + 1, minlength=ctx.order + 1)


def weight_spectrum(f):
    """{weight: number of points}; weight = dim_{F_q} of {x : f(x) = b x}."""
    q = f.ctx.q
    counts = fiber_counts(f)
    spectrum = {}
    for c in counts[counts > 0]:
        size = int(c) + 1
        w = 0
        while size % q == 0:
            size //= q
            w += 1
        if size != 1:
            raise AssertionError("fiber is not an F_q-subspace")
        spectrum[w] = spectrum.get(w, 0) + 1
    return dict(sorted(spectrum.items()))


# -- 2x2 matrices as (a, b, c, d) tuples --------------------------------------

def _mat_mul(X, Y):
    a, b, c, d = X
    e, f, g, h = Y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _mat_inv(X):
    a, b, c, d = X
    det = a * d - b * c
    if not det:
        raise SingularMatrix("singular matrix")
    inv = det.inverse()
    return (d * inv, -b * inv, -c * inv, a * inv)


def _mat_twist(X, rho):
    return tuple(x.frob(rho) for x in X)


class SemilinearMap:
    """x -> M x^(p^rho) on column vectors (x, y); M = (a b; c d).

    Projectively normalised at construction: the first nonzero entry among
    a, b, c, d is 1.  ``normalize=False`` keeps the raw matrix, which matters
    when the map is read as an element of GammaL acting on vectors.
    """

    __slots__ = ("a", "b", "c", "d", "rho")

    def __init__(self, a, b, c, d, rho=0, normalize=True):
        ctx = a.ctx
        a, b, c, d = (ctx(v) for v in (a, b, c, d))
        if not (a * d - b * c):
            raise SingularMatrix("semilinear map with singular matrix")
        lead = next(v for v in (a, b, c, d) if v)
        if normalize and lead.log != 0:
            inv = lead.inverse()
            a, b, c, d = a * inv, b * inv, c * inv, d * inv
        self.a, self.b, self.c, self.d = a, b, c, d
        self.rho = rho % ctx.degree

    @classmethod
    def identity(cls, ctx):
        return cls(ctx.one, ctx.zero, ctx.zero, ctx.one, 0)

    @classmethod
    def from_matrix(cls, X, rho=0):
        return cls(*X, rho)

    @property
    def ctx(self):
        return self.a.ctx

    @property
    def matrix(self):
        return (self.a, self.b, self.c, self.d)

    def key(self):
        return (self.a.log, self.b.log, self.c.log, self.d.log, self.rho)

    def __eq__(self, other):
        return isinstance(other, SemilinearMap) and other.ctx is self.ctx and other.key() == self.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        return f"SemilinearMap(a={self.a}, b={self.b}, c={self.c}, d={self.d}, rho={self.rho})"

    def normalized(self):
        return SemilinearMap(self.a, self.b, self.c, self.d, self.rho)

    def is_identity(self):
        return self.normalized().key() == (0, -1, -1, 0, 0)

    def compose(self, other):
        """self o other (other acts first)."""
        if other.ctx is not self.ctx:
            raise CtxMismatch("maps over different fields")
        M = _mat_mul(self.matrix, _mat_twist(other.matrix, self.rho))
        return SemilinearMap.from_matrix(M, self.rho + other.rho)

    __matmul__ = compose

    def inverse(self):
        rho = (-self.rho) % self.ctx.degree
        return SemilinearMap.from_matrix(_mat_twist(_mat_inv(self.matrix), rho), rho)

    def apply_codes(self, codes):
        ctx = self.ctx
        N = ctx.order
        codes = np.asarray(codes, dtype=np.int64)
        inf = codes == N
        s = ctx.vfrob(np.where(inf, 0, codes - 1), self.rho)
        a, b, c, d = (v.log for v in self.matrix)
        num = np.where(inf, d, ctx.vadd(c, ctx.vmul(d, s)))
        den = np.where(inf, b, ctx.vadd(a, ctx.vmul(b, s)))
        at_inf = den < 0
        out = ctx.vdiv(num, np.where(at_inf, 0, den)) + 1
        return np.where(at_inf, N, out)

    def __call__(self, point):
        ctx = self.ctx
        code = int(self.apply_codes(np.array([_as_code(ctx, point)]))[0])
        return ProjPoint.from_code(ctx, code)

    def to_json(self):
        return {"matrix_dlogs": [v.log for v in self.matrix], "rho": self.rho}

    @classmethod
    def from_json(cls, ctx, obj):
        a, b, c, d = (ctx.from_log(v) for v in obj["matrix_dlogs"])
        return cls(a, b, c, d, obj.get("rho", 0))


def apply_semilinear(phi, L):
    if phi.ctx is not L.ctx:
        raise CtxMismatch("map and linear set over different fields")
    return LinearSet(L.ctx, phi.apply_codes(L.codes))


def _frame(ctx, codes):
    """Matrix B with B(inf) = P1, B(0) = P2, B(1) = P3 for three distinct point codes."""
    vecs = []
    for c in codes:
        if c == ctx.order:
            vecs.append((ctx.zero, ctx.one))
        else:
            vecs.append((ctx.one, Elem(ctx, int(c) - 1)))
    (x1, y1), (x2, y2), (x3, y3) = vecs
    det = x1 * y2 - x2 * y1
    if not det:
        raise ValueError("points are not distinct")
    l1 = (x3 * y2 - x2 * y3) / det
    l2 = (x1 * y3 - x3 * y1) / det
    return (l2 * x2, l1 * x1, l2 * y2, l1 * y1)


def transport(ctx, src, dst, rho=0):
    """The unique map with Frobenius part p^rho sending src[i] to dst[i] (point codes)."""
    A = _mat_inv(_frame(ctx, [int(c) for c in src]))
    B = _frame(ctx, [int(c) for c in dst])
    return SemilinearMap.from_matrix(_mat_mul(B, _mat_twist(A, rho)), rho)
