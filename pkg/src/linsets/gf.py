"""Exact arithmetic in F_{p^(e*n)}.

Every element is stored by its discrete logarithm with respect to a fixed
primitive element ``g`` (``-1`` encodes zero).  Multiplication, powers and
Frobenius maps are integer arithmetic modulo ``p^(e*n) - 1``; addition goes
through a Zech logarithm table.  The residue polynomial of an element is
recovered from the power table, so the representation is canonical and in
bijection with residues modulo the defining polynomial.

Subfields F_{q^m} (m | n) are never separate objects: they are the fixed
sets of x -> x^(q^m) inside the one ambient field.

The vectorised ``v*`` methods act on numpy arrays of discrete logs and are
what the exhaustive searches use.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import gcd, isqrt

import numpy as np

from .errors import (
    CtxMismatch,
    DegreeMismatch,
    FieldTooLarge,
    NotASubfield,
    NotPrime,
    ReducibleModulus,
    ZeroArgument,
)

# full Zech tables are kept in memory; 13^6 ~ 4.8e6 fits comfortably
MAX_FIELD_ORDER = 1 << 25


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p, coefficient lists low-to-high --------------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m, p):
    a = _trim(c % p for c in a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        a = _trim(a)
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmulmod(a, b, m, p):
    return _pmod(_pmul(a, b, p), m, p)


def _ppowmod(a, k, m, p):
    result = [1]
    base = _pmod(a, m, p)
    while k:
        if k & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        k >>= 1
    return _pmod(result, m, p)


def _psub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return _trim(out)


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(modulus, p):
    """Rabin's test for a monic polynomial of degree k over F_p.

    X^(p^k) = X mod m, and gcd(X^(p^(k/l)) - X, m) = 1 for every prime l | k.
    """
    m = [c % p for c in modulus]
    k = len(m) - 1
    if k < 1 or m[-1] != 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**k, m, p), x, p):
        return False
    for ell in prime_factors(k):
        h = _psub(_ppowmod(x, p ** (k // ell), m, p), x, p)
        if len(_pgcd(m, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p, k):
    """Lexicographically smallest monic irreducible of degree k, comparing c0 first."""
    for head in product(range(p), repeat=k):
        if k > 1 and head[0] == 0:
            continue
        cand = list(head) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def parse_field_spec(text):
    """``"p^e^n"`` -> (p, e, n)."""
    parts = text.strip().split("^")
    if len(parts) != 3 or not all(s.strip().isdigit() for s in parts):
        raise ValueError(f"field spec must look like 'p^e^n', got {text!r}")
    return tuple(int(s) for s in parts)


class FieldCtx:
    """The field F_{q^n}, q = p^e, with its tables.

    Immutable after construction and safe to share between threads.
    """

    def __init__(self, p, e, n, modulus=None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1 or n < 1:
            raise DegreeMismatch("e and n must be positive")
        k = e * n
        order = p**k
        if order > MAX_FIELD_ORDER:
            raise FieldTooLarge(f"field of order {p}^{k} exceeds the table limit {MAX_FIELD_ORDER}")
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1:
                raise DegreeMismatch(f"modulus has degree {len(modulus) - 1}, expected {k}")
            if modulus[-1] != 1:
                raise DegreeMismatch("modulus must be monic")
            if not is_irreducible(modulus, p):
                raise ReducibleModulus(f"{list(modulus)} is reducible over F_{p}")

        self.p, self.e, self.n = p, e, n
        self.q = p**e
        self.degree = k
        self.order = order
        self.M = order - 1
        self.modulus = modulus
        self._pw = p ** np.arange(k, dtype=np.int64)
        self.gen_code = self._find_generator()
        self._build_tables()
        self.half = self.M // 2 if p != 2 else 0

    # -- construction ------------------------------------------------------

    def _poly_of_code(self, code):
        out = []
        for _ in range(self.degree):
            code, r = divmod(code, self.p)
            out.append(r)
        return _trim(out)

    def _pad(self, poly):
        return list(poly) + [0] * (self.degree - len(poly))

    def _find_generator(self):
        p, m, M = self.p, list(self.modulus), self.M
        ells = prime_factors(M)
        for code in range(1, self.order):
            cand = self._poly_of_code(code)
            if all(_ppowmod(cand, M // ell, m, p) != [1] for ell in ells):
                return code
        raise AssertionError("no primitive element")  # unreachable

    def _build_tables(self):
        p, k, M = self.p, self.degree, self.M
        m = list(self.modulus)
        g = self._poly_of_code(self.gen_code)
        step = isqrt(M) + 1
        cur = [1]
        rows = []
        for _ in range(step):
            rows.append(self._pad(cur))
            cur = _pmulmod(cur, g, m, p)
        # cur = g^step; row i of G is X^i * g^step
        G = np.array([self._pad(_pmulmod([0] * i + [1], cur, m, p)) for i in range(k)], dtype=np.int64)
        block = np.array(rows, dtype=np.int64)
        blocks = [block]
        total = step
        while total < M:
            block = (block @ G) % p
            blocks.append(block)
            total += step
        digits = np.vstack(blocks)[:M]
        codes = digits @ self._pw
        if codes.min() < 1 or np.unique(codes).size != M:
            raise AssertionError("generator is not primitive")
        self.exp = codes
        log = np.full(self.order, -1, dtype=np.int64)
        log[codes] = np.arange(M, dtype=np.int64)
        self.log = log
        c0 = codes % p
        self.zech = log[codes - c0 + (c0 + 1) % p]

    # -- elements ----------------------------------------------------------

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e}, n={self.n})"

    @property
    def spec(self):
        return f"{self.p}^{self.e}^{self.n}"

    def __call__(self, value):
        """Coerce an int (mod p), an Elem of this field, or a coefficient list."""
        if isinstance(value, Elem):
            if value.ctx is not self:
                raise CtxMismatch("element belongs to another field")
            return value
        if isinstance(value, (int, np.integer)):
            return Elem(self, int(self.log[int(value) % self.p]))
        return self.from_coeffs(value)

    def from_coeffs(self, coeffs):
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.degree:
            coeffs = _pmod(coeffs, list(self.modulus), self.p)
        code = sum(c * self.p**i for i, c in enumerate(coeffs))
        return Elem(self, int(self.log[code]))

    def from_log(self, log):
        return Elem(self, -1 if log < 0 else int(log) % self.M)

    @property
    def zero(self):
        return Elem(self, -1)

    @property
    def one(self):
        return Elem(self, 0)

    @property
    def gen(self):
        return Elem(self, 1 % self.M)

    def elements(self):
        """All field elements as a dlog array, zero first."""
        return np.arange(-1, self.M, dtype=np.int64)

    def transversal(self):
        """One representative per F_q^*-coset: dlogs 0 .. (q^n-1)/(q-1) - 1."""
        return np.arange(self.M // (self.q - 1), dtype=np.int64)

    def subfield_size(self, m):
        if self.n % m:
            raise NotASubfield(f"F_q^{m} is not a subfield of F_q^{self.n}")
        return self.q**m

    # -- scalar kernels on dlogs ---------------------------------------------

    def _add(self, a, b):
        if a < 0:
            return b
        if b < 0:
            return a
        z = int(self.zech[(b - a) % self.M])
        return -1 if z < 0 else (a + z) % self.M

    def _neg(self, a):
        return a if a < 0 else (a + self.half) % self.M

    def _frob(self, a, i):
        if a < 0:
            return a
        return a * pow(self.p, i % self.degree, self.M) % self.M if self.M > 1 else 0

    # -- vector kernels on dlog arrays -------------------------------------

    def vadd(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        z = self.zech[(b - a) % self.M]
        out = np.where(z < 0, -1, (a + z) % self.M)
        out = np.where(a < 0, b, out)
        return np.where(b < 0, a, out)

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        return np.where(a < 0, -1, (a + self.half) % self.M)

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return np.where((a < 0) | (b < 0), -1, (a + b) % self.M)

    def vdiv(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if np.any(b < 0):
            raise ZeroDivisionError("division by zero in field")
        return np.where(a < 0, -1, (a - b) % self.M)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a < 0):
            raise ZeroDivisionError("inverse of zero")
        return (-a) % self.M

    def vpow(self, a, k):
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return np.zeros_like(a)
        if k < 0 and np.any(a < 0):
            raise ZeroDivisionError("negative power of zero")
        return np.where(a < 0, -1, (a * (k % self.M)) % self.M) if self.M > 1 else np.where(a < 0, -1, 0)

    def vfrob(self, a, i):
        """x -> x^(p^i), elementwise."""
        a = np.asarray(a, dtype=np.int64)
        f = pow(self.p, i % self.degree, self.M) if self.M > 1 else 0
        return np.where(a < 0, -1, (a * f) % self.M)

    def codes(self, a):
        a = np.asarray(a, dtype=np.int64)
        return np.where(a < 0, 0, self.exp[np.maximum(a, 0)])

    def digits(self, a):
        """F_p coordinates (rows) of the elements in ``a``."""
        c = self.codes(a)
        return (c[..., None] // self._pw) % self.p

    def from_digits(self, d):
        d = np.asarray(d, dtype=np.int64) % self.p
        return self.log[d @ self._pw]

    def vsum(self, a, axis=None):
        """Exact sum of field elements (dlogs) via F_p coordinates."""
        d = self.digits(a)
        if axis is None:
            s = d.reshape(-1, self.degree).sum(axis=0)
        else:
            s = d.sum(axis=axis)
        return self.from_digits(s % self.p)


@lru_cache(maxsize=32)
def _cached_field(p, e, n, modulus):
    return FieldCtx(p, e, n, modulus)


def field_new(p, e, n, modulus=None):
    """Build (or fetch from cache) the field context for F_{(p^e)^n}."""
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return _cached_field(p, e, n, modulus)


class Elem:
    __slots__ = ("ctx", "log")

    def __init__(self, ctx, log):
        self.ctx = ctx
        self.log = int(log)

    def _coerce(self, other):
        if isinstance(other, Elem):
            if other.ctx is not self.ctx:
                raise CtxMismatch("elements of different fields")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ctx(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Elem(self.ctx, self.ctx._add(self.log, other.log))

    __radd__ = __add__

    def __neg__(self):
        return Elem(self.ctx, self.ctx._neg(self.log))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Elem(self.ctx, self.ctx._add(self.log, self.ctx._neg(other.log)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.log < 0 or other.log < 0:
            return Elem(self.ctx, -1)
        return Elem(self.ctx, (self.log + other.log) % self.ctx.M)

    __rmul__ = __mul__

    def inverse(self):
        if self.log < 0:
            raise ZeroDivisionError("inverse of zero")
        return Elem(self.ctx, (-self.log) % self.ctx.M)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        k = int(k)
        if k == 0:
            return self.ctx.one
        if self.log < 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return self
        return Elem(self.ctx, self.log * k % self.ctx.M)

    def frob(self, i):
        """x^(p^i)."""
        return Elem(self.ctx, self.ctx._frob(self.log, i))

    def qfrob(self, i):
        """x^(q^i)."""
        return self.frob(self.ctx.e * i)

    def __eq__(self, other):
        if isinstance(other, Elem):
            return other.ctx is self.ctx and other.log == self.log
        if isinstance(other, (int, np.integer)):
            return self.log == self.ctx(int(other)).log
        return NotImplemented

    def __hash__(self):
        return hash(("Elem", self.log))

    def __bool__(self):
        return self.log >= 0

    def __repr__(self):
        if self.log < 0:
            return "0"
        if self.log == 0:
            return "1"
        return f"g^{self.log}"

    @property
    def coeffs(self):
        """Residue polynomial coefficients, low to high, length e*n."""
        return [int(d) for d in self.ctx.digits(self.log)]

    @property
    def code(self):
        return int(self.ctx.codes(self.log))

    def in_subfield(self, m):
        """Membership in F_{q^m}, as the fixed set of x -> x^(q^m)."""
        self.ctx.subfield_size(m)
        return self.qfrob(m) == self


def frob(ctx, x, i):
    return ctx(x).frob(i)


def rel_norm(ctx, x, m):
    """N_{q^n/q^m}(x) = x^((q^n - 1)/(q^m - 1))."""
    ctx.subfield_size(m)
    x = ctx(x)
    return x ** ((ctx.q**ctx.n - 1) // (ctx.q**m - 1))


def rel_trace(ctx, x, m):
    ctx.subfield_size(m)
    x = ctx(x)
    total = ctx.zero
    for i in range(ctx.n // m):
        total = total + x.qfrob(m * i)
    return total


def vrel_norm(ctx, xs, m):
    ctx.subfield_size(m)
    return ctx.vpow(xs, (ctx.q**ctx.n - 1) // (ctx.q**m - 1))


def vrel_trace(ctx, xs, m):
    ctx.subfield_size(m)
    xs = np.asarray(xs, dtype=np.int64)
    total = np.full(xs.shape, -1, dtype=np.int64)
    for i in range(ctx.n // m):
        total = ctx.vadd(total, ctx.vfrob(xs, ctx.e * m * i))
    return total


def power_roots(ctx, k, a):
    """All x with x^k = a (a nonzero), ordered by discrete log."""
    a = ctx(a)
    if not a:
        raise ZeroArgument("power equation with zero right-hand side")
    M = ctx.M
    d = gcd(k, M)
    if a.log % d:
        return []
    step = M // d
    x0 = (a.log // d) * pow(k // d, -1, step) % step if step > 1 else 0
    return [Elem(ctx, x0 + j * step) for j in range(d)]


def solve_power(ctx, k, a):
    """Some x with x^k = a (minimal discrete log), or None."""
    roots = power_roots(ctx, k, a)
    return roots[0] if roots else None


def roots_x2_plus_x_minus_1(ctx):
    """Roots of X^2 + X - 1 in the ambient field, sorted by discrete log."""
    p = ctx.p
    if p == 2:
        xs = ctx.elements()
        vals = ctx.vadd(ctx.vadd(ctx.vpow(xs, 2), xs), ctx.one.log)
        # -1 = 1 in characteristic 2
        return [Elem(ctx, int(x)) for x in xs[vals < 0]]
    if p == 5:
        return [ctx(2)]
    s = solve_power(ctx, 2, ctx(5))
    if s is None:
        return []
    half = ctx(2).inverse()
    roots = {(-1 + s) * half, (-1 - s) * half}
    return sorted(roots, key=lambda r: r.log)
