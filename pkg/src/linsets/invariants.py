"""Necessary conditions for L_f = L_g.

Power sums of the slope values, the coefficient identities that follow
from them, and the two binomial invariants for n = 6 and n = 8.  These are
refutation filters only: equal invariants never prove equal sets.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import ShapeMismatch
from .gf import Elem
from .linpoly import slope_values


def monomial_sum(ctx, d):
    """sum_{x != 0} x^d = -1 if (q^n - 1) | d else 0, with 0^0 read as 1."""
    return -ctx.one if d % ctx.M == 0 else ctx.zero


def _power_sum_logs(ctx, logs, d):
    if d == 0:
        return Elem(ctx, ctx.vsum(np.zeros(logs.size, dtype=np.int64)))
    live = logs[logs >= 0]
    return Elem(ctx, ctx.vsum((live * (d % ctx.M)) % ctx.M))


def power_sum(f, d):
    """sum over x in F^* of (f(x)/x)^d, exact."""
    return _power_sum_logs(f.ctx, slope_values(f), int(d))


def brute_power_sum(f, d):
    """Reference implementation with scalar arithmetic (slow; for tests)."""
    ctx = f.ctx
    total = ctx.zero
    for k in range(ctx.M):
        x = Elem(ctx, k)
        total = total + (f(x) / x) ** d
    return total


def default_indices(ctx):
    q, n = ctx.q, ctx.n
    idx = set(range(1, 2 * n + 1))
    idx.update(q**i - 1 for i in range(1, n + 1))
    if n == 6:
        idx.add(q**4 + q**2 + 1)
    if n == 8:
        idx.update((q**3 + q**2 + q + 1, q**6 + q**3 + q + 1))
    return sorted(idx)


def profile(f, indices=None):
    """{d: power_sum(f, d)} for every d in ``indices``."""
    ctx = f.ctx
    logs = slope_values(f)
    indices = default_indices(ctx) if indices is None else indices
    return {int(d): _power_sum_logs(ctx, logs, int(d)) for d in indices}


def profile_json(prof):
    return {str(d): v.log for d, v in prof.items()}


# -- coefficient identities ----------------------------------------------------

def lem26_report(f, g):
    """Which identities fail: {"a0": bool, "pairs": [k...], "triples": [k...]}."""
    f._check(g)
    n = f.n
    a, b = f.coeffs, g.coeffs

    def pair(c, k):
        return c[k] * c[(n - k) % n].qfrob(k)

    def triple(c, k):
        return (c[1] * c[k - 1].qfrob(1) * c[n - k].qfrob(k)
                + c[k] * c[n - 1].qfrob(1) * c[(n - k + 1) % n].qfrob(k))

    return {
        "a0": a[0] != b[0],
        "pairs": [k for k in range(1, n) if pair(a, k) != pair(b, k)],
        "triples": [k for k in range(2, n) if triple(a, k) != triple(b, k)],
    }


def lem26_identities(f, g):
    r = lem26_report(f, g)
    return not (r["a0"] or r["pairs"] or r["triples"])


# -- binomial invariants -------------------------------------------------------

def _require_binomial(f, n, support):
    if f.n != n:
        raise ShapeMismatch(f"expected n = {n}, got {f.n}")
    extra = [i for i in f.support() if i not in support]
    if extra:
        raise ShapeMismatch(f"nonzero coefficients outside {sorted(support)}: {extra}")


def d6_invariant(f):
    """a_4^(q^4+q^2+1) for f = a_1 X^q + a_4 X^(q^4) over F_{q^6}."""
    _require_binomial(f, 6, (1, 4))
    q = f.ctx.q
    return f.coeffs[4] ** (q**4 + q**2 + 1)


def d8_invariants(f):
    """(a_1^(q^2+q+1) a_5^(q^3), a_1 a_5^(q^6+q^3+q)) for f = a_1 X^q + a_5 X^(q^5) over F_{q^8}."""
    _require_binomial(f, 8, (1, 5))
    q = f.ctx.q
    a1, a5 = f.coeffs[1], f.coeffs[5]
    return (a1 ** (q**2 + q + 1) * a5.qfrob(3), a1 * a5 ** (q**6 + q**3 + q))


# -- expansion of a power sum at D = sum_j q^(e_j) ---------------------------

D6_EXPONENTS = (0, 2, 4)
D8_EXPONENTS = ((0, 1, 2, 3), (0, 1, 3, 6))


def surviving_tuples(q, n, support, exps):
    """Tuples u over ``support`` with sum_j q^(u_j+e_j) = sum_j q^(e_j) mod q^n - 1.

    Expanding (f(x)/x)^D as a product over j of (sum_u a_u^(q^e_j) x^(q^(u+e_j) - q^e_j)),
    only these tuples contribute a nonzero monomial sum.  Pure integer arithmetic.
    """
    M = q**n - 1
    target = sum(q**e for e in exps) % M
    out = []
    for u in itertools.product(sorted(support), repeat=len(exps)):
        if sum(q ** ((ui + e) % n) for ui, e in zip(u, exps)) % M == target:
            out.append(u)
    return out


def collapsed_power_sum(f, exps):
    """-(sum over surviving tuples of prod_j a_{u_j}^(q^e_j)); equals power_sum(f, D)."""
    ctx = f.ctx
    total = ctx.zero
    for u in surviving_tuples(ctx.q, ctx.n, f.support(), exps):
        term = ctx.one
        for ui, e in zip(u, exps):
            term = term * f.coeffs[ui].qfrob(e)
        total = total + term
    return -total
