"""Automorphism groups of linear sets inside PGammaL(2, q^n).

``stabilizer`` is exhaustive (it is built on the same triple-transport scan
as the equivalence search); the ``predicted_*`` functions enumerate the
closed-form descriptions of the groups for the CMMZ trinomials and for the
binomials X^q + theta X^(q^(m+1)).
"""

from __future__ import annotations

import numpy as np

from .equiv import DEFAULT_BUDGET, all_pgl_maps
from .errors import BadTheta
from .gf import power_roots, rel_norm
from .linset import SemilinearMap


class GroupDescription:
    def __init__(self, elements, closed=False):
        self.elements = sorted(set(elements))
        self.closed = closed

    @property
    def order(self):
        return len(self.elements)

    def keys(self):
        return {phi.key() for phi in self.elements}

    def __contains__(self, phi):
        return phi.normalized().key() in self.keys()

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"GroupDescription(order={self.order}, closed={self.closed})"

    def to_json(self):
        return {"order": self.order, "elements": [phi.to_json() for phi in self.elements]}


def _closure(gens, allowed, limit):
    """BFS closure of ``gens``; returns None as soon as it leaves ``allowed`` or exceeds ``limit``."""
    ctx = gens[0].ctx
    ident = SemilinearMap.identity(ctx)
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = s.compose(x)
                k = y.key()
                if k in seen:
                    continue
                if k not in allowed or len(seen) >= limit:
                    return None
                seen[k] = y
                nxt.append(y)
        frontier = nxt
    return seen


def group_check(G):
    """Identity present, entries normalised and distinct, closed under composition and inverse."""
    elems = list(G.elements)
    if not elems:
        return False
    keys = [phi.key() for phi in elems]
    allowed = set(keys)
    if len(allowed) != len(keys):
        return False
    if any(phi.normalized().key() != phi.key() for phi in elems):
        return False
    ctx = elems[0].ctx
    if SemilinearMap.identity(ctx).key() not in allowed:
        return False
    if any(phi.inverse().key() not in allowed for phi in elems):
        return False
    # grow a generating set; the generated subgroup must stay inside G and end up equal to it
    gens, H = [], {SemilinearMap.identity(ctx).key()}
    for phi in elems:
        if phi.key() in H:
            continue
        gens.append(phi)
        H = _closure(gens, allowed, len(allowed))
        if H is None:
            return False
    return len(H) == len(allowed)


def stabilizer(L, budget=DEFAULT_BUDGET, threads=1, max_elements=10**5):
    """All phi in PGammaL(2, q^n) with L^phi = L, found exhaustively."""
    G = GroupDescription(all_pgl_maps(L, L, budget=budget, threads=threads, max_elements=max_elements))
    G.closed = group_check(G)
    if not G.closed:
        raise AssertionError("stabilizer search returned a set that is not a group")
    return G


def stabilizes(phi, L):
    return bool(np.all(L.mask[phi.apply_codes(L.codes)]))


# -- predicted groups ----------------------------------------------------------

def predicted_aut_cmmz(ctx, theta):
    """D (and C when q = 0, +-2 mod 5) for L of X^q + X^(q^3) + theta X^(q^5)."""
    theta = ctx(theta)
    if ctx.p == 2 or ctx.n != 6 or theta * theta + theta != ctx.one:
        raise BadTheta("need odd q, n = 6 and theta^2 + theta = 1")
    zero, one = ctx.zero, ctx.one
    units = power_roots(ctx, ctx.q + 1, one)
    elems = []
    for rho in range(ctx.degree):
        if theta.frob(rho) == theta:
            elems += [SemilinearMap(one, zero, zero, d, rho) for d in units]
    if ctx.q % 5 in (0, 2, 3):
        for rho in range(ctx.degree):
            if theta * theta.frob(rho) == -one:
                elems += [SemilinearMap(zero, one, c, zero, rho) for c in units]
    return GroupDescription(elems)


def predicted_aut_binomial(ctx, theta, n=None):
    """D (and C when the norm of theta is not 1) for L of X^q + theta X^(q^(m+1)), n = 2m."""
    theta = ctx(theta)
    n = ctx.n if n is None else n
    if n != ctx.n or n % 2:
        raise BadTheta(f"need n = {ctx.n} even")
    if not theta:
        raise BadTheta("theta must be nonzero")
    q, m = ctx.q, n // 2
    E = (q**m - 1) // (q - 1)
    zero, one = ctx.zero, ctx.one
    N = rel_norm(ctx, theta, m)
    elems = []
    for rho in range(ctx.degree):
        th = theta.frob(rho)
        if N.frob(rho) != N:
            continue
        rhs = (theta / th).qfrob(m - 1)
        elems += [SemilinearMap(one, zero, zero, d, rho) for d in power_roots(ctx, E, rhs)]
        if N != one:
            scale = one - th ** (q ** (m - 1) + q ** (2 * m - 1))
            if not scale:
                continue
            rhs = theta.qfrob(m - 1) / (-th.qfrob(2 * m - 1))
            elems += [SemilinearMap(zero, one, ch * scale, zero, rho) for ch in power_roots(ctx, E, rhs)]
    return GroupDescription(elems)


# -- random sampling outside a predicted group ---------------------------------

def _keys(ctx, a, b, c, d, rho):
    """Pack normalised dlogs into one integer key (vectorised)."""
    base = ctx.M + 1
    k = a + 1
    for v in (b, c, d):
        k = k * base + (v + 1)
    return k * ctx.degree + rho


def sample_non_stabilizers(L, predicted, count, seed=0, chunk=1 << 16):
    """Draw uniform PGammaL elements outside ``predicted`` and test whether any stabilises L.

    Returns {"tested": int, "skipped_predicted": int, "stabilizing": int, "examples": [...]}.
    """
    ctx = L.ctx
    M, N = ctx.M, ctx.order
    if (M + 1) ** 4 * ctx.degree >= 2**62:
        raise ValueError("field too large for packed keys")
    rng = np.random.default_rng(seed)
    pred = np.array(sorted(_keys(ctx, *phi.key()) for phi in predicted.elements), dtype=np.int64)
    probes = L.codes[rng.permutation(L.codes.size)]
    tested = skipped = 0
    hits = []
    while tested < count:
        a, b, c, d = rng.integers(-1, M, size=(4, chunk))
        rho = rng.integers(0, ctx.degree, size=chunk)
        det = ctx.vsub(ctx.vmul(a, d), ctx.vmul(b, c))
        ok = det >= 0
        a, b, c, d, rho = a[ok], b[ok], c[ok], d[ok], rho[ok]
        lead = np.where(a >= 0, a, np.where(b >= 0, b, np.where(c >= 0, c, d)))
        a, b, c, d = (np.where(v >= 0, (v - lead) % M, -1) for v in (a, b, c, d))
        inpred = np.isin(_keys(ctx, a, b, c, d, rho), pred)
        skipped += int(inpred.sum())
        keep = np.nonzero(~inpred)[0][: count - tested]
        tested += keep.size
        a, b, c, d, rho = a[keep], b[keep], c[keep], d[keep], rho[keep]
        fr = np.array([pow(ctx.p, r, M) for r in range(ctx.degree)], dtype=np.int64)[rho]
        alive = np.arange(keep.size)
        for P in probes:
            P = int(P)
            if P == N:
                num, den = d[alive], b[alive]
            else:
                s = np.where(P - 1 < 0, -1, ((P - 1) * fr[alive]) % M)
                num = ctx.vadd(c[alive], ctx.vmul(d[alive], s))
                den = ctx.vadd(a[alive], ctx.vmul(b[alive], s))
            img = np.where(den < 0, N, ctx.vdiv(num, np.where(den < 0, 0, den)) + 1)
            alive = alive[L.mask[img]]
            if alive.size == 0:
                break
        for j in alive:
            hits.append(SemilinearMap(*(ctx.from_log(int(v[j])) for v in (a, b, c, d)), int(rho[j])))
    return {"tested": tested, "skipped_predicted": skipped, "stabilizing": len(hits),
            "examples": [h.to_json() for h in hits[:5]]}
