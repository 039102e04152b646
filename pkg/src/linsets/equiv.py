"""Equivalence of subspaces U_f (GammaL) and of point sets L_f (PGammaL).

The PGammaL search is the classical triple transport: PGammaL(2, q^n) is
sharply 3-transitive up to the field automorphism, so a map is pinned down
by the images of three points and its Frobenius exponent.  Two things keep it
fast enough for exhaustive runs on one core:

* every point gets a signature (the sorted histogram of difference counts of
  the set seen from that point, sent to infinity).  It is invariant under
  PGammaL, so mismatching multisets refute equivalence outright and the
  candidate images of the three pinned points are restricted to matching
  signature classes;
* all (Q2, Q3) candidates for a given (Q1, rho) are filtered together, one
  pinned point at a time, with numpy.

Candidates are always visited in the order (Q1, rho, Q2, Q3), by point
code, so the witness returned does not depend on the thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from math import gcd

import numpy as np

from . import _linalg
from .errors import CtxMismatch, NotASubfield, PreconditionViolated, SearchSpaceTooLarge
from .gf import Elem, rel_norm
from .linpoly import QPoly, qp_compose_mod, qp_eval_many
from .linset import LinearSet, SemilinearMap, apply_semilinear, transport

DEFAULT_BUDGET = 2 * 10**9
SPAN_CHUNK = 1 << 16


@dataclass
class EquivResult:
    equivalent: object  # True, False or "unknown"
    witness: SemilinearMap | None
    candidates_scanned: int
    reason: str = ""

    def to_json(self):
        return {
            "equivalent": self.equivalent,
            "witness": None if self.witness is None else self.witness.to_json(),
            "candidates_scanned": int(self.candidates_scanned),
        }


# -- GammaL equivalence of U_f and U_g -----------------------------------------

def verify_gammal(f, g, phi):
    """True iff phi maps U_f = {(x, f(x))} onto U_g exactly (raw matrix, no rescaling)."""
    ctx = f.ctx
    z = ctx.elements()
    fz = qp_eval_many(f.twist(phi.rho), z)
    a, b, c, d = (v.log for v in phi.matrix)
    u = ctx.vadd(ctx.vmul(a, z), ctx.vmul(b, fz))
    w = ctx.vadd(ctx.vmul(c, z), ctx.vmul(d, fz))
    return bool(np.array_equal(w, qp_eval_many(g, u)))


def _span_chunks(basis, p, chunk=SPAN_CHUNK):
    k = basis.shape[0]
    total = p**k
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = (idx[:, None] // (p ** np.arange(k, dtype=np.int64))) % p
        yield (digits @ basis) % p


def _gammal_rho(f, g, rho, budget):
    """Minimal (a, b) witness for one Frobenius exponent, plus the number of (a, b) tried."""
    ctx = f.ctx
    p, k, n = ctx.p, ctx.degree, ctx.n
    ft = f.twist(rho)
    unit = ctx.from_digits(np.eye(k, dtype=np.int64))
    # h = g o (aX + b ft) for every F_p basis vector of (a, b)
    hs = []
    for j in range(2 * k):
        x = Elem(ctx, int(unit[j % k]))
        u = QPoly.monomial(ctx, 0, x) if j < k else ft.scale(x)
        hs.append([c.log for c in qp_compose_mod(g, u).coeffs])
    H = np.array(hs, dtype=np.int64)  # (2k, n) dlogs
    Hd = ctx.digits(H)  # (2k, n, k) digits

    i0 = next((i for i in range(1, n) if ft.coeffs[i]), None)
    rows = []
    for kk in range(1, n):
        if i0 is None:
            expr = H[:, kk]
        elif kk == i0:
            continue
        else:
            expr = ctx.vsub(ctx.vmul(H[:, kk], ft.coeffs[i0].log), ctx.vmul(H[:, i0], ft.coeffs[kk].log))
        rows.append(ctx.digits(expr).T)  # k constraint rows over the 2k unknowns
    C = np.vstack(rows) if rows else np.zeros((0, 2 * k), dtype=np.int64)
    basis = _linalg.fp_nullspace(C, p)
    size = p ** basis.shape[0]
    if size > budget:
        raise SearchSpaceTooLarge(size, budget)

    best = None
    f0 = ft.coeffs[0].log
    for combos in _span_chunks(basis, p):
        a = ctx.from_digits(combos[:, :k])
        b = ctx.from_digits(combos[:, k:])
        h0 = ctx.from_digits((combos @ Hd[:, 0, :]) % p)
        if i0 is not None:
            hi = ctx.from_digits((combos @ Hd[:, i0, :]) % p)
            d = ctx.vdiv(hi, ft.coeffs[i0].log)
            c = ctx.vsub(h0, ctx.vmul(d, f0))
            det = ctx.vsub(ctx.vmul(a, d), ctx.vmul(b, c))
        else:
            # d is free; det is affine in d, so one of d = 0, d = 1 always works unless it is constant zero
            d = np.full(a.shape, -1, dtype=np.int64)
            c = h0
            det = ctx.vsub(ctx.vmul(a, d), ctx.vmul(b, c))
            d = np.where(det < 0, 0, d)
            c = ctx.vsub(h0, ctx.vmul(d, f0))
            det = ctx.vsub(ctx.vmul(a, d), ctx.vmul(b, c))
        ok = np.nonzero(det >= 0)[0]
        if ok.size:
            order = np.lexsort((b[ok], a[ok]))
            j = ok[order[0]]
            cand = (int(a[j]), int(b[j]), int(c[j]), int(d[j]))
            if best is None or cand[:2] < best[:2]:
                best = cand
    return best, size


def gammal_equivalent(f, g, budget=DEFAULT_BUDGET):
    """A semilinear map (raw matrix, not rescaled) with U_f^phi = U_g, or None."""
    return gammal_search(f, g, budget).witness


def gammal_search(f, g, budget=DEFAULT_BUDGET):
    if f.ctx is not g.ctx:
        raise CtxMismatch("q-polynomials over different fields")
    ctx = f.ctx
    scanned = 0
    for rho in range(ctx.degree):
        best, size = _gammal_rho(f, g, rho, budget)
        scanned += size
        if best is not None:
            a, b, c, d = (ctx.from_log(v) for v in best)
            phi = SemilinearMap(a, b, c, d, rho, normalize=False)
            if not verify_gammal(f, g, phi):
                raise AssertionError("GammaL witness failed verification")
            return EquivResult(True, phi, scanned)
    return EquivResult(False, None, scanned)


def brute_gammal_equivalent(f, g):
    """Reference search over every (a, b) pair; tiny fields only (tests)."""
    ctx = f.ctx
    els = [Elem(ctx, int(v)) for v in ctx.elements()]
    n = ctx.n
    for rho in range(ctx.degree):
        ft = f.twist(rho)
        i0 = next((i for i in range(1, n) if ft.coeffs[i]), None)
        for a in els:
            for b in els:
                h = qp_compose_mod(g, QPoly.monomial(ctx, 0, a) + ft.scale(b))
                ds = [h.coeffs[i0] / ft.coeffs[i0]] if i0 is not None else els
                for d in ds:
                    c = h.coeffs[0] - d * ft.coeffs[0]
                    if QPoly.monomial(ctx, 0, c) + ft.scale(d) == h and a * d - b * c:
                        return SemilinearMap(a, b, c, d, rho, normalize=False)
    return None


# -- PGammaL equivalence of point sets -----------------------------------------

def _working(L):
    """The smaller of L and its complement (maps preserve both together)."""
    N = L.ctx.order
    if 2 * len(L) <= N + 1:
        return L.codes
    return np.nonzero(~L.mask)[0].astype(np.int64)


def _t_images(ctx, center, codes):
    """dlogs of t(z) = 1/(z - center), t(inf) = 0; for center = inf, t(z) = z."""
    N = ctx.order
    codes = np.asarray(codes, dtype=np.int64)
    if center == N:
        return codes - 1
    inf = codes == N
    diff = ctx.vsub(np.where(inf, 0, codes - 1), center - 1)
    return np.where(inf, -1, ctx.vinv(np.where(inf, 0, diff)))


def _point_signature(ctx, W, P):
    A = _t_images(ctx, P, W[W != P])
    diff = ctx.vsub(A[None, :], A[:, None]).ravel()
    counts = np.bincount(diff[diff >= 0], minlength=ctx.M)
    vals, mult = np.unique(counts[counts > 0], return_counts=True)
    return tuple(zip(vals.tolist(), mult.tolist()))


def signatures(L):
    """{code: signature} over the working set of L (cached on L)."""
    if "signatures" not in L._cache:
        W = _working(L)
        L._cache["signatures"] = {int(P): _point_signature(L.ctx, W, int(P)) for P in W}
    return L._cache["signatures"]


def _classes(sig):
    out = {}
    for code in sorted(sig):
        out.setdefault(sig[code], []).append(code)
    return out


def set_signature(L):
    return tuple(sorted(signatures(L).values()))


def _check_budget(ctx, k, budget):
    cand = k**3 * ctx.degree
    if cand > budget:
        raise SearchSpaceTooLarge(cand, budget)


def _pad(ctx, W, k):
    """First k codes of W followed by the smallest codes outside W (3 codes total)."""
    inside = set(int(c) for c in W)
    extra = [c for c in range(ctx.order + 1) if c not in inside][: 3 - k]
    return [int(c) for c in W][:k] + extra


class _Plan:
    """Everything needed to scan candidate images for one pinned triple."""

    def __init__(self, L1, L2):
        ctx = L1.ctx
        self.ctx = ctx
        self.W1, self.W2 = _working(L1), _working(L2)
        s1, s2 = signatures(L1), signatures(L2)
        self.refuted = sorted(s1.values()) != sorted(s2.values())
        if self.refuted:
            return
        c1, c2 = _classes(s1), _classes(s2)
        pinned = []
        for _ in range(3):
            best = None
            for sig, codes in c1.items():
                free = [c for c in codes if c not in pinned]
                if free and (best is None or (len(codes), sig) < best[:2]):
                    best = (len(codes), sig, free[0])
            pinned.append(best[2])
        self.P = pinned
        self.cands = [c2[s1[P]] for P in pinned]
        mu = transport(ctx, pinned, (ctx.order, 0, 1))
        rest = self.W1[(self.W1 != pinned[0]) & (self.W1 != pinned[1])]
        self.V = mu.apply_codes(rest) - 1
        self.frob = [pow(ctx.p, r, ctx.M) for r in range(ctx.degree)]

    def block_size(self, Q1):
        rows = [c for c in self.cands[1] if c != Q1]
        cols = set(c for c in self.cands[2] if c != Q1)
        n = len(rows) * len(cols) - sum(1 for r in rows if r in cols)
        return n * self.ctx.degree

    def scan(self, Q1, first_only):
        """Accepted (rho, Q2, Q3) for this Q1 in canonical order, with the scan position of the first."""
        ctx, M = self.ctx, self.ctx.M
        others = self.W2[self.W2 != Q1]
        A = _t_images(ctx, Q1, others)
        pos = {int(c): i for i, c in enumerate(others)}
        rows = np.array([pos[c] for c in self.cands[1] if c != Q1], dtype=np.int64)
        cols = np.array([pos[c] for c in self.cands[2] if c != Q1], dtype=np.int64)
        found, first_pos = [], None
        if rows.size == 0 or cols.size == 0:
            return found, first_pos
        rr, cc = np.nonzero(rows[:, None] != cols[None, :])
        s = ctx.vsub(A[cols[cc]], A[rows[rr]])
        Dr = ctx.vsub(A[None, :], A[rows][:, None])
        mask = np.zeros((rows.size, M), dtype=bool)
        ri, ci = np.nonzero(Dr >= 0)
        mask[ri, Dr[ri, ci]] = True
        nblock = rr.size
        for rho in range(ctx.degree):
            Vr = (self.V * self.frob[rho]) % M
            alive = np.arange(nblock)
            for v in Vr:
                alive = alive[mask[rr[alive], (v + s[alive]) % M]]
                if alive.size == 0:
                    break
            for j in alive:
                found.append((rho, int(others[rows[rr[j]]]), int(others[cols[cc[j]]])))
                if first_pos is None:
                    first_pos = rho * nblock + int(j)
                if first_only:
                    return found, first_pos
        return found, first_pos


def _map_chunks(fn, items, threads):
    """Yield fn(item) in input order, evaluating ``threads`` items at a time."""
    if threads <= 1:
        for it in items:
            yield fn(it)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for i in range(0, len(items), threads):
            yield from pool.map(fn, items[i:i + threads])


def pgl_search(L1, L2, budget=DEFAULT_BUDGET, threads=1):
    if L1.ctx is not L2.ctx:
        raise CtxMismatch("linear sets over different fields")
    ctx = L1.ctx
    if len(L1) != len(L2):
        return EquivResult(False, None, 0, "cardinality")
    if L1 == L2:
        return EquivResult(True, SemilinearMap.identity(ctx), 0, "equal")
    W1, W2 = _working(L1), _working(L2)
    k = len(W1)
    if k <= 3:
        phi = transport(ctx, _pad(ctx, W1, k), _pad(ctx, W2, k))
        return EquivResult(True, _verified(phi, L1, L2), 0, "small")
    _check_budget(ctx, k, budget)
    plan = _Plan(L1, L2)
    if plan.refuted:
        return EquivResult(False, None, 0, "signature")
    scanned = 0
    Q1s = plan.cands[0]
    for Q1, (found, first_pos) in zip(Q1s, _map_chunks(lambda Q: plan.scan(Q, True), Q1s, threads)):
        if found:
            rho, Q2, Q3 = found[0]
            phi = transport(ctx, plan.P, (Q1, Q2, Q3), rho)
            return EquivResult(True, _verified(phi, L1, L2), scanned + first_pos + 1, "search")
        scanned += plan.block_size(Q1)
    return EquivResult(False, None, scanned, "exhausted")


def pgl_equivalent(L1, L2, budget=DEFAULT_BUDGET, threads=1):
    """A map phi with L1^phi = L2, or None after an exhaustive search."""
    return pgl_search(L1, L2, budget, threads).witness


def _verified(phi, L1, L2):
    if apply_semilinear(phi, L1) != L2:
        raise AssertionError("PGammaL witness failed verification")
    return phi


def all_pgl_maps(L1, L2, budget=DEFAULT_BUDGET, threads=1, max_elements=10**5):
    """Every phi with L1^phi = L2, sorted by key (used for stabilizers)."""
    ctx = L1.ctx
    if len(L1) != len(L2):
        return []
    W1, W2 = _working(L1), _working(L2)
    k = len(W1)
    if k <= 2:
        maps = _small_maps(ctx, W1, W2, max_elements)
    else:
        _check_budget(ctx, k, budget)
        plan = _Plan(L1, L2)
        if plan.refuted:
            return []
        maps = []
        for Q1, (found, _) in zip(plan.cands[0], _map_chunks(lambda Q: plan.scan(Q, False), plan.cands[0], threads)):
            maps.extend(transport(ctx, plan.P, (Q1, Q2, Q3), rho) for rho, Q2, Q3 in found)
    for phi in maps:
        _verified(phi, L1, L2)
    return sorted(set(maps))


def _small_maps(ctx, W1, W2, max_elements):
    """All maps sending a set of at most two points onto another one."""
    k = len(W1)
    outside = [c for c in range(ctx.order + 1) if c not in set(int(w) for w in W2)]
    free = 3 - k
    count = ctx.degree
    for i in range(free):
        count *= len(outside) - i
    for i in range(k):
        count *= k - i
    if count > max_elements:
        raise SearchSpaceTooLarge(count, max_elements)
    src = _pad(ctx, W1, k)
    out = []
    for rho in range(ctx.degree):
        for head in permutations([int(w) for w in W2]):
            for tail in permutations(outside, free):
                out.append(transport(ctx, src, list(head) + list(tail), rho))
    return out


# -- closed-form criteria --------------------------------------------------------

def norm_condition(ctx, delta, theta, m):
    """Least rho with N(delta) = N(theta)^(p^rho), N the norm onto F_{q^m}; None if no such rho."""
    if ctx.n % m:
        raise NotASubfield(f"F_q^{m} is not a subfield of F_q^{ctx.n}")
    nd, nt = rel_norm(ctx, delta, m), rel_norm(ctx, theta, m)
    for rho in range(ctx.e * m):
        if nt.frob(rho) == nd:
            return rho
    return None


def binomial_subspace_condition(s1, s2, delta, theta, m):
    """GammaL-equivalence criterion for U = {(x, x^(q^s) + delta x^(q^(s+m)))}."""
    ctx = delta.ctx
    if ctx.n != 2 * m:
        raise PreconditionViolated(f"need n = 2m, got n = {ctx.n}, m = {m}")
    for s in (s1, s2):
        if not (1 <= s < m and gcd(s, m) == 1):
            raise PreconditionViolated(f"s = {s} must satisfy 1 <= s < m and gcd(s, m) = 1")
    nd, nt = rel_norm(ctx, delta, m), rel_norm(ctx, theta, m)
    if not delta or not theta or nd == ctx.one or nt == ctx.one:
        raise PreconditionViolated("coefficients must be nonzero with norm different from 1")
    autos = [nt.frob(r) for r in range(ctx.e * m)]
    if s1 == s2 and any(nd == t for t in autos):
        return True
    if s1 + s2 == m and any((nd * t) == ctx.one for t in autos):
        return True
    return False
