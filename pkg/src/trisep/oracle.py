"""Brute-force ground truth: Sturm counting, complex roots, Mahler baseline.

Nothing here is meant to be fast or succinct -- this module exists so the
exact algorithms elsewhere have an independent referee.  Dense expansion of
sparse inputs happens only here.  Sturm chains run over exact integers
(each remainder is rescaled by a positive constant, which preserves the
sign structure), so counts are exact; complex roots come from mpmath with
a posteriori error radii.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

import mpmath as mp

from .bigmath import ln_lower, ln_upper
from .errors import BudgetExceededError, DomainError, ZeroPolynomialError
from .trinomial import SparsePoly

DEGREE_CAP_DEFAULT = 2000
COMPLEX_DEGREE_CAP_DEFAULT = 100

Sparse = Dict[int, int]


def _sign(n) -> int:
    return (n > 0) - (n < 0)


# ---------------------------------------------------------------------------
# dense polynomials (the oracle-side representation)

@dataclass(frozen=True)
class DensePoly:
    """Coefficient vector, constant term first, leading coefficient nonzero."""

    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ZeroPolynomialError("empty coefficient vector")
        if self.coeffs[-1] == 0:
            raise DomainError("leading coefficient must be nonzero")

    @staticmethod
    def from_coeffs(cs: Sequence[Union[int, Fraction]],
                    cap: int = DEGREE_CAP_DEFAULT) -> "DensePoly":
        cs = [Fraction(c) for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            raise ZeroPolynomialError("zero polynomial")
        if len(cs) - 1 > cap:
            raise DomainError(f"degree {len(cs) - 1} exceeds cap {cap}")
        return DensePoly(tuple(cs))

    @staticmethod
    def from_sparse(f: SparsePoly, cap: int = DEGREE_CAP_DEFAULT) -> "DensePoly":
        terms = f.terms()
        deg = max(e for _, e in terms)
        if deg > cap:
            raise DomainError(f"degree {deg} exceeds cap {cap}")
        cs = [Fraction(0)] * (deg + 1)
        for c, e in terms:
            cs[e] += c
        return DensePoly.from_coeffs(cs, cap)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def height(self) -> Fraction:
        return max(abs(c) for c in self.coeffs)

    def evaluate(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_sparse_int(self) -> Sparse:
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return {e: int(c * den) for e, c in enumerate(self.coeffs) if c != 0}


# ---------------------------------------------------------------------------
# sparse integer polynomial helpers

def _deg(p: Sparse) -> int:
    return max(p)


def _derivative(p: Sparse) -> Sparse:
    return {e - 1: c * e for e, c in p.items() if e > 0}


def _primitive(p: Sparse) -> Sparse:
    if not p:
        return p
    g = 0
    for c in p.values():
        g = gcd(g, abs(c))
    if g > 1:
        return {e: c // g for e, c in p.items()}
    return p


def _rem_pos_scaled(a: Sparse, b: Sparse) -> Sparse:
    """Remainder of a by b times a positive constant (signs preserved)."""
    a = dict(a)
    db = _deg(b)
    lb = b[db]
    alb, sb = abs(lb), _sign(lb)
    while a and _deg(a) >= db:
        da = _deg(a)
        la = a.pop(da)
        shift = da - db
        new = {e: c * alb for e, c in a.items()}
        for e, c in b.items():
            if e == db:
                continue
            t = e + shift
            new[t] = new.get(t, 0) - sb * la * c
        a = {e: c for e, c in new.items() if c != 0}
    return a


def _div_exact(a: Sparse, b: Sparse) -> Sparse:
    """Exact quotient of integer sparse polynomials (remainder must vanish)."""
    work: Dict[int, Fraction] = {e: Fraction(c) for e, c in a.items()}
    db = _deg(b)
    lb = Fraction(b[db])
    q: Dict[int, Fraction] = {}
    while work and _deg(work) >= db:
        da = _deg(work)
        k = work.pop(da) / lb
        sh = da - db
        q[sh] = q.get(sh, Fraction(0)) + k
        for e, c in b.items():
            if e == db:
                continue
            t = e + sh
            nv = work.get(t, Fraction(0)) - k * c
            if nv:
                work[t] = nv
            elif t in work:
                del work[t]
    if work:
        raise AssertionError("division was not exact")
    den = 1
    for c in q.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return _primitive({e: int(c * den) for e, c in q.items() if c != 0})


def sturm_chain(p: Sparse) -> List[Sparse]:
    """Signed remainder chain of p (integer coefficients, sign-exact)."""
    p0 = _primitive({e: c for e, c in p.items() if c != 0})
    if not p0:
        raise ZeroPolynomialError("zero polynomial")
    chain = [p0]
    if _deg(p0) == 0:
        return chain
    p1 = _primitive(_derivative(p0))
    chain.append(p1)
    while chain[-1] and _deg(chain[-1]) > 0:
        r = _rem_pos_scaled(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_primitive({e: -c for e, c in r.items()}))
    return chain


def squarefree_part(p: Sparse) -> Sparse:
    """p divided by gcd(p, p'); same distinct roots, all simple."""
    chain = sturm_chain(p)
    while _deg(chain[-1]) > 0:
        # the last chain element is (a positive multiple of) gcd(p, p')
        p = _div_exact(chain[0], chain[-1])
        chain = sturm_chain(p)
    return chain[0]


def _variations(signs: Sequence[int]) -> int:
    last = 0
    changes = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            changes += 1
        last = s
    return changes


def _sign_at_fraction(p: Sparse, x: Fraction) -> int:
    num, den = x.numerator, x.denominator
    d = _deg(p)
    acc = 0
    for e, c in p.items():
        acc += c * num ** e * den ** (d - e)
    return _sign(acc)


def _v_at(chain: Sequence[Sparse], x: Fraction) -> int:
    return _variations([_sign_at_fraction(p, x) for p in chain])


def _v_at_neg_inf(chain: Sequence[Sparse]) -> int:
    return _variations([_sign(p[_deg(p)]) * (-1) ** (_deg(p) % 2)
                        for p in chain])


def _v_at_pos_inf(chain: Sequence[Sparse]) -> int:
    return _variations([_sign(p[_deg(p)]) for p in chain])


class SturmOracle:
    """Exact distinct-real-root counting and isolation for one polynomial."""

    def __init__(self, poly: Union[DensePoly, SparsePoly, Sparse],
                 cap: int = DEGREE_CAP_DEFAULT):
        if isinstance(poly, DensePoly):
            sparse = poly.to_sparse_int()
        elif isinstance(poly, dict):
            sparse = {e: int(c) for e, c in poly.items() if c != 0}
        else:
            sparse = {}
            for c, e in poly.terms():
                sparse[e] = sparse.get(e, 0) + c
            sparse = {e: c for e, c in sparse.items() if c != 0}
        if not sparse:
            raise ZeroPolynomialError("zero polynomial")
        if _deg(sparse) > cap:
            raise DomainError(f"degree {_deg(sparse)} exceeds cap {cap}")
        # interval variation counts at points that are themselves repeated
        # roots are ill-defined, so all counting runs on the squarefree part
        # (the distinct roots are the same)
        self.original = sparse
        self.poly = squarefree_part(sparse)
        self.chain = sturm_chain(self.poly)

    # -- counting ------------------------------------------------------

    def distinct_real_roots(self) -> int:
        return _v_at_neg_inf(self.chain) - _v_at_pos_inf(self.chain)

    def count_in(self, a: Fraction, b: Fraction) -> int:
        """Distinct real roots in the half-open interval (a, b]."""
        return _v_at(self.chain, a) - _v_at(self.chain, b)

    # -- isolation -----------------------------------------------------

    def root_box(self) -> Fraction:
        """Power of two B with every real root in (-B, B)."""
        d = _deg(self.poly)
        lead = abs(self.poly[d])
        m = max(abs(c) for c in self.poly.values())
        bound = 1 + Fraction(m, lead)
        return Fraction(2 ** (bound.numerator // bound.denominator).bit_length())

    def isolate(self, width: Fraction) -> List[Tuple[Fraction, Fraction]]:
        """Disjoint half-open brackets (a, b], one distinct root each."""
        box = self.root_box()
        total = self.count_in(-box, box)
        out: List[Tuple[Fraction, Fraction]] = []
        stack = [(-box, box, total)]
        while stack:
            a, b, n = stack.pop()
            if n == 0:
                continue
            if n == 1:
                out.append(self.refine((a, b), width))
                continue
            mid = (a + b) / 2
            left = self.count_in(a, mid)
            stack.append((a, mid, left))
            stack.append((mid, b, n - left))
        out.sort()
        return out

    def refine(self, bracket: Tuple[Fraction, Fraction],
               width: Fraction) -> Tuple[Fraction, Fraction]:
        """Shrink a one-root bracket below ``width``.

        Uses plain sign bisection when the endpoints see a sign change
        (odd multiplicity), falling back to chain counts otherwise.
        """
        a, b = bracket
        if _sign_at_fraction(self.poly, b) == 0:
            return (b, b)
        sa, sb = _sign_at_fraction(self.poly, a), _sign_at_fraction(self.poly, b)
        sign_path = sa != 0 and sb != 0 and sa != sb
        while b - a > width:
            mid = (a + b) / 2
            if sign_path:
                sm = _sign_at_fraction(self.poly, mid)
                if sm == 0:
                    return (mid, mid)
                if sm == sa:
                    a = mid
                else:
                    b = mid
            else:
                if self.count_in(a, mid) == 1:
                    b = mid
                else:
                    a = mid
        return (a, b)

    def min_root_gap(self, width: Fraction = Fraction(1, 1 << 100)
                     ) -> Optional[Fraction]:
        """Certified lower bound on the distance between distinct real roots."""
        brackets = self.isolate(width)
        if len(brackets) < 2:
            return None
        for _ in range(200):
            gaps = [brackets[i + 1][0] - brackets[i][1]
                    for i in range(len(brackets) - 1)]
            if all(g > 0 for g in gaps):
                return min(gaps)
            w = min(b - a for a, b in brackets if b > a) / 4 \
                if any(b > a for a, b in brackets) else width / 4
            brackets = [self.refine(br, w) if br[0] != br[1] else br
                        for br in brackets]
            width = w
        raise AssertionError("root gap refinement failed to separate brackets")


def sturm_distinct_real_roots(p: Union[DensePoly, SparsePoly],
                              cap: int = DEGREE_CAP_DEFAULT) -> int:
    """Exact number of distinct real roots via Sturm chains."""
    return SturmOracle(p, cap=cap).distinct_real_roots()


# ---------------------------------------------------------------------------
# complex roots with error radii

def complex_roots(p: DensePoly, dps: int = 40,
                  max_degree: int = COMPLEX_DEGREE_CAP_DEFAULT,
                  maxsteps: int = 200) -> List[Tuple[mp.mpc, mp.mpf]]:
    """All roots with attributable error radii.

    Radii come from the residual bound min_i |z - r_i| <= n |p(z)/p'(z)|
    (doubled for evaluation slack); a derivative collapse yields an infinite
    radius, which downstream distance helpers report as a cluster.
    """
    d = p.degree
    if d > max_degree:
        raise DomainError(f"degree {d} exceeds complex-root cap {max_degree}")
    if d == 0:
        return []
    coeffs = list(p.coeffs)
    # the origin factor x^k defeats simultaneous iteration; its root is exact
    k = 0
    while coeffs[k] == 0:
        k += 1
    out: List[Tuple[mp.mpc, mp.mpf]] = [(mp.mpc(0), mp.mpf(0))] * k
    coeffs = coeffs[k:]
    n = len(coeffs) - 1
    if n == 0:
        return out
    desc = [c for c in reversed(coeffs)]
    with mp.workdps(dps + 15):
        cs = [mp.mpf(c.numerator) / mp.mpf(c.denominator) for c in desc]
        # sparse views: evaluation cost scales with the number of terms
        pt = [(cs[n - e], e) for e in range(n, -1, -1) if cs[n - e] != 0]
        dt = [(c * e, e - 1) for c, e in pt if e > 0]
        roots = _newton_polished_roots(cs, pt, dt, dps)
        if roots is None:
            roots = None
            for steps, extra in ((maxsteps, 60), (maxsteps * 5, 200)):
                try:
                    roots = mp.polyroots(cs, maxsteps=steps, extraprec=extra)
                    break
                except mp.libmp.NoConvergence:
                    continue
            if roots is None:
                raise BudgetExceededError("complex root finding did not converge")
        for z in roots:
            pz = _eval_sparse_mp(pt, z)
            dz = _eval_sparse_mp(dt, z)
            if dz == 0:
                radius = mp.inf
            else:
                radius = 2 * n * abs(pz / dz)
            out.append((mp.mpc(z), mp.mpf(radius)))
    return out


def _eval_sparse_mp(terms, z):
    acc = mp.mpf(0)
    for c, e in terms:
        acc += c * z ** e
    return acc


def _newton_polished_roots(cs, pt, dt, dps):
    """Eigenvalue starting points polished by Newton; None when unreliable."""
    import numpy as np

    n = len(cs) - 1
    try:
        starts = np.roots([float(c) for c in cs])
    except Exception:
        return None
    if len(starts) != n or not np.all(np.isfinite(starts)):
        return None
    target = mp.mpf(10) ** (-dps - 5)
    roots = []
    for z0 in starts:
        z = mp.mpc(float(z0.real), float(z0.imag))
        scale = max(mp.mpf(1), abs(z))
        converged = False
        for _ in range(60):
            dz = _eval_sparse_mp(dt, z)
            if dz == 0:
                converged = True  # exactly on a critical point: the radius
                break             # certificate flags the cluster downstream
            step = _eval_sparse_mp(pt, z) / dz
            z = z - step
            if abs(step) <= target * scale:
                converged = True
                break
        if not converged or not mp.isfinite(z):
            return None
        roots.append(z)
    return roots


def min_pairwise_distance(roots: Sequence[Tuple[mp.mpc, mp.mpf]]
                          ) -> Tuple[float, bool]:
    """(certified lower bound on min pairwise distance, cluster flag).

    Exactly equal entries are copies of one multiple root (the origin factor
    is reported that way) and do not form a pair.  The flag is set when some
    genuine pair cannot be told apart at its radii; the lower bound is then 0.
    """
    n = len(roots)
    best = float("inf")
    cluster = False
    for i in range(n):
        for j in range(i + 1, n):
            zi, ri = roots[i]
            zj, rj = roots[j]
            if zi == zj and ri == rj == 0:
                continue  # the same exactly-known root listed with multiplicity
            dij = abs(zi - zj) - ri - rj
            if dij <= 0:
                cluster = True
                best = 0.0
            else:
                best = min(best, float(dij))
    return best, cluster


def residuals_ok(p: DensePoly, roots: Sequence[Tuple[mp.mpc, mp.mpf]],
                 tol: float = 1e-20) -> bool:
    """Check |p(root)| against the claimed radius scale."""
    desc = [c for c in reversed(p.coeffs)]
    with mp.workdps(60):
        cs = [mp.mpf(c.numerator) / mp.mpf(c.denominator) for c in desc]
        dcs = [cs[i] * (p.degree - i) for i in range(p.degree)]
        for z, r in roots:
            pz = abs(mp.polyval(cs, z))
            if mp.isinf(r):
                continue
            scale = abs(mp.polyval(dcs, z)) * r + tol
            if pz > scale:
                return False
    return True


# ---------------------------------------------------------------------------
# the Mahler baseline

def mahler_log_bound(d: int, height: Union[int, Fraction]) -> Fraction:
    """ln of sqrt(3) (d+1)^(-(2d+1)/2) H^(-d+1), as an exact rational lower bound.

    Degree-based baseline for squarefree polynomials; logs are replaced by
    certified rational bounds in the direction that keeps the result a valid
    lower bound of the formula's value.
    """
    if d < 2:
        raise DomainError("the degree-based baseline needs degree >= 2")
    height = Fraction(height)
    if height <= 0:
        raise DomainError("height must be positive")
    ln3_lo = ln_lower(3, 96)
    term_h = (d - 1) * ln_upper(height, 96) if height != 1 else Fraction(0)
    return ln3_lo / 2 - Fraction(2 * d + 1, 2) * ln_upper(d + 1, 96) - term_h


def mahler_bound(p: DensePoly) -> Fraction:
    """Baseline separation bound of a dense polynomial, in log space."""
    return mahler_log_bound(p.degree, p.height)
