"""Certified real-root isolation for sparse (<= 3 term) integer polynomials.

Between its critical points a trinomial is strictly monotone, so isolation
reduces to: bracket the unique positive critical point, split the positive
axis there, and bisect each monotone piece inside the coefficient-magnitude
annulus using exact sign evaluation at dyadic points.  Double roots carry an
algebraic certificate (the discriminant comparison came out equal); no
numeric sign change exists at them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .dyadic import (
    DY_ZERO,
    Dyadic,
    DyadicInterval,
    dy_add_exact,
    dy_cmp,
    dy_cmp_fraction,
    dy_half_sum,
)
from .errors import DomainError
from .trinomial import (
    SparsePoly,
    Trinomial,
    _bracket_power_root,
    _cmp_power_vs_ratio,
    _sign,
    _sign_at_positive,
    count_real_roots,
)

CERT_SIGN_CHANGE = "sign-change"
CERT_DOUBLE_ROOT = "double-root"
CERT_EXACT_ROOT = "exact-rational-root"


@dataclass(frozen=True)
class IsolatedRoot:
    interval: DyadicInterval
    certificate: str  # sign-change | double-root | exact-rational-root
    root_sign: str    # neg | zero | pos


@dataclass(frozen=True)
class IsolationReport:
    intervals: Tuple[IsolatedRoot, ...]
    requested_width: Fraction


def _eval_sign(terms, d: Dyadic) -> int:
    """Exact sign at a positive dyadic point."""
    return _sign_at_positive(list(terms), d.as_fraction(),
                             interval_bits_cap=8192,
                             exact_budget_bits=1 << 25,
                             start_bits=0)


def _width_gt(lo: Dyadic, hi: Dyadic, width: Fraction) -> bool:
    return dy_cmp_fraction(dy_add_exact(hi, -lo), width) > 0


def _bisect(terms, lo: Dyadic, hi: Dyadic, s_lo: int, s_hi: int,
            width: Fraction,
            avoid_lo: Optional[Dyadic] = None,
            avoid_hi: Optional[Dyadic] = None) -> Tuple[DyadicInterval, str]:
    """Shrink a sign-change bracket below ``width``.

    ``avoid_lo``/``avoid_hi`` force extra steps until the corresponding
    endpoint moves strictly off a separator shared with a neighboring
    bracket, keeping reported intervals pairwise disjoint.
    """
    assert s_lo != 0 and s_hi != 0 and s_lo != s_hi
    while (_width_gt(lo, hi, width)
           or (avoid_lo is not None and dy_cmp(lo, avoid_lo) == 0)
           or (avoid_hi is not None and dy_cmp(hi, avoid_hi) == 0)):
        mid = dy_half_sum(lo, hi)
        s_mid = _eval_sign(terms, mid)
        if s_mid == 0:
            return DyadicInterval(mid, mid, 64), CERT_EXACT_ROOT
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return DyadicInterval(lo, hi, 64), CERT_SIGN_CHANGE


def _annulus_box(terms) -> Tuple[Dyadic, Dyadic]:
    """Dyadic powers of two strictly outside the root annulus."""
    m = max(abs(c) for c, _ in terms)
    bl = (m + 1).bit_length()
    return Dyadic(1, -bl - 1), Dyadic(1, bl + 1)


def _find_separator(terms, ratio: Fraction, k: int, s_m: int
                    ) -> Tuple[Optional[Dyadic], dict]:
    """A dyadic point between the two positive roots, where f has sign s_m.

    Brackets of the critical point m shrink toward it; once the midpoint of
    the bracket lands inside (x1, x2) the sign matches.  Midpoints that hit
    a root exactly are recorded by side ('left'/'right' of m) and skipped.
    """
    exact: dict = {}
    width = Fraction(1, 2)
    for _ in range(300):
        br = _bracket_power_root(ratio, k, width)
        t = br.midpoint()
        s_t = _eval_sign(terms, t)
        if s_t == s_m:
            return t, exact
        if s_t == 0:
            side = "left" if _cmp_power_vs_ratio(t.as_fraction(), k, ratio) < 0 \
                else "right"
            exact[side] = t
            if len(exact) == 2:
                return None, exact
        width /= 16
    raise AssertionError("separator search failed to converge")


def _isolate_positive(terms: Sequence[Tuple[int, int]], count: int,
                      is_double: bool, width: Fraction
                      ) -> List[Tuple[DyadicInterval, str]]:
    """Isolate the positive roots of a stripped polynomial."""
    if count == 0:
        return []
    if is_double:
        # exactly one positive root, a double: bracket the critical point
        (_, _), (b, beta), (c, gamma) = terms
        ratio = Fraction(abs(b) * beta, abs(c) * gamma)
        return [(_bracket_power_root(ratio, gamma - beta, width),
                 CERT_DOUBLE_ROOT)]
    lo, hi = _annulus_box(terms)
    s_lo = _sign(terms[0][0])     # sign just right of 0 is the constant's
    s_hi = _sign(terms[-1][0])    # sign beyond the annulus is the leading one
    if count == 1:
        return [_bisect(terms, lo, hi, s_lo, s_hi, width)]
    # two distinct positive roots; split at a separator near the critical point
    (_, _), (b, beta), (c, gamma) = terms
    ratio = Fraction(abs(b) * beta, abs(c) * gamma)
    s_m = -s_lo
    sep, exact = _find_separator(terms, ratio, gamma - beta, s_m)
    out: List[Tuple[DyadicInterval, str]] = []
    if sep is None:
        # both roots were hit exactly while closing in on the critical point
        for side in ("left", "right"):
            pt = exact[side]
            out.append((DyadicInterval(pt, pt, 64), CERT_EXACT_ROOT))
        return out
    if "left" in exact:
        pt = exact["left"]
        out.append((DyadicInterval(pt, pt, 64), CERT_EXACT_ROOT))
    else:
        out.append(_bisect(terms, lo, sep, s_lo, s_m, width, avoid_hi=sep))
    if "right" in exact:
        pt = exact["right"]
        out.append((DyadicInterval(pt, pt, 64), CERT_EXACT_ROOT))
    else:
        out.append(_bisect(terms, sep, hi, s_m, s_hi, width, avoid_lo=sep))
    return out


def isolate_real_roots(f: SparsePoly, width: Fraction) -> IsolationReport:
    """Disjoint dyadic intervals, one per distinct real root.

    Interval count matches count_real_roots; sign-change intervals have
    exactly opposite nonzero signs at their endpoints; double roots are
    certified algebraically around the critical-point bracket; the root at
    the origin (and any rational root a bisection lands on) is reported as
    an exact point of width zero.
    """
    width = Fraction(width)
    if width <= 0:
        raise DomainError("isolation width must be positive")
    report = count_real_roots(f)
    terms = list(f.terms())
    alpha = terms[0][1]
    stripped = [(c, e - alpha) for c, e in terms]
    entries: List[IsolatedRoot] = []
    if alpha > 0:
        entries.append(IsolatedRoot(
            DyadicInterval(DY_ZERO, DY_ZERO, 64), CERT_EXACT_ROOT, "zero"))
    for iv, cert in _isolate_positive(stripped, report.positive,
                                      report.positive_double, width):
        entries.append(IsolatedRoot(iv, cert, "pos"))
    flipped = [(c if e % 2 == 0 else -c, e) for c, e in stripped]
    for iv, cert in _isolate_positive(flipped, report.negative,
                                      report.negative_double, width):
        entries.append(IsolatedRoot(
            DyadicInterval(-iv.hi, -iv.lo, iv.precision), cert, "neg"))
    entries.sort(key=lambda r: r.interval.lo.as_fraction())
    if len(entries) != report.total_distinct:
        raise AssertionError("isolation count disagrees with the counting report")
    return IsolationReport(tuple(entries), width)


def bracket_critical_point(f: Trinomial, width: Fraction,
                           ) -> DyadicInterval:
    """Dyadic bracket of the positive critical point m = |b beta / c gamma|^(1/(gamma-beta)).

    Requires a positive critical point (middle and leading coefficients of
    opposite signs after stripping).
    """
    if f.alpha != 0:
        raise DomainError("bracket_critical_point requires alpha = 0")
    if _sign(f.b) == _sign(f.c):
        raise DomainError("no positive critical point: b and c share a sign")
    ratio = Fraction(abs(f.b) * f.beta, abs(f.c) * f.gamma)
    return _bracket_power_root(ratio, f.gamma - f.beta, Fraction(width))
