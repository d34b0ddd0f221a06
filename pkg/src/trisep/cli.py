"""Command-line front end: count, isolate, sep, compare, eval-sign, bench.

Every big number in the output is a decimal string (never a float), and
log-space bounds are printed as exact rationals plus a readable decimal
approximation.  Structured output is a single JSON envelope; identical
invocations produce byte-identical output (timings are only included when
asked for, since they would break that).

Exit codes: 0 complete result, 2 parse error, 3 budget exceeded,
4 domain error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from typing import List, Optional, Tuple

from .bigmath import PRECISION_CAP_DEFAULT
from .dyadic import Dyadic
from .errors import (
    BudgetExceededError,
    DomainError,
    ParseError,
    TrisepError,
)
from .isolate import isolate_real_roots
from .oracle import (
    DensePoly,
    complex_roots,
    mahler_log_bound,
    min_pairwise_distance,
)
from .succinct import SuccinctInt, compare_succinct
from .trinomial import (
    Binomial,
    Monomial,
    SparsePoly,
    Trinomial,
    count_real_roots,
    format_terms,
    normalize,
    parse_terms,
    separation_bound_binomial,
    separation_bound_complex,
    separation_bound_real,
    sign_at_rational,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_DOMAIN = 4


# ---------------------------------------------------------------------------
# input parsing

def parse_poly_input(text: str) -> Tuple[List[Tuple[int, int]], SparsePoly, int]:
    """Accept 'coeff,exp;...' or the JSON form {"terms": [{"coeff","exp"}]}."""
    text = text.strip()
    if text.startswith("{") or text.startswith("["):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON polynomial: {exc}") from exc
        items = payload["terms"] if isinstance(payload, dict) else payload
        try:
            raw = [(int(t["coeff"]), int(t["exp"])) for t in items]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("JSON terms need decimal 'coeff' and 'exp'") from exc
    else:
        raw = parse_terms(text)
    poly, zero_mult = normalize(raw)
    return raw, poly, zero_mult


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}") from exc


def parse_width(text: str) -> Fraction:
    text = text.strip()
    try:
        if text.startswith("2^"):
            e = int(text[2:])
            return Fraction(1, 2 ** (-e)) if e < 0 else Fraction(2 ** e)
        if "*2^" in text:
            return Dyadic.parse(text).as_fraction()
        return parse_rational(text)
    except TrisepError:
        raise
    except ValueError as exc:
        raise ParseError(f"bad width {text!r}") from exc


def _approx_decimal(fr: Fraction) -> str:
    try:
        return f"{float(fr):.6e}"
    except OverflowError:
        # magnitude beyond float range: fall back to digit counting
        mag = abs(fr)
        digits = len(str(mag.numerator)) - len(str(mag.denominator))
        sign = "-" if fr < 0 else ""
        return f"{sign}~1e{digits}"


def _bound_payload(bound) -> dict:
    return {
        "kind": bound.kind,
        "log_bound": str(bound.log_bound),
        "log_bound_approx": _approx_decimal(bound.log_bound),
        "constants": bound.constants_used,
    }


# ---------------------------------------------------------------------------
# commands

def cmd_count(args) -> dict:
    _, poly, zero_mult = parse_poly_input(args.input)
    full = _reattach(poly, zero_mult)
    report = count_real_roots(full, max_bits=args.budget_bits)
    return {"input": format_terms(full), "report": report.to_dict()}


def cmd_isolate(args) -> dict:
    _, poly, zero_mult = parse_poly_input(args.input)
    width = parse_width(args.width)
    # reattach the origin root by isolating the unstripped polynomial
    full = _reattach(poly, zero_mult)
    report = isolate_real_roots(full, width)
    return {
        "input": format_terms(full),
        "requested_width": str(width),
        "roots": [
            {
                "lo": r.interval.lo.text(),
                "hi": r.interval.hi.text(),
                "certificate": r.certificate,
                "sign": r.root_sign,
            }
            for r in report.intervals
        ],
    }


def _reattach(poly: SparsePoly, zero_mult: int) -> SparsePoly:
    if zero_mult == 0:
        return poly
    terms = [(c, e + zero_mult) for c, e in poly.terms()]
    if isinstance(poly, Monomial):
        return Monomial(terms[0][0], terms[0][1])
    if isinstance(poly, Binomial):
        return Binomial(terms[0][0], terms[1][0], terms[0][1], terms[1][1])
    return Trinomial(terms[0][0], terms[1][0], terms[2][0],
                     terms[0][1], terms[1][1], terms[2][1])


def cmd_sep(args) -> dict:
    _, poly, zero_mult = parse_poly_input(args.input)
    full = _reattach(poly, zero_mult)
    if isinstance(full, Monomial):
        raise DomainError("separation bounds need at least two terms")
    if isinstance(full, Binomial):
        bound = separation_bound_binomial(full)
    elif args.kind == "real":
        bound = separation_bound_real(full)
    else:
        bound = separation_bound_complex(full)
    return {"input": format_terms(full), "bound": _bound_payload(bound)}


def cmd_compare(args) -> dict:
    x = SuccinctInt.parse(args.x)
    y = SuccinctInt.parse(args.y)
    ordering = compare_succinct(x, y, max_bits=args.budget_bits)
    return {"x": str(x), "y": str(y), "ordering": ordering.text}


def cmd_eval_sign(args) -> dict:
    _, poly, zero_mult = parse_poly_input(args.input)
    full = _reattach(poly, zero_mult)
    x = parse_rational(args.point)
    sgn = sign_at_rational(full, x)
    return {"input": format_terms(full), "point": str(x), "sign": sgn}


def cmd_bench(args) -> dict:
    shape_rows = []
    for gamma in (10 ** 3, 10 ** 6, 10 ** 9):
        f = Trinomial(-1, -1, 1, 0, gamma // 2, gamma)
        sparse = separation_bound_complex(f)
        mahler = mahler_log_bound(gamma, 1)
        s = f.s_param()
        ratio = abs(mahler) / s ** 3
        shape_rows.append({
            "gamma": str(gamma),
            "s": _approx_decimal(s),
            "mahler_log_bound": _approx_decimal(mahler),
            "sparse_log_bound": _approx_decimal(sparse.log_bound),
            "mahler_over_s3": f"{float(ratio):.3f}",
        })
    rng = random.Random(args.seed)
    corpus_rows = []
    for idx in range(args.corpus_size):
        while True:
            beta = rng.randint(1, 30)
            gamma = rng.randint(beta + 1, 40)
            a, b, c = (rng.choice([-1, 1]) * rng.randint(1, 50) for _ in range(3))
            try:
                f = Trinomial(a, b, c, 0, beta, gamma)
                break
            except DomainError:
                continue
        sparse = separation_bound_complex(f)
        dense = DensePoly.from_sparse(f)
        mahler = mahler_log_bound(dense.degree, dense.height)
        roots = complex_roots(dense, dps=40)
        measured, cluster = min_pairwise_distance(roots)
        valid = cluster or measured <= 0 or \
            (measured > 0 and _log_ge(measured, sparse.log_bound))
        corpus_rows.append({
            "index": idx,
            "poly": format_terms(f),
            "sparse_log_bound": _approx_decimal(sparse.log_bound),
            "mahler_log_bound": _approx_decimal(mahler),
            "measured_min_separation": f"{measured:.6e}",
            "sparse_bound_valid": bool(valid),
        })
    return {"seed": args.seed, "shape": shape_rows, "corpus": corpus_rows}


def _log_ge(value: float, log_bound: Fraction) -> bool:
    """value >= exp(log_bound), compared in log space."""
    import math

    if value <= 0:
        return False
    try:
        lb = float(log_bound)
    except OverflowError:
        lb = float("-inf") if log_bound < 0 else float("inf")
    return math.log(value) >= lb


# ---------------------------------------------------------------------------
# envelope and dispatch

def _emit(command: str, args, result: Optional[dict], error: Optional[dict],
          started: float) -> None:
    fmt = getattr(args, "format", "text")
    timing = round((time.monotonic() - started) * 1000.0, 3) \
        if getattr(args, "timing", False) else None
    if fmt == "structured":
        envelope = {
            "command": command,
            "options": _option_payload(args),
            "result": result,
            "error": error,
            "timing_ms": timing,
        }
        print(json.dumps(envelope, sort_keys=True, separators=(",", ":")))
        return
    if error is not None:
        print(f"error[{error['type']}]: {error['message']}", file=sys.stderr)
        return
    _emit_text(command, result)
    if timing is not None:
        print(f"time: {timing} ms")


def _option_payload(args) -> dict:
    keep = ("width", "kind", "budget_bits", "seed", "corpus_size")
    return {k: getattr(args, k) for k in keep if hasattr(args, k)}


def _emit_text(command: str, r: dict) -> None:
    if command == "count":
        rep = r["report"]
        print(f"input: {r['input']}")
        print(f"negative: {rep['negative']}  zero: {rep['zero']}  "
              f"positive: {rep['positive']}")
        print(f"positive_double: {rep['positive_double']}  "
              f"negative_double: {rep['negative_double']}  "
              f"zero_multiplicity: {rep['zero_multiplicity']}")
    elif command == "isolate":
        print(f"input: {r['input']}")
        print(f"requested_width: {r['requested_width']}")
        for root in r["roots"]:
            print(f"  [{root['lo']}, {root['hi']}]  "
                  f"{root['certificate']}  sign={root['sign']}")
    elif command == "sep":
        b = r["bound"]
        print(f"input: {r['input']}")
        print(f"kind: {b['kind']}")
        print(f"log_bound: {b['log_bound']}")
        print(f"log_bound_approx: {b['log_bound_approx']}")
        print(f"constants: {b['constants']}")
    elif command == "compare":
        print(r["ordering"])
    elif command == "eval-sign":
        print(r["sign"])
    elif command == "bench":
        print(f"seed: {r['seed']}")
        print("gamma        s          mahler_ln      sparse_ln      |mahler|/s^3")
        for row in r["shape"]:
            print(f"{row['gamma']:<12} {row['s']:<10} {row['mahler_log_bound']:<14} "
                  f"{row['sparse_log_bound']:<14} {row['mahler_over_s3']}")
        print("corpus:")
        for row in r["corpus"]:
            print(f"  #{row['index']} {row['poly']}  sparse={row['sparse_log_bound']} "
                  f"mahler={row['mahler_log_bound']} "
                  f"measured={row['measured_min_separation']} "
                  f"valid={row['sparse_bound_valid']}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="trisep",
        description="Exact real-root counting, isolation, separation bounds, "
                    "and succinct-integer comparison for integer trinomials.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "structured"),
                       default="text")
        p.add_argument("--budget-bits", type=int, dest="budget_bits",
                       default=PRECISION_CAP_DEFAULT,
                       help="precision cap for adaptive refinement")
        p.add_argument("--timing", action="store_true",
                       help="include wall time (breaks byte-determinism)")

    p = sub.add_parser("count", help="count distinct real roots")
    p.add_argument("input")
    common(p)

    p = sub.add_parser("isolate", help="isolate real roots in dyadic intervals")
    p.add_argument("input")
    p.add_argument("--width", default="2^-30")
    common(p)

    p = sub.add_parser("sep", help="certified root-separation lower bound")
    p.add_argument("input")
    p.add_argument("--kind", choices=("real", "complex"), default="real")
    common(p)

    p = sub.add_parser("compare", help="compare two succinct integers")
    p.add_argument("x")
    p.add_argument("y")
    common(p)

    p = sub.add_parser("eval-sign", help="exact sign at a rational point")
    p.add_argument("input")
    p.add_argument("point")
    common(p)

    p = sub.add_parser("bench", help="sparse vs degree-based bound comparison")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corpus-size", type=int, dest="corpus_size", default=8)
    common(p)

    return ap


_HANDLERS = {
    "count": cmd_count,
    "isolate": cmd_isolate,
    "sep": cmd_sep,
    "compare": cmd_compare,
    "eval-sign": cmd_eval_sign,
    "bench": cmd_bench,
}


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    started = time.monotonic()
    try:
        result = _HANDLERS[args.command](args)
    except ParseError as exc:
        _emit(args.command, args, None, {"type": "parse", "message": str(exc)},
              started)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        _emit(args.command, args, None, {"type": "budget", "message": str(exc)},
              started)
        return EXIT_BUDGET
    except DomainError as exc:
        _emit(args.command, args, None, {"type": "domain", "message": str(exc)},
              started)
        return EXIT_DOMAIN
    _emit(args.command, args, result, None, started)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
