"""Certified rational constants for the separation bounds.

Every constant is an exact Fraction and every derivation step is a
non-strict over-approximation, so enlarging a constant keeps its bound
valid.  The chain starts from the Baker-Wustholz lower bound for nonzero
linear forms in logarithms of rationals,

    |Lambda| >= exp(-C(n) * t * s^n),    C(n) = 18 (n+1)! n^(n+1) 32^(n+2) log(2n),

with log(2n) replaced by a certified rational upper bound (soundness needs
an upper bound; precision is irrelevant).  The remaining constants absorb
the elementary slack factors of the derivation chain; each ledger entry
records its own step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Union

from .bigmath import ln_upper
from .errors import DomainError

# rational brackets of ln 2, used to convert bit lengths to natural logs
LN2_UB = Fraction(693148, 10 ** 6)
LN2_LB = Fraction(693147, 10 ** 6)


def log_upper(n: int) -> Fraction:
    """Certified rational upper bound on ln(n) for an integer n >= 1."""
    if n < 1:
        raise DomainError("log_upper requires n >= 1")
    if n == 1:
        return Fraction(0)
    bits = n.bit_length()
    if n == 1 << (bits - 1):
        return (bits - 1) * LN2_UB
    return bits * LN2_UB


def clamp_one(x: Union[Fraction, int]) -> Fraction:
    x = Fraction(x)
    return x if x >= 1 else Fraction(1)


@lru_cache(maxsize=None)
def baker_constant(n: int) -> Fraction:
    """C(n) of the Baker-Wustholz theorem, over-approximated exactly."""
    if n < 1:
        raise DomainError("baker_constant requires n >= 1")
    log2n_ub = ln_upper(2 * n, 96)
    return 18 * factorial(n + 1) * n ** (n + 1) * 32 ** (n + 2) * log2n_ub


@dataclass(frozen=True)
class LedgerEntry:
    name: str
    value: Fraction
    note: str


class ConstantLedger:
    """Named constants with their derivation notes, all exact rationals."""

    def __init__(self):
        c_baker_2 = baker_constant(2)
        c1 = c_baker_2 + 2
        c2 = 4 * c1 + 1
        c3 = c2
        c4 = c2 + 9
        c5 = Fraction(4)
        c7 = Fraction(3)
        c8 = Fraction(2)
        c6 = max(c4, c7 + c8)
        c_real = c2 + 7
        c_complex = c6
        self._entries: Dict[str, LedgerEntry] = {}
        add = self._add
        add("C_baker_2", c_baker_2,
            "Baker-Wustholz C(2) = 18*3!*2^3*32^4*log 4 with log 4 replaced "
            "by a certified rational upper bound.")
        add("C1", c1,
            "floor for a two-term binomial at a rational point: the linear-form "
            "floor exp(-C(2)ts^2) survives the case split at cost exp(-t) and a "
            "convexity factor 1-1/e; both absorbed via t <= ts^2 and "
            "ln(e/(e-1)) <= ts^2 for s,t >= 1.")
        add("C2", c2,
            "floor for the trinomial value at its positive critical point: apply "
            "the C1 floor to gamma*f(m) with operand logs <= 2s and exponent "
            "logs <= s, giving C1*s*(2s)^2 = 4*C1*s^3; +1 absorbs the division "
            "by gamma <= e^s.")
        add("C3", c3,
            "complex critical values: either reduce to the real C2 case or a "
            "chord bound 2(1-cos theta) >= 1/gamma^2 gives exp(-s), which C2 "
            "dominates.")
        add("C4", c4,
            "squarefree complex pairs: divide the C3 floor by "
            "e*b^2*beta*(1+cot(pi/gamma)) <= e^(5s) (+5); the reciprocal "
            "transform costs a factor (1+e^s)^-2, absorbed by +4 since "
            "2s+2 <= 4s^3 for s >= 1.")
        add("C5", c5,
            "degenerate complex cases (derivative zero at the origin, or the "
            "pair already far apart): direct bound exp(-4s).")
        add("C7", c7,
            "spacing of the derivative's nonzero roots: (1/|c*gamma|) times the "
            "unit-circle chord >= e^(-3s).")
        add("C8", c8,
            "growth factor [1+cot(pi/gamma)][1+cot(pi/(2gamma-4))]/4 <= "
            "gamma^2 = e^(2s).")
        add("C6", c6,
            "all complex pairs: squarefree case C4; repeated-root case gives "
            "exp(-(C7+C8)s); take the max.")
        add("C_real", c_real,
            "distinct real roots: same-sign pairs cost C2 + 3 (divide by "
            "b^2*beta <= e^(3s)); the reciprocal case adds 4; zero/opposite-sign "
            "pairs only need C >= 2.")
        add("C_complex", c_complex, "alias of C6 for the public API.")

    def _add(self, name: str, value: Fraction, note: str):
        self._entries[name] = LedgerEntry(name, value, note)

    def __getitem__(self, name: str) -> Fraction:
        return self._entries[name].value

    def note(self, name: str) -> str:
        return self._entries[name].note

    def entries(self) -> Dict[str, LedgerEntry]:
        return dict(self._entries)

    def __iter__(self):
        return iter(self._entries.values())


LEDGER = ConstantLedger()
