"""Commutative semirings with exact carriers.

Every semiring is a plain value object bundling its operations.  Carriers are
Python ``bool``, ``int`` or :class:`fractions.Fraction` values (plus two
infinity sentinels for the tropical semirings); floats are never used, so
equality is exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import LiteralNotInSemiring, UnknownSemiring


class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __repr__(self):
        return "inf" if self.sign > 0 else "-inf"

    __str__ = __repr__

    def __reduce__(self):
        return (_infinity, (self.sign,))


POS_INF = _Infinity(+1)
NEG_INF = _Infinity(-1)


def _infinity(sign):
    return POS_INF if sign > 0 else NEG_INF


@dataclass(frozen=True)
class Semiring:
    name: str
    zero: object
    one: object
    add: Callable
    mul: Callable
    parse: Callable
    format: Callable
    is_field: bool = False
    is_exact: bool = True
    neg: Optional[Callable] = None
    inv: Optional[Callable] = None

    def __repr__(self):
        return f"Semiring({self.name})"

    def equals(self, a, b):
        return a is b or a == b

    def is_zero(self, a):
        return self.equals(a, self.zero)

    def sum(self, values):
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total

    def prod(self, values):
        total = self.one
        for v in values:
            total = self.mul(total, v)
        return total

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def literal(self, text):
        return self.parse(text)


def _fraction(text):
    text = str(text).strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise LiteralNotInSemiring(f"{text!r} is not a number") from None


def _fmt_fraction(x):
    return str(x)


def _parse_bool(text):
    t = str(text).strip().lower()
    if t in ("true", "false"):
        return t == "true"
    return _fraction(t) != 0


def _parse_nat(text):
    x = _fraction(text)
    if x.denominator != 1 or x < 0:
        raise LiteralNotInSemiring(f"{text!r} is not a natural number")
    return int(x)


def _parse_unit(text):
    x = _fraction(text)
    return min(max(x, Fraction(0)), Fraction(1))


def _parse_tropical(sentinel, forbidden):
    def parse(text):
        t = str(text).strip().lower()
        if t in ("inf", "+inf", "-inf"):
            value = NEG_INF if t == "-inf" else POS_INF
            if value is forbidden:
                raise LiteralNotInSemiring(f"{text!r} is not in this semiring")
            return value
        return _fraction(t)
    return parse


def _fmt_any(x):
    return str(x)


def _max_plus_add(a, b):
    if a is NEG_INF:
        return b
    if b is NEG_INF:
        return a
    return a if a >= b else b


def _max_plus_mul(a, b):
    if a is NEG_INF or b is NEG_INF:
        return NEG_INF
    return a + b


def _min_plus_add(a, b):
    if a is POS_INF:
        return b
    if b is POS_INF:
        return a
    return a if a <= b else b


def _min_plus_mul(a, b):
    if a is POS_INF or b is POS_INF:
        return POS_INF
    return a + b


BOOL = Semiring("bool", False, True, lambda a, b: a or b, lambda a, b: a and b,
                _parse_bool, lambda x: "1" if x else "0")
NAT = Semiring("nat", 0, 1, lambda a, b: a + b, lambda a, b: a * b,
               _parse_nat, _fmt_any)
RAT = Semiring("rat", Fraction(0), Fraction(1), lambda a, b: a + b, lambda a, b: a * b,
               _fraction, _fmt_fraction, is_field=True,
               neg=lambda a: -a, inv=lambda a: 1 / a)
MAX_PLUS = Semiring("maxplus", NEG_INF, Fraction(0), _max_plus_add, _max_plus_mul,
                    _parse_tropical(NEG_INF, POS_INF), _fmt_any)
MIN_PLUS = Semiring("minplus", POS_INF, Fraction(0), _min_plus_add, _min_plus_mul,
                    _parse_tropical(POS_INF, NEG_INF), _fmt_any)
VITERBI = Semiring("viterbi", Fraction(0), Fraction(1), max, lambda a, b: a * b,
                   _parse_unit, _fmt_fraction)
FUZZY = Semiring("fuzzy", Fraction(0), Fraction(1), max, min, _parse_unit, _fmt_fraction)

SEMIRINGS = {k.name: k for k in (BOOL, NAT, RAT, MAX_PLUS, MIN_PLUS, VITERBI, FUZZY)}


def make_semiring(name):
    """Look up a semiring by name: bool, nat, rat, maxplus, minplus, viterbi, fuzzy."""
    try:
        return SEMIRINGS[name.lower().replace("-", "")]
    except KeyError:
        raise UnknownSemiring(name) from None


@dataclass
class AxiomReport:
    checked: int
    violations: list

    @property
    def ok(self):
        return not self.violations


def check_axioms(k, samples):
    """Check the commutative semiring laws on every tuple drawn from ``samples``.

    Returns an :class:`AxiomReport` listing each violated law with a witness.
    """
    samples = list(samples)
    eq = k.equals
    add, mul, zero, one = k.add, k.mul, k.zero, k.one
    violations = []
    checked = 0

    def law(name, ok, *witness):
        nonlocal checked
        checked += 1
        if not ok:
            violations.append((name, witness))

    for a in samples:
        law("additive identity", eq(add(a, zero), a), a)
        law("multiplicative identity", eq(mul(a, one), a) and eq(mul(one, a), a), a)
        law("zero annihilates", eq(mul(a, zero), zero) and eq(mul(zero, a), zero), a)
        for b in samples:
            law("additive commutativity", eq(add(a, b), add(b, a)), a, b)
            law("multiplicative commutativity", eq(mul(a, b), mul(b, a)), a, b)
            for c in samples:
                law("additive associativity",
                    eq(add(add(a, b), c), add(a, add(b, c))), a, b, c)
                law("multiplicative associativity",
                    eq(mul(mul(a, b), c), mul(a, mul(b, c))), a, b, c)
                law("distributivity",
                    eq(mul(a, add(b, c)), add(mul(a, b), mul(a, c))), a, b, c)
    return AxiomReport(checked, violations)
