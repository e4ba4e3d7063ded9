"""Formula trees for the interaction logics and their weighted variants.

Layers, from the inside out:

* letter formulas: ``true``, port atoms, ``only(...)`` and their boolean
  combinations, evaluated on a single interaction;
* trace formulas: concatenation ``;``, shuffle ``~``, iteration ``+`` and the
  trace-level boolean connectives;
* first-order formulas: quantifiers over component instances, including the
  concatenation and shuffle quantifiers, plus instance (in)equalities;
* weighted formulas: constants ``<k>`` and the ``w``-prefixed operators.
"""

from dataclasses import dataclass
from typing import Union

from .errors import (
    FreeVariable,
    MissingWeight,
    NegationOutsideFragment,
    RepeatedComponentType,
    VariableRebound,
    WeightedUnderUnweighted,
)


@dataclass(frozen=True)
class Variable:
    name: str
    type_index: int

    def __str__(self):
        return self.name


class Formula:
    """Base class of all formula nodes."""

    weighted = False
    children_names = ()

    def children(self):
        return tuple(getattr(self, n) for n in self.children_names)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class PortAtom(Formula):
    port: str
    type_index: int
    port_index: int
    ref: Union[Variable, int]

    def resolve(self, sigma):
        from .interaction import ConcretePort
        ref = self.ref
        if isinstance(ref, Variable):
            from .errors import UnboundVariable
            try:
                ref = sigma[ref]
            except KeyError:
                raise UnboundVariable(ref.name) from None
        return ConcretePort(self.type_index, ref, self.port_index, self.port)


@dataclass(frozen=True)
class Only(Formula):
    """``only(p1, ..., pm)``: the interaction is exactly ``{p1, ..., pm}``."""

    args: tuple


@dataclass(frozen=True)
class Eq(Formula):
    left: Variable
    right: Variable


@dataclass(frozen=True)
class Neq(Formula):
    left: Variable
    right: Variable


@dataclass(frozen=True)
class Not(Formula):
    child: Formula
    children_names = ("child",)


@dataclass(frozen=True)
class Binary(Formula):
    left: Formula
    right: Formula
    children_names = ("left", "right")
    symbol = "?"


@dataclass(frozen=True)
class Or(Binary):
    symbol = "|"


@dataclass(frozen=True)
class And(Binary):
    symbol = "&"


@dataclass(frozen=True)
class Concat(Binary):
    symbol = ";"


@dataclass(frozen=True)
class Shuffle(Binary):
    symbol = "~"


@dataclass(frozen=True)
class Plus(Formula):
    child: Formula
    children_names = ("child",)
    symbol = "+"


@dataclass(frozen=True)
class Quantifier(Formula):
    var: Variable
    body: Formula
    children_names = ("body",)
    keyword = "?"
    universal = False
    mode = "plain"  # "plain", "concat" or "shuffle"


@dataclass(frozen=True)
class Exists(Quantifier):
    keyword = "E"


@dataclass(frozen=True)
class Forall(Quantifier):
    keyword = "A"
    universal = True


@dataclass(frozen=True)
class ExistsConcat(Quantifier):
    keyword = "EC"
    mode = "concat"


@dataclass(frozen=True)
class ForallConcat(Quantifier):
    keyword = "AC"
    universal = True
    mode = "concat"


@dataclass(frozen=True)
class ExistsShuffle(Quantifier):
    keyword = "ES"
    mode = "shuffle"


@dataclass(frozen=True)
class ForallShuffle(Quantifier):
    keyword = "AS"
    universal = True
    mode = "shuffle"


# weighted layer

@dataclass(frozen=True)
class WConst(Formula):
    """The constant series; ``factors`` are literals multiplied in the semiring."""

    factors: tuple
    weighted = True


@dataclass(frozen=True)
class WOr(Binary):
    symbol = "w|"
    weighted = True


@dataclass(frozen=True)
class WAnd(Binary):
    symbol = "w&"
    weighted = True


@dataclass(frozen=True)
class WConcat(Binary):
    symbol = "w;"
    weighted = True


@dataclass(frozen=True)
class WShuffle(Binary):
    symbol = "w~"
    weighted = True


@dataclass(frozen=True)
class WPlus(Formula):
    child: Formula
    children_names = ("child",)
    symbol = "w+"
    weighted = True


@dataclass(frozen=True)
class WSum(Quantifier):
    keyword = "SE"
    weighted = True


@dataclass(frozen=True)
class WProd(Quantifier):
    keyword = "PA"
    universal = True
    weighted = True


@dataclass(frozen=True)
class WSumConcat(Quantifier):
    keyword = "SC"
    mode = "concat"
    weighted = True


@dataclass(frozen=True)
class WProdConcat(Quantifier):
    keyword = "PC"
    universal = True
    mode = "concat"
    weighted = True


@dataclass(frozen=True)
class WSumShuffle(Quantifier):
    keyword = "SS"
    mode = "shuffle"
    weighted = True


@dataclass(frozen=True)
class WProdShuffle(Quantifier):
    keyword = "PS"
    universal = True
    mode = "shuffle"
    weighted = True


QUANTIFIERS = {
    cls.keyword: cls
    for cls in (Exists, Forall, ExistsConcat, ForallConcat, ExistsShuffle, ForallShuffle,
                WSum, WProd, WSumConcat, WProdConcat, WSumShuffle, WProdShuffle)
}

FALSE = Not(Top())


# classification

def is_letter_formula(node):
    """True for formulas evaluated on a single interaction."""
    if isinstance(node, (Top, PortAtom, Only)):
        return True
    if isinstance(node, Not):
        return is_letter_formula(node.child)
    if isinstance(node, (Or, And)):
        return is_letter_formula(node.left) and is_letter_formula(node.right)
    return False


def is_positive_letter_formula(node):
    """Letter formulas built from port atoms and ``only`` with ``|`` and ``&``.

    Such formulas only accept traces of length one.
    """
    if isinstance(node, (PortAtom, Only)):
        return True
    if isinstance(node, (Or, And)):
        return is_positive_letter_formula(node.left) and is_positive_letter_formula(node.right)
    return False


def is_zeta(node):
    """Letter formulas and concatenations of them: the negatable fragment."""
    if is_letter_formula(node):
        return True
    return isinstance(node, Concat) and is_zeta(node.left) and is_zeta(node.right)


def is_weighted(node):
    return any(n.weighted for n in walk(node))


def walk(node):
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        if isinstance(n, Only):
            stack.extend(reversed(n.args))
        else:
            stack.extend(reversed(n.children()))


def free_variables(node):
    """The set of variables occurring free in ``node``."""
    if isinstance(node, PortAtom):
        return frozenset([node.ref]) if isinstance(node.ref, Variable) else frozenset()
    if isinstance(node, Only):
        out = frozenset()
        for a in node.args:
            out |= free_variables(a)
        return out
    if isinstance(node, (Eq, Neq)):
        return frozenset([node.left, node.right])
    if isinstance(node, Quantifier):
        return free_variables(node.body) - {node.var}
    out = frozenset()
    for c in node.children():
        out |= free_variables(c)
    return out


def is_sentence(node):
    return not free_variables(node)


def validate(node, *, sentence=False, relaxed_negation=False):
    """Check the syntactic restrictions and return ``node`` unchanged.

    * trace-level negation only applies to letter formulas, concatenations
      of them, or instance (in)equalities;
    * inside existential concatenation and shuffle quantifiers negation is
      further restricted to letter formulas and (in)equalities;
    * weighted operators never occur below unweighted ones;
    * a variable is never rebound inside its own scope;
    * with ``sentence=True`` no variable may be free.

    ``relaxed_negation`` lifts the first two rules; the compiler and the
    evaluator handle general trace-level complement.
    """
    _validate(node, (), False, frozenset(), relaxed_negation)
    if sentence:
        free = sorted(free_variables(node), key=lambda v: v.name)
        if free:
            raise FreeVariable(f"variable {free[0].name!r} is free", ())
    return node


def _validate(node, path, in_restricted, bound, relaxed):
    if isinstance(node, Not):
        child = node.child
        if child.weighted or is_weighted(child):
            raise WeightedUnderUnweighted("negation of a weighted formula", path)
        if not relaxed:
            if in_restricted:
                ok = is_letter_formula(child) or isinstance(child, (Eq, Neq))
            else:
                ok = is_zeta(child) or isinstance(child, (Eq, Neq))
            if not ok:
                raise NegationOutsideFragment("negation outside the allowed fragment", path)
    if not node.weighted:
        for name in node.children_names:
            if is_weighted(getattr(node, name)):
                raise WeightedUnderUnweighted(
                    f"weighted formula under {type(node).__name__}", path + (name,))
    if isinstance(node, Quantifier):
        if node.var.name in bound:
            raise VariableRebound(f"variable {node.var.name!r} bound twice", path)
        restricted = in_restricted or (not node.universal and node.mode != "plain")
        _validate(node.body, path + ("body",), restricted, bound | {node.var.name}, relaxed)
        return
    for name in node.children_names:
        _validate(getattr(node, name), path + (name,), in_restricted, bound, relaxed)


def make_only(args, sig=None, weighted=False):
    """Build ``only(args)``; the weighted form multiplies in the port weights.

    Two arguments referring to the same instance of the same type (same
    variable or same constant) are rejected: such a set is never an
    interaction.
    """
    args = tuple(args)
    seen = set()
    for a in args:
        key = (a.type_index, a.ref)
        if key in seen:
            raise RepeatedComponentType(
                f"two ports of the same instance in only(): {a.port}")
        seen.add(key)
    node = Only(args)
    if not weighted:
        return node
    factors = []
    for a in args:
        w = sig.weight(a.port) if sig is not None else None
        if w is None:
            raise MissingWeight(f"port {a.port!r} has no declared weight")
        factors.append(str(w))
    return WAnd(WConst(tuple(factors)), node)
