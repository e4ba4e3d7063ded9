"""Random signatures and formulas for property and acceptance tests."""

import random

from parint.formula import (
    FALSE,
    And,
    Concat,
    Eq,
    Exists,
    ExistsConcat,
    ExistsShuffle,
    Forall,
    ForallConcat,
    ForallShuffle,
    Neq,
    Not,
    Only,
    Or,
    Plus,
    PortAtom,
    Quantifier,
    Shuffle,
    Top,
    Variable,
    WAnd,
    WConcat,
    WConst,
    WOr,
    WPlus,
    WProd,
    WProdConcat,
    WProdShuffle,
    WShuffle,
    WSum,
    WSumConcat,
    WSumShuffle,
    validate,
)
from parint.interaction import ComponentSignature, InstanceCounts, alphabet_size

# keeps exhaustive checks over all traces of length <= 3 within budget
MAX_ALPHABET = 35

PORT_NAMES = "abcd"


def random_signature(rng, max_types=2, max_ports=2, max_r=2, max_alphabet=MAX_ALPHABET):
    """A signature and instance counts whose alphabet has at most ``max_alphabet`` letters."""
    while True:
        n = rng.randint(1, max_types)
        types, names = {}, iter(PORT_NAMES)
        for i in range(n):
            types[f"T{i}"] = [next(names) for _ in range(rng.randint(1, max_ports))]
        sig = ComponentSignature.build(types)
        counts = InstanceCounts(tuple(rng.randint(1, max_r) for _ in range(n)), sig)
        if alphabet_size(sig, counts) <= max_alphabet:
            return sig, counts


class _Gen:
    def __init__(self, rng, sig, counts, quantifiers=True):
        self.rng = rng
        self.sig = sig
        self.counts = counts
        self.quantifiers = quantifiers
        self.fresh = 0

    def ref(self, t, scope):
        vars_ = [v for v in scope if v.type_index == t]
        if vars_ and self.rng.random() < 0.8:
            return self.rng.choice(vars_)
        return self.rng.randint(1, self.counts[t])

    def atom(self, scope):
        t = self.rng.randint(1, len(self.sig))
        ports = self.sig.ports_of(t)
        k = self.rng.randrange(len(ports))
        return PortAtom(ports[k], t, k, self.ref(t, scope))

    def only(self, scope):
        args, used = [], set()
        for t in range(1, len(self.sig) + 1):
            if self.rng.random() < 0.6 or (t == len(self.sig) and not args):
                ports = self.sig.ports_of(t)
                k = self.rng.randrange(len(ports))
                ref = self.ref(t, scope)
                if (t, ref) not in used:
                    used.add((t, ref))
                    args.append(PortAtom(ports[k], t, k, ref))
        return Only(tuple(args))

    def letter(self, scope, depth):
        r = self.rng.random()
        if depth <= 0 or r < 0.45:
            u = self.rng.random()
            if u < 0.65:
                return self.atom(scope)
            if u < 0.85:
                return self.only(scope)
            return Top()
        if r < 0.6:
            return Not(self.letter(scope, depth - 1))
        op = self.rng.choice((Or, And))
        return op(self.letter(scope, depth - 1), self.letter(scope, depth - 1))

    def zeta(self, scope, depth):
        if depth <= 0 or self.rng.random() < 0.5:
            return self.letter(scope, depth)
        return Concat(self.zeta(scope, depth - 1), self.zeta(scope, depth - 1))

    def equality(self, scope):
        by_type = {}
        for v in scope:
            by_type.setdefault(v.type_index, []).append(v)
        pairs = [vs for vs in by_type.values() if len(vs) >= 2]
        if not pairs:
            return None
        a, b = self.rng.sample(self.rng.choice(pairs), 2)
        return self.rng.choice((Eq, Neq))(a, b)

    def formula(self, scope, depth, restricted=False):
        rng = self.rng
        if depth <= 0:
            eq = self.equality(scope) if rng.random() < 0.15 else None
            return eq or self.letter(scope, 0)
        r = rng.random()
        if self.quantifiers and r < 0.3:
            return self.quantifier(scope, depth, restricted)
        if r < 0.4:
            return self.letter(scope, depth)
        if r < 0.5:
            if restricted:
                return Not(self.letter(scope, depth - 1))
            return Not(self.zeta(scope, depth - 1))
        if r < 0.6:
            return Plus(self.formula(scope, depth - 1, restricted))
        op = rng.choice((Or, And, Concat, Shuffle))
        return op(self.formula(scope, depth - 1, restricted),
                  self.formula(scope, depth - 1, restricted))

    def quantifier(self, scope, depth, restricted):
        cls = self.rng.choice((Exists, Forall, ExistsConcat, ForallConcat,
                               ExistsShuffle, ForallShuffle))
        self.fresh += 1
        var = Variable(f"x{self.fresh}", self.rng.randint(1, len(self.sig)))
        inner = restricted or (not cls.universal and cls.mode != "plain")
        return cls(var, self.formula(scope + (var,), depth - 1, inner))


def random_sentence(rng, sig, counts, depth=3):
    """A validated FOEIL sentence of nesting depth at most ``depth``."""
    g = _Gen(rng, sig, counts)
    node = g.quantifier((), depth, False) if rng.random() < 0.7 else g.formula((), depth)
    return validate(node, sentence=True)


def random_epil(rng, sig, counts, depth=2):
    """A ground (quantifier-free) formula."""
    g = _Gen(rng, sig, counts, quantifiers=False)
    return validate(g.formula((), depth), sentence=True)


_WEIGHTED = {
    Or: WOr, And: WAnd, Concat: WConcat, Shuffle: WShuffle,
    Exists: WSum, Forall: WProd, ExistsConcat: WSumConcat, ForallConcat: WProdConcat,
    ExistsShuffle: WSumShuffle, ForallShuffle: WProdShuffle,
}


def lift(node, weight=None):
    """Turn an unweighted formula into a weighted one, operator for operator.

    Letter formulas, negations and (in)equalities stay unweighted leaves;
    ``weight(leaf)`` may return a literal to scale the leaf with.
    """
    cls = type(node)
    if cls is Plus:
        return WPlus(lift(node.child, weight))
    if isinstance(node, Quantifier):
        return _WEIGHTED[cls](node.var, lift(node.body, weight))
    if cls in (Concat, Shuffle) or (cls in (Or, And) and not _is_leaf(node)):
        return _WEIGHTED[cls](lift(node.left, weight), lift(node.right, weight))
    lit = weight(node) if weight else None
    return node if lit is None else WAnd(WConst((lit,)), node)


def _is_leaf(node):
    from parint.formula import is_letter_formula
    return is_letter_formula(node)


def random_weights(rng, literals=("0", "1", "2", "3")):
    """A leaf-weighting function for :func:`lift`."""
    return lambda _leaf: rng.choice(literals) if rng.random() < 0.7 else None


def random_weighted_sentence(rng, sig, counts, depth=3, literals=("0", "1", "2", "3")):
    return lift(random_sentence(rng, sig, counts, depth), random_weights(rng, literals))


__all__ = [
    "FALSE", "MAX_ALPHABET", "lift", "random_epil", "random_signature", "random_sentence",
    "random_weighted_sentence", "random_weights",
]
