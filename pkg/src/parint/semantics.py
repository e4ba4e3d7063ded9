"""Reference semantics by direct enumeration.

The evaluator follows the satisfaction clauses literally: concatenation tries
every split into nonempty parts, shuffle tries every way of distributing the
positions of the trace, iteration tries every number of rounds up to the trace
length, and the concatenation/shuffle quantifiers enumerate instance subsets.
It is exponential and meant as ground truth for small traces.

Conventions shared with the compiler:

* a port atom or ``only(...)`` holds on a trace of length one whose
  interaction satisfies it, and ``true`` holds on every nonempty trace;
* ``!`` is complement within nonempty traces, ``|`` and ``&`` are union and
  intersection, at every level; on single interactions this coincides with
  :func:`letter_sat`;
* ``x = y`` and ``x != y`` do not look at the trace.
"""

import itertools
from collections.abc import Mapping

from .errors import UnboundVariable
from .formula import (
    And,
    Concat,
    Eq,
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
    WShuffle,
    free_variables,
)
from .errors import InstanceOutOfRange
from .interaction import as_counts


class Assignment(Mapping):
    """Maps variables to 1-based instance numbers."""

    def __init__(self, values=()):
        self._values = dict(values)

    def __getitem__(self, var):
        return self._values[var]

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def bind(self, var, instance):
        out = dict(self._values)
        out[var] = instance
        return Assignment(out)

    def check(self, counts):
        for var, j in self._values.items():
            if not 1 <= j <= counts[var.type_index]:
                raise InstanceOutOfRange(f"{var.name} = {j} is out of range")
        return self

    def __repr__(self):
        inner = ", ".join(f"{v.name}={j}" for v, j in self._values.items())
        return f"Assignment({inner})"


def letter_sat(letter, node, sigma=None):
    """Satisfaction of a letter formula by a single interaction."""
    sigma = sigma or {}
    if isinstance(node, Top):
        return True
    if isinstance(node, PortAtom):
        return node.resolve(sigma) in letter.port_set
    if isinstance(node, Only):
        return letter.port_set == frozenset(a.resolve(sigma) for a in node.args)
    if isinstance(node, Not):
        return not letter_sat(letter, node.child, sigma)
    if isinstance(node, Or):
        return letter_sat(letter, node.left, sigma) or letter_sat(letter, node.right, sigma)
    if isinstance(node, And):
        return letter_sat(letter, node.left, sigma) and letter_sat(letter, node.right, sigma)
    raise TypeError(f"{type(node).__name__} is not a letter formula")


def splits(w, k):
    """All ways to cut ``w`` into ``k`` consecutive nonempty blocks."""
    n = len(w)
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(w[bounds[t]:bounds[t + 1]] for t in range(k))


def shuffles(w, k):
    """All ways to distribute the positions of ``w`` over ``k`` nonempty blocks.

    Each surjective assignment of positions to blocks is produced once, so the
    same tuple of subwords may appear several times.
    """
    n = len(w)
    if k > n:
        return
    for labels in itertools.product(range(k), repeat=n):
        if len(set(labels)) != k:
            continue
        blocks = [[] for _ in range(k)]
        for a, b in zip(w, labels):
            blocks[b].append(a)
        yield tuple(tuple(b) for b in blocks)


class Evaluator:
    """Memoising reference evaluator for fixed instance counts.

    ``semiring`` is only needed for weighted formulas.
    """

    def __init__(self, counts=None, semiring=None):
        self.counts = counts
        self.k = semiring
        self._free = {}
        self._sat = {}
        self._wt = {}
        self._roots = []  # keeps memo keys (node ids) alive

    def _key(self, node, sigma, w):
        nid = id(node)
        fv = self._free.get(nid)
        if fv is None:
            fv = tuple(sorted(free_variables(node), key=lambda v: (v.name, v.type_index)))
            self._free[nid] = fv
            self._roots.append(node)
        vals = []
        for v in fv:
            try:
                vals.append(sigma[v])
            except KeyError:
                raise UnboundVariable(v.name) from None
        return (nid, tuple(vals), w)

    def _range(self, var):
        if self.counts is None:
            raise ValueError("instance counts are needed to evaluate quantifiers")
        return range(1, self.counts[var.type_index] + 1)

    # boolean

    def sat(self, node, sigma, w):
        w = tuple(w)
        key = self._key(node, sigma, w)
        hit = self._sat.get(key)
        if hit is None:
            hit = self._sat[key] = self._sat_raw(node, sigma, w)
        return hit

    def _sat_raw(self, node, sigma, w):
        if isinstance(node, Top):
            return True
        if isinstance(node, PortAtom):
            return len(w) == 1 and node.resolve(sigma) in w[0].port_set
        if isinstance(node, Only):
            return len(w) == 1 and letter_sat(w[0], node, sigma)
        if isinstance(node, Eq):
            return _lookup(sigma, node.left) == _lookup(sigma, node.right)
        if isinstance(node, Neq):
            return _lookup(sigma, node.left) != _lookup(sigma, node.right)
        if isinstance(node, Not):
            return not self.sat(node.child, sigma, w)
        if isinstance(node, Or):
            return self.sat(node.left, sigma, w) or self.sat(node.right, sigma, w)
        if isinstance(node, And):
            return self.sat(node.left, sigma, w) and self.sat(node.right, sigma, w)
        if isinstance(node, Concat):
            return any(self.sat(node.left, sigma, u) and self.sat(node.right, sigma, v)
                       for u, v in splits(w, 2))
        if isinstance(node, Shuffle):
            seen = set()
            for u, v in shuffles(w, 2):
                if (u, v) in seen:
                    continue
                seen.add((u, v))
                if self.sat(node.left, sigma, u) and self.sat(node.right, sigma, v):
                    return True
            return False
        if isinstance(node, Plus):
            return any(self.power_sat(node.child, sigma, w, nu)
                       for nu in range(1, len(w) + 1))
        if isinstance(node, Quantifier) and not node.weighted:
            return self._quantifier_sat(node, sigma, w)
        raise TypeError(f"{type(node).__name__} is not an unweighted formula")

    def power_sat(self, node, sigma, w, nu):
        """Does ``w`` split into ``nu`` nonempty blocks each satisfying ``node``?"""
        return any(all(self.sat(node, sigma, b) for b in blocks)
                   for blocks in splits(tuple(w), nu))

    def _quantifier_sat(self, node, sigma, w):
        var, body = node.var, node.body
        if node.mode == "plain":
            results = (self.sat(body, _bind(sigma, var, j), w) for j in self._range(var))
            return all(results) if node.universal else any(results)
        if node.universal:
            choices = [tuple(self._range(var))]
        else:
            choices = _nonempty_subsets(tuple(self._range(var)))
        blocks_of = splits if node.mode == "concat" else shuffles
        for idx in choices:
            seen = set()
            for blocks in blocks_of(w, len(idx)):
                if blocks in seen:
                    continue
                seen.add(blocks)
                if all(self.sat(body, _bind(sigma, var, j), b) for j, b in zip(idx, blocks)):
                    return True
        return False

    # weighted

    def weight(self, node, sigma, w):
        w = tuple(w)
        key = self._key(node, sigma, w)
        hit = self._wt.get(key)
        if hit is None:
            hit = self._wt[key] = self._weight_raw(node, sigma, w)
        return hit

    def _weight_raw(self, node, sigma, w):
        k = self.k
        if k is None:
            raise ValueError("a semiring is needed to evaluate weighted formulas")
        if isinstance(node, WConst):
            return k.prod(k.parse(f) for f in node.factors)
        if not node.weighted:
            return k.one if self.sat(node, sigma, w) else k.zero
        if isinstance(node, WOr):
            return k.add(self.weight(node.left, sigma, w), self.weight(node.right, sigma, w))
        if isinstance(node, WAnd):
            return k.mul(self.weight(node.left, sigma, w), self.weight(node.right, sigma, w))
        if isinstance(node, WConcat):
            return k.sum(k.mul(self.weight(node.left, sigma, u), self.weight(node.right, sigma, v))
                         for u, v in splits(w, 2))
        if isinstance(node, WShuffle):
            return k.sum(k.mul(self.weight(node.left, sigma, u), self.weight(node.right, sigma, v))
                         for u, v in shuffles(w, 2))
        if isinstance(node, WPlus):
            return k.sum(self.power_weight(node.child, sigma, w, nu)
                         for nu in range(1, len(w) + 1))
        if isinstance(node, Quantifier):
            return self._quantifier_weight(node, sigma, w)
        raise TypeError(f"{type(node).__name__} is not a weighted formula")

    def power_weight(self, node, sigma, w, nu):
        k = self.k
        return k.sum(k.prod(self.weight(node, sigma, b) for b in blocks)
                     for blocks in splits(tuple(w), nu))

    def _quantifier_weight(self, node, sigma, w):
        k = self.k
        var, body = node.var, node.body
        if node.mode == "plain":
            values = (self.weight(body, _bind(sigma, var, j), w) for j in self._range(var))
            return k.prod(values) if node.universal else k.sum(values)
        if node.universal:
            choices = [tuple(self._range(var))]
        else:
            choices = _nonempty_subsets(tuple(self._range(var)))
        blocks_of = splits if node.mode == "concat" else shuffles
        total = k.zero
        for idx in choices:
            for blocks in blocks_of(w, len(idx)):
                term = k.one
                for j, b in zip(idx, blocks):
                    term = k.mul(term, self.weight(body, _bind(sigma, var, j), b))
                    if k.is_zero(term):
                        break
                total = k.add(total, term)
        return total


def _lookup(sigma, var):
    try:
        return sigma[var]
    except KeyError:
        raise UnboundVariable(var.name) from None


def _bind(sigma, var, j):
    out = dict(sigma)
    out[var] = j
    return out


def _nonempty_subsets(items):
    for k in range(1, len(items) + 1):
        yield from itertools.combinations(items, k)


def _prepare(sigma, counts):
    sigma = dict(sigma or {})
    if counts is not None:
        for var, j in sigma.items():
            if isinstance(var, Variable) and not 1 <= j <= counts[var.type_index]:
                raise InstanceOutOfRange(f"{var.name} = {j} is out of range")
    return sigma


def trace_sat(w, node, sigma=None, counts=None):
    """Satisfaction of any unweighted formula on the nonempty trace ``w``."""
    if not w:
        return False
    counts = None if counts is None else as_counts(counts)
    sigma = _prepare(sigma, counts)
    return Evaluator(counts).sat(node, sigma, tuple(w))


def pil_sat(letter, node, sigma=None):
    return letter_sat(letter, node, sigma)


def epil_sat(w, node, sigma=None):
    return trace_sat(w, node, sigma)


def foeil_sat(counts, sigma, w, node):
    return trace_sat(w, node, sigma, counts)


def wepil_eval(w, node, semiring, sigma=None):
    return wfoeil_eval(None, sigma, w, node, semiring)


def wfoeil_eval(counts, sigma, w, node, semiring):
    """The weight of the nonempty trace ``w`` under ``node`` in ``semiring``."""
    if not w:
        return semiring.zero
    counts = None if counts is None else as_counts(counts)
    sigma = _prepare(sigma, counts)
    return Evaluator(counts, semiring).weight(node, sigma, tuple(w))
