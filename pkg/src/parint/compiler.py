"""Translate formulas into automata over the interaction alphabet.

Unweighted formulas become :class:`~parint.automata.Nfa` objects accepting
exactly their satisfying nonempty traces; weighted formulas become
:class:`~parint.wfa.Wfa` objects with the same behaviour on nonempty traces.
Quantifiers are unfolded over the concrete instances, with the assignment of
bound variables threaded through the recursion.  Sub-results are cached on
(node, values of its free variables).
"""

import itertools
from dataclasses import dataclass, field

from . import automata as fa
from . import wfa as wa
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
    WAnd,
    WConcat,
    WConst,
    WOr,
    WPlus,
    WShuffle,
    free_variables,
    is_positive_letter_formula,
    is_sentence,
)
from .interaction import InteractionAlphabet, as_counts
from .semiring import RAT


@dataclass
class CompileStats:
    """Counters collected while compiling."""

    subset_branches: list = field(default_factory=list)
    nodes: int = 0
    cache_hits: int = 0

    @property
    def total_subset_branches(self):
        return sum(n for _, n in self.subset_branches)


class Compiler:
    """Compiles formulas for one signature and one choice of instance counts."""

    def __init__(self, sig, counts, cap=None, cache=True):
        self.sig = sig
        self.counts = as_counts(counts, sig)
        self.alpha = InteractionAlphabet(sig, self.counts, cap)
        self.alphabet = self.alpha.letters
        self.stats = CompileStats()
        self._use_cache = cache
        self._cache = {}
        self._wcache = {}
        self._free = {}
        self._keep = []
        self._all = frozenset(range(len(self.alphabet)))

    # helpers

    def _key(self, node, sigma):
        nid = id(node)
        fv = self._free.get(nid)
        if fv is None:
            fv = tuple(sorted(free_variables(node), key=lambda v: (v.name, v.type_index)))
            self._free[nid] = fv
            self._keep.append(node)
        try:
            return (nid, tuple(sigma[v] for v in fv))
        except KeyError as exc:
            raise UnboundVariable(exc.args[0].name) from None

    def _instances(self, var):
        return range(1, self.counts[var.type_index] + 1)

    def letters(self, node, sigma):
        """Indices of the interactions satisfying a letter formula.

        For formulas without ``!`` and ``true`` these are exactly the
        one-letter traces the formula accepts."""
        if isinstance(node, Top):
            return self._all
        if isinstance(node, PortAtom):
            port = node.resolve(sigma)
            if port.instance > self.counts[port.type_index]:
                return frozenset()
            return self.alpha.containing(port)
        if isinstance(node, Only):
            idx = self.alpha.lookup(a.resolve(sigma) for a in node.args)
            return frozenset() if idx is None else frozenset([idx])
        if isinstance(node, Not):
            return self._all - self.letters(node.child, sigma)
        if isinstance(node, Or):
            return self.letters(node.left, sigma) | self.letters(node.right, sigma)
        if isinstance(node, And):
            return self.letters(node.left, sigma) & self.letters(node.right, sigma)
        raise TypeError(f"{type(node).__name__} is not a letter formula")

    # unweighted

    def compile(self, node, sigma=None):
        sigma = dict(sigma or {})
        return self._compile(node, sigma)

    def _compile(self, node, sigma):
        key = self._key(node, sigma)
        if self._use_cache:
            hit = self._cache.get(key)
            if hit is not None:
                self.stats.cache_hits += 1
                return hit
        self.stats.nodes += 1
        out = self._build(node, sigma)
        if self._use_cache:
            self._cache[key] = out
        return out

    def _build(self, node, sigma):
        alphabet = self.alphabet
        if isinstance(node, Top):
            return fa.universal_nfa(alphabet)
        if is_positive_letter_formula(node):
            return fa.letter_nfa(alphabet, self.letters(node, sigma), type(node).__name__)
        if isinstance(node, (Eq, Neq)):
            same = _get(sigma, node.left) == _get(sigma, node.right)
            holds = same if isinstance(node, Eq) else not same
            return fa.universal_nfa(alphabet) if holds else fa.empty_nfa(alphabet)
        if isinstance(node, Not):
            child = self._compile(node.child, sigma)
            return fa.trim(fa.complement_plus(fa.determinize_complete(child)))
        if isinstance(node, Or):
            return fa.union(self._compile(node.left, sigma), self._compile(node.right, sigma))
        if isinstance(node, And):
            return fa.trim(fa.intersection(self._compile(node.left, sigma),
                                           self._compile(node.right, sigma)))
        if isinstance(node, Concat):
            return fa.concat(self._compile(node.left, sigma), self._compile(node.right, sigma))
        if isinstance(node, Shuffle):
            return fa.shuffle(self._compile(node.left, sigma), self._compile(node.right, sigma))
        if isinstance(node, Plus):
            return fa.iterate_plus(self._compile(node.child, sigma))
        if isinstance(node, Quantifier) and not node.weighted:
            return self._quantifier(node, sigma)
        raise TypeError(f"{type(node).__name__} is not an unweighted formula")

    def _branch(self, node, sigma, j):
        s = dict(sigma)
        s[node.var] = j
        return self._compile(node.body, s)

    def _quantifier(self, node, sigma):
        instances = list(self._instances(node.var))
        parts = [self._branch(node, sigma, j) for j in instances]
        if node.mode == "plain":
            out = parts[0]
            for p in parts[1:]:
                out = fa.intersection(out, p) if node.universal else fa.union(out, p)
            return fa.trim(out)
        chain = fa.concat if node.mode == "concat" else fa.shuffle
        if node.universal:
            subsets = [tuple(range(len(instances)))]
        else:
            subsets = _nonempty_subsets(len(instances))
            self.stats.subset_branches.append((node.keyword, len(subsets)))
        out = None
        for subset in subsets:
            branch = parts[subset[0]]
            for t in subset[1:]:
                branch = chain(branch, parts[t])
            out = branch if out is None else fa.union(out, branch)
        return fa.trim(out)

    # weighted

    def compile_weighted(self, node, semiring, sigma=None):
        sigma = dict(sigma or {})
        return wa.trim_w(wa.make_proper(self._wcompile(node, semiring, sigma)))

    def _wcompile(self, node, k, sigma):
        key = (k.name,) + self._key(node, sigma)
        if self._use_cache:
            hit = self._wcache.get(key)
            if hit is not None:
                self.stats.cache_hits += 1
                return hit
        self.stats.nodes += 1
        out = self._wbuild(node, k, sigma)
        if self._use_cache:
            self._wcache[key] = out
        return out

    def _wbuild(self, node, k, sigma):
        if isinstance(node, WConst):
            value = k.prod(k.parse(f) for f in node.factors)
            return wa.constant(self.alphabet, k, value)
        if not node.weighted:
            dfa = fa.determinize_complete(self._compile(node, sigma))
            return wa.characteristic(dfa, k)
        if isinstance(node, WOr):
            return wa.w_sum(self._wcompile(node.left, k, sigma),
                            self._wcompile(node.right, k, sigma))
        if isinstance(node, WAnd):
            return wa.w_hadamard(self._wcompile(node.left, k, sigma),
                                 self._wcompile(node.right, k, sigma))
        if isinstance(node, WConcat):
            return wa.w_cauchy(self._wcompile(node.left, k, sigma),
                               self._wcompile(node.right, k, sigma))
        if isinstance(node, WShuffle):
            return wa.w_shuffle(self._wcompile(node.left, k, sigma),
                                self._wcompile(node.right, k, sigma))
        if isinstance(node, WPlus):
            return wa.w_plus(self._wcompile(node.child, k, sigma))
        if isinstance(node, Quantifier):
            return self._wquantifier(node, k, sigma)
        raise TypeError(f"{type(node).__name__} is not a weighted formula")

    def _wquantifier(self, node, k, sigma):
        instances = list(self._instances(node.var))
        parts = []
        for j in instances:
            s = dict(sigma)
            s[node.var] = j
            parts.append(self._wcompile(node.body, k, s))
        if node.mode == "plain":
            out = parts[0]
            for p in parts[1:]:
                out = wa.w_hadamard(out, p) if node.universal else wa.w_sum(out, p)
            return out
        chain = wa.w_cauchy if node.mode == "concat" else wa.w_shuffle
        if node.universal:
            subsets = [tuple(range(len(instances)))]
        else:
            subsets = _nonempty_subsets(len(instances))
            self.stats.subset_branches.append((node.keyword, len(subsets)))
        out = None
        for subset in subsets:
            branch = parts[subset[0]]
            for t in subset[1:]:
                branch = chain(branch, parts[t])
            out = branch if out is None else wa.w_sum(out, branch)
        return wa.trim_w(out)


def _get(sigma, var):
    try:
        return sigma[var]
    except KeyError:
        raise UnboundVariable(var.name) from None


def _nonempty_subsets(n):
    out = []
    for size in range(1, n + 1):
        out.extend(itertools.combinations(range(n), size))
    return out


# module-level entry points

def compile_foeil(node, sig, counts, sigma=None, cap=None):
    """Automaton accepting the nonempty traces satisfying ``node``."""
    return Compiler(sig, counts, cap).compile(node, sigma)


def compile_wfoeil(node, sig, counts, semiring, sigma=None, cap=None):
    """Weighted automaton whose behaviour on nonempty traces is ``node``'s series."""
    return Compiler(sig, counts, cap).compile_weighted(node, semiring, sigma)


def _require_sentence(*nodes):
    from .errors import FreeVariable
    for n in nodes:
        if not is_sentence(n):
            names = sorted(v.name for v in free_variables(n))
            raise FreeVariable(f"variable {names[0]!r} is free", ())


def decide_sat(node, sig, counts, cap=None):
    """Is some nonempty trace a model of the sentence?"""
    _require_sentence(node)
    return not fa.is_empty(compile_foeil(node, sig, counts, cap=cap))


def decide_valid(node, sig, counts, cap=None):
    """Is every nonempty trace a model of the sentence?"""
    _require_sentence(node)
    return fa.is_universal_plus(compile_foeil(node, sig, counts, cap=cap))


def decide_equiv(left, right, sig, counts, cap=None):
    """Do the two sentences have the same models?"""
    _require_sentence(left, right)
    c = Compiler(sig, counts, cap)
    return fa.language_equivalent(c.compile(left), c.compile(right))


def equiv_witness(left, right, sig, counts, cap=None):
    """A trace distinguishing the two formulas, or None when equivalent."""
    c = Compiler(sig, counts, cap)
    word = fa.find_difference(c.compile(left), c.compile(right))
    return None if word is None else [c.alphabet[x] for x in word]


def decide_wequiv(left, right, sig, counts, semiring=RAT, cap=None):
    """Do the two weighted sentences define the same series (over a field)?"""
    _require_sentence(left, right)
    c = Compiler(sig, counts, cap)
    return wa.equivalent_over_field(c.compile_weighted(left, semiring),
                                    c.compile_weighted(right, semiring))


def wequiv_witness(left, right, sig, counts, semiring=RAT, cap=None):
    c = Compiler(sig, counts, cap)
    word = wa.find_weight_difference(c.compile_weighted(left, semiring),
                                     c.compile_weighted(right, semiring))
    return None if word is None else [c.alphabet[x] for x in word]
