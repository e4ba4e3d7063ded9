"""Weighted finite automata over a commutative semiring.

``delta[p]`` maps a letter index to ``{q: weight}``; zero weights are never
stored.  The behaviour of a word is ``in . M(a1) ... M(an) . ter``.
Combinators follow the usual constructions and agree with the series
operations on nonempty words; the empty word is not meaningful.
"""

import json
from collections import deque

from .automata import Nfa
from .errors import (
    AlphabetMismatch,
    NotAField,
    NotDeterministic,
    SemiringMismatch,
    UnknownLetter,
)
from .semiring import make_semiring


class Wfa:
    __slots__ = ("alphabet", "semiring", "n_states", "initial", "final", "delta", "_index")

    def __init__(self, alphabet, semiring, n_states, initial, final, delta):
        self.alphabet = tuple(alphabet)
        self.semiring = semiring
        self.n_states = n_states
        self.initial = list(initial)
        self.final = list(final)
        self.delta = list(delta)
        self._index = None

    @property
    def letter_index(self):
        if self._index is None:
            self._index = {a: i for i, a in enumerate(self.alphabet)}
        return self._index

    def encode(self, word):
        idx = self.letter_index
        out = []
        for a in word:
            try:
                out.append(idx[a])
            except KeyError:
                raise UnknownLetter(str(a)) from None
        return out

    def transitions(self):
        for p, row in enumerate(self.delta):
            for x in sorted(row):
                for q in sorted(row[x]):
                    yield p, x, q, row[x][q]

    def n_transitions(self):
        return sum(len(t) for row in self.delta for t in row.values())

    def behavior(self, word):
        """The weight of ``word`` (a sequence of letters)."""
        return self.behavior_indices(self.encode(word))

    def behavior_indices(self, xs):
        vec = self._start_vector()
        for x in xs:
            vec = self._step(vec, x)
            if not vec:
                return self.semiring.zero
        return self._finish(vec)

    def behaviors(self, max_len):
        """Yield ``(word, weight)`` for every word of length 1..max_len.

        Forward vectors are shared between words with a common prefix.
        """
        level = [((), self._start_vector())]
        for _ in range(max_len):
            nxt = []
            for prefix, vec in level:
                for x, letter in enumerate(self.alphabet):
                    v = self._step(vec, x) if vec else vec
                    word = prefix + (letter,)
                    yield word, self._finish(v) if v else self.semiring.zero
                    nxt.append((word, v))
            level = nxt

    def _start_vector(self):
        k = self.semiring
        return {q: v for q, v in enumerate(self.initial) if not k.is_zero(v)}

    def _step(self, vec, x):
        k = self.semiring
        nxt = {}
        for p in sorted(vec):
            vp = vec[p]
            for q, wt in self.delta[p].get(x, {}).items():
                term = k.mul(vp, wt)
                nxt[q] = k.add(nxt[q], term) if q in nxt else term
        return {q: v for q, v in nxt.items() if not k.is_zero(v)}

    def _finish(self, vec):
        k = self.semiring
        total = k.zero
        for q in sorted(vec):
            total = k.add(total, k.mul(vec[q], self.final[q]))
        return total

    def __repr__(self):
        return (f"Wfa({self.semiring.name}, states={self.n_states}, "
                f"transitions={self.n_transitions()})")


def _check(a, b):
    if a.alphabet is not b.alphabet and a.alphabet != b.alphabet:
        raise AlphabetMismatch("weighted automata are over different alphabets")
    if a.semiring.name != b.semiring.name:
        raise SemiringMismatch(f"{a.semiring.name} vs {b.semiring.name}")


def _add_to(row, q, w, k):
    if k.is_zero(w):
        return
    if q in row:
        s = k.add(row[q], w)
        if k.is_zero(s):
            del row[q]
        else:
            row[q] = s
    else:
        row[q] = w


def constant(alphabet, semiring, value):
    """One state with initial weight ``value``, unit loops and unit exit."""
    k = semiring
    if k.is_zero(value):
        return Wfa(alphabet, k, 0, [], [], [])
    row = {x: {0: k.one} for x in range(len(alphabet))}
    return Wfa(alphabet, k, 1, [value], [k.one], [row])


def characteristic(n, semiring):
    """The 0/1 series of a deterministic automaton."""
    if not n.is_deterministic():
        raise NotDeterministic("the characteristic series needs a deterministic automaton")
    k = semiring
    delta = [{x: {next(iter(t)): k.one} for x, t in row.items()} for row in n.delta]
    initial = [k.one if q in n.initial else k.zero for q in range(n.n_states)]
    final = [k.one if q in n.final else k.zero for q in range(n.n_states)]
    return trim_w(Wfa(n.alphabet, k, n.n_states, initial, final, delta))


def trim_w(a):
    """Drop states that carry no weight from an initial state to a final one."""
    k = a.semiring
    reach = set(q for q, v in enumerate(a.initial) if not k.is_zero(v))
    queue = deque(sorted(reach))
    while queue:
        q = queue.popleft()
        for targets in a.delta[q].values():
            for t in targets:
                if t not in reach:
                    reach.add(t)
                    queue.append(t)
    back = [set() for _ in range(a.n_states)]
    for p in reach:
        for targets in a.delta[p].values():
            for t in targets:
                back[t].add(p)
    live = set(q for q in reach if not k.is_zero(a.final[q]))
    queue = deque(sorted(live))
    while queue:
        q = queue.popleft()
        for p in back[q]:
            if p not in live:
                live.add(p)
                queue.append(p)
    keep = sorted(live)
    if len(keep) == a.n_states:
        return a
    new = {q: i for i, q in enumerate(keep)}
    delta = []
    for q in keep:
        row = {}
        for x, targets in a.delta[q].items():
            t = {new[s]: w for s, w in targets.items() if s in new}
            if t:
                row[x] = t
        delta.append(row)
    return Wfa(a.alphabet, k, len(keep), [a.initial[q] for q in keep],
               [a.final[q] for q in keep], delta)


def is_proper(a):
    k = a.semiring
    starts = [q for q, v in enumerate(a.initial) if not k.is_zero(v)]
    if len(starts) != 1:
        return False
    s = starts[0]
    if not k.equals(a.initial[s], k.one) or not k.is_zero(a.final[s]):
        return False
    return not any(s in t for row in a.delta for t in row.values())


def make_proper(a):
    """Same behaviour on nonempty words, with a single initial state of weight
    one that has no incoming transitions and zero exit weight."""
    if is_proper(a):
        return a
    k = a.semiring
    s = a.n_states
    row = {}
    for p, v in enumerate(a.initial):
        if k.is_zero(v):
            continue
        for x, targets in a.delta[p].items():
            r = row.setdefault(x, {})
            for q, w in targets.items():
                _add_to(r, q, k.mul(v, w), k)
    row = {x: r for x, r in row.items() if r}
    initial = [k.zero] * s + [k.one]
    final = list(a.final) + [k.zero]
    return trim_w(Wfa(a.alphabet, k, s + 1, initial, final, a.delta + [row]))


def _zero_like(a):
    return Wfa(a.alphabet, a.semiring, 0, [], [], [])


def _start(a):
    return next(q for q, v in enumerate(a.initial) if not a.semiring.is_zero(v))


def w_sum(a, b):
    _check(a, b)
    off = a.n_states
    delta = list(a.delta) + [{x: {q + off: w for q, w in t.items()} for x, t in row.items()}
                             for row in b.delta]
    return Wfa(a.alphabet, a.semiring, off + b.n_states, a.initial + b.initial,
               a.final + b.final, delta)


def w_hadamard(a, b):
    """Pointwise product: synchronized product of state pairs."""
    _check(a, b)
    k = a.semiring
    index, order = {}, []
    queue = deque()
    initial = []
    for p, vp in enumerate(a.initial):
        if k.is_zero(vp):
            continue
        for q, vq in enumerate(b.initial):
            v = k.mul(vp, vq)
            if k.is_zero(v):
                continue
            index[(p, q)] = len(order)
            order.append((p, q))
            initial.append(v)
            queue.append((p, q))
    delta = []
    while queue:
        p, q = queue.popleft()
        row = {}
        arow, brow = a.delta[p], b.delta[q]
        for x in sorted(set(arow) & set(brow)):
            r = {}
            for p2, w1 in sorted(arow[x].items()):
                for q2, w2 in sorted(brow[x].items()):
                    pair = (p2, q2)
                    if pair not in index:
                        index[pair] = len(order)
                        order.append(pair)
                        initial.append(k.zero)
                        queue.append(pair)
                    _add_to(r, index[pair], k.mul(w1, w2), k)
            if r:
                row[x] = r
        delta.append(row)
    final = [k.mul(a.final[p], b.final[q]) for p, q in order]
    return trim_w(Wfa(a.alphabet, k, len(order), initial, final, delta))


def w_cauchy(a, b):
    """Sum over splits into two nonempty factors."""
    _check(a, b)
    k = a.semiring
    a, b = make_proper(a), make_proper(b)
    if not a.n_states or not b.n_states:
        return _zero_like(a)
    sb = _start(b)
    off = a.n_states
    delta = []
    for row in a.delta:
        new = {}
        for x, targets in row.items():
            r = dict(targets)
            bridge = k.zero
            for q1, w in targets.items():
                bridge = k.add(bridge, k.mul(w, a.final[q1]))
            _add_to(r, sb + off, bridge, k)
            new[x] = r
        delta.append(new)
    delta += [{x: {q + off: w for q, w in t.items()} for x, t in row.items()}
              for row in b.delta]
    initial = list(a.initial) + [k.zero] * b.n_states
    final = [k.zero] * a.n_states + list(b.final)
    return trim_w(Wfa(a.alphabet, k, off + b.n_states, initial, final, delta))


def w_shuffle(a, b):
    """Sum over all ways of interleaving two nonempty factors, position by position."""
    _check(a, b)
    k = a.semiring
    a, b = make_proper(a), make_proper(b)
    if not a.n_states or not b.n_states:
        return _zero_like(a)
    start = (_start(a), _start(b))
    index, order = {start: 0}, [start]
    queue = deque(order)
    delta = []
    while queue:
        p, q = queue.popleft()
        row = {}
        moves = [(x, (p2, q), w) for x, t in a.delta[p].items() for p2, w in t.items()]
        moves += [(x, (p, q2), w) for x, t in b.delta[q].items() for q2, w in t.items()]
        moves.sort(key=lambda m: (m[0], m[1]))
        for x, pair, w in moves:
            if pair not in index:
                index[pair] = len(order)
                order.append(pair)
                queue.append(pair)
            _add_to(row.setdefault(x, {}), index[pair], w, k)
        delta.append({x: r for x, r in row.items() if r})
    initial = [k.one] + [k.zero] * (len(order) - 1)
    final = [k.mul(a.final[p], b.final[q]) for p, q in order]
    return trim_w(Wfa(a.alphabet, k, len(order), initial, final, delta))


def w_plus(a):
    """Sum over all factorisations into one or more nonempty factors."""
    k = a.semiring
    a = make_proper(a)
    if not a.n_states:
        return a
    s = _start(a)
    delta = []
    for row in a.delta:
        new = {}
        for x, targets in row.items():
            r = dict(targets)
            back = k.zero
            for q, w in targets.items():
                back = k.add(back, k.mul(w, a.final[q]))
            _add_to(r, s, back, k)
            new[x] = r
        delta.append(new)
    return trim_w(Wfa(a.alphabet, k, a.n_states, a.initial, a.final, delta))


def combine_w(op, a, b=None):
    """Dispatch by name: sum, hadamard, cauchy, shuffle, plus."""
    ops = {"sum": w_sum, "hadamard": w_hadamard, "cauchy": w_cauchy, "shuffle": w_shuffle}
    if op == "plus":
        return w_plus(a)
    return ops[op](a, b)


# equivalence over a field

def _reduce(vec, basis, k):
    """Reduce ``vec`` (dict state->value) against an echelon basis."""
    vec = dict(vec)
    for pivot, bvec in basis:
        c = vec.get(pivot)
        if c is None or k.is_zero(c):
            continue
        for q, v in bvec.items():
            nv = k.sub(vec.get(q, k.zero), k.mul(c, v))
            if k.is_zero(nv):
                vec.pop(q, None)
            else:
                vec[q] = nv
    return vec


def equivalent_over_field(a, b):
    """Decide ``||a|| = ||b||`` on nonempty words when the semiring is a field.

    Runs a forward linear-span exploration of the difference automaton and
    checks that every reachable vector is orthogonal to the exit weights.
    """
    _check(a, b)
    k = a.semiring
    if not (k.is_field and k.is_exact):
        raise NotAField(f"{k.name} is not an exact field")
    return find_weight_difference(a, b) is None


def find_weight_difference(a, b):
    """A nonempty word (letter indices) on which the behaviours differ, or None."""
    _check(a, b)
    k = a.semiring
    if not (k.is_field and k.is_exact):
        raise NotAField(f"{k.name} is not an exact field")
    off = a.n_states
    rows = list(a.delta) + [{x: {q + off: w for q, w in t.items()} for x, t in row.items()}
                            for row in b.delta]
    ter = list(a.final) + [k.neg(v) for v in b.final]
    start = {q: v for q, v in enumerate(a.initial + b.initial) if not k.is_zero(v)}
    n_letters = len(a.alphabet)

    def step(vec, x):
        out = {}
        for p, vp in vec.items():
            for q, w in rows[p].get(x, {}).items():
                _add_to(out, q, k.mul(vp, w), k)
        return out

    def dot(vec):
        total = k.zero
        for q, v in vec.items():
            total = k.add(total, k.mul(v, ter[q]))
        return total

    basis = []
    queue = deque()

    def add(vec, word):
        red = _reduce(vec, basis, k)
        if not red:
            return
        pivot = min(red)
        inv = k.inv(red[pivot])
        norm = {q: k.mul(v, inv) for q, v in red.items()}
        for i, (pv, bv) in enumerate(basis):
            c = bv.get(pivot)
            if c is not None and not k.is_zero(c):
                new = dict(bv)
                for q, v in norm.items():
                    nv = k.sub(new.get(q, k.zero), k.mul(c, v))
                    if k.is_zero(nv):
                        new.pop(q, None)
                    else:
                        new[q] = nv
                basis[i] = (pv, new)
        basis.append((pivot, norm))
        queue.append((vec, word))

    for x in range(n_letters):
        vec = step(start, x)
        if not k.is_zero(dot(vec)):
            return [x]
        add(vec, [x])
    while queue:
        vec, word = queue.popleft()
        for x in range(n_letters):
            nvec = step(vec, x)
            if not k.is_zero(dot(nvec)):
                return word + [x]
            add(nvec, word + [x])
    return None


# export

def _letter_json(letter):
    return letter.to_json() if hasattr(letter, "to_json") else str(letter)


def to_json(a):
    k = a.semiring
    return {
        "states": list(range(a.n_states)),
        "alphabet": [_letter_json(x) for x in a.alphabet],
        "semiring": k.name,
        "in": [k.format(v) for v in a.initial],
        "transitions": [{"from": p, "letter": _letter_json(a.alphabet[x]), "to": q,
                         "weight": k.format(w)} for p, x, q, w in a.transitions()],
        "ter": [k.format(v) for v in a.final],
    }


def from_json(data, decode=None):
    if isinstance(data, str):
        data = json.loads(data)
    k = make_semiring(data["semiring"])

    def dec(x):
        if decode is not None:
            return decode(x)
        return tuple(x) if isinstance(x, list) else x

    n = len(data["states"])
    alphabet = [dec(x) for x in data["alphabet"]]
    index = {a: i for i, a in enumerate(alphabet)}
    delta = [dict() for _ in range(n)]
    for t in data["transitions"]:
        letter = dec(t["letter"])
        if letter not in index:
            raise UnknownLetter(str(letter))
        _add_to(delta[t["from"]].setdefault(index[letter], {}), t["to"], k.parse(t["weight"]), k)
    return Wfa(alphabet, k, n, [k.parse(v) for v in data["in"]],
               [k.parse(v) for v in data["ter"]], delta)


def to_dot(a, name="wfa"):
    k = a.semiring
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for q in range(a.n_states):
        label = f"{q}\\nin={k.format(a.initial[q])}\\nter={k.format(a.final[q])}"
        shape = "circle" if k.is_zero(a.final[q]) else "doublecircle"
        lines.append(f'  q{q} [shape={shape}, label="{label}"];')
    for p, x, q, w in a.transitions():
        label = f"{a.alphabet[x]} / {k.format(w)}".replace('"', '\\"')
        lines.append(f'  q{p} -> q{q} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def boolean_support(a):
    """The automaton accepting the words of nonzero weight, as an :class:`Nfa`.

    Only meaningful when no cancellation can occur (e.g. over bool or nat).
    """
    final = [q for q, v in enumerate(a.final) if not a.semiring.is_zero(v)]
    initial = [q for q, v in enumerate(a.initial) if not a.semiring.is_zero(v)]
    delta = [{x: frozenset(t) for x, t in row.items()} for row in a.delta]
    return Nfa(a.alphabet, a.n_states, initial, final, delta)


__all__ = [
    "Wfa", "constant", "characteristic", "make_proper", "is_proper", "trim_w",
    "w_sum", "w_hadamard", "w_cauchy", "w_shuffle", "w_plus", "combine_w",
    "equivalent_over_field", "find_weight_difference", "to_json", "from_json",
    "to_dot", "boolean_support",
]
