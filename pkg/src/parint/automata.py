"""Finite automata over an explicit alphabet, read within nonempty words.

States are ``0..n-1``; ``delta[q]`` maps a letter index to the frozenset of
successor states.  All language-level operations (emptiness, universality,
equivalence, complement) ignore the empty word.
"""

import json
from collections import deque

from .errors import AlphabetMismatch, NotComplete, NotDeterministic, UnknownLetter


class Nfa:
    __slots__ = ("alphabet", "n_states", "initial", "final", "delta", "notes", "_index")

    def __init__(self, alphabet, n_states, initial, final, delta, notes=None):
        self.alphabet = tuple(alphabet)
        self.n_states = n_states
        self.initial = frozenset(initial)
        self.final = frozenset(final)
        self.delta = list(delta)
        self.notes = list(notes) if notes is not None else [""] * n_states
        self._index = None

    @classmethod
    def from_transitions(cls, alphabet, n_states, initial, final, transitions, notes=None):
        alphabet = tuple(alphabet)
        index = {a: i for i, a in enumerate(alphabet)}
        rows = [dict() for _ in range(n_states)]
        for p, letter, q in transitions:
            try:
                x = index[letter]
            except KeyError:
                raise UnknownLetter(str(letter)) from None
            rows[p].setdefault(x, set()).add(q)
        delta = [{x: frozenset(t) for x, t in row.items()} for row in rows]
        return cls(alphabet, n_states, initial, final, delta, notes)

    @property
    def letter_index(self):
        if self._index is None:
            self._index = {a: i for i, a in enumerate(self.alphabet)}
        return self._index

    def transitions(self):
        """Yield ``(p, letter_index, q)`` in a deterministic order."""
        for p, row in enumerate(self.delta):
            for x in sorted(row):
                for q in sorted(row[x]):
                    yield p, x, q

    def n_transitions(self):
        return sum(len(t) for row in self.delta for t in row.values())

    def encode(self, word):
        idx = self.letter_index
        try:
            return [idx[a] for a in word]
        except KeyError as exc:
            raise UnknownLetter(str(exc.args[0])) from None

    def accepts(self, word):
        """Membership of a nonempty word (a sequence of letters)."""
        if len(word) == 0:
            return False
        current = set(self.initial)
        for x in self.encode(word):
            nxt = set()
            for q in current:
                nxt |= self.delta[q].get(x, frozenset())
            if not nxt:
                return False
            current = nxt
        return not current.isdisjoint(self.final)

    def is_deterministic(self):
        return (len(self.initial) == 1
                and all(len(t) == 1 for row in self.delta for t in row.values()))

    def is_complete(self):
        n = len(self.alphabet)
        return all(len(row) == n for row in self.delta)

    def __repr__(self):
        return (f"{type(self).__name__}(states={self.n_states}, "
                f"letters={len(self.alphabet)}, transitions={self.n_transitions()})")


class Dfa(Nfa):
    """A deterministic automaton (one initial state, at most one successor)."""

    __slots__ = ()

    @property
    def start(self):
        (s,) = self.initial
        return s

    def step(self, q, x):
        t = self.delta[q].get(x)
        return None if t is None else next(iter(t))


def _check_alphabets(a, b):
    if a.alphabet is not b.alphabet and a.alphabet != b.alphabet:
        raise AlphabetMismatch("automata are over different alphabets")


def empty_nfa(alphabet):
    return Nfa(alphabet, 0, (), (), [])


def letter_nfa(alphabet, letters, note=""):
    """Accepts exactly the one-letter words in ``letters`` (letter indices)."""
    letters = frozenset(letters)
    target = frozenset([1])
    delta = [{x: target for x in sorted(letters)}, {}]
    return Nfa(alphabet, 2, [0], [1], delta, [f"{note}.start", f"{note}.end"])


def universal_nfa(alphabet, note="all"):
    """Accepts every nonempty word."""
    target = frozenset([1])
    row = {x: target for x in range(len(alphabet))}
    return Nfa(alphabet, 2, [0], [1], [dict(row), dict(row)],
               [f"{note}.start", f"{note}.loop"])


def trim(a):
    """Drop states that are unreachable or cannot reach a final state."""
    reach = set(a.initial)
    queue = deque(reach)
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
    live = set(q for q in a.final if q in reach)
    queue = deque(live)
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
            t = frozenset(new[s] for s in targets if s in new)
            if t:
                row[x] = t
        delta.append(row)
    return Nfa(a.alphabet, len(keep), [new[q] for q in a.initial if q in new],
               [new[q] for q in a.final if q in new], delta, [a.notes[q] for q in keep])


def proper(a):
    """Equivalent automaton (on nonempty words) with one initial state that is
    not final and has no incoming transitions.  Returns ``(automaton, start)``."""
    if len(a.initial) == 1:
        (s,) = a.initial
        if s not in a.final and not any(s in t for row in a.delta for t in row.values()):
            return a, s
    merged = {}
    for q in sorted(a.initial):
        for x, targets in a.delta[q].items():
            merged[x] = merged.get(x, frozenset()) | targets
    s = a.n_states
    cls = Dfa if isinstance(a, Dfa) else Nfa
    return cls(a.alphabet, s + 1, [s], a.final, a.delta + [merged],
               a.notes + ["start"]), s


def union(a, b):
    _check_alphabets(a, b)
    off = a.n_states
    delta = list(a.delta) + [{x: frozenset(q + off for q in t) for x, t in row.items()}
                             for row in b.delta]
    notes = [f"L.{n}" for n in a.notes] + [f"R.{n}" for n in b.notes]
    return Nfa(a.alphabet, off + b.n_states, set(a.initial) | {q + off for q in b.initial},
               set(a.final) | {q + off for q in b.final}, delta, notes)


def intersection(a, b):
    """Product automaton restricted to reachable state pairs."""
    _check_alphabets(a, b)
    return _product(a, b, lambda fa, fb: fa and fb, "and")


def _product(a, b, accept, tag):
    index = {}
    order = []
    queue = deque()
    for p in sorted(a.initial):
        for q in sorted(b.initial):
            index[(p, q)] = len(order)
            order.append((p, q))
            queue.append((p, q))
    delta = []
    while queue:
        p, q = queue.popleft()
        row = {}
        drow, erow = a.delta[p], b.delta[q]
        if len(drow) > len(erow):
            letters = [x for x in erow if x in drow]
        else:
            letters = [x for x in drow if x in erow]
        for x in sorted(letters):
            targets = []
            for p2 in sorted(drow[x]):
                for q2 in sorted(erow[x]):
                    pair = (p2, q2)
                    if pair not in index:
                        index[pair] = len(order)
                        order.append(pair)
                        queue.append(pair)
                    targets.append(index[pair])
            row[x] = frozenset(targets)
        delta.append(row)
    final = [i for i, (p, q) in enumerate(order) if accept(p in a.final, q in b.final)]
    notes = [f"{tag}({a.notes[p]},{b.notes[q]})" for p, q in order]
    init = [index[(p, q)] for p in a.initial for q in b.initial]
    return Nfa(a.alphabet, len(order), init, final, delta, notes)


def concat(a, b):
    """Words ``uv`` with ``u`` accepted by ``a`` and ``v`` by ``b``, both nonempty."""
    _check_alphabets(a, b)
    a, _ = proper(a)
    b, sb = proper(b)
    off = a.n_states
    delta = []
    for row in a.delta:
        new = {}
        for x, t in row.items():
            t2 = t
            if not t.isdisjoint(a.final):
                t2 = t | {sb + off}
            new[x] = frozenset(t2)
        delta.append(new)
    delta += [{x: frozenset(q + off for q in t) for x, t in row.items()} for row in b.delta]
    notes = [f"L.{n}" for n in a.notes] + [f"R.{n}" for n in b.notes]
    return trim(Nfa(a.alphabet, off + b.n_states, a.initial,
                    [q + off for q in b.final], delta, notes))


def shuffle(a, b):
    """Interleavings of a nonempty word of ``a`` with a nonempty word of ``b``."""
    _check_alphabets(a, b)
    a, sa = proper(a)
    b, sb = proper(b)
    index = {(sa, sb): 0}
    order = [(sa, sb)]
    queue = deque(order)
    delta = []
    while queue:
        p, q = queue.popleft()
        row = {}
        moves = [(x, (p2, q)) for x, t in a.delta[p].items() for p2 in t]
        moves += [(x, (p, q2)) for x, t in b.delta[q].items() for q2 in t]
        moves.sort()
        for x, pair in moves:
            if pair not in index:
                index[pair] = len(order)
                order.append(pair)
                queue.append(pair)
            row.setdefault(x, set()).add(index[pair])
        delta.append({x: frozenset(t) for x, t in row.items()})
    final = [i for i, (p, q) in enumerate(order) if p in a.final and q in b.final]
    notes = [f"shuffle({a.notes[p]},{b.notes[q]})" for p, q in order]
    return trim(Nfa(a.alphabet, len(order), [0], final, delta, notes))


def iterate_plus(a):
    """One or more concatenated words of ``a``."""
    a, s = proper(a)
    delta = []
    for row in a.delta:
        new = {}
        for x, t in row.items():
            new[x] = t | {s} if not t.isdisjoint(a.final) else t
        delta.append(new)
    return trim(Nfa(a.alphabet, a.n_states, [s], a.final, delta, a.notes))


def determinize_complete(a):
    """Subset construction plus a sink, yielding a complete :class:`Dfa`."""
    if isinstance(a, Dfa) and a.is_complete():
        return a
    n_letters = len(a.alphabet)
    start = frozenset(a.initial)
    index = {start: 0}
    order = [start]
    delta = []
    singles = []

    def single(i):
        while len(singles) <= i:
            singles.append(frozenset([len(singles)]))
        return singles[i]

    i = 0
    while i < len(order):
        subset = order[i]
        i += 1
        acc = {}
        for q in subset:
            for x, t in a.delta[q].items():
                acc.setdefault(x, set()).update(t)
        row = {}
        cache = {}
        for x in range(n_letters):
            t = acc.get(x)
            target = frozenset(t) if t else frozenset()
            j = cache.get(target)
            if j is None:
                j = index.get(target)
                if j is None:
                    j = index[target] = len(order)
                    order.append(target)
                cache[target] = j
            row[x] = single(j)
        delta.append(row)
    final = [j for j, s in enumerate(order) if not s.isdisjoint(a.final)]
    notes = ["{" + ",".join(str(q) for q in sorted(s)) + "}" for s in order]
    return Dfa(a.alphabet, len(order), [0], final, delta, notes)


def complement_plus(d):
    """Complement within nonempty words of a complete deterministic automaton."""
    if not isinstance(d, Nfa) or not d.is_deterministic():
        raise NotDeterministic("complement needs a deterministic automaton")
    if not d.is_complete():
        raise NotComplete("complement needs a complete automaton")
    final = [q for q in range(d.n_states) if q not in d.final]
    c = Dfa(d.alphabet, d.n_states, d.initial, final, d.delta, d.notes)
    out, _ = proper(c)
    return out


def is_empty(a):
    """True when no nonempty word is accepted."""
    seen = set()
    queue = deque()
    for q in a.initial:
        for t in a.delta[q].values():
            for s in t:
                if s not in seen:
                    seen.add(s)
                    queue.append(s)
    while queue:
        q = queue.popleft()
        if q in a.final:
            return False
        for t in a.delta[q].values():
            for s in t:
                if s not in seen:
                    seen.add(s)
                    queue.append(s)
    return True


def is_universal_plus(a):
    """True when every nonempty word is accepted."""
    return is_empty(complement_plus(determinize_complete(a)))


def language_equivalent(a, b):
    """Equality of the languages of ``a`` and ``b`` restricted to nonempty words."""
    _check_alphabets(a, b)
    return find_difference(a, b) is None


def find_difference(a, b):
    """A shortest nonempty word (letter indices) accepted by exactly one automaton."""
    da, db = determinize_complete(a), determinize_complete(b)
    parent = {}
    queue = deque()

    def visit(prev, p, q):
        for x in range(len(da.alphabet)):
            nxt = (da.step(p, x), db.step(q, x))
            if nxt in parent:
                continue
            parent[nxt] = (prev, x)
            if (nxt[0] in da.final) != (nxt[1] in db.final):
                return nxt
            queue.append(nxt)
        return None

    found = visit(None, da.start, db.start)
    while found is None and queue:
        pair = queue.popleft()
        found = visit(pair, *pair)
    if found is None:
        return None
    word = []
    node = found
    while node is not None:
        node, x = parent[node]
        word.append(x)
    return word[::-1]


# export

def _letter_json(letter):
    return letter.to_json() if hasattr(letter, "to_json") else str(letter)


def to_json(a):
    return {
        "states": [{"id": q, "note": a.notes[q]} for q in range(a.n_states)],
        "alphabet": [_letter_json(x) for x in a.alphabet],
        "initial": sorted(a.initial),
        "transitions": [[p, _letter_json(a.alphabet[x]), q] for p, x, q in a.transitions()],
        "final": sorted(a.final),
    }


def from_json(data, decode=None):
    """Rebuild an automaton from :func:`to_json` output.

    ``decode`` turns a JSON letter back into a letter object; by default
    letters become strings (or tuples of strings).
    """
    if isinstance(data, str):
        data = json.loads(data)

    def dec(x):
        if decode is not None:
            return decode(x)
        return tuple(x) if isinstance(x, list) else x

    states = data["states"]
    n = len(states)
    ids = [s["id"] if isinstance(s, dict) else s for s in states]
    pos = {sid: i for i, sid in enumerate(ids)}
    notes = [s.get("note", "") if isinstance(s, dict) else "" for s in states]
    alphabet = [dec(x) for x in data["alphabet"]]
    trans = [(pos[p], dec(x), pos[q]) for p, x, q in data["transitions"]]
    return Nfa.from_transitions(alphabet, n, [pos[s] for s in data["initial"]],
                                [pos[s] for s in data["final"]], trans, notes)


def to_dot(a, name="nfa"):
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point];']
    for q in range(a.n_states):
        shape = "doublecircle" if q in a.final else "circle"
        label = _dot_escape(f"{q}\\n{a.notes[q]}" if a.notes[q] else str(q))
        lines.append(f'  q{q} [shape={shape}, label="{label}"];')
    for q in sorted(a.initial):
        lines.append(f"  __start -> q{q};")
    edges = {}
    for p, x, q in a.transitions():
        edges.setdefault((p, q), []).append(str(a.alphabet[x]))
    for (p, q), labels in edges.items():
        lines.append(f'  q{p} -> q{q} [label="{_dot_escape(", ".join(labels))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_escape(s):
    return s.replace('"', '\\"')
