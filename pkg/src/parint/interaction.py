"""Component types, instance counts, interactions and traces.

An interaction is a nonempty set of concrete ports in which every component
instance contributes at most one port.  The interaction alphabet for given
instance counts contains every such set, so its size is
``prod((|P(i)| + 1) ** r(i)) - 1``.
"""

import itertools
import json
import math
import os
import re
from dataclasses import dataclass, field

from .errors import (
    AlphabetTooLarge,
    DuplicateInstanceInInteraction,
    EmptyInteraction,
    InstanceOutOfRange,
    InvalidSignature,
    SignatureMismatch,
    UnknownLetter,
    UnknownPort,
    UnknownType,
)

DEFAULT_ALPHABET_CAP = 4096


def alphabet_cap():
    """Return the alphabet size cap, honouring ``PARINT_ALPHABET_CAP``."""
    raw = os.environ.get("PARINT_ALPHABET_CAP")
    if raw is None or raw.strip() == "":
        return DEFAULT_ALPHABET_CAP
    return int(raw)


@dataclass(frozen=True)
class ComponentType:
    name: str
    ports: tuple
    weights: tuple = ()

    def weight(self, port):
        idx = self.ports.index(port)
        return self.weights[idx] if idx < len(self.weights) else None


class ComponentSignature:
    """An ordered list of component types with globally unique port names.

    Types are addressed by 1-based index, matching the ``port@i.j`` notation.
    """

    def __init__(self, types):
        self.types = tuple(types)
        if not self.types:
            raise InvalidSignature("a signature needs at least one component type")
        self._type_index = {}
        self._port_owner = {}
        for i, ctype in enumerate(self.types, start=1):
            if ctype.name in self._type_index:
                raise InvalidSignature(f"component type {ctype.name!r} declared twice")
            if not ctype.ports:
                raise InvalidSignature(f"component type {ctype.name!r} has no ports")
            self._type_index[ctype.name] = i
            for k, port in enumerate(ctype.ports):
                if port in self._port_owner:
                    raise InvalidSignature(f"port {port!r} declared twice")
                self._port_owner[port] = (i, k)

    @classmethod
    def build(cls, layout, weights=None):
        """Build from ``{"Type": ["p", "q"], ...}`` with optional ``{port: weight}``."""
        weights = weights or {}
        types = []
        for name, ports in layout.items():
            ports = tuple(ports)
            types.append(ComponentType(name, ports, tuple(weights.get(p) for p in ports)))
        return cls(types)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        try:
            entries = data["types"]
        except (KeyError, TypeError):
            raise InvalidSignature("signature JSON needs a top-level 'types' list") from None
        types = []
        for entry in entries:
            ports, weights = [], []
            for port in entry["ports"]:
                if isinstance(port, str):
                    ports.append(port)
                    weights.append(None)
                else:
                    ports.append(port["name"])
                    w = port.get("weight")
                    weights.append(None if w is None else str(w))
            types.append(ComponentType(entry["name"], tuple(ports), tuple(weights)))
        return cls(types)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def to_json(self):
        out = []
        for t in self.types:
            ports = []
            for p in t.ports:
                w = t.weight(p)
                ports.append({"name": p} if w is None else {"name": p, "weight": w})
            out.append({"name": t.name, "ports": ports})
        return {"types": out}

    def __len__(self):
        return len(self.types)

    def __eq__(self, other):
        return isinstance(other, ComponentSignature) and self.types == other.types

    def __hash__(self):
        return hash(self.types)

    def __repr__(self):
        return f"ComponentSignature({[t.name for t in self.types]})"

    def type_index(self, name):
        try:
            return self._type_index[name]
        except KeyError:
            raise UnknownType(name) from None

    def type_name(self, index):
        return self.types[index - 1].name

    def ports_of(self, index):
        return self.types[index - 1].ports

    def port_owner(self, port):
        """Return ``(type_index, declaration_index)`` of a port name."""
        try:
            return self._port_owner[port]
        except KeyError:
            raise UnknownPort(port) from None

    def has_port(self, port):
        return port in self._port_owner

    def weight(self, port):
        i, k = self.port_owner(port)
        return self.types[i - 1].weight(port)

    def port(self, name, instance):
        i, k = self.port_owner(name)
        return ConcretePort(i, instance, k, name)


@dataclass(frozen=True, order=True)
class ConcretePort:
    """Port ``name`` of instance ``instance`` of the type at ``type_index``."""

    type_index: int
    instance: int
    port_index: int
    name: str = field(compare=False)

    def __str__(self):
        return f"{self.name}@{self.type_index}.{self.instance}"

    @property
    def owner(self):
        return (self.type_index, self.instance)


_PORT_REF = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)@(\d+)\.(\d+)\s*$")


def parse_port_ref(text, sig, counts=None):
    """Parse ``name@i.j`` into a :class:`ConcretePort`."""
    m = _PORT_REF.match(text)
    if not m:
        raise UnknownPort(text)
    name, i, j = m.group(1), int(m.group(2)), int(m.group(3))
    ti, k = sig.port_owner(name)
    if ti != i:
        raise UnknownPort(text)
    if j < 1 or (counts is not None and j > counts[i]):
        raise InstanceOutOfRange(f"{text}: instance {j} is out of range")
    return ConcretePort(i, j, k, name)


class InstanceCounts:
    """Positive instance count per component type (1-based indexing)."""

    def __init__(self, counts, sig=None):
        counts = tuple(int(c) for c in counts)
        if any(c < 1 for c in counts):
            raise InstanceOutOfRange("instance counts must be positive")
        if sig is not None and len(counts) != len(sig):
            raise SignatureMismatch(
                f"{len(counts)} instance counts for {len(sig)} component types")
        self.counts = counts

    @classmethod
    def parse(cls, text, sig):
        """Parse ``Master=1,Slave=2`` (every type must be listed)."""
        values = {}
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            name, sep, value = part.partition("=")
            if not sep:
                raise SignatureMismatch(f"malformed instance count {part!r}")
            values[sig.type_index(name.strip())] = int(value)
        missing = [sig.type_name(i) for i in range(1, len(sig) + 1) if i not in values]
        if missing:
            raise SignatureMismatch(f"no instance count for {', '.join(missing)}")
        return cls([values[i] for i in range(1, len(sig) + 1)], sig)

    def format(self, sig):
        return ",".join(f"{t.name}={c}" for t, c in zip(sig.types, self.counts))

    def __getitem__(self, index):
        if index < 1:
            raise IndexError(index)
        return self.counts[index - 1]

    def __len__(self):
        return len(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __eq__(self, other):
        return isinstance(other, InstanceCounts) and self.counts == other.counts

    def __hash__(self):
        return hash(self.counts)

    def __repr__(self):
        return f"InstanceCounts({list(self.counts)})"


def as_counts(r, sig=None):
    return r if isinstance(r, InstanceCounts) else InstanceCounts(r, sig)


class Interaction:
    """A nonempty set of concrete ports, at most one per instance.

    Ports are kept sorted; interactions are ordered by size and then
    lexicographically on their sorted ports.
    """

    __slots__ = ("ports", "_key", "_hash", "_set")

    def __init__(self, ports):
        ports = tuple(sorted(set(ports)))
        if not ports:
            raise EmptyInteraction("an interaction needs at least one port")
        owners = [p.owner for p in ports]
        if len(set(owners)) != len(owners):
            raise DuplicateInstanceInInteraction(
                "an instance contributes two ports: " + ", ".join(map(str, ports)))
        self.ports = ports
        self._key = (len(ports), ports)
        self._hash = hash(ports)
        self._set = frozenset(ports)

    def __contains__(self, port):
        return port in self._set

    def __iter__(self):
        return iter(self.ports)

    def __len__(self):
        return len(self.ports)

    def __eq__(self, other):
        return isinstance(other, Interaction) and self.ports == other.ports

    def __lt__(self, other):
        return self._key < other._key

    def __hash__(self):
        return self._hash

    @property
    def port_set(self):
        return self._set

    def __str__(self):
        return "{" + ",".join(map(str, self.ports)) + "}"

    __repr__ = __str__

    def to_json(self):
        return [str(p) for p in self.ports]


def validate_interaction(sig, counts, candidate):
    """Check a candidate port set against ``sig`` and ``counts``.

    ``candidate`` may mix :class:`ConcretePort` objects and ``name@i.j`` strings.
    """
    counts = as_counts(counts, sig)
    ports = []
    for item in candidate:
        if isinstance(item, ConcretePort):
            if not sig.has_port(item.name) or sig.port_owner(item.name) != (
                    item.type_index, item.port_index):
                raise UnknownPort(str(item))
            if not 1 <= item.instance <= counts[item.type_index]:
                raise InstanceOutOfRange(f"{item}: instance out of range")
            ports.append(item)
        else:
            ports.append(parse_port_ref(item, sig, counts))
    return Interaction(ports)


def alphabet_size(sig, counts):
    counts = as_counts(counts, sig)
    return math.prod((len(t.ports) + 1) ** c for t, c in zip(sig.types, counts)) - 1


def enumerate_interactions(sig, counts, cap=None):
    """All interactions for ``counts`` in canonical order."""
    counts = as_counts(counts, sig)
    cap = alphabet_cap() if cap is None else cap
    size = alphabet_size(sig, counts)
    if size > cap:
        raise AlphabetTooLarge(size, cap)
    slots = []
    for i, (t, c) in enumerate(zip(sig.types, counts), start=1):
        for j in range(1, c + 1):
            slots.append([None] + [ConcretePort(i, j, k, p) for k, p in enumerate(t.ports)])
    letters = []
    for choice in itertools.product(*slots):
        ports = [p for p in choice if p is not None]
        if ports:
            letters.append(Interaction(ports))
    letters.sort()
    return letters


class InteractionAlphabet:
    """The interaction alphabet of a signature and instance counts, indexed."""

    def __init__(self, sig, counts, cap=None):
        self.sig = sig
        self.counts = as_counts(counts, sig)
        self.letters = tuple(enumerate_interactions(sig, self.counts, cap))
        self.index = {a: n for n, a in enumerate(self.letters)}
        self._by_set = {a.port_set: n for n, a in enumerate(self.letters)}
        self._containing = {}
        for n, a in enumerate(self.letters):
            for p in a.ports:
                self._containing.setdefault(p, set()).add(n)

    def __len__(self):
        return len(self.letters)

    def letter_index(self, letter):
        try:
            return self.index[letter]
        except KeyError:
            raise UnknownLetter(str(letter)) from None

    def lookup(self, ports):
        """Index of the interaction with exactly ``ports``, or None."""
        return self._by_set.get(frozenset(ports))

    def containing(self, port):
        """Indices of the letters containing ``port``."""
        return frozenset(self._containing.get(port, ()))


class Trace(tuple):
    """A nonempty finite sequence of interactions."""

    def __new__(cls, steps):
        steps = tuple(steps)
        if not steps:
            raise EmptyInteraction("a trace needs at least one interaction")
        for s in steps:
            if not isinstance(s, Interaction):
                raise TypeError(f"trace step {s!r} is not an Interaction")
        return super().__new__(cls, steps)

    def __str__(self):
        return " ".join(map(str, self))

    def to_json(self):
        return [a.to_json() for a in self]


def parse_trace(data, sig, counts):
    """Parse the JSON trace format ``[["p@1.1", "q@2.1"], ...]``."""
    if isinstance(data, str):
        data = json.loads(data)
    return Trace(validate_interaction(sig, counts, step) for step in data)


def load_trace(path, sig, counts):
    with open(path) as fh:
        return parse_trace(json.load(fh), sig, counts)


def all_traces(letters, max_len):
    """Every trace over ``letters`` of length 1..max_len, shortest first."""
    for n in range(1, max_len + 1):
        for w in itertools.product(letters, repeat=n):
            yield w
