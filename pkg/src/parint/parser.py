"""Concrete syntax: tokenizer, recursive-descent parser and printer.

Precedence, tightest first: ``!``, postfix ``+``/``w+``, ``~``/``w~``,
``;``/``w;``, ``&``/``w&``, ``|``/``w|``.  Binary operators associate to the
left.  Quantifiers bind weakest and extend as far right as possible::

    AC x:Slave . E y:Master . only(p_m(y), p_s(x))
    E x:Node AC y:Node (x != y) . only(p(x), p(y))

A parenthesised guard after a binder is sugar: for a universal quantifier
``Q x:T (g) . f`` means ``Q x:T . !g | f``, for an existential one it means
``Q x:T . g & f`` (with ``w|``/``w&`` when ``f`` is weighted).

Port atoms are written ``p(x)`` for a variable, ``p(2)`` or ``p@i.2`` for a
fixed instance, and plain ``p`` for instance 1.
"""

import re

from .errors import FormulaSyntaxError, UnboundVariableInGuard
from .formula import (
    And,
    Binary,
    Concat,
    Eq,
    Formula,
    Neq,
    Not,
    Only,
    Or,
    Plus,
    PortAtom,
    QUANTIFIERS,
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
    is_weighted,
    make_only,
)

_TOKEN = re.compile(r"""
    (?P<ws>\s+|//[^\n]*)
  | (?P<lit><[^<>]*>)
  | (?P<ref>[A-Za-z_][A-Za-z0-9_]*@\d+\.\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<num>\d+)
  | (?P<op>!=|[!=(),:.|&;~+])
""", re.VERBOSE)

_WOPS = {"|", "&", ";", "~", "+"}


class Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind, self.value, self.pos = kind, value, pos

    def is_op(self, *values):
        return self.kind == "op" and self.value in values

    def __repr__(self):
        return f"Token({self.kind}, {self.value!r}, {self.pos})"


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        prev = tokens[-1] if tokens else None
        ends_operand = prev is not None and (
            prev.kind in ("lit", "ref", "ident", "num")
            or prev.is_op(")", "+", "w+"))
        if (ends_operand and text[pos] == "w" and pos + 1 < len(text)
                and text[pos + 1] in _WOPS):
            tokens.append(Token("op", text[pos:pos + 2], pos))
            pos += 2
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


_BINARY = {
    "|": Or, "w|": WOr,
    "&": And, "w&": WAnd,
    ";": Concat, "w;": WConcat,
    "~": Shuffle, "w~": WShuffle,
}
_LEVELS = [("|", "w|"), ("&", "w&"), (";", "w;"), ("~", "w~")]


class _Parser:
    def __init__(self, text, sig, free_types):
        self.text = text
        self.sig = sig
        self.tokens = tokenize(text)
        self.i = 0
        self.scope = {}
        self.free = {}
        for name, tname in (free_types or {}).items():
            self.free[name] = Variable(name, sig.type_index(tname))

    # token helpers
    @property
    def tok(self):
        return self.tokens[self.i]

    def peek(self, k=1):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message, tok=None):
        tok = tok or self.tok
        return FormulaSyntaxError(message, tok.pos)

    def expect_op(self, value):
        if not self.tok.is_op(value):
            found = self.tok.value or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")
        return self.advance()

    def expect_ident(self):
        if self.tok.kind != "ident":
            raise self.error("expected an identifier")
        return self.advance()

    # grammar
    def parse(self):
        node = self.formula()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.value!r}")
        return node

    def at_quantifier(self):
        return (self.tok.kind == "ident" and self.tok.value in QUANTIFIERS
                and self.peek().kind == "ident" and self.peek(2).is_op(":"))

    def formula(self):
        if self.at_quantifier():
            return self.quantified()
        return self.binary(0)

    def quantified(self):
        kw = self.advance()
        cls = QUANTIFIERS[kw.value]
        name_tok = self.expect_ident()
        self.expect_op(":")
        type_tok = self.expect_ident()
        var = Variable(name_tok.value, self.sig.type_index(type_tok.value))
        saved = self.scope.get(var.name)
        self.scope[var.name] = var
        guard = None
        if self.tok.is_op("("):
            self.advance()
            guard = self.guard()
            self.expect_op(")")
        if self.at_quantifier():
            body = self.quantified()
        else:
            self.expect_op(".")
            body = self.formula()
        if saved is None:
            del self.scope[var.name]
        else:
            self.scope[var.name] = saved
        if guard is not None:
            weighted = is_weighted(body)
            if cls.universal:
                body = (WOr if weighted else Or)(negate_constraint(guard), body)
            else:
                body = (WAnd if weighted else And)(guard, body)
        return cls(var, body)

    def guard(self):
        left = self.guard_and()
        while self.tok.is_op("|"):
            self.advance()
            left = Or(left, self.guard_and())
        return left

    def guard_and(self):
        left = self.guard_atom()
        while self.tok.is_op("&"):
            self.advance()
            left = And(left, self.guard_atom())
        return left

    def guard_atom(self):
        if self.tok.is_op("!"):
            self.advance()
            return negate_constraint(self.guard_atom())
        if self.tok.is_op("("):
            self.advance()
            node = self.guard()
            self.expect_op(")")
            return node
        left_tok = self.expect_ident()
        if not self.tok.is_op("=", "!="):
            raise self.error("a guard is built from x = y and x != y")
        op = self.advance()
        right_tok = self.expect_ident()
        vars_ = []
        for t in (left_tok, right_tok):
            var = self.scope.get(t.value) or self.free.get(t.value)
            if var is None:
                raise UnboundVariableInGuard(
                    f"guard variable {t.value!r} is not bound (offset {t.pos})")
            vars_.append(var)
        return (Eq if op.value == "=" else Neq)(*vars_)

    def binary(self, level):
        if level == len(_LEVELS):
            return self.postfix()
        left = self.binary(level + 1)
        while self.tok.kind == "op" and self.tok.value in _LEVELS[level]:
            op = self.advance().value
            right = self.binary(level + 1)
            left = _BINARY[op](left, right)
        return left

    def postfix(self):
        node = self.unary()
        while self.tok.is_op("+", "w+"):
            op = self.advance().value
            node = Plus(node) if op == "+" else WPlus(node)
        return node

    def unary(self):
        if self.tok.is_op("!"):
            self.advance()
            return Not(self.unary())
        return self.primary()

    def primary(self):
        tok = self.tok
        if tok.is_op("("):
            self.advance()
            node = self.formula()
            self.expect_op(")")
            return node
        if tok.kind == "lit":
            self.advance()
            body = tok.value[1:-1]
            factors = tuple(f.strip() for f in body.split("*"))
            if not all(factors):
                raise self.error("empty weight literal", tok)
            return WConst(factors)
        if self.at_quantifier():
            return self.quantified()
        if tok.kind == "ident":
            if tok.value == "true":
                self.advance()
                return Top()
            if tok.value == "false":
                self.advance()
                return Not(Top())
            if tok.value in ("only", "wonly") and self.peek().is_op("("):
                return self.only()
            if self.peek().is_op("=", "!="):
                return self.equality()
        if tok.kind in ("ident", "ref"):
            return self.port_atom()
        found = tok.value or "end of input"
        raise self.error(f"unexpected {found!r}")

    def only(self):
        weighted = self.advance().value == "wonly"
        self.expect_op("(")
        args = [self.port_atom()]
        while self.tok.is_op(","):
            self.advance()
            args.append(self.port_atom())
        self.expect_op(")")
        return make_only(args, self.sig, weighted)

    def equality(self):
        left = self.advance()
        op = self.advance()
        right = self.expect_ident()
        vars_ = [self.variable(t, None) for t in (left, right)]
        if vars_[0].type_index != vars_[1].type_index:
            raise self.error("compared variables have different types", op)
        return (Eq if op.value == "=" else Neq)(*vars_)

    def variable(self, tok, type_index):
        name = tok.value
        var = self.scope.get(name) or self.free.get(name)
        if var is None:
            if type_index is None:
                raise self.error(f"cannot infer the type of free variable {name!r}", tok)
            var = self.free[name] = Variable(name, type_index)
        elif type_index is not None and var.type_index != type_index:
            raise self.error(
                f"variable {name!r} has type {self.sig.type_name(var.type_index)}", tok)
        return var

    def port_atom(self):
        tok = self.advance()
        if tok.kind == "ref":
            name, _, rest = tok.value.partition("@")
            i, j = (int(x) for x in rest.split("."))
            ti, k = self.sig.port_owner(name)
            if ti != i:
                raise self.error(f"port {name!r} belongs to type {ti}", tok)
            if j < 1:
                raise self.error("instances are numbered from 1", tok)
            return PortAtom(name, ti, k, j)
        if tok.kind != "ident":
            raise self.error("expected a port", tok)
        ti, k = self.sig.port_owner(tok.value)
        if not self.tok.is_op("("):
            return PortAtom(tok.value, ti, k, 1)
        self.advance()
        arg = self.advance()
        if arg.kind == "num":
            ref = int(arg.value)
            if ref < 1:
                raise self.error("instances are numbered from 1", arg)
        elif arg.kind == "ident":
            ref = self.variable(arg, ti)
        else:
            raise self.error("expected a variable or an instance number", arg)
        self.expect_op(")")
        return PortAtom(tok.value, ti, k, ref)


def negate_constraint(node):
    """Push a negation through a boolean combination of (in)equalities."""
    if isinstance(node, Eq):
        return Neq(node.left, node.right)
    if isinstance(node, Neq):
        return Eq(node.left, node.right)
    if isinstance(node, Not):
        return node.child
    if isinstance(node, And):
        return Or(negate_constraint(node.left), negate_constraint(node.right))
    if isinstance(node, Or):
        return And(negate_constraint(node.left), negate_constraint(node.right))
    return Not(node)


def parse(text, sig, free_types=None):
    """Parse ``text`` against ``sig``.

    ``free_types`` optionally maps free variable names to type names; otherwise
    the type of a free variable is taken from the first port it is applied to.
    """
    return _Parser(text, sig, free_types).parse()


# printing

_PREC = {Or: 1, WOr: 1, And: 2, WAnd: 2, Concat: 3, WConcat: 3, Shuffle: 4, WShuffle: 4}
_POSTFIX, _PREFIX, _ATOM = 5, 6, 7


def _prec(node):
    if isinstance(node, Quantifier):
        return 0
    if isinstance(node, Binary):
        return _PREC[type(node)]
    if isinstance(node, (Plus, WPlus)):
        return _POSTFIX
    if isinstance(node, Not):
        return _PREFIX
    return _ATOM


def to_text(node, sig):
    """Render ``node`` so that ``parse(to_text(node, sig), sig) == node``."""
    return _fmt(node, sig)


def _wrap(child, sig, min_prec):
    s = _fmt(child, sig)
    if isinstance(child, Quantifier) or _prec(child) < min_prec:
        return f"({s})"
    return s


def _fmt(node, sig):
    if isinstance(node, Quantifier):
        head = f"{node.keyword} {node.var.name}:{sig.type_name(node.var.type_index)}"
        return f"{head} . {_fmt(node.body, sig)}"
    if isinstance(node, Binary):
        p = _prec(node)
        return f"{_wrap(node.left, sig, p)} {node.symbol} {_wrap(node.right, sig, p + 1)}"
    if isinstance(node, Plus):
        return _wrap(node.child, sig, _POSTFIX) + "+"
    if isinstance(node, WPlus):
        # a space keeps "w" from gluing onto an identifier
        return _wrap(node.child, sig, _POSTFIX) + " w+"
    if isinstance(node, Not):
        if isinstance(node.child, Top):
            return "false"
        return "!" + _wrap(node.child, sig, _PREFIX)
    if isinstance(node, Top):
        return "true"
    if isinstance(node, PortAtom):
        ref = node.ref.name if isinstance(node.ref, Variable) else str(node.ref)
        return f"{node.port}({ref})"
    if isinstance(node, Only):
        return "only(" + ", ".join(_fmt(a, sig) for a in node.args) + ")"
    if isinstance(node, Eq):
        return f"{node.left.name} = {node.right.name}"
    if isinstance(node, Neq):
        return f"{node.left.name} != {node.right.name}"
    if isinstance(node, WConst):
        return "<" + "*".join(node.factors) + ">"
    if isinstance(node, Formula):
        raise TypeError(f"cannot print {type(node).__name__}")
    raise TypeError(f"not a formula: {node!r}")
