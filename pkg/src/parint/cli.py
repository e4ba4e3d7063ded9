"""Command-line interface.

Exit codes: 0 when the checked property holds, 1 when it fails, 2 on usage,
parse, validation or size errors, 3 when the automaton and the reference
evaluator disagree.

Formula arguments are file names when such a file exists, and formula text
otherwise.
"""

import argparse
import json
import os
import sys

from . import automata as fa
from . import wfa as wa
from .compiler import Compiler
from .errors import FreeVariable, ParintError
from .formula import free_variables, is_weighted, validate
from .interaction import ComponentSignature, InstanceCounts, load_trace
from .parser import parse
from .semantics import Evaluator
from .semiring import make_semiring
from .templates import TEMPLATES, template_text

EXIT_HOLDS, EXIT_FAILS, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_formula(arg):
    if os.path.isfile(arg):
        with open(arg) as fh:
            return fh.read()
    return arg


def _add_model_args(p, trace=False):
    p.add_argument("--sig", required=True, help="signature JSON file")
    p.add_argument("-r", "--counts", required=True, help="instance counts, e.g. Master=1,Slave=2")
    p.add_argument("--cap", type=int, default=None,
                   help="alphabet size cap (default: $PARINT_ALPHABET_CAP or 4096)")
    p.add_argument("--relaxed-negation", action="store_true",
                   help="allow negation of arbitrary trace formulas")
    if trace:
        p.add_argument("--trace", required=True, help="trace JSON file")


def build_parser():
    parser = _Parser(prog="parint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="does a trace satisfy a sentence?")
    p.add_argument("formula")
    _add_model_args(p, trace=True)
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against the reference evaluator")

    for name, what in (("sat", "is a sentence satisfiable?"), ("valid", "is a sentence valid?")):
        p = sub.add_parser(name, help=what)
        p.add_argument("formula")
        _add_model_args(p)

    p = sub.add_parser("equiv", help="are two sentences equivalent?")
    p.add_argument("left")
    p.add_argument("right")
    _add_model_args(p)

    p = sub.add_parser("weight", help="weight of a trace under a weighted sentence")
    p.add_argument("formula")
    _add_model_args(p, trace=True)
    p.add_argument("--semiring", required=True)
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("wequiv", help="are two weighted sentences equivalent over a field?")
    p.add_argument("left")
    p.add_argument("right")
    _add_model_args(p)
    p.add_argument("--semiring", default="rat")

    p = sub.add_parser("compile", help="export the automaton of a sentence")
    p.add_argument("formula")
    _add_model_args(p)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--semiring", default="rat")

    p = sub.add_parser("template", help="print a template sentence")
    p.add_argument("name", choices=sorted(TEMPLATES))
    p.add_argument("--weighted", action="store_true")
    return parser


class _Context:
    def __init__(self, args):
        self.args = args
        self.sig = ComponentSignature.load(args.sig)
        self.counts = InstanceCounts.parse(args.counts, self.sig)
        self.compiler = Compiler(self.sig, self.counts, args.cap)

    def sentence(self, arg):
        node = parse(_read_formula(arg), self.sig)
        validate(node, relaxed_negation=self.args.relaxed_negation)
        free = sorted(v.name for v in free_variables(node))
        if free:
            raise FreeVariable(f"variable {free[0]!r} is free", ())
        return node

    def trace(self):
        return load_trace(self.args.trace, self.sig, self.counts)


def _verdict(out, holds, yes, no):
    print(yes if holds else no, file=out)
    return EXIT_HOLDS if holds else EXIT_FAILS


def _cmd_check(ctx, out):
    node = ctx.sentence(ctx.args.formula)
    w = ctx.trace()
    accepted = ctx.compiler.compile(node).accepts(w)
    if ctx.args.oracle:
        expected = Evaluator(ctx.counts).sat(node, {}, tuple(w))
        if expected != accepted:
            print(f"DISAGREEMENT automaton={accepted} oracle={expected}", file=sys.stderr)
            return EXIT_DISAGREE
    return _verdict(out, accepted, "SAT-TRACE", "UNSAT-TRACE")


def _cmd_sat(ctx, out):
    node = ctx.sentence(ctx.args.formula)
    return _verdict(out, not fa.is_empty(ctx.compiler.compile(node)), "SAT", "UNSAT")


def _cmd_valid(ctx, out):
    node = ctx.sentence(ctx.args.formula)
    holds = fa.is_universal_plus(ctx.compiler.compile(node))
    return _verdict(out, holds, "VALID", "NOT-VALID")


def _format_word(alphabet, word):
    return " ".join(str(alphabet[x]) for x in word)


def _cmd_equiv(ctx, out):
    c = ctx.compiler
    left, right = ctx.sentence(ctx.args.left), ctx.sentence(ctx.args.right)
    word = fa.find_difference(c.compile(left), c.compile(right))
    code = _verdict(out, word is None, "EQUIVALENT", "NOT-EQUIVALENT")
    if word is not None:
        print(f"witness: {_format_word(c.alphabet, word)}", file=out)
    return code


def _cmd_weight(ctx, out):
    k = make_semiring(ctx.args.semiring)
    node = ctx.sentence(ctx.args.formula)
    w = ctx.trace()
    value = ctx.compiler.compile_weighted(node, k).behavior(w)
    if ctx.args.oracle:
        expected = Evaluator(ctx.counts, k).weight(node, {}, tuple(w))
        if not k.equals(expected, value):
            print(f"DISAGREEMENT automaton={k.format(value)} oracle={k.format(expected)}",
                  file=sys.stderr)
            return EXIT_DISAGREE
    print(k.format(value), file=out)
    return EXIT_HOLDS


def _cmd_wequiv(ctx, out):
    k = make_semiring(ctx.args.semiring)
    c = ctx.compiler
    left, right = ctx.sentence(ctx.args.left), ctx.sentence(ctx.args.right)
    word = wa.find_weight_difference(c.compile_weighted(left, k), c.compile_weighted(right, k))
    code = _verdict(out, word is None, "EQUIVALENT", "NOT-EQUIVALENT")
    if word is not None:
        print(f"witness: {_format_word(c.alphabet, word)}", file=out)
    return code


def _cmd_compile(ctx, out):
    node = ctx.sentence(ctx.args.formula)
    if ctx.args.weighted or is_weighted(node):
        a = ctx.compiler.compile_weighted(node, make_semiring(ctx.args.semiring))
        text = wa.to_dot(a) if ctx.args.format == "dot" else json.dumps(wa.to_json(a), indent=1)
    else:
        a = ctx.compiler.compile(node)
        text = fa.to_dot(a) if ctx.args.format == "dot" else json.dumps(fa.to_json(a), indent=1)
    with open(ctx.args.out, "w") as fh:
        fh.write(text if text.endswith("\n") else text + "\n")
    print(f"wrote {a.n_states} states to {ctx.args.out}", file=out)
    return EXIT_HOLDS


_COMMANDS = {
    "check": _cmd_check, "sat": _cmd_sat, "valid": _cmd_valid, "equiv": _cmd_equiv,
    "weight": _cmd_weight, "wequiv": _cmd_wequiv, "compile": _cmd_compile,
}


def run(argv=None, out=None):
    """Run the CLI and return its exit code."""
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "template":
        print(template_text(args.name, args.weighted), file=out)
        return EXIT_HOLDS
    try:
        ctx = _Context(args)
        return _COMMANDS[args.command](ctx, out)
    except (ParintError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
