"""Ready-made sentences for common parametric architectures.

Each template has an unweighted and a weighted sentence, a default signature
(ports weighted 2, 3, 4, ... in declaration order), the smallest instance
counts it is meant for, and a pair of witness traces: one conforming to the
architecture and one violating it.

``pipes_filters`` and ``request_response`` negate shuffles, which lies
outside the restricted negation fragment; they are validated with
``relaxed_negation=True``.
"""

from dataclasses import dataclass

from .formula import validate
from .interaction import ComponentSignature, InstanceCounts, Trace, validate_interaction
from .parser import parse


@dataclass(frozen=True)
class Template:
    name: str
    types: tuple          # ((type name, (ports...)), ...)
    min_counts: tuple
    text: str
    weighted_text: str
    relaxed_negation: bool = False

    def signature(self, weights=None):
        """The default signature; ``weights`` overrides ``{port: literal}``."""
        defaults = {}
        n = 2
        for _, ports in self.types:
            for p in ports:
                defaults[p] = str(n)
                n += 1
        defaults.update(weights or {})
        return ComponentSignature.build(dict(self.types), defaults)

    def counts(self, sig=None):
        return InstanceCounts(self.min_counts, sig)


_PF_CONSTRAINT = (
    "A z1:Pipe . A y2:Filter . ("
    "(A z2:Filter (y2 != z2) . ((p_o(z1) & f_e(y2)) ~ true) & !((p_o(z1) & f_e(z2)) ~ true))"
    " | !((p_o(z1) & f_e(y2)) ~ true))"
)

_RR_CONSTRAINT = (
    "A y4:Coordinator . A z3:Client . A z2:Service . ("
    "!(only(p_q(z3), p_a(y4), p_g(z2)) ~ true)"
    " | (A t3:Client . A t2:Service (z2 != t2) . "
    "(only(p_q(z3), p_a(y4), p_g(z2)) ~ true) & !(only(p_q(t3), p_a(y4), p_g(t2)) ~ true)))"
)


def _xi(only, cat):
    return (f"{only}(p_n(y3), p_m(x4)) {cat} {only}(p_q(y3), p_a(x4), p_g(y2)) {cat} "
            f"{only}(p_c(y3), p_d(x4), p_s(y2))")


TEMPLATES = {
    "master_slave": Template(
        "master_slave",
        (("Master", ("p_m",)), ("Slave", ("p_s",))),
        (1, 2),
        "AC x:Slave . E y:Master . only(p_m(y), p_s(x))",
        "PC x:Slave . SE y:Master . wonly(p_m(y), p_s(x))",
    ),
    "star": Template(
        "star",
        (("Node", ("p",)),),
        (2,),
        "E x:Node . AC y:Node (x != y) . only(p(x), p(y))",
        "SE x:Node . PC y:Node (x != y) . wonly(p(x), p(y))",
    ),
    "pipes_filters": Template(
        "pipes_filters",
        (("Pipe", ("p_e", "p_o")), ("Filter", ("f_e", "f_o"))),
        (2, 1),
        "AC x2:Filter . E x1:Pipe . E y1:Pipe (x1 != y1) . "
        "(only(p_o(x1), f_e(x2)) ; only(p_e(y1), f_o(x2))) & (" + _PF_CONSTRAINT + ")",
        "PC x2:Filter . SE x1:Pipe . SE y1:Pipe (x1 != y1) . "
        "(wonly(p_o(x1), f_e(x2)) w; wonly(p_e(y1), f_o(x2))) w& (" + _PF_CONSTRAINT + ")",
        relaxed_negation=True,
    ),
    "repository": Template(
        "repository",
        (("Repository", ("p_r",)), ("Accessor", ("p_d",))),
        (1, 2),
        "E x1:Repository . AC x2:Accessor . only(p_r(x1), p_d(x2))",
        "SE x1:Repository . PC x2:Accessor . wonly(p_r(x1), p_d(x2))",
    ),
    "blackboard": Template(
        "blackboard",
        (("Blackboard", ("p_d", "p_a")), ("Controller", ("p_r", "p_l", "p_e")),
         ("Source", ("p_n", "p_t", "p_w"))),
        (1, 1, 2),
        "(E x1:Blackboard . E x2:Controller . (only(p_d(x1), p_r(x2)) ; "
        "(AS x3:Source . only(p_d(x1), p_n(x3))) ; "
        "(ES y3:Source . (only(p_l(x2), p_t(y3)) ; only(p_e(x2), p_w(y3), p_a(x1))))+))+",
        "(SE x1:Blackboard . SE x2:Controller . (wonly(p_d(x1), p_r(x2)) w; "
        "(PS x3:Source . wonly(p_d(x1), p_n(x3))) w; "
        "(SS y3:Source . (wonly(p_l(x2), p_t(y3)) w; wonly(p_e(x2), p_w(y3), p_a(x1))))w+))w+",
    ),
    "request_response": Template(
        "request_response",
        (("Registry", ("p_e", "p_u", "p_t")), ("Service", ("p_r", "p_g", "p_s")),
         ("Client", ("p_l", "p_o", "p_n", "p_q", "p_c")),
         ("Coordinator", ("p_m", "p_a", "p_d"))),
        (1, 1, 1, 1),
        "(E x1:Registry . ((AS x2:Service . only(p_e(x1), p_r(x2))) ; "
        "(AS x3:Client . (only(p_l(x3), p_u(x1)) ; only(p_o(x3), p_t(x1)))))) ; "
        "(ES y2:Service . E x4:Coordinator . EC y3:Client . (" + _xi("only", ";") + ") & ("
        + _RR_CONSTRAINT + "))+",
        "(SE x1:Registry . ((PS x2:Service . wonly(p_e(x1), p_r(x2))) w; "
        "(PS x3:Client . (wonly(p_l(x3), p_u(x1)) w; wonly(p_o(x3), p_t(x1)))))) w; "
        "(SS y2:Service . SE x4:Coordinator . SC y3:Client . (" + _xi("wonly", "w;") + ") w& ("
        + _RR_CONSTRAINT + "))w+",
        relaxed_negation=True,
    ),
    "publish_subscribe": Template(
        "publish_subscribe",
        (("Publisher", ("p_a", "p_t")), ("Topic", ("p_n", "p_r", "p_c", "p_s", "p_f")),
         ("Subscriber", ("p_e", "p_g", "p_d"))),
        (1, 1, 1),
        "(ES x2:Topic . ((ES x1:Publisher . (only(p_a(x1), p_n(x2)) ; only(p_t(x1), p_r(x2)))) ; "
        "(ES x3:Subscriber . (only(p_e(x3), p_c(x2)) ; only(p_g(x3), p_s(x2)) ; "
        "only(p_d(x3), p_f(x2))))))+",
        "(SS x2:Topic . ((SS x1:Publisher . (wonly(p_a(x1), p_n(x2)) w; wonly(p_t(x1), p_r(x2)))) w; "
        "(SS x3:Subscriber . (wonly(p_e(x3), p_c(x2)) w; wonly(p_g(x3), p_s(x2)) w; "
        "wonly(p_d(x3), p_f(x2))))))w+",
    ),
}


def template_names():
    return list(TEMPLATES)


def template_text(name, weighted=False):
    t = TEMPLATES[name]
    return t.weighted_text if weighted else t.text


def template(name, weighted=False, sig=None):
    """Parse and validate a template sentence against ``sig`` (default signature if None)."""
    t = TEMPLATES[name]
    sig = sig or t.signature()
    node = parse(template_text(name, weighted), sig)
    return validate(node, sentence=True, relaxed_negation=t.relaxed_negation)


def _letter(sig, counts, *refs):
    return validate_interaction(sig, counts, refs)


def witness_traces(name, sig=None, counts=None):
    """``(conforming, violating)`` traces for a template at the given counts
    (the template's minimal counts by default)."""
    t = TEMPLATES[name]
    sig = sig or t.signature()
    counts = counts or t.counts(sig)
    r = list(counts)

    def a(*refs):
        return _letter(sig, counts, *refs)

    if name == "master_slave":
        good = [a("p_m@1.1", f"p_s@2.{j}") for j in range(1, r[1] + 1)]
        bad = good[::-1] if len(good) > 1 else [a("p_s@2.1")]
    elif name == "star":
        # centre 1: its own block is any word, every other node talks to it
        hub = [f"p@1.{j}" for j in range(1, min(2, r[0]) + 1)]
        good = [a(*hub)] + [a("p@1.1", f"p@1.{j}") for j in range(2, r[0] + 1)]
        bad = [a(f"p@1.{j}") for j in range(1, r[0] + 1)]
    elif name == "pipes_filters":
        good, bad = [], []
        for f in range(1, r[1] + 1):
            good += [a("p_o@1.1", f"f_e@2.{f}"), a("p_e@1.2", f"f_o@2.{f}")]
        bad = [a("p_e@1.2", "f_o@2.1"), a("p_o@1.1", "f_e@2.1")]
    elif name == "repository":
        good = [a("p_r@1.1", f"p_d@2.{j}") for j in range(1, r[1] + 1)]
        bad = [a("p_r@1.1", "p_d@2.1")] + [a(f"p_d@2.{j}") for j in range(2, r[1] + 1)]
        if r[1] == 1:
            bad = [a("p_d@2.1")]
    elif name == "blackboard":
        notify = [a("p_d@1.1", f"p_n@3.{j}") for j in range(1, r[2] + 1)]
        good = [a("p_d@1.1", "p_r@2.1")] + notify + [
            a("p_l@2.1", "p_t@3.1"), a("p_e@2.1", "p_w@3.1", "p_a@1.1")]
        bad = [a("p_d@1.1", "p_r@2.1")] + notify + [a("p_e@2.1", "p_w@3.1", "p_a@1.1")]
    elif name == "request_response":
        enrol = [a("p_e@1.1", "p_r@2.1"), a("p_l@3.1", "p_u@1.1"), a("p_o@3.1", "p_t@1.1")]
        serve = [a("p_n@3.1", "p_m@4.1"), a("p_q@3.1", "p_a@4.1", "p_g@2.1"),
                 a("p_c@3.1", "p_d@4.1", "p_s@2.1")]
        good = enrol + serve
        bad = serve + enrol
    elif name == "publish_subscribe":
        pub = [a("p_a@1.1", "p_n@2.1"), a("p_t@1.1", "p_r@2.1")]
        sub = [a("p_e@3.1", "p_c@2.1"), a("p_g@3.1", "p_s@2.1"), a("p_d@3.1", "p_f@2.1")]
        good = pub + sub
        # the topic forwards to the subscriber before it has heard from the publisher
        bad = [pub[0], sub[0], sub[1], pub[1], sub[2]]
    else:
        raise KeyError(name)
    return Trace(good), Trace(bad)
