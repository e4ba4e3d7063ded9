"""Interaction logics for parametric component architectures.

Parse formulas, evaluate them on traces of interactions, compile them to
finite and weighted automata, and decide satisfiability, validity and
equivalence.
"""

from .compiler import (
    Compiler,
    compile_foeil,
    compile_wfoeil,
    decide_equiv,
    decide_sat,
    decide_valid,
    decide_wequiv,
)
from .formula import validate
from .interaction import (
    ComponentSignature,
    Interaction,
    InstanceCounts,
    InteractionAlphabet,
    Trace,
    enumerate_interactions,
    parse_trace,
    validate_interaction,
)
from .parser import parse, to_text
from .semantics import epil_sat, foeil_sat, pil_sat, wepil_eval, wfoeil_eval
from .semiring import check_axioms, make_semiring
from .templates import template, template_names, witness_traces

__version__ = "0.1.0"
