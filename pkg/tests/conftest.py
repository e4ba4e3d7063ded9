import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from parint.interaction import ComponentSignature, InstanceCounts, validate_interaction  # noqa: E402


@pytest.fixture
def ms_sig():
    return ComponentSignature.build({"Master": ["p_m"], "Slave": ["p_s"]},
                                    {"p_m": "2", "p_s": "3"})


@pytest.fixture
def ms_counts(ms_sig):
    return InstanceCounts((1, 2), ms_sig)


@pytest.fixture
def abc_sig():
    """One type with ports a, b, c and a single instance."""
    return ComponentSignature.build({"T": ["a", "b", "c"]})


def letters(sig, counts, *steps):
    """Build a trace from strings like ``"p_m@1.1 p_s@2.1"``."""
    return tuple(validate_interaction(sig, counts, s.split()) for s in steps)
