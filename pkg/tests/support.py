"""Shared helpers for the test suite."""

import random

from dwkit.cochains import Cochain, all_tuples
from dwkit.phase import PhaseValue


def random_cochain(group, degree, modulus, rng=None, density=0.5):
    """A random normalized cochain with values in (1/modulus)Z/Z."""
    rng = rng or random.Random(0)
    vals = {}
    for t in all_tuples(group, degree):
        if group.identity in t:
            continue
        if rng.random() < density:
            v = PhaseValue(rng.randrange(modulus), modulus)
            if not v.is_zero():
                vals[t] = v
    return Cochain(group, degree, modulus, vals)
