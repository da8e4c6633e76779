"""Shared fixtures: deterministic randomized field corpus and helpers."""

import random

import pytest

from pinsep.perfect import Context
from pinsep.subfields import Subfield

VAR_NAMES = ("X", "Y", "Z")


def random_element(ctx, rng, max_level=2, max_terms=3):
    """A random element of bounded level with small polynomial body."""
    e = ctx.zero()
    for _ in range(rng.randint(1, max_terms)):
        t = ctx.const(rng.randint(1, ctx.p - 1))
        for v in ctx.variables:
            if rng.random() < 0.6:
                lvl = rng.randint(0, max_level)
                t = t * ctx.root_of_variable(v, lvl) ** rng.randint(1, 2)
        e = e + t
    return e


def random_field(rng, p=None):
    """One random finitely generated extension, or None if rejected.

    Bounds: <= 3 variables, <= 3 generators, generator levels <= 2.  The
    summed generator levels bound the degree, so oversized instances are
    rejected before any span is computed.
    """
    p = p or rng.choice([2, 2, 2, 3])
    nv = rng.randint(2, 3)
    ctx = Context(p, VAR_NAMES[:nv])
    ngens = rng.randint(1, 3)
    max_terms = 3 if p == 2 else 2
    budget = 6 if p == 2 else 4
    gens = [random_element(ctx, rng, max_level=2, max_terms=max_terms)
            for _ in range(ngens)]
    if sum(g.level for g in gens) > budget:
        return None
    K = Subfield.span(ctx, gens)
    if K.degree_log == 0:
        return None
    return K


def field_corpus(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        K = random_field(rng)
        if K is not None:
            out.append(K)
    return out


@pytest.fixture(scope="session")
def small_corpus():
    """30 random fields for the property suites."""
    return field_corpus(1702, 30)


@pytest.fixture(scope="session")
def acceptance_corpus():
    """The >= 200 field corpus shared by the acceptance criteria."""
    return field_corpus(20240817, 200)


def fields_equal(a, b):
    return (a.degree_log == b.degree_log and a.contains_field(b)
            and b.contains_field(a))
