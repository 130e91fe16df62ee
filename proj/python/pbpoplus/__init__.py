"""PBPO+ graph rewriting over lattice-labeled graphs.

Graphs, rules and results are plain dicts in the same JSON shape the
pbpo command line reads and writes.
"""

import json

from . import _core
from ._core import PbpoError

__all__ = [
    "PbpoError",
    "fixture_names",
    "fixture",
    "is_heyting",
    "meet",
    "join",
    "validate",
    "match",
    "apply",
    "normalize",
    "check_determinism",
    "classifier",
    "translate",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def fixture_names():
    return list(_core.fixture_names())


def fixture(name):
    return json.loads(_core.fixture(name))


def is_heyting(lattice):
    return _core.is_heyting(_text(lattice))


def meet(lattice, a, b):
    return _core.meet(_text(lattice), a, b)


def join(lattice, a, b):
    return _core.join(_text(lattice), a, b)


def validate(rule):
    """Raises PbpoError for an invalid rule; returns whether tL is monic."""
    return _core.validate(_text(rule))


def match(rule, host, constraint="any", order="adherence"):
    return json.loads(_core.match(_text(rule), _text(host), constraint, order))


def apply(rule, host, match_index=0, constraint="any", bottom_right=False):
    return json.loads(_core.apply(_text(rule), _text(host), match_index, constraint, bottom_right))


def normalize(rules, host, strategy="first", seed=0, max_steps=1000, constraint="any"):
    return json.loads(
        _core.normalize([_text(r) for r in rules], _text(host), strategy, seed, max_steps, constraint)
    )


def check_determinism(rule):
    return _core.check_determinism(_text(rule))


def classifier(graph):
    return json.loads(_core.classifier(_text(graph)))


def translate(source_format, rule):
    return json.loads(_core.translate(source_format, _text(rule)))
