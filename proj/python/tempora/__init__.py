"""Python facade over the tempora core.

The extension module exchanges structured data as JSON strings; this wrapper
decodes them into plain dicts/lists so callers never touch raw JSON.
"""

import json as _json

import _tempora

SystemDocument = _tempora.SystemDocument
SchemaError = _tempora.SchemaError
TemporaError = _tempora.TemporaError


def load_document(path):
    return _tempora.load_document(str(path))


def loads_document(text):
    return _tempora.loads_document(text)


def dumps_document(document):
    return _json.loads(_tempora.dumps_document(document))


def check_axiom(document, cls="async"):
    return _json.loads(_tempora.check_axiom(document, cls))


def external_behavior(document):
    return _json.loads(_tempora.external_behavior(document))


def check_relation(document1, document2, relation):
    return _json.loads(
        _tempora.check_relation(document1, document2, _json.dumps(relation))
    )


def check_bisimulation(document1, document2, relation):
    return _json.loads(
        _tempora.check_bisimulation(document1, document2, _json.dumps(relation))
    )


def synthesize(document1, document2, flavor, l=0):
    return _json.loads(_tempora.synthesize(document1, document2, flavor, l))


def inclusion(document1, document2):
    return _json.loads(_tempora.inclusion(document1, document2))


def run_suite(suite, seed=0, trials=10):
    return _json.loads(_tempora.run_suite(suite, seed, trials))
