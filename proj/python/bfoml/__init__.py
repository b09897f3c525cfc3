"""Satisfiability toolkit for bundled first-order modal logic.

Formulas are parsed from the ASCII syntax (``E x [] P(x)``, ``A y <> !Q(y)``).
Kripke models travel as dicts with keys worlds, domain, edges, local, rho.
"""

import json

from . import _core
from ._core import (
    ArityError,
    AssignmentError,
    BfomlError,
    FOFormulaError,
    Formula,
    FragmentError,
    ModelError,
    ParseError,
    ResourceLimit,
    classify,
    cleanse,
    free_vars,
    is_clean,
    nnf,
    parse,
    signature,
    translate,
)

__all__ = [
    "ArityError", "AssignmentError", "BfomlError", "FOFormulaError", "Formula",
    "FragmentError", "ModelError", "ParseError", "ResourceLimit", "check",
    "classify", "cleanse", "decide", "enumerate_sat", "fo_check", "free_vars",
    "is_clean", "nnf", "parse", "signature", "translate", "validate",
    "witness_model",
]


def _formula(f):
    return f if isinstance(f, Formula) else parse(f)


def decide(formula, semantics="increasing", budget=None):
    """Tableau verdict as a dict; ``model`` is a model dict or None."""
    args = {} if budget is None else {"budget": budget}
    r = _core.decide(_formula(formula), semantics, **args)
    if r["model"] is not None:
        r["model"] = json.loads(r["model"])
    return r


def check(model, world, formula, assignment=None):
    return _core.check(json.dumps(model), world, _formula(formula), assignment or {})


def validate(model):
    """None for a valid model, else the first violated invariant."""
    return _core.validate(json.dumps(model))


def enumerate_sat(formula, max_worlds=4, max_domain=3, semantics="increasing"):
    r = _core.enumerate_sat(_formula(formula), max_worlds, max_domain, semantics)
    if r is not None:
        r["model"] = json.loads(r["model"])
    return r


def fo_check(model, sentence):
    return _core.fo_check(json.dumps(model), sentence)


def witness_model(model, sentence, repaired=False):
    return json.loads(_core.witness_model(json.dumps(model), sentence, repaired))
