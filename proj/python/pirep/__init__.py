"""Exact representation identities of finite groups."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    Identity,
    Rep,
    catalog_names,
    catalog_reps,
    character_identity,
    class_identity,
    dimension_identity,
    experiment_names,
    galois_conjugate,
    gamma_separating_identity,
    guard,
    identity_from_json,
    minimal_poly_identity,
    probability_identity,
    psi,
    rep_from_json,
    resolve_rep,
    s2_identity,
    s4_separating_identity,
    sl2_check,
    sl2_trace_identity,
    standard_identity,
    theta,
)


def rep(ref):
    return resolve_rep(ref)


def check(identity, rep, mode="auto", **options):
    return json.loads(_core.check(identity, rep, mode, **options))


def compare(a, b, jobs=1):
    return json.loads(_core.compare(a, b, jobs))


def run_experiment(name):
    return json.loads(_core.run_experiment(name))


def relation_probability(u, rep):
    return Fraction(_core.relation_probability(u, rep))


__all__ = [
    "Identity", "Rep", "catalog_names", "catalog_reps", "character_identity", "check", "class_identity",
    "compare", "dimension_identity", "experiment_names", "galois_conjugate", "gamma_separating_identity",
    "guard", "identity_from_json", "minimal_poly_identity", "probability_identity", "psi",
    "relation_probability", "rep", "rep_from_json", "resolve_rep", "run_experiment", "s2_identity",
    "s4_separating_identity", "sl2_check", "sl2_trace_identity", "standard_identity", "theta",
]
