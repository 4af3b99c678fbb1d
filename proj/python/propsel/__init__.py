# Copyright 2026 The propsel Authors
# SPDX-License-Identifier: Apache-2.0
"""Proposer selection simulator and analytics."""

import json
import os

from ._core import (
    GWEI_PER_ETH,
    Error,
    RoundDistribution,
    SelectionParams,
    compute_shuffled_index,
    derive_slot_seed,
    eligibility_check,
    eligibility_probability,
    fold_balance,
    proposer_probabilities,
    random_byte,
    shuffle_mapping,
)
from . import _core

__all__ = [
    "GWEI_PER_ETH",
    "Error",
    "RoundDistribution",
    "SelectionParams",
    "compute_shuffled_index",
    "derive_slot_seed",
    "eligibility_check",
    "eligibility_probability",
    "fold_balance",
    "proposer_probabilities",
    "proposer_vector",
    "random_byte",
    "run_scenario",
    "shuffle_mapping",
    "simulate",
]


def _as_json(doc):
    if isinstance(doc, (str, os.PathLike)):
        with open(doc) as f:
            return f.read()
    return json.dumps(doc)


def proposer_vector(registry, seed, params=None, trace=False):
    """compute_proposer_index on a registry spec dict; returns the vector document."""
    params = params or SelectionParams.post_7251()
    return json.loads(_core._proposer_vector(json.dumps(registry), seed, params, trace))


def run_scenario(scenario, evidence=None, params=None, form="exact"):
    """Consolidate a scenario (dict or JSON file path) and compute its marginals."""
    params = params or SelectionParams.post_7251()
    ev = None if evidence is None else str(evidence)
    return json.loads(_core._scenario_run(_as_json(scenario), ev, params, form))


def simulate(registry, slots, seed, params=None, threads=1, trace=False, max_iterations=None):
    """Monte Carlo run; returns the simulation report document."""
    params = params or SelectionParams.post_7251()
    return json.loads(
        _core._simulate(json.dumps(registry), slots, seed, params, threads, trace, max_iterations)
    )
