"""Sampling, catalogs, witness search and randomized lemma verification."""
from .catalog import CatalogEntry, known_catalog, three_by_n_family
from .sampling import Census, inertia_census, sample_state, task_rng
from .verify import VerificationReport, lemma_names, verify_lemma
from .witness import (
    Certification,
    SearchConfig,
    WitnessResult,
    certify_witness,
    compass_search,
    target_inertia_search,
)

__all__ = [
    "CatalogEntry", "Census", "Certification", "SearchConfig", "VerificationReport", "WitnessResult",
    "certify_witness", "compass_search", "inertia_census", "known_catalog", "three_by_n_family",
    "lemma_names", "sample_state", "target_inertia_search", "task_rng", "verify_lemma",
]
