"""Adversarial instance families and checks of their indistinguishability claims."""
from .chopglue import AdversaryResult, adversary_stages, chop, glue
from .epsilon import EpsilonFamily, epsilon_family, epsilon_harness, verify_epsilon_views
from .fat import enumerate_fat_rings, fat_ring, fat_ring_count, verify_fat_views
from .nested import NestedRingFamily, nested_ring_family, verify_nested_views

__all__ = [
    "AdversaryResult", "adversary_stages", "chop", "glue",
    "EpsilonFamily", "epsilon_family", "epsilon_harness", "verify_epsilon_views",
    "enumerate_fat_rings", "fat_ring", "fat_ring_count", "verify_fat_views",
    "NestedRingFamily", "nested_ring_family", "verify_nested_views",
]
