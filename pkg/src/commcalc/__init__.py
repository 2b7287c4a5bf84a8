"""Commutator calculus for free groups and presentation complexes."""
