"""Combinatorial Heegaard Floer homology from nice multi-pointed Heegaard diagrams."""

from .complex import differential, homology, homology_dim, stable_class, stable_equal
from .diagram import HeegaardDiagram, FIXTURES, corpus, load, parse, save, serialize

__version__ = "0.1.0"

__all__ = [
    "HeegaardDiagram", "FIXTURES", "corpus", "load", "parse", "save", "serialize",
    "differential", "homology", "homology_dim", "stable_class", "stable_equal",
]
