"""monoidfa - finite automata labelled by elements of arbitrary monoids."""

__version__ = "0.1.0"
