"""Oriented Turán theory made executable: compressibility, exact extremal
numbers at small order, extremal constructions, and a bipartite
regularize-and-zoom embedding pipeline."""

__version__ = "0.1.0"
