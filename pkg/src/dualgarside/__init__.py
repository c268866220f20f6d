"""Exact-arithmetic engine for dual Garside lattice verdicts on euclidean Coxeter groups."""

__version__ = "0.1.0"
