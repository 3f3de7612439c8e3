"""Exact calculator and certificate engine for L2-invariants of lattices.

Computes restricted root data, parabolic combinatorics, Novikov-Shubin
bounds with derivation certificates, L2-torsion verdicts, and numeric
spectral density estimates for free-abelian deck groups.
"""

__version__ = "0.1.0"
