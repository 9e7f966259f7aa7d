"""Lattice congruences of the weak order on permutations, the sub-Hopf-algebras
of the Malvenuto–Reutenauer algebra they define, and their quotient fans."""

__version__ = "0.1.0"
