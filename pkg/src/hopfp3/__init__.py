"""Exact construction and verification of small connected Hopf algebras in characteristic p."""
