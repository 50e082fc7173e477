"""
akverify - exact tensor calculus and verification harness for
left-invariant almost-Hermitian geometry on four-dimensional Lie algebras.
"""

__version__ = "0.1.0"
