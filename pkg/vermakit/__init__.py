"""
exact-arithmetic computations for |1|-graded parabolics of sl(n):
weight patterns, induced-module rewriting, singular vectors and lifting checks
"""

__version__ = '0.1.0'
