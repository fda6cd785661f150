"""
CNMF Toolkit

Convolutive nonnegative matrix factorization: MU, HALS and ANLS solvers,
a synthetic data generator and a benchmark harness.
"""

__version__ = "0.1.0"
