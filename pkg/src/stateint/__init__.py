"""High-precision state integrals of the quantum dilogarithm and their factorization."""
__version__ = "0.1.0"
