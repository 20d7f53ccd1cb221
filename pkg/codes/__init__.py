"""
Core package for CodeClass

This package contains the GF(2) algebra, code metrics, equivalence testing and
the two classification algorithms (column extension and proper-set search).
"""

__version__ = "1.0.0"
