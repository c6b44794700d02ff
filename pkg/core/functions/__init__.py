"""
Benchmark functions with analytic gradients.
"""

from .base_function import TestFunction, normalize_name

__all__ = ["TestFunction", "normalize_name"]
