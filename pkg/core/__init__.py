"""
Core functionality of nmls: line searches, benchmark functions, bench grid,
data profiles and bound verification.
"""

__version__ = "0.1.0"
