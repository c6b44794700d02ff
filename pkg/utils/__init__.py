"""
Utility modules for nmls.
"""

__all__ = ['config_manager', 'logger', 'event_bus', 'prng']
