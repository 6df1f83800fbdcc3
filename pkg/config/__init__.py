"""
Configuration package for the BK poset engine.
"""

from config.settings import Settings, settings, get_settings

__all__ = ["Settings", "settings", "get_settings"]
