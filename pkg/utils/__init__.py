"""
Shared helpers: logging decorators and reference constants.
"""

from utils.constants import CENSUS, DOT, EXIT, NAMED, REFERENCE
from utils.decorators import log_check, log_method

__all__ = ["CENSUS", "DOT", "EXIT", "NAMED", "REFERENCE", "log_check", "log_method"]
