"""
Configuration for the threshold-tree package (XKM_* environment / .env).
"""

from .settings import settings  # re-export singleton

__all__ = ["settings"]
