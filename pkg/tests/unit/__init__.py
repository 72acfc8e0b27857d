"""Unit tests for the threshold-tree package."""
