"""Integration tests for the threshold-tree package."""
