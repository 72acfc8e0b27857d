"""Test suite for the threshold-tree package."""
