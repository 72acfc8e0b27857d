"""
Dataset generators.
"""
