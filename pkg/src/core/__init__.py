"""
Core domain: types, validation, errors, cost evaluation and file formats.
"""
