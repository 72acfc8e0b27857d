"""
Utils package for logging, result models and parallel helpers.
"""
