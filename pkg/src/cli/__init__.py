"""
Command-line interface (`xkm`).
"""
