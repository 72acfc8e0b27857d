"""
Clustering algorithms: reference centers, optimal 2-cuts, IMM and the ID3 baseline.
"""
