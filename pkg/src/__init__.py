"""
Explainable k-means / k-medians clustering with threshold trees.
"""
