"""
Brute-force oracles used as ground truth in tests and `eval --oracle`.
"""
