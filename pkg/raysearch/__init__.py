"""
raysearch: deterministic and randomized strategies for searching paths
meeting at a common origin with one or more robots, together with tools for
their analysis.
"""
__version__ = "1.0.0"
