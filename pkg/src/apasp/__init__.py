"""Approximate all-pairs shortest paths."""
