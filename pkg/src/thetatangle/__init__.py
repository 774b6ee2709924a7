"""Rational tangle calculus and spatial-graph diagrams."""
