"""Projection-free subgradient solvers for non-Lipschitz convex minimization."""

__version__ = "1.0.0"
