"""Invariant suites driven by the command line."""
