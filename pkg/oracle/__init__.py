"""Brute-force character decomposition used to cross-check the closed formula."""
