"""Diagram files and result documents."""
