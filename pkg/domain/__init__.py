"""Core combinatorial value types shared by every module."""
