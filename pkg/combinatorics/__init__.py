"""Closed-form counts: derangement numbers and tensor-power multiplicities."""
