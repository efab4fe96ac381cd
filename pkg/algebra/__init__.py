"""Exact algebras: walled Brauer diagrams, S_k group algebra and the tensor model."""
