"""Yangian Bethe algebras and equivariant quantum cohomology of T*F_lambda, exactly."""

__version__ = "0.1.0"
