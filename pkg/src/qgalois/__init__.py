"""Exact quantum algebras, skew monoid rings, generalized Weyl algebras and
certification of homomorphism claims between them."""

__version__ = "0.1.0"
