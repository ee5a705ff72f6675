"""Generalised Auslander-Dlab-Ringel algebras from systems of ideals.

Exact-arithmetic construction of the algebras A(R, I), certification of their
quasi-hereditary structure, the tilting bimodule T and Ringel duality.
"""

__version__ = "0.1.0"
