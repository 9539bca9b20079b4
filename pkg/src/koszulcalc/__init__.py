"""Exact-arithmetic Koszul calculus for quadratic quiver algebras."""

from .fields import GF, QQ, PrimeField, Rationals, field_from_name

__version__ = "0.1.0"
