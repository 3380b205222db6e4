"""Finite-field AGM jellyfish swarms and the arithmetic around them."""

from .finite_field import GF, FieldElement, field_from_q, make_field

__all__ = ["GF", "FieldElement", "field_from_q", "make_field"]
__version__ = "0.1.0"
