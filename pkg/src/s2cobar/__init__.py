"""Surjection-operad algebra, bar and cobar constructions with S2 structure,
and verification suites for them."""
from .rings import QQ, ZZ, IntegersMod, parse_ring
from .vector import Vector

__all__ = ["QQ", "ZZ", "IntegersMod", "parse_ring", "Vector"]
