"""Sparse formal linear combinations over an exact coefficient ring."""
from __future__ import annotations

from typing import Callable, Hashable, Iterable


class Vector:
    """A finite formal sum ``sum c_k * k`` with no stored zero coefficients.

    Keys are arbitrary hashable basis labels. Vectors are treated as
    immutable values; every operation returns a new vector.
    """

    __slots__ = ("ring", "_t")

    def __init__(self, ring, terms=None):
        self.ring = ring
        t = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                c = ring(c)
                if c:
                    c = ring(t.get(k, 0) + c)
                    if c:
                        t[k] = c
                    else:
                        t.pop(k, None)
        self._t = t

    @classmethod
    def _raw(cls, ring, t: dict) -> "Vector":
        v = cls.__new__(cls)
        v.ring = ring
        v._t = t
        return v

    @classmethod
    def basis(cls, ring, key, coeff=1) -> "Vector":
        return cls(ring, {key: coeff})

    @classmethod
    def zero(cls, ring) -> "Vector":
        return cls._raw(ring, {})

    def items(self):
        return self._t.items()

    def keys(self):
        return self._t.keys()

    def __iter__(self):
        return iter(self._t)

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def __getitem__(self, key):
        return self._t.get(key, self.ring(0))

    def __contains__(self, key):
        return key in self._t

    def __eq__(self, other):
        if isinstance(other, Vector):
            return self._t == other._t
        if other == 0:
            return not self._t
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._t.items()))

    def _combine(self, other: "Vector", sign: int) -> "Vector":
        ring = self.ring
        t = dict(self._t)
        for k, c in other._t.items():
            c = ring(t.get(k, 0) + sign * c)
            if c:
                t[k] = c
            else:
                t.pop(k, None)
        return Vector._raw(ring, t)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        ring = self.ring
        return Vector._raw(ring, {k: ring(-c) for k, c in self._t.items() if ring(-c)})

    def __mul__(self, scalar):
        ring = self.ring
        scalar = ring(scalar)
        if not scalar:
            return Vector._raw(ring, {})
        t = {}
        for k, c in self._t.items():
            c = ring(c * scalar)
            if c:
                t[k] = c
        return Vector._raw(ring, t)

    __rmul__ = __mul__

    def apply(self, f: Callable[[Hashable], "Vector"]) -> "Vector":
        """Extend ``f`` (basis label -> Vector) linearly."""
        return linear_sum(self.ring, ((c, f(k)) for k, c in self._t.items()))

    def map_keys(self, f: Callable[[Hashable], Hashable]) -> "Vector":
        return Vector(self.ring, ((f(k), c) for k, c in self._t.items()))

    def sorted_items(self):
        return sorted(self._t.items(), key=lambda kc: repr(kc[0]))

    def __repr__(self):
        if not self._t:
            return "0"
        return " + ".join(f"{c}*{k!r}" for k, c in self.sorted_items())


def linear_sum(ring, pairs: Iterable) -> Vector:
    """``sum c * v`` for (scalar, Vector) pairs, accumulated in one dict."""
    acc = {}
    for c, v in pairs:
        if not c:
            continue
        for k, x in v.items():
            acc[k] = acc.get(k, 0) + c * x
    return Vector(ring, acc)


def accumulate(acc: dict, key, coeff):
    acc[key] = acc.get(key, 0) + coeff
