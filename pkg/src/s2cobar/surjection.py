"""The surjection operad with Berger-Fresse signs.

A surjection of arity n and degree d is stored as a plain tuple of
n + d integers in {1..n}. Operad elements are ``Vector``s keyed by such
tuples; degenerate or non-surjective sequences are identified with zero.

Signs come from the caesuras of a sequence: an entry is a caesura when its
value occurs again later. Caesuras behave like odd coordinates. Deleting a
caesura with index e contributes (-1)^e; deleting a last occurrence turns the
previous occurrence (caesura e) into a last one and contributes -(-1)^e.
Composition carries the sign of the shuffle that interleaves the caesuras
of the two factors.
"""
from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Iterable

from .errors import ArityMismatch, InvalidValue, SlotOutOfRange
from .rings import ZZ
from .vector import Vector

Surjection = tuple


def is_nondegenerate(u) -> bool:
    return all(u[i] != u[i + 1] for i in range(len(u) - 1))


def is_valid(u, n: int) -> bool:
    return is_nondegenerate(u) and len(set(u)) == n and all(1 <= x <= n for x in u)


def normalize(entries: Iterable[int], n: int):
    """Validate a sequence; return the tuple or None (the zero element)."""
    u = tuple(int(x) for x in entries)
    for x in u:
        if x < 1 or x > n:
            raise InvalidValue(f"entry {x} outside 1..{n}")
    if not is_nondegenerate(u) or len(set(u)) != n:
        return None
    return u


def arity(u) -> int:
    return max(u) if u else 0


def degree(u) -> int:
    return len(u) - arity(u)


def caesuras(u) -> list:
    """Positions (0-based) whose value occurs again later."""
    last = {}
    for i, v in enumerate(u):
        last[v] = i
    return [i for i, v in enumerate(u) if last[v] != i]


def complexity(u) -> int:
    """Largest number of order switches between two values (1 for arity <= 1)."""
    values = sorted(set(u))
    best = 1
    for a, b in itertools.combinations(values, 2):
        prev = None
        blocks = 0
        for x in u:
            if x == a or x == b:
                if x != prev:
                    blocks += 1
                    prev = x
        best = max(best, blocks - 1)
    return best


def brace_generator(n: int) -> Surjection:
    """(1,2,1,3,1,...,1,n+1,1): the n-argument brace, degree n."""
    out = [1]
    for k in range(2, n + 2):
        out += [k, 1]
    return tuple(out)


def product_generator(n: int) -> Surjection:
    return tuple(range(1, n + 1))


@lru_cache(maxsize=None)
def differential_terms(u: Surjection) -> tuple:
    """Signed single-entry deletions of u as a tuple of (sequence, sign)."""
    n = arity(u)
    cs = caesuras(u)
    index = {pos: e for e, pos in enumerate(cs)}
    prev = {}
    seen = {}
    for i, v in enumerate(u):
        if v in seen:
            prev[i] = seen[v]
        seen[v] = i
    out = {}
    for i, v in enumerate(u):
        w = u[:i] + u[i + 1:]
        if not is_valid(w, n):
            continue
        if i in index:
            sign = -1 if index[i] % 2 else 1
        else:
            sign = 1 if index[prev[i]] % 2 else -1
        out[w] = out.get(w, 0) + sign
    return tuple((w, c) for w, c in out.items() if c)


def differential(x: Vector) -> Vector:
    acc = {}
    for u, c in x.items():
        for w, s in differential_terms(u):
            acc[w] = acc.get(w, 0) + s * c
    return Vector(x.ring, acc)


def _inversions(seq) -> int:
    n = 0
    for i in range(len(seq)):
        si = seq[i]
        for j in range(i + 1, len(seq)):
            if si > seq[j]:
                n += 1
    return n


@lru_cache(maxsize=None)
def compose_terms(u: Surjection, k: int, v: Surjection) -> tuple:
    """u o_k v as a tuple of (sequence, coefficient)."""
    r, s = arity(u), arity(v)
    if not 1 <= k <= r:
        raise SlotOutOfRange(f"slot {k} not in 1..{r}")
    cu = {pos: e for e, pos in enumerate(caesuras(u))}
    cv = {pos: e for e, pos in enumerate(caesuras(v))}
    occ = [i for i, x in enumerate(u) if x == k]
    p = len(occ)
    L = len(v)
    n = r + s - 1
    shifted_v = [x + k - 1 for x in v]
    out = {}
    for cuts in itertools.combinations_with_replacement(range(L), p - 1):
        bounds = (0,) + cuts + (L - 1,)
        w = []
        tags = []
        t = 0
        for i, x in enumerate(u):
            if x != k:
                w.append(x if x < k else x + s - 1)
                if i in cu:
                    tags.append(cu[i])
            else:
                a, b = bounds[t], bounds[t + 1]
                for q in range(a, b + 1):
                    w.append(shifted_v[q])
                    if q == b and t < p - 1:
                        tags.append(cu[i])
                    elif q in cv:
                        tags.append(len(cu) + cv[q])
                t += 1
        w = tuple(w)
        if not is_valid(w, n):
            continue
        sign = -1 if _inversions(tags) % 2 else 1
        out[w] = out.get(w, 0) + sign
    return tuple((w, c) for w, c in out.items() if c)


def compose(x: Vector, k: int, y: Vector) -> Vector:
    """Operadic partial composition x o_k y, extended bilinearly."""
    acc = {}
    for u, a in x.items():
        for v, b in y.items():
            for w, s in compose_terms(u, k, v):
                acc[w] = acc.get(w, 0) + s * a * b
    return Vector(x.ring, acc)


def relabel(u: Surjection, perm) -> Surjection:
    """Rename value i to perm[i-1]."""
    return tuple(perm[x - 1] for x in u)


def sigma_act(perm, x: Vector) -> Vector:
    """Symmetric group action renaming values; surjections carry no sign."""
    perm = tuple(perm)
    for u in x.keys():
        if arity(u) != len(perm):
            raise ArityMismatch(f"permutation of {len(perm)} letters on arity {arity(u)}")
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise InvalidValue(f"{perm} is not a permutation")
    return Vector(x.ring, ((relabel(u, perm), c) for u, c in x.items()))


def standardize(u: Surjection):
    """Relabel so first occurrences read 1,2,...; returns (u_std, order).

    ``order[i]`` is the original value that became i+1.
    """
    order = []
    for x in u:
        if x not in order:
            order.append(x)
    pos = {v: i + 1 for i, v in enumerate(order)}
    return tuple(pos[x] for x in u), tuple(order)


def _insert_position(u, S) -> int:
    for i, x in enumerate(u):
        if x not in S:
            return i
    return len(u)


def insertion_homotopy_term(j: int, S, u: Surjection):
    """Insert j just before the first entry whose value is not in S."""
    S = frozenset(S)
    q = _insert_position(u, S)
    w = u[:q] + (j,) + u[q:]
    return w if is_valid(w, arity(u)) else None


def insertion_homotopy(j: int, S, x: Vector) -> Vector:
    acc = {}
    for u, c in x.items():
        w = insertion_homotopy_term(j, S, u)
        if w is not None:
            acc[w] = acc.get(w, 0) + c
    return Vector(x.ring, acc)


def t_operator_term(j: int, S, u: Surjection):
    """The error term of the insertion homotopy, as (sequence, coeff) or None."""
    S = frozenset(S)
    if u.count(j) >= 2:
        return None
    q = _insert_position(u, S)
    if q < len(u) and u[q] == j:
        return (u, -1)
    w = tuple(x for x in u if x != j)
    q = _insert_position(w, S)
    w = w[:q] + (j,) + w[q:]
    if not is_valid(w, arity(u)):
        return None
    return (w, -1)


def t_operator(j: int, S, x: Vector) -> Vector:
    acc = {}
    for u, c in x.items():
        term = t_operator_term(j, S, u)
        if term is not None:
            w, s = term
            acc[w] = acc.get(w, 0) + s * c
    return Vector(x.ring, acc)


def surjections(n: int, d: int, max_complexity: int | None = None):
    """All nondegenerate surjections of arity n and degree d, in lexicographic order."""
    length = n + d
    out = []

    def rec(prefix, used):
        remaining = length - len(prefix)
        if n - len(used) > remaining:
            return
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for x in range(1, n + 1):
            if prefix and prefix[-1] == x:
                continue
            prefix.append(x)
            added = x not in used
            if added:
                used.add(x)
            rec(prefix, used)
            if added:
                used.discard(x)
            prefix.pop()

    rec([], set())
    if max_complexity is not None:
        out = [u for u in out if complexity(u) <= max_complexity]
    return out


@lru_cache(maxsize=None)
def s2_surjections(n: int, d: int) -> tuple:
    return tuple(surjections(n, d, max_complexity=2))


def element(ring=ZZ, *terms) -> Vector:
    """Build an operad element from (sequence, coeff) pairs or bare sequences."""
    pairs = []
    for t in terms:
        if isinstance(t, tuple) and len(t) == 2 and isinstance(t[0], tuple):
            pairs.append(t)
        else:
            pairs.append((tuple(t), 1))
    return Vector(ring, pairs)


_SEQ = re.compile(r"^\(\s*\d+(\s*,\s*\d+)*\s*\)$")


def parse(text: str) -> Surjection:
    """Parse the text notation "(1,2,1)"; compact "121" is accepted for arity < 10."""
    t = text.strip()
    if _SEQ.match(t):
        return tuple(int(x) for x in t[1:-1].split(","))
    if t.isdigit():
        return tuple(int(x) for x in t)
    raise InvalidValue(f"cannot parse surjection {text!r}")


def fmt(u: Surjection) -> str:
    return "(" + ",".join(str(x) for x in u) + ")"


def fmt_element(x: Vector) -> str:
    if not x:
        return "0"
    parts = []
    for u, c in sorted(x.items()):
        if c == 1:
            parts.append(fmt(u))
        elif c == -1:
            parts.append("-" + fmt(u))
        else:
            parts.append(f"{c}*{fmt(u)}")
    return " + ".join(parts).replace("+ -", "- ")
