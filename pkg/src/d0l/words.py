"""Small word-combinatorics helpers used across modules.

Words are plain strings over a system's internal one-character symbols
(see d0l.system.Alphabet); everything here is alphabet-agnostic.
"""

from __future__ import annotations


def border_table(w: str) -> list[int]:
    """KMP failure table: entry i = length of the longest proper border of w[:i]."""
    n = len(w)
    fail = [0] * (n + 1)
    k = 0
    for i in range(1, n):
        while k and w[i] != w[k]:
            k = fail[k]
        if w[i] == w[k]:
            k += 1
        fail[i + 1] = k
    return fail


def minimal_period(w: str) -> int:
    """Smallest p such that w[i] == w[i+p] for all valid i (p = |w| for border-free words)."""
    if not w:
        return 0
    return len(w) - border_table(w)[len(w)]


def primitive_root(w: str) -> tuple[str, int]:
    """Decompose w = r^k with r primitive and k maximal; returns (r, k)."""
    if not w:
        return w, 1
    p = minimal_period(w)
    if len(w) % p == 0:
        return w[:p], len(w) // p
    return w, 1


def is_rotation(u: str, v: str) -> bool:
    return len(u) == len(v) and u in v + v
