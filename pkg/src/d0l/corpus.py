"""Brute-force ground truth: factor enumeration, powers, preimage collisions.

The corpus enumerates every factor up to a length bound from successive
generations of the system.  Membership beyond the expansion bound is not
decidable this way, so the corpus carries an explicit stability flag that all
consumers surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceededError
from .system import DEFAULT_LENGTH_BUDGET, D0LSystem, require_propagating
from .words import primitive_root

DEFAULT_MAX_LEN = 24
DEFAULT_GENERATIONS = 8


@dataclass(eq=False)
class FactorCorpus:
    """All factors of length <= max_len seen in w_0 .. w_generation.

    Identity semantics (eq/hash by object), so corpora can key caches.
    """

    system: D0LSystem
    max_len: int
    generation: int
    stable: bool
    factors: frozenset[str]
    _sorted: tuple[str, ...] | None = field(default=None, repr=False, compare=False)

    def __contains__(self, word: str) -> bool:
        return word in self.factors

    def sorted_factors(self) -> tuple[str, ...]:
        if self._sorted is None:
            key = self.system.alphabet.sort_key
            self._sorted = tuple(sorted(self.factors, key=key))
        return self._sorted

    def by_length(self, n: int) -> list[str]:
        return [f for f in self.sorted_factors() if len(f) == n]

    @property
    def longest(self) -> int:
        return max((len(f) for f in self.factors), default=0)


def _factors_of(word: str, max_len: int, into: set[str]) -> set[str]:
    """New factors of word (length <= max_len) not already in `into`."""
    fresh: set[str] = set()
    n = len(word)
    for length in range(1, min(max_len, n) + 1):
        for i in range(n - length + 1):
            f = word[i : i + length]
            if f not in into and f not in fresh:
                fresh.add(f)
    return fresh


def factor_corpus(
    system: D0LSystem,
    max_len: int = DEFAULT_MAX_LEN,
    generations: int = DEFAULT_GENERATIONS,
    budget: int = DEFAULT_LENGTH_BUDGET,
) -> FactorCorpus:
    """Expand generations until two in a row add nothing (stable) or budgets hit."""
    require_propagating(system)
    factors: set[str] = set()
    word = system.axiom
    idle = 0
    gen = 0
    factors |= _factors_of(word, max_len, factors)
    while gen < generations:
        try:
            nxt_len = system.morphism.next_length(word)
            if nxt_len > budget:
                raise BudgetExceededError(
                    f"generation {gen + 1} would have {nxt_len} symbols"
                )
            word = system.morphism.apply(word)
        except BudgetExceededError:
            return FactorCorpus(system, max_len, gen, False, frozenset(factors))
        gen += 1
        fresh = _factors_of(word, max_len, factors)
        factors |= fresh
        idle = idle + 1 if not fresh else 0
        if idle >= 2:
            return FactorCorpus(system, max_len, gen, True, frozenset(factors))
    return FactorCorpus(system, max_len, gen, idle >= 2, frozenset(factors))


def max_power(corpus: FactorCorpus) -> tuple[int, str]:
    """Largest k with w^k in the corpus for nonempty w, with a maximal witness base.

    Primitive-root factorization via the doubling trick: (f+f).find(f, 1) is
    |f| exactly for primitive f and the root length otherwise (same result as
    the failure-function period, at C speed).
    """
    key = corpus.system.alphabet.sort_key
    best_k = 0
    best_base = ""
    for f in corpus.sorted_factors():
        p = (f + f).find(f, 1)
        k = len(f) // p
        root = f[:p]
        if k > best_k or (
            k == best_k
            and (len(root) > len(best_base) or (len(root) == len(best_base) and key(root) < key(best_base)))
        ):
            best_k, best_base = k, root
    return best_k, best_base


def collision_search(system: D0LSystem, corpus: FactorCorpus) -> list[tuple[str, str]]:
    """All pairs u != v of corpus factors with equal image, longest first."""
    require_propagating(system)
    m = system.morphism
    key = system.alphabet.sort_key
    by_image: dict[str, list[str]] = {}
    for f in corpus.sorted_factors():
        by_image.setdefault(m.apply(f), []).append(f)
    pairs: list[tuple[str, str]] = []
    for group in by_image.values():
        if len(group) > 1:
            for i in range(len(group)):
                for j in range(i + 1, len(group)):
                    pairs.append((group[i], group[j]))
    pairs.sort(key=lambda p: (-len(p[0]), key(p[0]), key(p[1])))
    return pairs


def nonsync_witness_search(system: D0LSystem, corpus: FactorCorpus) -> str | None:
    """Longest corpus factor with no synchronizing position, or None.

    Only factors up to max_len - 2 are scanned: longer ones could have
    preimage candidates the corpus cannot contain.
    """
    from .circularity import InterpretationIndex

    require_propagating(system)
    index = InterpretationIndex(system, corpus)
    key = system.alphabet.sort_key
    scannable = [f for f in corpus.factors if len(f) <= corpus.max_len - 2]
    for f in sorted(scannable, key=lambda w: (-len(w), key(w))):
        if not index.sync_positions(f):
            return f
    return None
