"""Unique decipherability, injectivity reports, and injective simplification.

The simplification factors phi = decode . merge through a strictly smaller
alphabet and repeats on the induced endomorphism psi = merge . decode until
its images are pairwise distinct and form a code.  Every step is re-verified
by the letterwise identity decode(merge(a)) = phi(a), so a wrong refinement
cannot pass silently.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, Sequence

from .corpus import DEFAULT_GENERATIONS, DEFAULT_MAX_LEN, collision_search, factor_corpus
from .errors import D0LError, InvariantError
from .system import Alphabet, D0LSystem, Morphism, _occurring_letters, require_propagating


@dataclass(frozen=True)
class CodeCheck:
    """Result of the unique-decipherability test."""

    is_code: bool
    ambiguous_word: str | None = None
    factorization_a: tuple[str, ...] | None = None
    factorization_b: tuple[str, ...] | None = None


def is_code(words: Sequence[str]) -> CodeCheck:
    """Sardinas-Patterson, run as a shortest-path search so that a failure
    yields a minimal-length ambiguous word with its two factorizations."""
    codewords = sorted(set(words), key=lambda w: (len(w), w))
    if any(not w for w in codewords):
        raise D0LError("empty word in code test input")
    if len(codewords) <= 1:
        return CodeCheck(True)

    # State: dangling suffix d with concat(ahead) == concat(behind) + d.
    # Cost: len(concat(ahead)); reaching d == "" yields the ambiguous word.
    heap: list[tuple[int, int, str, tuple[str, ...], tuple[str, ...]]] = []
    seq = 0
    for c in codewords:
        for c2 in codewords:
            if c != c2 and c2.startswith(c):
                heapq.heappush(heap, (len(c2), seq, c2[len(c):], (c2,), (c,)))
                seq += 1
    best: dict[str, int] = {}
    while heap:
        cost, _, d, ahead, behind = heapq.heappop(heap)
        if d == "":
            return CodeCheck(False, "".join(ahead), ahead, behind)
        if best.get(d, cost + 1) <= cost:
            continue
        best[d] = cost
        for c in codewords:
            if d.startswith(c):
                heapq.heappush(heap, (cost, seq, d[len(c):], ahead, behind + (c,)))
                seq += 1
            elif c.startswith(d):
                extra = c[len(d):]
                heapq.heappush(
                    heap, (cost + len(extra), seq, extra, behind + (c,), ahead)
                )
                seq += 1
    return CodeCheck(True)


@dataclass(frozen=True)
class InjectivityReport:
    """Morphism-level and corpus-level injectivity, with witnesses."""

    morphism_injective: bool
    morphism_witness: tuple[str, str] | None
    system_status: str  # "yes_certified" | "yes_up_to_bound" | "no"
    system_witness: tuple[str, str] | None
    bound: int | None


def morphism_injectivity(morphism: Morphism) -> tuple[bool, tuple[str, str] | None]:
    """True iff images are pairwise distinct and form a code; else a witness
    pair of distinct letter words with equal image."""
    seen: dict[str, str] = {}
    for s in morphism.alphabet.symbols:
        img = morphism.image(s)
        if img in seen:
            return False, (seen[img], s)
        seen[img] = s
    check = is_code(list(seen))
    if check.is_code:
        return True, None
    u = "".join(seen[c] for c in check.factorization_a)
    v = "".join(seen[c] for c in check.factorization_b)
    return False, (u, v)


def injectivity(
    system: D0LSystem,
    corpus_len: int = DEFAULT_MAX_LEN,
    generations: int = DEFAULT_GENERATIONS,
) -> InjectivityReport:
    """Injectivity of the morphism, and of its restriction to corpus factors.

    Injectivity restricted to the factor language has no general decision
    procedure, so a clean scan only certifies up to the corpus bound.
    """
    require_propagating(system)
    ok, witness = morphism_injectivity(system.morphism)
    if ok:
        return InjectivityReport(True, None, "yes_certified", None, None)
    corpus = factor_corpus(system, corpus_len, generations)
    pairs = collision_search(system, corpus)
    if pairs:
        key = system.alphabet.sort_key
        u, v = min(pairs, key=lambda p: (key(p[0]), key(p[1])))
        return InjectivityReport(False, witness, "no", (u, v), corpus_len)
    return InjectivityReport(False, witness, "yes_up_to_bound", None, corpus_len)


class LetterMap:
    """A morphism between two alphabets, letter -> word."""

    __slots__ = ("source", "target", "images", "_table")

    def __init__(self, source: Alphabet, target: Alphabet, images: Sequence[str]):
        images = tuple(images)
        if len(images) != len(source):
            raise InvariantError("one image per source letter required")
        for img in images:
            for s in img:
                if s not in target:
                    raise InvariantError("letter map image outside target alphabet")
        self.source = source
        self.target = target
        self.images = images
        self._table = str.maketrans(dict(zip(source.symbols, images)))

    def image(self, symbol: str) -> str:
        return self.images[self.source.index(symbol)]

    def apply(self, word: str) -> str:
        return word.translate(self._table)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LetterMap)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __repr__(self) -> str:
        rules = ", ".join(
            f"{t}->{self.target.display(img)}"
            for t, img in zip(self.source.tokens, self.images)
        )
        return f"LetterMap({rules})"


@dataclass(frozen=True)
class SimplificationStep:
    """One factorization phi = decode . merge with psi = merge . decode."""

    merge: LetterMap  # old alphabet -> new
    decode: LetterMap  # new alphabet -> old
    simplified: Morphism  # psi, over the new alphabet


@dataclass(frozen=True)
class InjectiveSimplification:
    original: D0LSystem
    chain: tuple[SimplificationStep, ...]
    final_system: D0LSystem

    def lift(self, word: str) -> str:
        """Translate a word over the final alphabet back to the original one."""
        for step in reversed(self.chain):
            word = step.decode.apply(word)
        return word


def _code_parser(generators: Sequence[str]) -> Callable[[str], list[str]]:
    """Unique factorization over a code; raises if a word does not factor uniquely."""
    gens = sorted(set(generators), key=lambda w: (len(w), w))

    def parse(word: str) -> list[str]:
        n = len(word)
        preds: list[list[tuple[int, str]]] = [[] for _ in range(n + 1)]
        reachable = [False] * (n + 1)
        reachable[0] = True
        for i in range(n):
            if not reachable[i]:
                continue
            for g in gens:
                if word.startswith(g, i):
                    preds[i + len(g)].append((i, g))
                    reachable[i + len(g)] = True
        if not reachable[n]:
            raise InvariantError("word does not factor over the generator set")
        out: list[str] = []
        pos = n
        while pos:
            live = [(i, g) for i, g in preds[pos] if reachable[i]]
            if len(live) != 1:
                raise InvariantError("ambiguous factorization over a supposed code")
            i, g = live[0]
            out.append(g)
            pos = i
        out.reverse()
        return out

    return parse


def _fresh_alphabet(n: int) -> Alphabet:
    return Alphabet([f"x{i + 1}" for i in range(n)])


def _simplification_step(system: D0LSystem) -> tuple[SimplificationStep, D0LSystem]:
    """Shrink the alphabet once: refine the image set to a code by stripping
    the shared prefix out of each ambiguous pair (defect refinement), then
    re-express everything over the refined generators."""
    m = system.morphism
    alpha = m.alphabet

    generators: list[str] = []
    for img in m.images:  # first-occurrence order, duplicates collapse
        if img not in generators:
            generators.append(img)
    while True:
        check = is_code(generators)
        if check.is_code:
            break
        c1, c2 = check.factorization_a[0], check.factorization_b[0]
        short, long_ = (c1, c2) if len(c1) < len(c2) else (c2, c1)
        rest = long_[len(short):]
        idx = generators.index(long_)
        if rest in generators:
            del generators[idx]
        else:
            generators[idx] = rest

    parse = _code_parser(generators)
    h_words = [parse(img) for img in m.images]
    used: list[str] = []
    for hw in h_words:
        for g in hw:
            if g not in used:
                used.append(g)
    if len(used) >= len(alpha):
        raise InvariantError("simplification step failed to shrink the alphabet")

    target = _fresh_alphabet(len(used))
    gen_sym = {g: target.symbols[i] for i, g in enumerate(used)}
    merge = LetterMap(alpha, target, ["".join(gen_sym[g] for g in hw) for hw in h_words])
    decode = LetterMap(target, alpha, used)
    psi = Morphism(target, [merge.apply(decode.image(b)) for b in target.symbols])
    for s in alpha.symbols:
        if decode.apply(merge.image(s)) != m.image(s):
            raise InvariantError("decode(merge(a)) != phi(a) after refinement")

    new_axiom = merge.apply(system.axiom)
    if _occurring_letters(psi, new_axiom) != set(target.symbols):
        raise InvariantError("simplified system has unreachable letters")
    return SimplificationStep(merge, decode, psi), D0LSystem(psi, new_axiom)


def injective_simplification(system: D0LSystem) -> InjectiveSimplification:
    """Chain of strict alphabet-shrinking steps ending in an injective morphism.

    An injective input is its own simplification (empty chain).
    """
    require_propagating(system)
    steps: list[SimplificationStep] = []
    current = system
    while True:
        ok, _ = morphism_injectivity(current.morphism)
        if ok:
            return InjectiveSimplification(system, tuple(steps), current)
        step, current = _simplification_step(current)
        steps.append(step)
        if len(steps) >= len(system.alphabet):
            raise InvariantError("simplification chain exceeded alphabet size")
