"""Core representation of D0L systems: alphabets, morphisms, parsing, iteration.

Letter tokens may be several characters long ("x1"); internally each token is
mapped to a distinct one-character symbol so that words are plain Python
strings and morphism application is a single str.translate call.  All public
values are immutable after construction.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceededError, ErasingSystemError, ParseError

DEFAULT_LENGTH_BUDGET = 2**20

# Symbols for multi-character tokens come from the private use area, skipping
# anything claimed by a single-character token.
_FRESH_SYMBOL_BASE = 0xE000


class Alphabet:
    """Ordered finite set of letter tokens with an internal one-char symbol per token."""

    __slots__ = ("tokens", "symbols", "_sym_of", "_tok_of", "_index_of", "_order_table")

    def __init__(self, tokens: Sequence[str]):
        tokens = tuple(tokens)
        if not tokens:
            raise ParseError("alphabet is empty")
        seen = set()
        for t in tokens:
            if not t or any(c.isspace() for c in t):
                raise ParseError(f"bad letter token {t!r}")
            # reserved by the file grammar: comments, header separators, rule arrows
            if t.startswith("#") or ":" in t or "->" in t:
                raise ParseError(f"letter token {t!r} clashes with the file syntax")
            if t in seen:
                raise ParseError(f"duplicate letter {t!r}")
            seen.add(t)
        claimed = {t for t in tokens if len(t) == 1}
        symbols = []
        fresh = _FRESH_SYMBOL_BASE
        for t in tokens:
            if len(t) == 1:
                symbols.append(t)
            else:
                while chr(fresh) in claimed:
                    fresh += 1
                symbols.append(chr(fresh))
                claimed.add(chr(fresh))
                fresh += 1
        self.tokens = tokens
        self.symbols = "".join(symbols)
        self._sym_of = dict(zip(tokens, symbols))
        self._tok_of = dict(zip(symbols, tokens))
        self._index_of = {s: i for i, s in enumerate(symbols)}
        self._order_table = str.maketrans({s: chr(i) for i, s in enumerate(symbols)})

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index_of

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.tokens == other.tokens

    def __hash__(self) -> int:
        return hash(self.tokens)

    def __repr__(self) -> str:
        return f"Alphabet({' '.join(self.tokens)})"

    @property
    def spaced(self) -> bool:
        """True when display must separate tokens with spaces."""
        return any(len(t) > 1 for t in self.tokens)

    def index(self, symbol: str) -> int:
        return self._index_of[symbol]

    def symbol(self, token: str) -> str:
        return self._sym_of[token]

    def token(self, symbol: str) -> str:
        return self._tok_of[symbol]

    def encode(self, tokens: Iterable[str]) -> str:
        return "".join(self._sym_of[t] for t in tokens)

    def decode(self, word: str) -> tuple[str, ...]:
        return tuple(self._tok_of[s] for s in word)

    def display(self, word: str) -> str:
        toks = self.decode(word)
        return " ".join(toks) if self.spaced else "".join(toks)

    def parse_word(self, text: str, line: int | None = None) -> str:
        """Decode user text into a word.

        Chunks are whitespace-separated.  A chunk that is not itself a token is
        split character-by-character, which is only allowed when every alphabet
        token is a single character.
        """
        out = []
        for chunk in text.split():
            if chunk in self._sym_of:
                out.append(self._sym_of[chunk])
            elif not self.spaced:
                for c in chunk:
                    if c not in self._sym_of:
                        raise ParseError(f"unknown letter {c!r} in {chunk!r}", line)
                    out.append(self._sym_of[c])
            else:
                raise ParseError(f"unknown letter {chunk!r}", line)
        return "".join(out)

    def sort_key(self, word: str) -> tuple[int, str]:
        """Deterministic (length, alphabet-order) key independent of symbol code points."""
        return len(word), word.translate(self._order_table)


class Morphism:
    """A total map letter -> word over a fixed alphabet, extended to words."""

    __slots__ = ("alphabet", "images", "_table", "_hash")

    def __init__(self, alphabet: Alphabet, images: Sequence[str]):
        images = tuple(images)
        if len(images) != len(alphabet):
            raise ParseError("one image per alphabet letter required")
        for img in images:
            for s in img:
                if s not in alphabet:
                    raise ParseError(f"image uses letter {s!r} outside the alphabet")
        self.alphabet = alphabet
        self.images = images
        self._table = str.maketrans(dict(zip(alphabet.symbols, images)))
        self._hash = hash((alphabet, images))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Morphism)
            and self.alphabet == other.alphabet
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        rules = ", ".join(
            f"{t}->{self.alphabet.display(img)}"
            for t, img in zip(self.alphabet.tokens, self.images)
        )
        return f"Morphism({rules})"

    def image(self, symbol: str) -> str:
        return self.images[self.alphabet.index(symbol)]

    def apply(self, word: str) -> str:
        return word.translate(self._table)

    @property
    def norm_max(self) -> int:
        """Largest image length."""
        return max(len(img) for img in self.images)

    @property
    def norm_min(self) -> int:
        """Smallest image length; 0 for an erasing morphism."""
        return min(len(img) for img in self.images)

    @property
    def is_erasing(self) -> bool:
        return self.norm_min == 0

    def parikh(self, word: str) -> tuple[int, ...]:
        cnt = Counter(word)
        return tuple(cnt.get(s, 0) for s in self.alphabet.symbols)

    def next_length(self, word: str) -> int:
        cnt = Counter(word)
        return sum(n * len(self.image(s)) for s, n in cnt.items())

    def iterate(self, word: str, n: int, budget: int = DEFAULT_LENGTH_BUDGET) -> str:
        """Apply the morphism n times, guarding each step with the length budget."""
        if n < 0:
            raise ValueError("n must be nonnegative")
        for s in word:
            if s not in self.alphabet:
                raise ParseError(f"word uses letter {s!r} outside the alphabet")
        for _ in range(n):
            nxt = self.next_length(word)
            if nxt > budget:
                raise BudgetExceededError(
                    f"iterate would produce {nxt} symbols (budget {budget})"
                )
            word = self.apply(word)
        return word

    def power(self, n: int, budget: int = DEFAULT_LENGTH_BUDGET) -> "Morphism":
        """The morphism applied n times, as a morphism (images expanded)."""
        return Morphism(
            self.alphabet, [self.iterate(s, n, budget) for s in self.alphabet.symbols]
        )

    def occurrence_edges(self) -> dict[str, set[str]]:
        """Digraph letter -> letters occurring in its image."""
        return {s: set(self.image(s)) for s in self.alphabet.symbols}


@dataclass(frozen=True)
class IncidenceMatrix:
    """entries[i][j] = number of occurrences of letter j in the image of letter i."""

    letters: tuple[str, ...]  # tokens, in alphabet order
    entries: tuple[tuple[int, ...], ...]

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.entries)


class D0LSystem:
    """A morphism together with a non-empty axiom, over a minimal alphabet."""

    __slots__ = ("morphism", "axiom", "warnings")

    def __init__(self, morphism: Morphism, axiom: str, warnings: tuple[str, ...] = ()):
        if not axiom:
            raise ParseError("axiom is empty")
        for s in axiom:
            if s not in morphism.alphabet:
                raise ParseError(f"axiom uses letter {s!r} outside the alphabet")
        self.morphism = morphism
        self.axiom = axiom
        self.warnings = warnings

    @property
    def alphabet(self) -> Alphabet:
        return self.morphism.alphabet

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, D0LSystem)
            and self.morphism == other.morphism
            and self.axiom == other.axiom
        )

    def __hash__(self) -> int:
        return hash((self.morphism, self.axiom))

    def __repr__(self) -> str:
        return f"D0LSystem({self.morphism!r}, axiom={self.alphabet.display(self.axiom)!r})"


def _occurring_letters(morphism: Morphism, axiom: str) -> set[str]:
    """Letters occurring in some iterate of the axiom (closure over image letters)."""
    seen = set(axiom)
    frontier = list(seen)
    while frontier:
        nxt = []
        for s in frontier:
            for t in morphism.image(s):
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


def make_system(morphism: Morphism, axiom: str) -> D0LSystem:
    """Build a validated system, trimming letters that never occur (with a warning)."""
    if not axiom:
        raise ParseError("axiom is empty")
    for s in axiom:
        if s not in morphism.alphabet:
            raise ParseError(f"axiom uses letter {s!r} outside the alphabet")
    occurring = _occurring_letters(morphism, axiom)
    if len(occurring) == len(morphism.alphabet):
        return D0LSystem(morphism, axiom)
    old = morphism.alphabet
    kept = [t for t, s in zip(old.tokens, old.symbols) if s in occurring]
    dropped = [t for t, s in zip(old.tokens, old.symbols) if s not in occurring]
    new_alpha = Alphabet(kept)
    remap = {old.symbol(t): new_alpha.symbol(t) for t in kept}
    table = str.maketrans(remap)
    images = [morphism.image(old.symbol(t)).translate(table) for t in kept]
    warning = "trimmed letters never occurring in the language: " + " ".join(dropped)
    return D0LSystem(Morphism(new_alpha, images), axiom.translate(table), (warning,))


def iterate(system: D0LSystem, word: str, n: int, budget: int = DEFAULT_LENGTH_BUDGET) -> str:
    """The n-th image of word under the system's morphism."""
    return system.morphism.iterate(word, n, budget)


def incidence_matrix(system: D0LSystem) -> IncidenceMatrix:
    m = system.morphism
    a = m.alphabet
    return IncidenceMatrix(a.tokens, tuple(m.parikh(img) for img in m.images))


def parse_system(text: str) -> D0LSystem:
    """Parse the system file format.

    Format: optional '#' comment lines; "alphabet: <tok> ..."; "axiom: <tok>...";
    one "<tok> -> <tok>..." line per letter.  Images may be empty only after a
    line "erasing: allowed".
    """
    alphabet: Alphabet | None = None
    axiom_text: tuple[str, int] | None = None
    erasing_allowed = False
    rule_lines: list[tuple[str, str, int]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("alphabet:"):
            if alphabet is not None:
                raise ParseError("duplicate alphabet line", lineno)
            alphabet = Alphabet(line[len("alphabet:"):].split())
        elif line.startswith("axiom:"):
            if axiom_text is not None:
                raise ParseError("duplicate axiom line", lineno)
            axiom_text = (line[len("axiom:"):].strip(), lineno)
        elif line.startswith("erasing:"):
            value = line[len("erasing:"):].strip()
            if value != "allowed":
                raise ParseError(f"bad erasing declaration {value!r}", lineno)
            erasing_allowed = True
        elif "->" in line:
            lhs, rhs = line.split("->", 1)
            rule_lines.append((lhs.strip(), rhs.strip(), lineno))
        else:
            raise ParseError(f"cannot parse {line!r}", lineno, col=1)

    if alphabet is None:
        raise ParseError("missing alphabet line")
    if axiom_text is None:
        raise ParseError("missing axiom line")

    images: dict[str, str] = {}
    for lhs, rhs, lineno in rule_lines:
        if lhs not in alphabet.tokens:
            raise ParseError(f"rule for unknown letter {lhs!r}", lineno)
        if lhs in images:
            raise ParseError(f"duplicate rule for {lhs!r}", lineno)
        img = alphabet.parse_word(rhs, lineno)
        if not img and not erasing_allowed:
            raise ParseError(
                f"empty image for {lhs!r} (add 'erasing: allowed' to permit it)", lineno
            )
        images[lhs] = img
    for t in alphabet.tokens:
        if t not in images:
            raise ParseError(f"missing image for {t!r}")

    morphism = Morphism(alphabet, [images[t] for t in alphabet.tokens])
    axiom = alphabet.parse_word(*axiom_text)
    if not axiom:
        raise ParseError("axiom is empty", axiom_text[1])
    return make_system(morphism, axiom)


def serialize_system(system: D0LSystem) -> str:
    """Canonical text form; parse(serialize(s)) == s."""
    a = system.alphabet
    lines = [f"alphabet: {' '.join(a.tokens)}", f"axiom: {a.display(system.axiom)}"]
    if system.morphism.is_erasing:
        lines.append("erasing: allowed")
    for t in a.tokens:
        img = system.morphism.image(a.symbol(t))
        lines.append(f"{t} -> {a.display(img)}")
    return "\n".join(lines) + "\n"


def require_propagating(system: D0LSystem) -> None:
    """Raise unless the morphism is nonerasing; decision procedures demand this."""
    if system.morphism.is_erasing:
        raise ErasingSystemError("the morphism erases a letter; decision requires PD0L")
