"""Interpretations, synchronizing points, delay estimation, circularity.

An interpretation of u is a triplet (p, v, s) with phi(v) = p u s.  Preimages v
are drawn from the factor corpus: unrestricted preimages would admit words that
never occur and collapse the decision.  Interpretations are trimmed
(|p| < |phi(v_1)|, |s| < |phi(v_n)|); untrimmed extensions cut u at the same
positions, so nothing is lost and the enumeration stays finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import ceil

from .codes import InjectivityReport, injectivity
from .corpus import (
    DEFAULT_GENERATIONS,
    DEFAULT_MAX_LEN,
    FactorCorpus,
    collision_search,
    factor_corpus,
)
from .errors import InvariantError, NotInCorpusError
from .periodicity import (
    DEFAULT_PREFIX_CAP,
    PeriodicPointCertificate,
    URVerdict,
    is_unboundedly_repetitive,
)
from .system import D0LSystem, Morphism, require_propagating


@dataclass(frozen=True)
class Interpretation:
    """phi(preimage) = prefix + u + suffix for the interpreted word u.

    boundaries[j] is the end of phi(preimage[:j]) in u coordinates (may fall
    outside [0, |u|]); cuts are the boundaries that land inside.
    """

    prefix: str
    preimage: str
    suffix: str
    boundaries: tuple[int, ...]
    cuts: frozenset[int]

    def start_letters(self) -> dict[int, str]:
        """Letter of the preimage starting at each u position (for alignment checks)."""
        return {self.boundaries[t]: self.preimage[t] for t in range(len(self.preimage))}


def _interpretations_from(
    morphism: Morphism, v: str
) -> list[tuple[str, Interpretation]]:
    """All trimmed interpretations carved out of phi(v), paired with their word."""
    img = morphism.apply(v)
    total = len(img)
    cum = [0]
    for s in v:
        cum.append(cum[-1] + len(morphism.image(s)))
    out = []
    for plen in range(len(morphism.image(v[0]))):
        for slen in range(len(morphism.image(v[-1]))):
            if plen + slen >= total:
                continue
            u = img[plen : total - slen]
            bounds = tuple(c - plen for c in cum)
            cuts = frozenset(b for b in bounds if 0 <= b <= len(u))
            out.append(
                (u, Interpretation(img[:plen], v, img[total - slen :], bounds, cuts))
            )
    return out


class InterpretationIndex:
    """All interpretations of all corpus words at once.

    Built by carving every trim window out of phi(v) for each corpus factor v;
    a word of length L is fully served when L + 2 <= corpus.max_len, since any
    preimage has at most L + 1 letters.
    """

    def __init__(self, system: D0LSystem, corpus: FactorCorpus):
        require_propagating(system)
        self.system = system
        self.corpus = corpus
        self._by_word: dict[str, list[Interpretation]] = {}
        m = system.morphism
        for v in corpus.sorted_factors():
            for u, interp in _interpretations_from(m, v):
                if len(u) <= corpus.max_len and u in corpus.factors:
                    self._by_word.setdefault(u, []).append(interp)

    def _check(self, u: str) -> None:
        if u not in self.corpus.factors:
            raise NotInCorpusError(
                f"word {self.system.alphabet.display(u)!r} is not a corpus factor"
            )
        if len(u) + 2 > self.corpus.max_len:
            raise NotInCorpusError(
                f"corpus max_len {self.corpus.max_len} too small to enumerate "
                f"preimages of a length-{len(u)} word (needs |u| + 2)"
            )

    def interpretations(self, u: str) -> list[Interpretation]:
        self._check(u)
        return list(self._by_word.get(u, ()))

    def sync_positions(self, u: str) -> frozenset[int]:
        """Positions cut by every interpretation; the full range when there are
        no interpretations at all (vacuously synchronized)."""
        self._check(u)
        interps = self._by_word.get(u)
        if not interps:
            return frozenset(range(len(u) + 1))
        out = interps[0].cuts
        for i in interps[1:]:
            out = out & i.cuts
            if not out:
                break
        return out


@lru_cache(maxsize=64)
def _index(system: D0LSystem, corpus: FactorCorpus) -> InterpretationIndex:
    return InterpretationIndex(system, corpus)


def interpretations_of(
    system: D0LSystem, u: str, corpus: FactorCorpus
) -> list[Interpretation]:
    """All trimmed interpretations of u with corpus preimages, ordered by
    (preimage length, alphabet order, prefix length)."""
    return _index(system, corpus).interpretations(u)


@dataclass(frozen=True)
class Def2Violation:
    """A deep letter of one interpretation with no aligned equal letter in another."""

    interp_a: int
    interp_b: int
    letter_index: int
    start: int
    end: int
    depth: int  # min(end, |u| - end); a violation at every delay < depth


@dataclass(frozen=True)
class SyncReport:
    word: str
    interpretations: tuple[Interpretation, ...]
    sync_positions: frozenset[int]

    def def2_violations(self, delay: int) -> list[Def2Violation]:
        """Letter-aligned synchronization failures at the given delay: a letter
        whose image ends deeper than `delay` from both edges must start at the
        same position with the same letter in every other interpretation."""
        n = len(self.word)
        out = []
        interps = self.interpretations
        starts = [i.start_letters() for i in interps]
        for ai, a in enumerate(interps):
            for bi in range(len(interps)):
                if ai == bi:
                    continue
                other = starts[bi]
                for t in range(len(a.preimage)):
                    end = a.boundaries[t + 1]
                    if end <= delay or n - end <= delay:
                        continue
                    start = a.boundaries[t]
                    if other.get(start) != a.preimage[t]:
                        out.append(
                            Def2Violation(
                                ai, bi, t, start, end, min(end, n - end)
                            )
                        )
        return out

    def max_unmatched_depth(self) -> int:
        """Largest depth of an alignment failure; violations exist exactly at
        delays below this value."""
        worst = 0
        for v in self.def2_violations(0):
            worst = max(worst, v.depth)
        return worst


def sync_report(system: D0LSystem, u: str, corpus: FactorCorpus) -> SyncReport:
    idx = _index(system, corpus)
    return SyncReport(u, tuple(idx.interpretations(u)), idx.sync_positions(u))


@dataclass(frozen=True)
class DelayEstimate:
    mode: str  # "weak" | "strong"
    ok: bool
    delay: int | None
    witness: str | None  # maximal-length violating factor on failure
    corpus_len: int
    generations: int
    corpus_stable: bool


def estimate_sync_delay(
    system: D0LSystem,
    corpus_len: int = DEFAULT_MAX_LEN,
    mode: str = "weak",
    generations: int = DEFAULT_GENERATIONS,
) -> DelayEstimate:
    """Corpus-bounded delay estimate.

    weak: minimal D such that every corpus factor longer than 2D has a
    synchronizing position; fails when the longest factors still violate.
    strong: minimal D admitting no letter-alignment violations; fails when a
    violation sits deeper than corpus_len / 2.
    """
    if mode not in ("weak", "strong"):
        raise ValueError(f"mode must be weak or strong, not {mode!r}")
    require_propagating(system)
    corpus = factor_corpus(system, corpus_len + 2, generations)
    idx = _index(system, corpus)
    key = system.alphabet.sort_key
    scannable = sorted(
        (f for f in corpus.factors if len(f) <= corpus_len), key=key
    )
    if mode == "weak":
        worst_len = 0
        witness = None
        for u in scannable:
            if len(u) > worst_len and not idx.sync_positions(u):
                worst_len = len(u)
                witness = u
        if worst_len == 0:
            return DelayEstimate("weak", True, 1, None, corpus_len, corpus.generation, corpus.stable)
        delay = max(1, ceil(worst_len / 2))
        longest = max(len(f) for f in scannable)
        if 2 * delay >= longest:
            return DelayEstimate(
                "weak", False, None, witness, corpus_len, corpus.generation, corpus.stable
            )
        return DelayEstimate("weak", True, delay, None, corpus_len, corpus.generation, corpus.stable)

    worst_depth = 0
    witness = None
    for u in scannable:
        report = sync_report(system, u, corpus)
        d = report.max_unmatched_depth()
        if d > worst_depth:
            worst_depth = d
            witness = u
    # A violation of depth m exists at every delay below m; depth is capped by
    # half the factor length, so a worst depth reaching that cap means the
    # corpus shows no stable delay at all.
    longest = max((len(f) for f in scannable), default=0)
    if worst_depth and 2 * worst_depth >= longest:
        return DelayEstimate(
            "strong", False, None, witness, corpus_len, corpus.generation, corpus.stable
        )
    return DelayEstimate(
        "strong", True, max(1, worst_depth), None, corpus_len, corpus.generation, corpus.stable
    )


@dataclass(frozen=True)
class RepetitionFamilyWitness:
    """Verified non-synchronized interpretation pair of period^(2 power).

    Both triplets interpret u under the ell-th iterate of the morphism and
    their cut sets are disjoint, so u has no synchronizing position there.
    """

    certificate: PeriodicPointCertificate
    lifted_period: str
    word: str
    interp_plain: Interpretation
    interp_shifted: Interpretation
    prefix_images_differ: bool


@dataclass(frozen=True)
class CollisionFamilyWitness:
    """Preimage collisions at doubling length thresholds: arbitrarily long words
    with two preimages rule circularity out."""

    thresholds: tuple[int, ...]
    pairs: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class CircularityVerdict:
    status: str  # "circular" | "not_circular" | "unknown"
    mode: str | None  # for circular: "certified" | "bound_conditional"
    witness: RepetitionFamilyWitness | CollisionFamilyWitness | None
    prefix_cap: int
    corpus_len: int
    injectivity: InjectivityReport
    ur: URVerdict | None
    weak_delay: int | None
    diagnostics: tuple[str, ...] = ()


def _family_interpretations(
    power_morphism: Morphism, w: str, k: int
) -> tuple[str, Interpretation, Interpretation] | None:
    """Build and verify the pair (eps, w^2, eps) / (w, w^3, w^{k-1}) on w^{2k}."""
    u = w * (2 * k)
    img2 = power_morphism.apply(w * 2)
    img3 = power_morphism.apply(w * 3)
    if img2 != u or img3 != w + u + w * (k - 1):
        return None

    def build(v: str, plen: int) -> Interpretation:
        cum = [0]
        for s in v:
            cum.append(cum[-1] + len(power_morphism.image(s)))
        bounds = tuple(c - plen for c in cum)
        total = cum[-1]
        return Interpretation(
            power_morphism.apply(v)[:plen],
            v,
            power_morphism.apply(v)[plen + len(u) :],
            bounds,
            frozenset(b for b in bounds if 0 <= b <= len(u)),
        )

    plain = build(w * 2, 0)
    shifted = build(w * 3, len(w))
    if plain.cuts & shifted.cuts:
        return None
    return u, plain, shifted


def _verify_repetition_family(
    system: D0LSystem, ur: URVerdict
) -> RepetitionFamilyWitness | None:
    cert = ur.certificate
    w = ur.lifted_period
    power = system.morphism.power(cert.ell)
    if power.apply(w) != w * cert.power:
        return None
    built = _family_interpretations(power, w, cert.power)
    if built is None:
        return None
    u, plain, shifted = built
    prefixes_ok = all(
        power.apply(w[:i]) != w for i in range(len(w) + 1)
    )
    if not prefixes_ok:
        return None
    return RepetitionFamilyWitness(cert, w, u, plain, shifted, True)


def decide_circularity(
    system: D0LSystem,
    prefix_cap: int = DEFAULT_PREFIX_CAP,
    corpus_len: int = DEFAULT_MAX_LEN,
    generations: int = DEFAULT_GENERATIONS,
) -> CircularityVerdict:
    """Three-valued circularity decision.

    Injective systems are not circular exactly when unboundedly repetitive; a
    verdict is certified only when both the injectivity and the aperiodicity
    sides are cap-free.  Non-injective systems are declared not circular only
    on a growing family of preimage collisions; otherwise unknown.
    """
    require_propagating(system)
    inj = injectivity(system, corpus_len, generations)
    weak = estimate_sync_delay(system, corpus_len, "weak", generations)
    weak_delay = weak.delay if weak.ok else None

    if inj.system_status != "no":
        ur = is_unboundedly_repetitive(system, prefix_cap)
        if ur.status == "yes":
            witness = _verify_repetition_family(system, ur)
            if witness is None:
                if inj.system_status == "yes_certified":
                    raise InvariantError(
                        "verified periodic certificate but the interpretation "
                        "family failed on a certified-injective system"
                    )
                return CircularityVerdict(
                    "unknown",
                    None,
                    None,
                    prefix_cap,
                    corpus_len,
                    inj,
                    ur,
                    weak_delay,
                    ("bound-level injectivity contradicted by family verification",),
                )
            return CircularityVerdict(
                "not_circular", None, witness, prefix_cap, corpus_len, inj, ur, weak_delay
            )
        mode = (
            "certified"
            if inj.system_status == "yes_certified" and ur.status == "no_certified"
            else "bound_conditional"
        )
        return CircularityVerdict(
            "circular", mode, None, prefix_cap, corpus_len, inj, ur, weak_delay
        )

    corpus = factor_corpus(system, corpus_len, generations)
    pairs = collision_search(system, corpus)
    key = system.alphabet.sort_key
    thresholds = []
    t = 2
    while t <= corpus_len // 2:
        thresholds.append(t)
        t *= 2
    chosen: list[tuple[str, str]] = []
    for t in thresholds:
        fitting = [p for p in pairs if len(p[0]) >= t]
        if not fitting:
            longest = len(pairs[0][0]) if pairs else 0
            return CircularityVerdict(
                "unknown",
                None,
                None,
                prefix_cap,
                corpus_len,
                inj,
                None,
                weak_delay,
                (
                    f"non-injective, but no collision of length >= {t} "
                    f"(longest found: {longest}); no growing collision family",
                ),
            )
        chosen.append(min(fitting, key=lambda p: (len(p[0]), key(p[0]), key(p[1]))))
    if not thresholds:
        return CircularityVerdict(
            "unknown",
            None,
            None,
            prefix_cap,
            corpus_len,
            inj,
            None,
            weak_delay,
            ("corpus too small for a collision ladder",),
        )
    witness = CollisionFamilyWitness(tuple(thresholds), tuple(chosen))
    return CircularityVerdict(
        "not_circular", None, witness, prefix_cap, corpus_len, inj, None, weak_delay
    )
