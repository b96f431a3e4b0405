"""Periodic-point certificates, unbounded repetitiveness, repetitiveness.

A candidate is a letter a on a cycle of the first-letter map with a growing
image; its fixed point under phi^ell is periodic iff the minimal period p of a
long prefix satisfies p <= prefix/2 and the length-p prefix w verifies
phi^ell(w) = w^k exactly.  Failure of that forced candidate refutes every
period up to half the prefix, so negatives are certified up to the cap.
Two cap-free refutations are applied first: a letter occurring only finitely
often in the fixed point, and the absence of an integer eigenvalue >= 2 on the
reachable subalphabet.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy

from .codes import InjectiveSimplification, injective_simplification, morphism_injectivity
from .errors import D0LError, InvariantError
from .growth import _strongly_connected_components, bounded_letters, pushy_witness
from .system import DEFAULT_LENGTH_BUDGET, D0LSystem, Morphism, require_propagating
from .words import minimal_period

DEFAULT_PREFIX_CAP = 4096


@dataclass(frozen=True)
class PeriodicPointCertificate:
    """phi^ell(period) = period^power with power >= 2, period starting at `letter`."""

    letter: str
    ell: int
    period: str
    power: int


@dataclass(frozen=True)
class CandidateOutcome:
    letter: str
    ell: int
    status: str  # "verified" | "refuted" | "refuted_at_cap"
    reason: str
    certificate: PeriodicPointCertificate | None = None


@dataclass(frozen=True)
class PeriodicityVerdict:
    status: str  # "periodic" | "aperiodic" | "inconclusive"
    certificate: PeriodicPointCertificate | None
    reasons: tuple[str, ...]
    cap: int
    outcomes: tuple[CandidateOutcome, ...]


def _incidence_rows(m: Morphism) -> list[list[int]]:
    syms = m.alphabet.symbols
    return [[m.image(s).count(t) for t in syms] for s in syms]


def _mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n) if a[i][k]) for j in range(n)]
        for i in range(n)
    ]


def _mat_pow(a: list[list[int]], n: int) -> list[list[int]]:
    size = len(a)
    out = [[int(i == j) for j in range(size)] for i in range(size)]
    base = a
    while n:
        if n & 1:
            out = _mat_mul(out, base)
        base = _mat_mul(base, base)
        n >>= 1
    return out


def first_letter_cycles(m: Morphism) -> list[tuple[str, int]]:
    """Candidate pairs (letter on a first-letter cycle, its cycle length),
    restricted to letters whose image under phi^ell grows, in alphabet order."""
    syms = m.alphabet.symbols
    first = {s: m.image(s)[0] for s in syms}
    out = []
    for s in syms:
        cur = first[s]
        ell = 1
        while cur != s and ell <= len(syms):
            cur = first[cur]
            ell += 1
        if cur != s:
            continue
        lengths = {t: 1 for t in syms}
        for _ in range(ell):
            lengths = {t: sum(lengths[u] for u in m.image(t)) for t in syms}
        if lengths[s] >= 2:
            out.append((s, ell))
    return out


def _reach(succ: dict[str, set[str]], start: set[str]) -> set[str]:
    seen = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for s in frontier:
            for t in succ[s]:
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


def _finite_occurrence_letter(m: Morphism, a: str, ell: int) -> str | None:
    """A letter occurring in the fixed point of phi^ell at `a` but only finitely
    often; a periodic word contains every occurring letter infinitely often."""
    syms = m.alphabet.symbols
    mat = _mat_pow(_incidence_rows(m), ell)
    idx = {s: i for i, s in enumerate(syms)}
    succ = {s: {t for t in syms if mat[idx[s]][idx[t]] > 0} for s in syms}
    row = mat[idx[a]]
    tail = {t for t in syms if row[idx[t]] > 0 and (t != a or row[idx[a]] >= 2)}
    occurring = {a} | _reach(succ, tail)
    comps = _strongly_connected_components(list(syms), succ)
    cyclic = set()
    for comp in comps:
        if len(comp) > 1 or comp[0] in succ[comp[0]]:
            cyclic.update(comp)
    infinite = _reach(succ, cyclic & _reach(succ, tail))
    finite = sorted(occurring - infinite, key=m.alphabet.index)
    return finite[0] if finite else None


def _has_integer_eigenvalue_ge2(m: Morphism, a: str, ell: int) -> bool:
    """Whether the incidence matrix of phi^ell restricted to letters reachable
    from `a` has an integer eigenvalue >= 2.  A periodic fixed point w^omega
    forces phi^ell(w) = w^k, making k such an eigenvalue (Parikh eigenvector)."""
    syms = m.alphabet.symbols
    mat = _mat_pow(_incidence_rows(m), ell)
    idx = {s: i for i, s in enumerate(syms)}
    succ = {s: {t for t in syms if mat[idx[s]][idx[t]] > 0} for s in syms}
    region = sorted(_reach(succ, {a}) | {a}, key=m.alphabet.index)
    sub = sympy.Matrix([[mat[idx[s]][idx[t]] for t in region] for s in region])
    lam = sympy.Symbol("lam")
    coeffs = [int(c) for c in sympy.Poly(sub.charpoly(lam).as_expr(), lam).all_coeffs()]
    while coeffs and coeffs[-1] == 0:  # factor out lambda (root 0)
        coeffs.pop()
    if not coeffs:
        return False
    const = abs(coeffs[-1])
    bound = max(sum(r) for r in sub.tolist()) if len(region) else 0

    def value(x: int) -> int:
        v = 0
        for c in coeffs:
            v = v * x + c
        return v

    for d in range(2, bound + 1):
        if const % d == 0 and value(d) == 0:
            return True
    return False


def _fixed_point_prefix(m: Morphism, a: str, ell: int, cap: int) -> str:
    w = a
    rounds = 0
    while len(w) < cap:
        for _ in range(ell):
            w = m.apply(w[:cap])
        rounds += 1
        if rounds > cap + 4:
            raise InvariantError("fixed point prefix failed to grow")
    return w[:cap]


def _forced_scan(
    m: Morphism, a: str, ell: int, cap: int, budget: int
) -> PeriodicPointCertificate | None:
    prefix = _fixed_point_prefix(m, a, ell, cap)
    p = minimal_period(prefix)
    if p > len(prefix) // 2:
        return None
    w = prefix[:p]
    image = m.iterate(w, ell, budget)
    k, rem = divmod(len(image), p)
    if rem or k < 2 or image != w * k:
        return None
    return PeriodicPointCertificate(a, ell, w, k)


def _candidate_outcomes(
    m: Morphism, cap: int, budget: int = DEFAULT_LENGTH_BUDGET
) -> list[CandidateOutcome]:
    outcomes = []
    for a, ell in first_letter_cycles(m):
        tok = m.alphabet.token(a)
        finite = _finite_occurrence_letter(m, a, ell)
        if finite is not None:
            outcomes.append(
                CandidateOutcome(
                    a,
                    ell,
                    "refuted",
                    f"letter {m.alphabet.token(finite)} occurs only finitely often "
                    f"in the fixed point at {tok}",
                )
            )
            continue
        if not _has_integer_eigenvalue_ge2(m, a, ell):
            outcomes.append(
                CandidateOutcome(
                    a,
                    ell,
                    "refuted",
                    f"no integer eigenvalue >= 2 on the subalphabet reachable from {tok}",
                )
            )
            continue
        cert = _forced_scan(m, a, ell, cap, budget)
        if cert is not None:
            outcomes.append(CandidateOutcome(a, ell, "verified", "certificate verified", cert))
        else:
            outcomes.append(
                CandidateOutcome(
                    a,
                    ell,
                    "refuted_at_cap",
                    f"no period up to {cap // 2} for the fixed point at {tok}",
                )
            )
    return outcomes


def _verdict_from_outcomes(
    outcomes: list[CandidateOutcome], cap: int
) -> PeriodicityVerdict:
    for o in outcomes:
        if o.status == "verified":
            return PeriodicityVerdict("periodic", o.certificate, (), cap, tuple(outcomes))
    if not outcomes:
        return PeriodicityVerdict(
            "aperiodic", None, ("no growing first-letter cycle",), cap, ()
        )
    reasons = tuple(o.reason for o in outcomes)
    if all(o.status == "refuted" for o in outcomes):
        return PeriodicityVerdict("aperiodic", None, reasons, cap, tuple(outcomes))
    return PeriodicityVerdict("inconclusive", None, reasons, cap, tuple(outcomes))


def periodic_point_certificate(
    system: D0LSystem, prefix_cap: int = DEFAULT_PREFIX_CAP
) -> PeriodicityVerdict:
    """Decide whether some iterated fixed point of the morphism is periodic.

    The morphism must be injective (pass the final system of an injective
    simplification); negatives are certified either cap-free or up to the cap.
    """
    require_propagating(system)
    ok, _ = morphism_injectivity(system.morphism)
    if not ok:
        raise D0LError("periodic point scan requires an injective morphism")
    return _verdict_from_outcomes(
        _candidate_outcomes(system.morphism, prefix_cap), prefix_cap
    )


@dataclass(frozen=True)
class URVerdict:
    status: str  # "yes" | "no_up_to_cap" | "no_certified"
    certificate: PeriodicPointCertificate | None
    lifted_period: str | None
    cap: int
    reasons: tuple[str, ...]
    simplification: InjectiveSimplification
    notes: tuple[str, ...] = ()


def is_unboundedly_repetitive(
    system: D0LSystem, prefix_cap: int = DEFAULT_PREFIX_CAP
) -> URVerdict:
    """Some word with an unbounded letter has every power among the factors.

    Decided on an injective simplification via periodic-point certificates;
    the certificate period is lifted back through the decode chain.
    """
    require_propagating(system)
    simp = injective_simplification(system)
    outcomes = _candidate_outcomes(simp.final_system.morphism, prefix_cap)
    unbounded = set(system.alphabet.symbols) - bounded_letters(system)
    notes: list[str] = []
    for o in outcomes:
        if o.status != "verified":
            continue
        lifted = simp.lift(o.certificate.period)
        if any(s in unbounded for s in lifted):
            return URVerdict(
                "yes", o.certificate, lifted, prefix_cap, (), simp, tuple(notes)
            )
        notes.append(
            "certificate with fully bounded lifted period rejected: "
            + system.alphabet.display(lifted)
        )
    verdict = _verdict_from_outcomes(
        [o for o in outcomes if o.status != "verified"], prefix_cap
    )
    status = "no_certified" if verdict.status == "aperiodic" else "no_up_to_cap"
    if notes and status == "no_certified":
        status = "no_up_to_cap"  # a rejected certificate forfeits the cap-free claim
    return URVerdict(status, None, None, prefix_cap, verdict.reasons, simp, tuple(notes))


@dataclass(frozen=True)
class RepetitiveVerdict:
    status: str  # "yes" | "no_up_to_cap" | "no_certified"
    kind: str | None  # "pushy" | "unboundedly_repetitive"
    pushy_cycle: tuple[str, str] | None  # (cycle letter, pumped bounded word)
    ur: URVerdict
    cap: int


def is_repetitive(
    system: D0LSystem, prefix_cap: int = DEFAULT_PREFIX_CAP
) -> RepetitiveVerdict:
    """Arbitrarily high powers occur iff the system is pushy or unboundedly repetitive."""
    require_propagating(system)
    pushy = pushy_witness(system)
    ur = is_unboundedly_repetitive(system, prefix_cap)
    if pushy is not None:
        return RepetitiveVerdict("yes", "pushy", pushy, ur, prefix_cap)
    if ur.status == "yes":
        return RepetitiveVerdict("yes", "unboundedly_repetitive", None, ur, prefix_cap)
    status = "no_certified" if ur.status == "no_certified" else "no_up_to_cap"
    return RepetitiveVerdict(status, None, None, ur, prefix_cap)
