"""Growth analysis of letters under iteration.

Per-letter growth is Theta(n^alpha * beta^n).  beta is the largest Perron root
among strongly connected components of the occurrence graph reachable from the
letter; alpha is the longest condensation chain of components attaining that
root, minus one.  Roots are kept as exact algebraic numbers (sympy) so that
grouping letters into growth classes never depends on floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy

from .errors import InvariantError
from .system import Alphabet, D0LSystem, Morphism, require_propagating

BETA_ENCLOSURE = Fraction(1, 10**10)


def _strongly_connected_components(order: list[str], edges: dict[str, set[str]]) -> list[list[str]]:
    """Tarjan, iterative.  Components come out in reverse topological order."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comps: list[list[str]] = []
    counter = 0
    for root in order:
        if root in index:
            continue
        work = [(root, iter(sorted(edges[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(edges[w]))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def _max_real_root(poly: sympy.Poly):
    roots = poly.real_roots()
    if not roots:
        raise InvariantError(f"characteristic polynomial {poly} has no real root")
    return roots[-1]


def _exact_lt(a, b) -> bool:
    r = sympy.simplify(a < b) if not isinstance(a < b, (bool,)) else (a < b)
    try:
        return bool(r)
    except TypeError as exc:
        raise InvariantError(f"could not compare algebraic numbers {a}, {b}") from exc


def _exact_eq(a, b) -> bool:
    r = sympy.Eq(a, b)
    try:
        return bool(r)
    except TypeError as exc:
        raise InvariantError(f"could not compare algebraic numbers {a}, {b}") from exc


class _GrowthAnalysis:
    """Shared SCC/Perron data for one morphism."""

    def __init__(self, morphism: Morphism):
        self.morphism = morphism
        alpha = morphism.alphabet
        syms = list(alpha.symbols)
        edges = morphism.occurrence_edges()
        comps = _strongly_connected_components(syms, edges)
        self.comps = [tuple(sorted(c, key=alpha.index)) for c in comps]
        self.comp_of = {s: i for i, c in enumerate(self.comps) for s in c}
        ncomp = len(self.comps)
        self.cond_edges: list[set[int]] = [set() for _ in range(ncomp)]
        for s in syms:
            for t in edges[s]:
                ci, cj = self.comp_of[s], self.comp_of[t]
                if ci != cj:
                    self.cond_edges[ci].add(cj)

        # Internal production: for c in comp, how many comp letters its image spawns.
        self.nontrivial = []
        self.expanding = []
        self.perron = []
        self.perron_poly = []
        lam = sympy.Symbol("lam")
        for comp in self.comps:
            members = set(comp)
            has_cycle = len(comp) > 1 or any(t in members for t in edges[comp[0]])
            internal = [
                sum(1 for t in morphism.image(s) if t in members) for s in comp
            ]
            self.nontrivial.append(has_cycle)
            self.expanding.append(has_cycle and any(r >= 2 for r in internal))
            sub = sympy.Matrix(
                [
                    [morphism.image(s).count(t) for t in comp]
                    for s in comp
                ]
            )
            poly = sympy.Poly(sub.charpoly(lam).as_expr(), lam)
            self.perron_poly.append(poly)
            self.perron.append(_max_real_root(poly) if has_cycle else sympy.Integer(0))

        # Group equal Perron roots exactly; class ids are ascending by value.
        distinct: list = []
        comp_class = []
        for i, r in enumerate(self.perron):
            for j, (v, _) in enumerate(distinct):
                if _exact_eq(r, v):
                    comp_class.append(j)
                    break
            else:
                distinct.append((r, self.perron_poly[i]))
                comp_class.append(len(distinct) - 1)
        order = sorted(range(len(distinct)), key=_RootKey([v for v, _ in distinct]))
        rank_of = {old: rank for rank, old in enumerate(order)}
        self.root_values = [distinct[old][0] for old in order]
        self.root_polys = [distinct[old][1] for old in order]
        self.comp_root_rank = [rank_of[c] for c in comp_class]

        # Reverse topological order from Tarjan: successors appear before a component.
        self.reach_expanding = [False] * ncomp
        self.max_cyclic_chain = [0] * ncomp
        self.max_rank = [0] * ncomp
        for i in range(ncomp):
            re = self.expanding[i]
            chain = 0
            rank = self.comp_root_rank[i]
            for j in self.cond_edges[i]:
                re = re or self.reach_expanding[j]
                chain = max(chain, self.max_cyclic_chain[j])
                rank = max(rank, self.max_rank[j])
            self.reach_expanding[i] = re
            self.max_cyclic_chain[i] = chain + (1 if self.nontrivial[i] else 0)
            self.max_rank[i] = rank
        # Longest chain of components whose root rank equals a target, per (comp, rank).
        self._chain_memo: dict[tuple[int, int], int] = {}

    def chain(self, comp: int, rank: int) -> int:
        key = (comp, rank)
        if key not in self._chain_memo:
            best = 0
            for j in self.cond_edges[comp]:
                best = max(best, self.chain(j, rank))
            if self.comp_root_rank[comp] == rank:
                best += 1
            self._chain_memo[key] = best
        return self._chain_memo[key]

    def unbounded(self, symbol: str) -> bool:
        c = self.comp_of[symbol]
        return self.reach_expanding[c] or self.max_cyclic_chain[c] >= 2


class _RootKey:
    """Sort key wrapper using exact algebraic comparisons."""

    def __init__(self, values):
        self.values = values

    def __call__(self, idx):
        return _Cmp(self.values[idx])


class _Cmp:
    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return _exact_lt(self.v, other.v)


@lru_cache(maxsize=256)
def _analysis(morphism: Morphism) -> _GrowthAnalysis:
    return _GrowthAnalysis(morphism)


@dataclass(frozen=True)
class GrowthClass:
    """|phi^n(a)| = Theta(n^alpha * beta^n); bounded letters get (0, 1)."""

    alpha: int
    beta: object  # exact sympy number
    beta_str: str  # certified decimal enclosure midpoint, width <= 1e-9

    @property
    def beta_float(self) -> float:
        return float(self.beta)

    def key(self) -> tuple:
        return (self.beta_str, self.alpha)


@dataclass(frozen=True)
class SigmaPartition:
    """Disjoint letter classes in increasing growth order; classes[0] is A0."""

    classes: tuple[frozenset[str], ...]

    @property
    def cumulative(self) -> tuple[frozenset[str], ...]:
        out = []
        acc: frozenset[str] = frozenset()
        for c in self.classes:
            acc = acc | c
            out.append(acc)
        return tuple(out)


def _rational_decimal(fr: Fraction, digits: int = 10) -> str:
    sign = "-" if fr < 0 else ""
    fr = abs(fr)
    whole = fr.numerator // fr.denominator
    rem = fr - whole
    scaled = (rem.numerator * 10**digits + fr.denominator // 2) // fr.denominator
    frac = str(scaled).rjust(digits, "0")
    frac = frac.rstrip("0")
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def _beta_decimal(root, poly: sympy.Poly) -> str:
    if root.is_Integer or root.is_Rational:
        return _rational_decimal(Fraction(int(root.p), int(root.q)))
    target = None
    for lo, hi in [iv for (iv, _mult) in poly.intervals()]:
        if bool(lo <= root) and bool(root <= hi):
            target = (lo, hi)
            break
    if target is None:
        raise InvariantError(f"no isolating interval found for {root}")
    lo, hi = poly.refine_root(target[0], target[1], eps=sympy.Rational(1, 10**11))
    mid = Fraction(int((lo + hi).p), int((lo + hi).q)) / 2 if (lo + hi).is_Rational else None
    if mid is None:
        mid = (Fraction(int(lo.p), int(lo.q)) + Fraction(int(hi.p), int(hi.q))) / 2
    return _rational_decimal(mid)


def bounded_letters(system: D0LSystem) -> frozenset[str]:
    """The set A0 of letters with finitely many distinct iterated images."""
    require_propagating(system)
    an = _analysis(system.morphism)
    return frozenset(s for s in system.alphabet.symbols if not an.unbounded(s))


def growth_class(system: D0LSystem, letter: str) -> GrowthClass:
    require_propagating(system)
    an = _analysis(system.morphism)
    if letter not in system.alphabet:
        raise InvariantError(f"letter {letter!r} not in alphabet")
    comp = an.comp_of[letter]
    rank = an.max_rank[comp]
    beta = an.root_values[rank]
    alpha = an.chain(comp, rank) - 1
    if alpha < 0:
        raise InvariantError("every PD0L letter reaches a cycle; alpha must be >= 0")
    return GrowthClass(alpha, beta, _beta_decimal(beta, an.root_polys[rank]))


def sigma_partition(system: D0LSystem) -> SigmaPartition:
    """Letters grouped by exact (beta, alpha), ascending; class 0 is A0 (kept even if empty)."""
    require_propagating(system)
    an = _analysis(system.morphism)
    bounded = bounded_letters(system)
    groups: dict[tuple[int, int], set[str]] = {}
    for s in system.alphabet.symbols:
        if s in bounded:
            continue
        comp = an.comp_of[s]
        rank = an.max_rank[comp]
        alpha = an.chain(comp, rank) - 1
        groups.setdefault((rank, alpha), set()).add(s)
    classes = [frozenset(bounded)]
    for key in sorted(groups):
        classes.append(frozenset(groups[key]))
    part = SigmaPartition(tuple(classes))
    # Image closure phi(A_j) within A_j must hold by construction; verify.
    m = system.morphism
    for acc in part.cumulative:
        for s in acc:
            if any(t not in acc for t in m.image(s)):
                raise InvariantError("sigma partition not image-closed")
    return part


def is_pushy(system: D0LSystem) -> bool:
    """True when arbitrarily long factors over bounded letters occur."""
    return pushy_witness(system) is not None


def pushy_witness(system: D0LSystem) -> tuple[str, str] | None:
    """(cycle letter, nonempty bounded word pumped next to it), or None if not pushy.

    Bounded blocks between unbounded neighbours grow exactly when iterating the
    last-unbounded-letter map (or its mirror) from some unbounded letter enters
    a cycle appending a nonempty bounded suffix (prefix).
    """
    require_propagating(system)
    m = system.morphism
    bounded = bounded_letters(system)
    unbounded = [s for s in system.alphabet.symbols if s not in bounded]
    if not unbounded or not bounded:
        return None

    def split(image: str, from_right: bool) -> tuple[str, str]:
        rng = range(len(image) - 1, -1, -1) if from_right else range(len(image))
        for i in rng:
            if image[i] not in bounded:
                return image[i], (image[i + 1 :] if from_right else image[:i])
        raise InvariantError("unbounded letter with bounded-only image")

    for from_right in (True, False):
        step = {u: split(m.image(u), from_right) for u in unbounded}
        for start in unbounded:
            seen: dict[str, int] = {}
            path: list[str] = []
            cur = start
            while cur not in seen:
                seen[cur] = len(path)
                path.append(cur)
                cur = step[cur][0]
            cycle = path[seen[cur] :]
            for c in cycle:
                if step[c][1]:
                    return c, step[c][1]
    return None


def is_primitive(morphism: Morphism) -> bool:
    """True when some power of the incidence pattern is everywhere positive."""
    n = len(morphism.alphabet)
    syms = morphism.alphabet.symbols
    reach = [[t in set(morphism.image(s)) for t in syms] for s in syms]
    cur = reach
    for _ in range(n * n):
        if all(all(row) for row in cur):
            return True
        cur = [
            [any(cur[i][k] and reach[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
    return False


def _length_vector(morphism: Morphism, n: int) -> dict[str, int]:
    """|phi^n(s)| per letter, by exact vector iteration (no word expansion)."""
    v = {s: 1 for s in morphism.alphabet.symbols}
    for _ in range(n):
        v = {s: sum(v[t] for t in morphism.image(s)) for s in morphism.alphabet.symbols}
    return v


def bounded_stabilization_exponent(system: D0LSystem) -> int:
    """Least n with |phi^m(c)| = |phi^{m+1}(c)| for every bounded c and m >= n."""
    require_propagating(system)
    m = system.morphism
    a0 = bounded_letters(system)
    if not a0:
        return 0
    v = {s: 1 for s in a0}
    n = 0
    while True:
        nxt = {s: sum(v[t] for t in m.image(s)) for s in a0}
        if nxt == v:
            return n
        v = nxt
        n += 1
        if n > 4 * len(m.alphabet) * m.norm_max ** len(m.alphabet):
            raise InvariantError("bounded letter lengths failed to stabilize")


def bounded_sync_bound(system: D0LSystem) -> int:
    """Length bound 3 * ||phi^{n+1}|| * |w0| above which bounded-letter factors synchronize."""
    require_propagating(system)
    n = bounded_stabilization_exponent(system)
    norm = max(_length_vector(system.morphism, n + 1).values())
    return 3 * norm * len(system.axiom)


def saturation_oracle_bounded(system: D0LSystem) -> frozenset[str]:
    """Independent brute-force check for bounded_letters: iterate the length
    vector to depth 2|A|, then a letter is bounded iff its entry stays below
    the cap and is constant over a further window of |A| steps.  The window
    must cover a full cycle revolution or oscillating growth (lengths
    1,2,2,4,4,...) aliases as stable."""
    require_propagating(system)
    m = system.morphism
    n = len(m.alphabet)
    cap = n * m.norm_max**n
    v = {s: 1 for s in m.alphabet.symbols}
    for _ in range(2 * n):
        v = {s: sum(v[t] for t in m.image(s)) for s in m.alphabet.symbols}
    ok = {s for s in m.alphabet.symbols if v[s] <= cap}
    base = dict(v)
    for _ in range(n):
        v = {s: sum(v[t] for t in m.image(s)) for s in m.alphabet.symbols}
        ok = {s for s in ok if v[s] == base[s] and v[s] <= cap}
    return frozenset(ok)
