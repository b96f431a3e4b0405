import random

from d0l import (
    collision_search,
    factor_corpus,
    iterate,
    max_power,
    nonsync_witness_search,
    parse_system,
)


def test_thue_morse_small_corpus(thue_morse):
    c = factor_corpus(thue_morse, max_len=3)
    got = {thue_morse.alphabet.display(f) for f in c.factors}
    assert got == {
        "a", "b", "aa", "ab", "ba", "bb",
        "aab", "abb", "aba", "bab", "bba", "baa",
    }
    assert c.stable


def test_finite_language_corpus():
    sys = parse_system("alphabet: a\naxiom: a\na -> a\n")
    c = factor_corpus(sys, max_len=5)
    assert {f for f in c.factors} == {"a"}
    assert c.stable


def test_twin_corpus_length_two(twin):
    c = factor_corpus(twin, max_len=2)
    got = {twin.alphabet.display(f) for f in c.factors}
    assert got == {"a", "b", "c", "ab", "bc", "ca", "cb"}
    assert "cc" not in got


def test_corpus_soundness_sample(twin, thue_morse, tail):
    # Every factor must literally occur in some generation word.
    rng = random.Random(7)
    for sys in (twin, thue_morse, tail):
        c = factor_corpus(sys, max_len=12)
        words = [sys.axiom]
        for _ in range(c.generation):
            words.append(sys.morphism.apply(words[-1]))
        sample = rng.sample(sorted(c.factors), max(1, len(c.factors) // 10))
        for f in sample:
            assert any(f in w for w in words)


def test_max_power_examples(twin, thue_morse, doubling):
    k, base = max_power(factor_corpus(thue_morse, max_len=24, generations=10))
    assert k == 2
    k, base = max_power(factor_corpus(doubling, max_len=16))
    assert k == 16 and base == "a"
    k, base = max_power(factor_corpus(twin, max_len=24))
    assert k >= 4 and twin.alphabet.display(base) == "bc"


def test_max_power_doubling_trick_matches_failure_function(twin, thue_morse):
    from d0l.words import primitive_root

    for sys in (twin, thue_morse):
        c = factor_corpus(sys, max_len=20, generations=9)
        for f in c.sorted_factors():
            p = (f + f).find(f, 1)
            assert (f[:p], len(f) // p) == primitive_root(f)


def test_max_power_monotone_in_max_len(doubling, twin):
    for sys in (doubling, twin):
        prev = 0
        for ln in (4, 8, 16):
            k, _ = max_power(factor_corpus(sys, max_len=ln))
            assert k >= prev
            prev = k


def test_collision_search_examples(twin, thue_morse, rotor):
    c = factor_corpus(twin, max_len=24)
    pairs = collision_search(twin, c)
    shown = {(twin.alphabet.display(u), twin.alphabet.display(v)) for u, v in pairs}
    assert ("b", "c") in shown
    assert ("bc", "cb") in shown
    assert ("bcbc", "cbcb") in shown
    # symmetric-irreflexive representation: each unordered pair once, u != v
    assert all(u != v for u, v in pairs)
    assert len({frozenset(p) for p in pairs}) == len(pairs)
    # longest first
    assert [len(u) for u, _ in pairs] == sorted([len(u) for u, _ in pairs], reverse=True)

    assert collision_search(thue_morse, factor_corpus(thue_morse, max_len=24)) == []

    # the rotated-image system does collide inside the corpus: cb occurs in phi^2(a)
    rc = factor_corpus(rotor, max_len=24)
    rpairs = collision_search(rotor, rc)
    shown = {(rotor.alphabet.display(u), rotor.alphabet.display(v)) for u, v in rpairs}
    assert ("a", "cb") in shown


def test_nonsync_witness_search(doubling, twin, thue_morse):
    c = factor_corpus(doubling, max_len=18)
    w = nonsync_witness_search(doubling, c)
    assert w == "a" * 16

    for sys in (twin, thue_morse):
        c = factor_corpus(sys, max_len=16, generations=10)
        w = nonsync_witness_search(sys, c)
        if w is not None:
            assert len(w) <= 6  # only short factors may lack sync positions


def test_unstable_corpus_is_flagged(tail):
    # b^n appears only at generation n; the corpus keeps growing past any budget.
    c = factor_corpus(tail, max_len=24, generations=8)
    assert not c.stable
    assert c.generation == 8
