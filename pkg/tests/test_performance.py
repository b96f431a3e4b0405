"""Scale smoke tests: corpus machinery must stay in the seconds range."""

import time

from d0l import collision_search, factor_corpus, max_power, parse_system


def test_large_corpus_power_and_collisions_run_in_seconds():
    # High-complexity quaternary system; tens of thousands of distinct factors.
    sys = parse_system(
        "alphabet: a b c d\naxiom: a\na -> abcd\nb -> bd\nc -> adb\nd -> ca\n"
    )
    t0 = time.monotonic()
    corpus = factor_corpus(sys, max_len=160, generations=14, budget=2**21)
    n = len(corpus.factors)
    assert n > 100_000
    k, base = max_power(corpus)
    assert k >= 1 and base
    pairs = collision_search(sys, corpus)
    assert isinstance(pairs, list)
    dt = time.monotonic() - t0
    assert dt < 20.0, f"corpus pipeline took {dt:.1f}s on {n} factors"


def test_weak_delay_scales_on_twin(twin):
    from d0l import estimate_sync_delay

    t0 = time.monotonic()
    est = estimate_sync_delay(twin, 40, "weak", generations=9)
    assert est.ok and est.delay == 3
    assert time.monotonic() - t0 < 10.0
