import pytest

from d0l import (
    D0LError,
    injective_simplification,
    injectivity,
    is_code,
    parse_system,
)
from d0l.codes import morphism_injectivity


def test_is_code_examples():
    assert is_code(["ab", "ba"]).is_code
    chk = is_code(["a", "ab", "b"])
    assert not chk.is_code
    assert chk.ambiguous_word == "ab"
    assert sorted([chk.factorization_a, chk.factorization_b]) == [("a", "b"), ("ab",)]
    chk = is_code(["abc", "bc", "a"])
    assert not chk.is_code
    assert chk.ambiguous_word == "abc"


def test_is_code_suffix_ambiguity():
    chk = is_code(["aa", "aaa"])
    assert not chk.is_code
    assert chk.ambiguous_word == "aaaaa"


def test_is_code_prefix_code_with_dangling():
    assert is_code(["ab", "a"]).is_code  # dangling b never resolves
    assert is_code(["a"]).is_code


def test_is_code_minimal_witness():
    chk = is_code(["ab", "abb", "b"])
    assert not chk.is_code
    assert chk.ambiguous_word == "abb"


def test_is_code_rejects_empty_word():
    with pytest.raises(D0LError):
        is_code(["", "a"])


def test_witness_words_have_equal_images(twin, rotor):
    for sys in (twin, rotor):
        ok, witness = morphism_injectivity(sys.morphism)
        assert not ok
        u, v = witness
        assert u != v
        assert sys.morphism.apply(u) == sys.morphism.apply(v)


def test_injectivity_examples(twin, thue_morse, rotor):
    rep = injectivity(twin)
    assert not rep.morphism_injective
    assert rep.morphism_witness == ("b", "c")
    assert rep.system_status == "no"
    assert rep.system_witness == ("b", "c")

    rep = injectivity(thue_morse)
    assert rep.morphism_injective
    assert rep.system_status == "yes_certified"

    # phi(cb) = phi(a) and cb does occur (phi^2(a) = abcbca), so the system
    # itself is non-injective, witnessed inside the corpus.
    rep = injectivity(rotor)
    assert not rep.morphism_injective
    assert rep.system_status == "no"
    assert rep.system_witness == ("a", "cb")


def test_injectivity_bound_only_case():
    # phi(bc) = phi(ab) = aba, but c occurs only at the start of the axiom,
    # so bc is never a factor: non-injective morphism, clean corpus.
    sys = parse_system("alphabet: a b c\naxiom: ca\na -> ab\nb -> a\nc -> ba\n")
    rep = injectivity(sys)
    assert not rep.morphism_injective
    assert sorted(rep.morphism_witness) == ["ab", "bc"]
    assert rep.system_status == "yes_up_to_bound"
    assert rep.bound == 24


def test_simplification_twin(twin):
    simp = injective_simplification(twin)
    assert len(simp.chain) == 1
    step = simp.chain[0]
    final = simp.final_system
    assert len(final.alphabet) == 2
    # psi is x -> xyyx, y -> yy up to renaming
    images = {
        final.alphabet.token(s): final.alphabet.decode(final.morphism.image(s))
        for s in final.alphabet.symbols
    }
    long_letters = [t for t, img in images.items() if len(img) == 4]
    short_letters = [t for t, img in images.items() if len(img) == 2]
    assert len(long_letters) == 1 and len(short_letters) == 1
    x, y = long_letters[0], short_letters[0]
    assert images[x] == (x, y, y, x)
    assert images[y] == (y, y)
    # decode/merge reproduce the original morphism letterwise
    for s in twin.alphabet.symbols:
        assert step.decode.apply(step.merge.image(s)) == twin.morphism.image(s)


def test_simplification_injective_input_is_identity(thue_morse, fibonacci):
    for sys in (thue_morse, fibonacci):
        simp = injective_simplification(sys)
        assert simp.chain == ()
        assert simp.final_system == sys


def test_simplification_equal_squares():
    sys = parse_system("alphabet: a b\naxiom: ab\na -> aa\nb -> aa\n")
    simp = injective_simplification(sys)
    assert len(simp.chain) == 1
    final = simp.final_system
    assert len(final.alphabet) == 1
    s = final.alphabet.symbols[0]
    assert final.morphism.image(s) == s + s
    assert simp.lift(s) == "aa"


def test_simplification_chain_strictly_shrinks(twin):
    simp = injective_simplification(twin)
    sizes = [len(twin.alphabet)] + [len(st.simplified.alphabet) for st in simp.chain]
    assert all(a > b for a, b in zip(sizes, sizes[1:]))
    assert len(simp.chain) < len(twin.alphabet)


def test_final_morphism_is_code_with_distinct_images(twin):
    simp = injective_simplification(twin)
    images = list(simp.final_system.morphism.images)
    assert len(set(images)) == len(images)
    assert is_code(images).is_code
