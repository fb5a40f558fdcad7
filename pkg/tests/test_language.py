import math

import pytest
from hypothesis import given, strategies as st

import oracles as O
from conftest import W, load_fixture
from spocode import (SFT, Alphabet, Coded, LanguageTable, entropy_estimate, enumerate_language,
                     follower_set, is_admissible, predecessor_set)
from spocode.examples import Example1Config, build_example1, build_section6
from spocode.language import inclusion_counterexample
from spocode.words import DomainError


def test_full_shift_table(full2):
    t = enumerate_language(full2, 2)
    assert t.all_words() == [W("0"), W("1"), W("0,0"), W("0,1"), W("1,0"), W("1,1")]


def test_golden_mean_matches_filter_oracle(golden):
    for n in range(1, 9):
        assert enumerate_language(golden, n).words(n) == O.sft_words("01", [("1", "1")], n)
    assert len(enumerate_language(golden, 3).words(3)) == 5


def test_even_shift_matches_path_oracle(even):
    edges = [("A", "1", "A"), ("A", "0", "B"), ("B", "0", "A")]
    for n in range(1, 9):
        assert enumerate_language(even, n).words(n) == O.sofic_words(edges, n)


def test_excluded_system_window_table_matches_oracle():
    fx = load_fixture("section6_n4.json")
    s6 = build_section6(fx["k_max"], fx["m_max"])
    words = enumerate_language(s6.presentation, 4).words(4)
    got = sorted(",".join(w) for w in words)
    assert got == sorted(fx["words"])
    assert W("-1,0,0,-1") in words
    # the excluded word 1,0,1 never occurs, so no window can contain it
    assert not any(w[i:i + 3] == W("1,0,1") for w in words for i in range(2))


def test_zero_length_is_a_domain_error(golden):
    with pytest.raises(DomainError):
        enumerate_language(golden, 0)


def test_admissibility_examples(golden):
    assert not is_admissible(golden, W("1,1"))
    assert is_admissible(golden, W("0,1,0,1"))
    s6 = build_section6(4, 2)
    assert not is_admissible(s6.presentation, W("1,0,1,1,0,0,0,1"))


def test_followers(golden, full2):
    assert follower_set(golden, W("1"), 1) == [W("0")]
    assert len(follower_set(full2, W("0,1"), 3)) == 2 + 4 + 8
    assert predecessor_set(golden, W("1"), 1) == [W("0")]


def test_follower_of_inadmissible_word_fails(golden):
    with pytest.raises(DomainError):
        follower_set(golden, W("1,1"), 2)


def test_example1_follower_display_oracle():
    # the context d^(n+1) g 0 for n = 1; the oracle says p_[0,R) g cannot follow
    fx = load_fixture("example1_displays.json")["1"]
    e1 = build_example1(Example1Config((("0",),)), fx["k_max"])
    ctx = W(fx["checks"][0]["context"])
    fol = follower_set(e1.presentation, ctx, 3)
    for c in fx["checks"]:
        assert (W(c["follower"]) in fol) == c["oracle"]


def test_entropy_of_full_shifts():
    for q in (2, 3, 5):
        p = SFT(Alphabet(tuple(str(i) for i in range(q))))
        est = entropy_estimate(p, 6).estimates
        assert all(abs(e - math.log(q)) < 1e-12 for e in est)


def test_golden_mean_entropy_counts(golden):
    est = entropy_estimate(golden, 64)
    fib = [1, 2]
    while len(fib) < 66:
        fib.append(fib[-1] + fib[-2])
    assert list(est.counts) == fib[1:65]
    assert abs(est.estimates[-1] - math.log((1 + math.sqrt(5)) / 2)) < 1e-2
    assert all(b <= a for a, b in zip(est.estimates, est.estimates[1:]))


def test_example2_counts_regression():
    from spocode.examples import Example2Config, build_example2
    fx = load_fixture("example2_counts.json")
    e2 = build_example2(Example2Config(fx["K"]))
    est = entropy_estimate(e2.presentation, len(fx["counts"]))
    assert list(est.counts) == fx["counts"]


def test_table_round_trip_and_closure(even):
    t = enumerate_language(even, 5)
    again = LanguageTable.from_lines(even.alphabet, t.to_lines())
    assert again.all_words() == t.all_words()
    assert t.factor_closure_violations() == []
    assert t.non_extendable() == []


def test_coded_system_language():
    p = Coded(Alphabet(("0", "1")), [W("1"), W("0,1"), W("0,0,1")], margin=None)
    words = enumerate_language(p, 4).words(4)
    assert W("0,0,0") not in enumerate_language(p, 3)
    assert all(W("0,0,0") != w[i:i + 3] for w in words for i in range(2))


@given(st.lists(st.sampled_from("01"), min_size=1, max_size=10))
def test_admissibility_is_factor_closed(w):
    golden = SFT(Alphabet(("0", "1")), [("1", "1")])
    w = tuple(w)
    if is_admissible(golden, w):
        assert all(is_admissible(golden, w[i:j]) for i in range(len(w)) for j in range(i + 1, len(w) + 1))


def test_inclusion_counterexample_finds_shortest_word(golden):
    full = SFT(Alphabet(("0", "1")))
    assert inclusion_counterexample(golden, full, 6) is None
    assert inclusion_counterexample(full, golden, 6) == ("1", "1")


def test_inclusion_counterexample_respects_length_bound(even, golden):
    assert inclusion_counterexample(even, golden, 1) is None
    assert inclusion_counterexample(even, golden, 4) == ("1", "1")
