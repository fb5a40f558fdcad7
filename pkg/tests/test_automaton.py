from hypothesis import given, strategies as st

from spocode.automaton import AhoCorasick, Automaton
from spocode.words import Alphabet, ResourceError

BIN = Alphabet(("0", "1"))


def chain_with_tail():
    # a cycle A->B->A plus a dead-end tail C that only the closure core drops
    return [("A", "0", "B"), ("B", "1", "A"), ("A", "1", "C")]


def test_closure_core_drops_transient_states():
    aut = Automaton(BIN, chain_with_tail())
    assert aut.n_states == 2
    assert aut.accepts(("0", "1", "0"))
    assert not aut.accepts(("1", "1"))


def test_margin_core_keeps_states_with_enough_context():
    edges = [("s", "0", "a"), ("a", "1", "b"), ("b", "0", "t")]
    aut = Automaton(BIN, edges, starts=["s"], accepts=["t"], margin=1)
    assert aut.accepts(("1",))
    assert not aut.accepts(("0", "1"))


def test_count_words_matches_brute_force():
    aut = Automaton(BIN, chain_with_tail() + [("A", "0", "A")])
    from itertools import product
    for n in range(1, 7):
        brute = sum(aut.accepts(w) for w in product("01", repeat=n))
        assert aut.count_words(n)[-1] == brute


def test_extensions_backward_are_in_reading_order():
    aut = Automaton(BIN, [("A", "0", "B"), ("B", "1", "A")])
    back = aut.extensions(aut.run(("0",), backward=True), 2, backward=True)
    assert back == [("1",), ("0", "1")]


def test_extension_cap_raises():
    aut = Automaton(BIN, [("A", "0", "A"), ("A", "1", "A")])
    try:
        aut.extensions(aut.initial, 10, cap=5)
    except ResourceError:
        return
    raise AssertionError("cap not enforced")


def test_strong_connectivity():
    assert Automaton(BIN, [("A", "0", "B"), ("B", "1", "A")]).strongly_connected()


@given(st.lists(st.text(alphabet="ab", min_size=1, max_size=3), min_size=1, max_size=4),
       st.text(alphabet="ab", max_size=12))
def test_aho_corasick_detects_patterns(patterns, text):
    pats = [tuple(p) for p in patterns]
    ac = AhoCorasick(pats, Alphabet(("a", "b")))
    state, hit = 0, False
    for ch in text:
        state = ac.delta[state][ch]
        hit = hit or ac.terminal[state]
    assert hit == any(p in text for p in patterns)
