import pytest
from hypothesis import given, strategies as st

from spocode.blockmap import BlockMap, apply_block_map, compose
from spocode.words import Alphabet, DomainError

BIN = Alphabet(("0", "1"))


def xor_map():
    return BlockMap.from_function(1, BIN, BIN, lambda w: "1" if w[0] != w[2] else "0")


def test_identity_radius_zero():
    m = BlockMap.from_function(0, BIN, BIN, lambda w: w[0])
    assert apply_block_map(m, ("0", "1", "1")) == ("0", "1", "1")


def test_middle_symbol_drops_ends():
    m = BlockMap.from_function(1, BIN, BIN, lambda w: w[1])
    assert apply_block_map(m, ("0", "1", "1", "0")) == ("1", "1")


def test_xor_of_endpoints():
    assert apply_block_map(xor_map(), ("0", "1", "1", "0")) == ("1", "1")


def test_short_word_is_rejected():
    with pytest.raises(DomainError):
        apply_block_map(xor_map(), ("0", "1"))


@given(st.lists(st.sampled_from("01"), min_size=5, max_size=12))
def test_composition_matches_sequential_application(w):
    f = xor_map()
    g = BlockMap.from_function(1, BIN, BIN, lambda v: v[1] if v[0] == "0" else v[2])
    h = compose(g, f, BIN)
    assert h.radius == 2
    assert apply_block_map(h, tuple(w)) == apply_block_map(g, apply_block_map(f, tuple(w)))
