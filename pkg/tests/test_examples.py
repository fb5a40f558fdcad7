from itertools import product

import pytest

from conftest import W, load_fixture
from spocode.examples import (ALPHA, Example1Config, Example2Config, Lemma9Gap, R_k, ShapeError,
                              build_example1, build_example2, build_section6, c_word,
                              classify_shape, d_sets, example1_words, example2_words, g_minus,
                              g_plus, lemma9_continuation, lemma9_indices, lemma10_witness, p_k,
                              parse_c_product, remark_extension, remark_shapes,
                              verify_boundary_displays)
from spocode.words import DomainError


def T(s):
    return tuple(s)


@pytest.fixture(scope="module")
def s6():
    return build_section6(6, 3)


# -- Example 1 -----------------------------------------------------------------

def test_example1_families():
    fam1, fam2, fam3 = example1_words(Example1Config((("0",),)), 3)
    assert dict(fam1)[("0", 2)] == T("gdg0000gdg")
    assert dict(fam2)[("0", 1, 1)] == T("gdg00gddg")
    assert dict(fam3)[("0", 2, 2)] == T("gddg0000d")


def test_example1_rejects_non_primitive_period():
    with pytest.raises(DomainError):
        Example1Config((("0", "0"),))
    assert Example1Config((("0",), ("0", "1"))).R == 2


def test_example1_family3_is_flagged():
    e1 = build_example1(Example1Config((("0",),)), 3)
    assert len(e1.flagged) == 3
    assert all("no F-suffix" in why for _, why in e1.flagged)
    assert all(w not in {c.word for c in e1.code.words} for w, _ in e1.flagged)


def test_example1_displays_match_oracle():
    fx = load_fixture("example1_displays.json")
    for n, block in fx.items():
        e1 = build_example1(Example1Config((("0",),)), block["k_max"])
        rep = verify_boundary_displays(e1, "ex1", {"n_max": int(n)})
        got = [c for c in rep.checks if c.instance["n"] == int(n)]
        assert [c.oracle for c in got] == [c["oracle"] for c in block["checks"]]
        # the membership claim fails for this instance and is reported, not hidden
        assert any(c.agrees is False for c in got)
        assert rep.to_dict()["discrepancies"] >= 1


def test_vacuous_display_bounds_give_empty_report():
    e1 = build_example1(Example1Config((("0",),)), 3)
    rep = verify_boundary_displays(e1, "ex1", {"n_max": 0})
    assert rep.checks == [] and rep.skipped == []


def test_display_instances_beyond_truncation_are_skipped():
    e1 = build_example1(Example1Config((("0",),)), 3)
    rep = verify_boundary_displays(e1, "ex1", {"n_max": 3})
    assert rep.skipped and all(c.instance["n"] == 1 for c in rep.checks)


# -- Example 2 -----------------------------------------------------------------

def test_example2_words():
    fam1, fam2 = example2_words(3)
    assert dict(fam1)[(1,)] == T("gdg11gdg")
    assert p_k(2, 8) == T("01010101")
    assert dict(fam2)[(2, 2)] == T("gddg") + p_k(2, 8) + T("gdddg")
    assert R_k(3) == 4


def test_example2_displays_match_oracle():
    fx = load_fixture("example2_displays.json")
    e2 = build_example2(Example2Config(fx["K"]))
    rep = verify_boundary_displays(e2, "ex2", {"bound": fx["bound"], "extra": fx["extra"]})
    assert [c.oracle for c in rep.checks] == [c["oracle"] for c in fx["checks"]]
    assert [c.note == "" for c in rep.checks] == [c["context_admissible"] for c in fx["checks"]]
    assert len(rep.discrepancies) == sum(c["oracle"] != c["claimed"] for c in fx["checks"])


# -- Excluded-word system -----------------------------------------------------

def test_code_words_and_identity():
    assert c_word(1, "1") == W("1,0,1")
    assert c_word(2, "-1") == W("-1,0,0,-1")
    for k in range(1, 11):
        for a in ALPHA:
            assert g_plus(k, a) + g_minus(0, a) == c_word(k, a)


def test_d_sets():
    D = d_sets(2, 5)
    assert sorted(D[1]) == sorted([W("1,0,1"), W("-1,0,-1")])
    assert W("1,-1,0,-1,1") in D[2]
    assert min(len(w) for w in D[2]) == 5


def test_parse_c_product():
    assert parse_c_product(W("1,0,0,1,-1,0,-1")) == [(2, "1"), (1, "-1")]
    assert parse_c_product(W("1,0,0")) is None


def test_shapes():
    assert classify_shape(W("1,0,0")) == (1, {"k": 2, "alpha": "1"})
    assert classify_shape(W("0,1"))[0] == 2
    assert classify_shape(W("0,1,-1,0,0"))[0] == 3
    assert classify_shape(W("0,0,1,-1,0"))[0] == 4
    with pytest.raises(ShapeError):
        classify_shape(W("0,1,0"))
    with pytest.raises(ShapeError):
        classify_shape(W("0,0"))


def test_extension_literal_cases(s6):
    r = remark_extension(s6, W("1,0,0"))
    assert r.b == W("1,0,0,1") and not r.flagged
    r = remark_extension(s6, W("0,1"))
    assert r.b == W("0,1,1,0,0,1") and not r.flagged and s6.admissible(r.b)


def test_extension_degenerate_single_symbol_is_flagged(s6):
    r = remark_extension(s6, W("1"))
    assert r.flagged and "k = 0" in r.reason
    assert s6.admissible(r.b) and r.b[:1] == W("1") and s6.contains_code_word(r.b)


def test_extension_all_shapes_up_to_five(s6):
    for a in remark_shapes(5):
        if not s6.admissible(a) or s6.contains_code_word(a):
            continue
        r = remark_extension(s6, a)
        assert r.b[:len(a)] == a
        assert s6.admissible(r.b)
        assert s6.contains_code_word(r.b) is not None


def test_excluded_system_rejects_short_jumps(s6):
    assert not s6.admissible(c_word(1, "1"))
    assert not s6.admissible(c_word(2, "1") + c_word(4, "1"))
    assert s6.admissible(c_word(3, "1") + c_word(4, "-1"))


def test_continuation_indices_and_gaps(s6):
    assert lemma9_indices([2, 1]) == [1]
    assert lemma9_indices([3, 2, 1]) == [2, 1]
    with pytest.raises(DomainError):
        lemma9_indices([2])
    with pytest.raises(Lemma9Gap):
        lemma9_indices([5, 2])
    r = lemma9_continuation(s6, [(3, "1"), (2, "-1")])
    assert r.continuation == [(3, "1")] and r.admissible


def test_continuation_exhaustive_small(s6):
    done = gaps = 0
    for R in range(2, 5):
        for ks in product(range(2, 6), repeat=R):
            if any(b > a + 1 for a, b in zip(ks, ks[1:])) or max(ks) == ks[-1]:
                continue
            for alphas in product(ALPHA, repeat=R):
                try:
                    r = lemma9_continuation(s6, list(zip(ks, alphas)))
                except Lemma9Gap:
                    gaps += 1
                    continue
                assert r.admissible, r.to_dict()
                done += 1
    assert done > 0 and gaps > 0


def test_witness_fraction_matches_oracle_fixture():
    fx = load_fixture("section6_lemma10.json")
    sys_ = build_section6(fx["k_max"], fx["m_max"])
    for row in fx["rows"]:
        got = lemma10_witness(sys_, W(row["a"]), row["depth"]).to_dict()
        assert got == row


def test_witness_preconditions(s6):
    # c<1,1> = 1,0,1 is itself excluded, so it cannot serve as a
    with pytest.raises(DomainError):
        lemma10_witness(s6, c_word(1, "1"), 12)
    with pytest.raises(DomainError):
        lemma10_witness(s6, c_word(3, "1") + c_word(2, "1"), 6)


def test_witness_shallow_depth_is_inconclusive(s6):
    rep = lemma10_witness(s6, c_word(2, "1"), 2)
    assert rep.fraction == 0.0 and rep.inconclusive_flag
