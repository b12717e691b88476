import random

import pytest

from opmatch.fragstring import DynString, RefString


def naive_lcp(s, i, j):
    n = len(s)
    k = 0
    while i - 1 + k < n and j - 1 + k < n and s[i - 1 + k] == s[j - 1 + k]:
        k += 1
    return k


def test_lcp_overlap_example():
    ref = RefString([0, 1, 0, 1])  # "abab"
    assert ref.lcp(1, 3) == 2


def test_lcp_identical_suffixes():
    ref = RefString([3, 1, 4, 1, 5])
    for i in range(1, 6):
        assert ref.lcp(i, i) == 5 - i + 1


def test_lcp_matches_naive_exhaustively():
    rng = random.Random(41)
    for _ in range(60):
        m = rng.randint(1, 50)
        syms = [rng.randint(0, 3) for _ in range(m)]
        ref = RefString(syms)
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                assert ref.lcp(i, j) == naive_lcp(syms, i, j), (syms, i, j)


def test_lcp_larger_alphabet_and_m200():
    rng = random.Random(43)
    m = 200
    syms = [rng.randint(-5, 5) for _ in range(m)]
    ref = RefString(syms)
    for _ in range(4000):
        i = rng.randint(1, m)
        j = rng.randint(1, m)
        assert ref.lcp(i, j) == naive_lcp(syms, i, j)


def test_refstring_rejects_empty():
    with pytest.raises(ValueError):
        RefString([])


def test_dyn_init_roundtrip_and_fragment_count():
    ref = RefString([1, 2, 3])
    content = [9, 9, 9, 1, 2, 3]
    dyn = DynString(ref, content)
    assert dyn.materialize() == content
    assert dyn.fragment_count() == 6
    dyn.check_tiling()


def test_dyn_init_wrong_length():
    ref = RefString([1, 2, 3])
    with pytest.raises(ValueError):
        DynString(ref, [1, 2, 3])


def test_replace_changes_exactly_one_position():
    ref = RefString([1, 2, 3, 4])
    content = [5, 6, 7, 8, 1, 2, 3, 4]
    dyn = DynString(ref, content)
    dyn.replace(3, 0)
    want = list(content)
    want[2] = 0
    assert dyn.materialize() == want
    assert dyn.fragment_count() == 8  # replacing a single-symbol fragment


def test_replace_mid_reference_fragment_splits_in_three():
    ref = RefString([1, 2, 3, 4, 5])
    dyn = DynString(ref, [1, 2, 3, 4, 5] * 2)
    # force a long reference fragment via compaction
    stream = dyn.first_mismatches(1, 4)
    assert stream.positions == []
    before = dyn.fragment_count()
    assert before < 10
    dyn.replace(3, 9)
    assert dyn.fragment_count() == before + 2
    want = [1, 2, 9, 4, 5, 1, 2, 3, 4, 5]
    assert dyn.materialize() == want
    dyn.check_tiling()


def test_replace_out_of_range():
    ref = RefString([1, 2])
    dyn = DynString(ref, [1, 2, 1, 2])
    with pytest.raises(ValueError):
        dyn.replace(0, 5)
    with pytest.raises(ValueError):
        dyn.replace(5, 5)


def test_stream_identical_window_is_empty():
    ref = RefString([4, 7, 1])
    dyn = DynString(ref, [4, 7, 1, 0, 0, 0])
    stream = dyn.first_mismatches(1, 6)
    assert stream.positions == [] and stream.truncated is False


def test_stream_single_replaced_symbol():
    ref = RefString([4, 7, 1, 9])
    content = [4, 7, 1, 9, 4, 7, 1, 9]
    for p in range(1, 5):
        dyn = DynString(ref, content)
        dyn.replace(p, -1)
        stream = dyn.first_mismatches(1, 12)
        assert stream.positions == [p]


def test_stream_truncates_after_limit_plus_one():
    ref = RefString([1, 1, 1, 1])
    dyn = DynString(ref, [2, 2, 2, 2, 1, 1, 1, 1])
    stream = dyn.first_mismatches(1, 2)
    assert stream.positions == [1, 2, 3]
    assert stream.truncated is True


def test_stream_window_start_bounds():
    ref = RefString([1, 2])
    dyn = DynString(ref, [1, 2, 1, 2])
    dyn.first_mismatches(3, 1)  # start m+1 allowed
    with pytest.raises(ValueError):
        dyn.first_mismatches(4, 1)
    with pytest.raises(ValueError):
        dyn.first_mismatches(0, 1)


def test_stream_rerun_is_identical_after_compaction():
    rng = random.Random(47)
    for _ in range(300):
        m = rng.randint(1, 20)
        syms = [rng.randint(0, 2) for _ in range(m)]
        ref = RefString(syms)
        content = [rng.randint(0, 3) for _ in range(2 * m)]
        dyn = DynString(ref, content)
        i = rng.randint(1, m + 1)
        limit = rng.randint(0, 6)
        first = dyn.first_mismatches(i, limit)
        again = dyn.first_mismatches(i, limit)
        assert first == again
        assert dyn.materialize() == content


def test_randomized_shadow_equivalence():
    rng = random.Random(53)
    for case in range(400):
        backend = "bittrie" if case % 2 == 0 else "sorted"
        m = rng.randint(1, 32)
        alphabet = rng.randint(1, 5)
        syms = [rng.randrange(alphabet) for _ in range(m)]
        ref = RefString(syms)
        shadow = [rng.randrange(alphabet + 1) for _ in range(2 * m)]
        dyn = DynString(ref, list(shadow), backend=backend)
        for _ in range(rng.randint(1, 40)):
            if rng.random() < 0.5:
                x = rng.randint(1, 2 * m)
                c = rng.randrange(alphabet + 1)
                dyn.replace(x, c)
                shadow[x - 1] = c
            else:
                i = rng.randint(1, m + 1)
                limit = rng.randint(0, 8)
                got = dyn.first_mismatches(i, limit)
                naive = [
                    p for p in range(1, m + 1) if shadow[i + p - 2] != syms[p - 1]
                ]
                assert got.positions == naive[: limit + 1]
                assert got.truncated == (len(naive) > limit)
            assert dyn.materialize() == shadow
            dyn.check_tiling()


def test_compaction_reduces_fragments_on_matching_scan():
    m = 30
    syms = list(range(m))
    ref = RefString(syms)
    dyn = DynString(ref, syms + [-1] * m)
    assert dyn.fragment_count() == 2 * m
    dyn.first_mismatches(1, 3)
    # the fully matched window collapses into one fragment
    assert dyn.fragment_count() <= m + 2
    assert dyn.materialize() == syms + [-1] * m
