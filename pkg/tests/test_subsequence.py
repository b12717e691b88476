import random

import pytest

from opmatch.subsequence import (
    MaxPrefixStructure,
    WeightedPoint,
    WeightedSeqItem,
    chain_bruteforce,
    heaviest_chain,
    heaviest_increasing_subsequence,
    his_bruteforce,
    lis_length_at_least,
)


def lis_length_dp(seq):
    """Quadratic reference for the strictly increasing subsequence length."""
    best = [0] * len(seq)
    for i, x in enumerate(seq):
        best[i] = 1 + max((best[j] for j in range(i) if seq[j] < x), default=0)
    return max(best, default=0)


def test_lis_decision_examples():
    assert lis_length_at_least([4, 5, 7, 9], 4) is True
    assert lis_length_at_least([4, 5, 8, 7, 9], 4) is True
    assert lis_length_at_least([3, 2, 1], 2) is False
    assert lis_length_at_least([1, 2, 3], 3) is True
    assert lis_length_at_least([], 0) is True


def test_lis_decision_matches_dp():
    rng = random.Random(3)
    for _ in range(400):
        seq = [rng.randint(0, 12) for _ in range(rng.randint(0, 18))]
        full = lis_length_dp(seq)
        for target in range(0, len(seq) + 2):
            assert lis_length_at_least(seq, target) == (full >= target)


def test_his_examples():
    weight, witness = heaviest_increasing_subsequence(
        [WeightedSeqItem(2, 5), WeightedSeqItem(1, 4), WeightedSeqItem(3, 1)]
    )
    assert weight == 6
    assert witness == [1, 3]
    weight, _ = heaviest_increasing_subsequence(
        [WeightedSeqItem(v, 1) for v in (1, 2, 3)]
    )
    assert weight == 3
    weight, witness = heaviest_increasing_subsequence(
        [WeightedSeqItem(3, 7), WeightedSeqItem(2, 9), WeightedSeqItem(1, 8)]
    )
    assert weight == 9
    assert witness == [2]


def test_his_empty_and_single():
    assert heaviest_increasing_subsequence([]) == (0, [])
    assert his_bruteforce([]) == 0
    assert his_bruteforce([WeightedSeqItem(5, 7)]) == 7


def test_his_equal_values_never_chain():
    weight, _ = heaviest_increasing_subsequence(
        [WeightedSeqItem(4, 2), WeightedSeqItem(4, 3)]
    )
    assert weight == 3


@pytest.mark.parametrize("backend", ["bittrie", "sorted"])
def test_his_matches_bruteforce(backend):
    rng = random.Random(17)
    for _ in range(2000):
        ell = rng.randint(0, 10)
        items = [
            WeightedSeqItem(rng.randint(0, 7), rng.randint(1, 9)) for _ in range(ell)
        ]
        want = his_bruteforce(items)
        got, witness = heaviest_increasing_subsequence(items, backend)
        assert got == want
        vals = [items[i - 1].value for i in witness]
        assert all(x < y for x, y in zip(vals, vals[1:]))
        assert sum(items[i - 1].weight for i in witness) == got


def test_his_unit_weights_equal_lis():
    rng = random.Random(19)
    for _ in range(500):
        seq = [rng.randint(0, 9) for _ in range(rng.randint(0, 15))]
        items = [WeightedSeqItem(v, 1) for v in seq]
        assert heaviest_increasing_subsequence(items)[0] == lis_length_dp(seq)


def test_chain_examples():
    pts = [WeightedPoint(1, 1, 2), WeightedPoint(1, 1, 3), WeightedPoint(2, 2, 1)]
    assert heaviest_chain(pts)[0] == 6
    assert chain_bruteforce(pts) == 6
    pts = [WeightedPoint(1, 2, 5), WeightedPoint(2, 1, 5)]
    assert heaviest_chain(pts)[0] == 5
    pts = [WeightedPoint(1, 1, 1), WeightedPoint(2, 2, 1), WeightedPoint(3, 3, 1)]
    assert heaviest_chain(pts)[0] == 3


def test_chain_rejects_shared_single_coordinate():
    # sharing exactly one coordinate is not chainable
    assert heaviest_chain([WeightedPoint(5, 1, 1), WeightedPoint(5, 2, 1)])[0] == 1
    assert heaviest_chain([WeightedPoint(1, 5, 1), WeightedPoint(2, 5, 1)])[0] == 1


def test_chain_empty():
    assert heaviest_chain([]) == (0, [])
    assert chain_bruteforce([]) == 0


@pytest.mark.parametrize("backend", ["bittrie", "sorted"])
def test_chain_matches_bruteforce(backend):
    rng = random.Random(23)
    for _ in range(2000):
        ell = rng.randint(0, 10)
        pts = [
            WeightedPoint(rng.randint(0, 4), rng.randint(0, 4), rng.randint(1, 9))
            for _ in range(ell)
        ]
        want = chain_bruteforce(pts)
        got, chosen = heaviest_chain(pts, backend)
        assert got == want
        assert sum(p.weight for p in chosen) == got
        assert chain_bruteforce(chosen) == got  # witness is itself a valid chain


def test_chain_permutation_invariant():
    rng = random.Random(29)
    for _ in range(300):
        pts = [
            WeightedPoint(rng.randint(0, 5), rng.randint(0, 5), rng.randint(1, 9))
            for _ in range(rng.randint(0, 12))
        ]
        want = heaviest_chain(pts)[0]
        shuffled = list(pts)
        rng.shuffle(shuffled)
        assert heaviest_chain(shuffled)[0] == want


def test_chain_tuple_coordinates():
    pts = [WeightedPoint((1, 2), (0, 1), 3), WeightedPoint((2, 0), (1, 0), 4)]
    assert heaviest_chain(pts)[0] == 7


def test_bruteforce_caps():
    with pytest.raises(ValueError):
        his_bruteforce([WeightedSeqItem(0, 1)] * 21)
    with pytest.raises(ValueError):
        chain_bruteforce([WeightedPoint(0, 0, 1)] * 21)


def test_max_prefix_structure_matches_naive_array():
    rng = random.Random(31)
    for backend in ("bittrie", "sorted"):
        universe = 40
        st = MaxPrefixStructure(universe, backend, check=True)
        naive = [None] * (universe + 1)
        for _ in range(3000):
            if rng.random() < 0.6:
                slot = rng.randint(1, universe)
                value = rng.randint(1, 50)
                st.raise_value(slot, value, slot)
                if naive[slot] is None or naive[slot] < value:
                    naive[slot] = value
            else:
                p = rng.randint(0, universe)
                want = max((v for v in naive[: p + 1] if v is not None), default=0)
                assert st.max_prefix(p)[0] == want
