"""Increasing-subsequence solvers.

Three related problems back the match verifier: a decision-form longest
strictly increasing subsequence, the heaviest strictly increasing
subsequence of weighted items, and the heaviest chain of weighted planar
points (strict dominance in both coordinates, equal points allowed
together). Exponential brute-force oracles for the latter two live here as
well so every randomized suite can check the solvers against ground truth.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Any, Sequence

from .seqcore import OrderedIntDict, rank_compress

__all__ = [
    "WeightedSeqItem",
    "WeightedPoint",
    "MaxPrefixStructure",
    "lis_length_at_least",
    "heaviest_increasing_subsequence",
    "heaviest_chain",
    "his_bruteforce",
    "chain_bruteforce",
]

_BRUTE_CAP = 20


@dataclass(frozen=True)
class WeightedSeqItem:
    value: int
    weight: int


@dataclass(frozen=True)
class WeightedPoint:
    """Weighted planar point; coordinates may be ints or tuples (compared
    lexicographically), as long as all points in one instance agree."""

    x: Any
    y: Any
    weight: int


def lis_length_at_least(seq: Sequence[int], target: int) -> bool:
    """True iff ``seq`` has a strictly increasing subsequence of length >= target."""
    if target <= 0:
        return True
    if target > len(seq):
        return False
    tails: list[int] = []
    append = tails.append
    for x in seq:
        i = bisect_left(tails, x)
        if i == len(tails):
            append(x)
            if len(tails) >= target:
                return True
        else:
            tails[i] = x
    return False


class MaxPrefixStructure:
    """Prefix-maximum tracker over value slots 1..universe.

    Conceptually stores v_1..v_universe (all initially unset) and answers
    max_prefix(p) = the largest value ever set at any slot <= p. Physically
    it keeps only a strictly increasing staircase of (slot, value) pairs in
    an ordered dictionary, seeded with a floor entry (0, 0); dominated
    entries are evicted on update and never needed again.
    """

    __slots__ = ("_dict", "_check")

    def __init__(self, universe: int, backend: str | None = None, check: bool = False):
        self._dict = OrderedIntDict(universe + 1, backend)
        self._dict.insert(0, (0, None))
        self._check = check

    def max_prefix(self, p: int) -> tuple[int, Any]:
        """(value, tag) of the best entry at any slot <= p; at least (0, None)."""
        d = self._dict
        return d.get(d.pred(p))

    def raise_value(self, slot: int, value: int, tag: Any = None) -> None:
        d = self._dict
        k = d.pred(slot)
        if d.get(k)[0] >= value:
            return
        d.insert(slot, (value, tag))
        s = d.succ(slot + 1)
        while s is not None and d.get(s)[0] <= value:
            d.delete(s)
            s = d.succ(slot + 1)
        if self._check:
            self._assert_staircase()

    def _assert_staircase(self) -> None:
        prev = None
        for k in self._dict.keys():
            v = self._dict.get(k)[0]
            assert prev is None or v > prev, "staircase violated"
            prev = v


def heaviest_increasing_subsequence(
    items: Sequence[WeightedSeqItem], backend: str | None = None
) -> tuple[int, list[int]]:
    """Maximum total weight over strictly increasing subsequences.

    Returns (weight, witness) where witness lists the chosen 1-based item
    indices in order. With all weights 1 this equals the classic LIS length.
    """
    if not items:
        return 0, []
    comp, _ = rank_compress([it.value for it in items])
    st = MaxPrefixStructure(len(items) + 1, backend)
    parents: list[int | None] = [None] * len(items)
    best_w = 0
    best_i: int | None = None
    for i, it in enumerate(items):
        base, tag = st.max_prefix(comp[i] - 1)
        r = base + it.weight
        parents[i] = tag
        st.raise_value(comp[i], r, i)
        if r > best_w:
            best_w = r
            best_i = i
    witness: list[int] = []
    while best_i is not None:
        witness.append(best_i + 1)
        best_i = parents[best_i]
    witness.reverse()
    return best_w, witness


def heaviest_chain(
    points: Sequence[WeightedPoint], backend: str | None = None
) -> tuple[int, list[WeightedPoint]]:
    """Maximum total weight over chains of planar points.

    A chain may contain equal points (their weights add up after duplicate
    collapse) and otherwise requires strict dominance in both coordinates.
    Duplicates are collapsed, points are ordered by (x asc, y desc), the y
    coordinates are rank-normalized with ties mapped to equal ranks, and the
    result is a strict heaviest increasing subsequence: equal ranks exclude
    same-y pairs, the descending tie order excludes same-x pairs.
    """
    if not points:
        return 0, []
    agg: dict[tuple[Any, Any], int] = {}
    for p in points:
        key = (p.x, p.y)
        agg[key] = agg.get(key, 0) + p.weight
    order = sorted(agg)
    order.sort(key=lambda t: t[1], reverse=True)
    order.sort(key=lambda t: t[0])
    y_rank = {y: r + 1 for r, y in enumerate(sorted({y for _, y in agg}))}
    items = [WeightedSeqItem(y_rank[y], agg[(x, y)]) for x, y in order]
    weight, idx_witness = heaviest_increasing_subsequence(items, backend)
    witness = [WeightedPoint(*order[i - 1], agg[order[i - 1]]) for i in idx_witness]
    return weight, witness


def his_bruteforce(items: Sequence[WeightedSeqItem]) -> int:
    """Exact optimum by enumerating every subset; rejects more than 20 items."""
    n = len(items)
    if n > _BRUTE_CAP:
        raise ValueError(f"brute force capped at {_BRUTE_CAP} items, got {n}")
    vals = [it.value for it in items]
    wts = [it.weight for it in items]
    best = 0
    for mask in range(1 << n):
        prev = None
        total = 0
        ok = True
        for i in range(n):
            if mask >> i & 1:
                if prev is not None and vals[i] <= prev:
                    ok = False
                    break
                prev = vals[i]
                total += wts[i]
        if ok and total > best:
            best = total
    return best


def chain_bruteforce(points: Sequence[WeightedPoint]) -> int:
    """Exact optimum by enumerating every subset of (possibly duplicated)
    points; pairs must be equal or strictly dominating either way."""
    n = len(points)
    if n > _BRUTE_CAP:
        raise ValueError(f"brute force capped at {_BRUTE_CAP} points, got {n}")
    best = 0
    for mask in range(1 << n):
        chosen = [points[i] for i in range(n) if mask >> i & 1]
        ok = True
        for i in range(len(chosen)):
            for j in range(i + 1, len(chosen)):
                p, q = chosen[i], chosen[j]
                if p.x == q.x and p.y == q.y:
                    continue
                if p.x < q.x and p.y < q.y:
                    continue
                if p.x > q.x and p.y > q.y:
                    continue
                ok = False
                break
            if not ok:
                break
        if ok:
            total = sum(p.weight for p in chosen)
            if total > best:
                best = total
    return best
