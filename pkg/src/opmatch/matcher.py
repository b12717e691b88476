"""Order-preserving matching with up to k mismatches.

Two sequences of equal length are order-isomorphic with k mismatches when
deleting the elements at some <= k shared positions from both leaves
sequences whose elements stand in the same relative order (with equalities
required to coincide when values may repeat). Equivalently, there is a set
of >= m - k positions jointly increasing in both sequences, where "jointly
increasing" admits pairs that are equal in both.

The fast path filters window starts by comparing signatures: a window that
is k-isomorphic to the pattern has signature Hamming distance at most 3k,
so any window whose sliding signature shows more than 3k mismatches is
rejected without verification. Surviving windows are verified exactly by
reducing the <= 3k signature mismatch positions to a heaviest increasing
subsequence instance (distinct values) or a heaviest chain instance
(repeated values allowed).
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Sequence

from .fragstring import RefString
from .seqcore import DuplicateValuesError, rank_compress
from .signature import SlidingSignature, compute_signature
from .subsequence import (
    WeightedPoint,
    WeightedSeqItem,
    heaviest_chain,
    heaviest_increasing_subsequence,
    lis_length_at_least,
)

__all__ = [
    "PatternIndex",
    "PathPart",
    "MatchStats",
    "k_isomorphic_subset_oracle",
    "k_isomorphic_check",
    "k_isomorphic_witness",
    "reduce_distinct",
    "reduce_general",
    "verify_window",
    "match_chunk",
    "match_all",
    "resolve_mode",
]

_ORACLE_CAP = 14
_SENTINEL = float("-inf")


def resolve_mode(mode: str, *seqs: Sequence[int]) -> str:
    """Resolve "auto" to "general" when any sequence repeats a value."""
    if mode in ("distinct", "general"):
        return mode
    if mode != "auto":
        raise ValueError(f"unknown mode {mode!r}")
    for s in seqs:
        if len(set(s)) != len(s):
            return "general"
    return "distinct"


def _validate_distinct(seq: Sequence[int], name: str) -> None:
    if len(set(seq)) != len(seq):
        raise DuplicateValuesError(f"distinct mode requires unique values in the {name}")


# ---------------------------------------------------------------------------
# Ground-truth oracles
# ---------------------------------------------------------------------------


def k_isomorphic_subset_oracle(a: Sequence[int], b: Sequence[int], k: int) -> bool:
    """Ground truth for small inputs by searching removal subsets.

    Sorting positions by (a value, b value) reduces the pairwise conditions
    to consecutive ones, so the search can branch only on the two endpoints
    of the first violated consecutive pair; that explores a subtree of the
    full <= k-subset enumeration without changing the decided predicate.
    Capped at length 14.
    """
    m = len(a)
    if len(b) != m:
        raise ValueError("sequences must have equal length")
    if m > _ORACLE_CAP:
        raise ValueError(f"subset oracle capped at length {_ORACLE_CAP}")
    if k >= m - 1:
        return True
    order = sorted(range(m), key=lambda j: (a[j], b[j]))
    av = [a[j] for j in order]
    bv = [b[j] for j in order]

    def solve(alive: list[int], budget: int) -> bool:
        bad = -1
        for t in range(1, len(alive)):
            p, q = alive[t - 1], alive[t]
            if av[p] == av[q]:
                if bv[p] != bv[q]:
                    bad = t
                    break
            elif bv[p] >= bv[q]:
                bad = t
                break
        if bad < 0:
            return True
        if budget == 0:
            return False
        rest = alive[: bad - 1] + alive[bad:]
        if solve(rest, budget - 1):
            return True
        rest = alive[:bad] + alive[bad + 1 :]
        return solve(rest, budget - 1)

    return solve(list(range(m)), k)


def k_isomorphic_check(
    a: Sequence[int], b: Sequence[int], k: int, mode: str = "auto"
) -> bool:
    """Exact single-alignment check: distinct mode sorts positions by a-value
    and tests for an increasing subsequence of b-values of length >= m - k;
    general mode builds unit-weight points (a_i, b_i), merges duplicates, and
    compares the heaviest chain weight against m - k.
    """
    m = len(a)
    if len(b) != m:
        raise ValueError("sequences must have equal length")
    mode = resolve_mode(mode, a, b)
    if mode == "distinct":
        _validate_distinct(a, "first sequence")
        _validate_distinct(b, "second sequence")
        order = sorted(range(m), key=lambda j: a[j])
        return lis_length_at_least([b[j] for j in order], m - k)
    points = [WeightedPoint(a[j], b[j], 1) for j in range(m)]
    weight, _ = heaviest_chain(points)
    return weight >= m - k


def k_isomorphic_witness(
    a: Sequence[int], b: Sequence[int], k: int, mode: str = "auto"
) -> list[int] | None:
    """Kept-position certificate (1-based, ascending) of size >= m - k whose
    elements are jointly increasing in both sequences, or None."""
    m = len(a)
    if len(b) != m:
        raise ValueError("sequences must have equal length")
    mode = resolve_mode(mode, a, b)
    if mode == "distinct":
        _validate_distinct(a, "first sequence")
        _validate_distinct(b, "second sequence")
        order = sorted(range(m), key=lambda j: a[j])
        items = [WeightedSeqItem(b[j], 1) for j in order]
        weight, idx = heaviest_increasing_subsequence(items)
        if weight < m - k:
            return None
        return sorted(order[t - 1] + 1 for t in idx)
    agg: dict[tuple[int, int], int] = {}
    for j in range(m):
        key = (a[j], b[j])
        agg[key] = agg.get(key, 0) + 1
    points = [WeightedPoint(x, y, w) for (x, y), w in agg.items()]
    weight, chosen = heaviest_chain(points)
    if weight < m - k:
        return None
    keep = {(p.x, p.y) for p in chosen}
    return [j + 1 for j in range(m) if (a[j], b[j]) in keep]


# ---------------------------------------------------------------------------
# Pattern preprocessing
# ---------------------------------------------------------------------------


class PatternIndex:
    """Immutable preprocessing of one pattern: rank tables, signature, the
    LCP-ready reference over the signature, and per-value occurrence lists."""

    def __init__(self, pattern: Sequence[int], mode: str = "auto", backend: str | None = None):
        mode = resolve_mode(mode, pattern)
        if not pattern:
            raise ValueError("pattern must be non-empty")
        if mode == "distinct":
            _validate_distinct(pattern, "pattern")
        self.pattern = list(pattern)
        self.m = len(pattern)
        self.mode = mode
        self.backend = backend
        comp, info = rank_compress(pattern)
        self.rank_info = info
        self.class_of_pos = comp  # dense class ids 1..num_classes, 0-indexed by position
        self.num_classes = max(comp)
        self.signature = compute_signature(pattern, mode)
        self.ref = RefString(self.signature.packed)
        # per-class tables (index 0 unused)
        occ: list[list[int]] = [[] for _ in range(self.num_classes + 1)]
        for p, c in enumerate(comp, start=1):
            occ[c].append(p)
        self.class_occ = occ
        self.class_rep = [0] + [len(o) for o in occ[1:]]
        class_rank = [0] * (self.num_classes + 1)
        total = 0
        for c in range(1, self.num_classes + 1):
            class_rank[c] = total
            total += self.class_rep[c]
        self.class_rank = class_rank


# ---------------------------------------------------------------------------
# Reductions from signature mismatches to subsequence instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathPart:
    """One piece of the maximal-path partition of window/pattern positions.

    start 0 denotes the virtual floor position shared by both sequences;
    weights over all parts of all paths sum to m + 1 including it.
    """

    start: int
    kind: str  # "prefix", "middle", "suffix", or "whole"
    weight: int
    coords: tuple[float | int, float | int]  # (window value, pattern value)


def reduce_distinct(
    window: Sequence[int], pidx: PatternIndex, mismatches: Sequence[int]
) -> list[WeightedSeqItem]:
    """Distinct-mode reduction: one weighted item per signature mismatch
    position plus a floor sentinel. Item order follows ascending window
    value, item values are pattern ranks, and each weight counts the
    positions whose agreement paths start at that mismatch. The window is
    k-isomorphic to the pattern iff the heaviest increasing subsequence
    weighs at least (m + 1) - k.
    """
    m = pidx.m
    b_rank = pidx.rank_info.rank
    ds = list(mismatches)
    weight_of: dict[int, int] = {}
    by_rank = sorted(ds, key=lambda p: b_rank[p - 1])
    prev_pos = 0
    prev_rank = -1
    for p in by_rank:
        r = b_rank[p - 1]
        weight_of[prev_pos] = r - prev_rank
        prev_pos, prev_rank = p, r
    weight_of[prev_pos] = m - prev_rank
    by_window = sorted(ds, key=lambda p: window[p - 1])
    items = [WeightedSeqItem(-1, weight_of[0])]
    items += [WeightedSeqItem(b_rank[p - 1], weight_of[p]) for p in by_window]
    assert sum(it.weight for it in items) == m + 1, "path weights must cover every position"
    return items


def _path_parts(
    window: Sequence[int], pidx: PatternIndex, mismatches: Sequence[int]
) -> list[PathPart]:
    """Split every maximal agreement path into its leading equal-value run,
    the run of whole value classes in the middle, and the trailing
    (possibly partial) class run, one weighted part each.
    """
    m = pidx.m
    class_of = pidx.class_of_pos
    class_occ = pidx.class_occ
    class_rep = pidx.class_rep
    class_rank = pidx.class_rank
    equal_rank = pidx.rank_info.equal_rank
    pattern = pidx.pattern
    top = pidx.num_classes

    d_by_class: dict[int, list[int]] = {}
    for p in mismatches:
        d_by_class.setdefault(class_of[p - 1], []).append(equal_rank[p - 1] + 1)
    for idxs in d_by_class.values():
        idxs.sort()
    d_classes = sorted(d_by_class)

    def coords_at(p: int) -> tuple[int, int]:
        return (window[p - 1], pattern[p - 1])

    parts: list[PathPart] = []

    def scan_upward(c0: int) -> None:
        """Emit the middle and suffix parts of the path leaving class c0."""
        if c0 >= top:
            return
        t = bisect_right(d_classes, c0)
        c_star = d_classes[t] if t < len(d_classes) else None
        if c_star is None:
            suffix_cls, suffix_weight = top, class_rep[top]
            mid_hi = top - 1
        elif d_by_class[c_star][-1] == class_rep[c_star]:
            # the entry point (rightmost occurrence) of c_star is a mismatch
            if c_star - 1 == c0:
                return
            suffix_cls, suffix_weight = c_star - 1, class_rep[c_star - 1]
            mid_hi = c_star - 2
        else:
            # the walk enters c_star and stops above its highest mismatch
            suffix_cls = c_star
            suffix_weight = class_rep[c_star] - d_by_class[c_star][-1]
            mid_hi = c_star - 1
        if suffix_cls == c0:
            return
        mid_lo = c0 + 1
        if mid_lo <= mid_hi:
            w = class_rank[mid_hi] + class_rep[mid_hi] - class_rank[mid_lo]
            pos = class_occ[mid_lo][-1]
            parts.append(PathPart(pos, "middle", w, coords_at(pos)))
        pos = class_occ[suffix_cls][-1]
        parts.append(PathPart(pos, "suffix", suffix_weight, coords_at(pos)))

    # the floor path starts below every value class
    parts.append(PathPart(0, "prefix", 1, (_SENTINEL, _SENTINEL)))
    scan_upward(0)

    for p in mismatches:
        c = class_of[p - 1]
        idx = equal_rank[p - 1] + 1
        in_class = d_by_class[c]
        t = bisect_left(in_class, idx)
        lower = in_class[t - 1] if t else 0
        run = idx - lower
        reached_leftmost = lower == 0
        parts.append(PathPart(p, "prefix", run, coords_at(p)))
        if reached_leftmost:
            scan_upward(c)

    assert sum(part.weight for part in parts) == m + 1, "path weights must cover every position"
    return parts


def reduce_general(
    window: Sequence[int], pidx: PatternIndex, mismatches: Sequence[int]
) -> list[WeightedPoint]:
    """General-mode reduction: collapse every path part to one weighted point
    at its first position's (window value, pattern value) coordinates and
    merge identical points. The window is k-isomorphic to the pattern iff
    the heaviest chain weighs at least (m + 1) - k.
    """
    parts = _path_parts(window, pidx, mismatches)
    agg: dict[tuple[float | int, float | int], int] = {}
    for part in parts:
        agg[part.coords] = agg.get(part.coords, 0) + part.weight
    points = [WeightedPoint(x, y, w) for (x, y), w in agg.items()]
    assert len(points) <= 3 * (len(mismatches) + 1)
    return points


def verify_window(
    window: Sequence[int], pidx: PatternIndex, mismatches: Sequence[int], k: int
) -> bool:
    """Exact verdict for one filter-surviving window, given the complete set
    of signature mismatch positions (at most 3k of them)."""
    threshold = pidx.m + 1 - k
    if pidx.mode == "distinct":
        items = reduce_distinct(window, pidx, mismatches)
        weight, _ = heaviest_increasing_subsequence(items, pidx.backend)
    else:
        points = reduce_general(window, pidx, mismatches)
        weight, _ = heaviest_chain(points, pidx.backend)
    return weight >= threshold


# ---------------------------------------------------------------------------
# Filter-and-verify pipeline
# ---------------------------------------------------------------------------


@dataclass
class MatchStats:
    """Counters for one matching run."""

    windows: int = 0
    filtered: int = 0
    verified: int = 0
    occurrences: int = 0

    def merge(self, other: "MatchStats") -> None:
        self.windows += other.windows
        self.filtered += other.filtered
        self.verified += other.verified
        self.occurrences += other.occurrences

    @property
    def pruning_rate(self) -> float:
        return self.filtered / self.windows if self.windows else 0.0


def match_chunk(
    chunk: Sequence[int],
    pidx: PatternIndex,
    k: int,
    owned: int | None = None,
    stats: MatchStats | None = None,
    filter_cap: int | None = None,
) -> list[int]:
    """Chunk-relative 1-based occurrence starts within the first ``owned``
    (default m) window positions of one chunk of length in [m, 2m]."""
    m = pidx.m
    length = len(chunk)
    if length < m:
        raise ValueError("chunk shorter than the pattern")
    cap = 3 * k if filter_cap is None else filter_cap
    last_start = min(owned if owned is not None else m, length - m + 1)
    sliding = SlidingSignature(chunk, m, pidx.mode, ref=pidx.ref, backend=pidx.backend)
    out: list[int] = []
    i = 1
    while True:
        stream = sliding.first_mismatches(cap)
        if stats is not None:
            stats.windows += 1
        if stream.truncated:
            if stats is not None:
                stats.filtered += 1
        else:
            if stats is not None:
                stats.verified += 1
            if verify_window(chunk[i - 1 : i - 1 + m], pidx, stream.positions, k):
                out.append(i)
        if i >= last_start:
            break
        sliding.advance()
        i += 1
    if stats is not None:
        stats.occurrences += len(out)
    return out


def match_all(
    text: Sequence[int],
    pattern: Sequence[int],
    k: int,
    mode: str = "auto",
    threads: int = 1,
    backend: str | None = None,
    stats: MatchStats | None = None,
    filter_cap: int | None = None,
    chunk_starts: Sequence[int] | None = None,
) -> list[int]:
    """All 1-based text positions where an order-preserving occurrence of the
    pattern with at most k mismatches starts, in increasing order.

    The text is cut into overlapping chunks of length 2m starting every m
    positions; each chunk owns the window starts before the next chunk
    begins, so every occurrence is found exactly once. ``chunk_starts``
    overrides the canonical cut points (gaps must stay <= m); output is
    independent of the override and of ``threads``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    mode = resolve_mode(mode, text, pattern)
    if mode == "distinct":
        _validate_distinct(text, "text")
        _validate_distinct(pattern, "pattern")
    n = len(text)
    m = len(pattern)
    if m < 1:
        raise ValueError("pattern must be non-empty")
    if m > n:
        return []
    pidx = PatternIndex(pattern, mode, backend)
    total = n - m + 1
    if chunk_starts is None:
        starts = list(range(1, total + 1, m))
    else:
        starts = list(chunk_starts)
        if starts[0] != 1 or any(b <= a or b - a > m for a, b in zip(starts, starts[1:])):
            raise ValueError("chunk starts must begin at 1 and advance by at most m")
        starts = [c for c in starts if c <= total]

    jobs = []
    for t, c in enumerate(starts):
        nxt = starts[t + 1] if t + 1 < len(starts) else total + 1
        owned = nxt - c
        chunk = text[c - 1 : c - 1 + 2 * m]
        jobs.append((c, chunk, owned))

    def run(job):
        c, chunk, owned = job
        st = MatchStats() if stats is not None else None
        occ = match_chunk(chunk, pidx, k, owned, st, filter_cap)
        return [c - 1 + r for r in occ], st

    if threads > 1 and len(jobs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(job) for job in jobs]

    out: list[int] = []
    for occ, st in results:
        out.extend(occ)
        if stats is not None and st is not None:
            stats.merge(st)
    return out


def match_naive(
    text: Sequence[int],
    pattern: Sequence[int],
    k: int,
    mode: str = "auto",
) -> list[int]:
    """Position-by-position matching through the single-alignment check."""
    mode = resolve_mode(mode, text, pattern)
    if mode == "distinct":
        _validate_distinct(text, "text")
        _validate_distinct(pattern, "pattern")
    n, m = len(text), len(pattern)
    if m < 1:
        raise ValueError("pattern must be non-empty")
    return [
        i + 1
        for i in range(n - m + 1)
        if k_isomorphic_check(text[i : i + m], pattern, k, mode)
    ]
