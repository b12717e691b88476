"""Dynamic strings over a fixed reference with constant-time LCP queries.

RefString preprocesses a fixed symbol string (suffix array, LCP array,
sparse-table range minimum) so the longest common prefix of any two of its
suffixes is an O(1) query. DynString represents a string of length 2m as a
tiling of fragments, each either a substring of the reference or a single
literal symbol; replacing one symbol splits at most one fragment into
three, and streaming the first mismatches of a window against the reference
jumps across matched fragments with LCP queries, compacting runs of three
or more fully matched fragments back into single reference substrings so
the traversal stays amortized constant per mismatch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .seqcore import make_key_set

__all__ = ["RefString", "DynString", "MismatchStream"]


def _suffix_array(ranks: list[int]) -> list[int]:
    """Suffix array by prefix doubling; O(n log^2 n) with C-speed sorts."""
    n = len(ranks)
    sa = list(range(n))
    rank = list(ranks)
    h = 1
    while True:
        def key(i: int) -> tuple[int, int]:
            return (rank[i], rank[i + h] if i + h < n else -1)

        sa.sort(key=key)
        new = [0] * n
        prev = key(sa[0])
        r = 0
        for t in range(1, n):
            cur = key(sa[t])
            if cur != prev:
                r += 1
                prev = cur
            new[sa[t]] = r
        rank = new
        if r == n - 1:
            break
        h <<= 1
    return sa


def _lcp_array(seq: list[int], sa: list[int]) -> tuple[list[int], list[int]]:
    """Rank array plus Kasai LCP array (lcp[t] = lcp of sa[t] and sa[t+1])."""
    n = len(sa)
    rank = [0] * n
    for t, s in enumerate(sa):
        rank[s] = t
    lcp = [0] * max(n - 1, 0)
    k = 0
    for i in range(n):
        t = rank[i]
        if t == n - 1:
            k = 0
            continue
        j = sa[t + 1]
        while i + k < n and j + k < n and seq[i + k] == seq[j + k]:
            k += 1
        lcp[t] = k
        if k:
            k -= 1
    return rank, lcp


class _SparseTable:
    """Static range-minimum over an int array; O(n log n) build, O(1) query."""

    __slots__ = ("_rows",)

    def __init__(self, data: list[int]):
        rows = [list(data)]
        width = 1
        while 2 * width <= len(data):
            prev = rows[-1]
            rows.append([min(prev[i], prev[i + width]) for i in range(len(prev) - width)])
            width <<= 1
        self._rows = rows

    def min(self, lo: int, hi: int) -> int:
        """Minimum of data[lo..hi], inclusive; lo <= hi required."""
        depth = (hi - lo + 1).bit_length() - 1
        row = self._rows[depth]
        a = row[lo]
        b = row[hi - (1 << depth) + 1]
        return a if a < b else b


class RefString:
    """Immutable reference symbol string with O(1) suffix LCP queries."""

    def __init__(self, symbols: Sequence[int]):
        if not symbols:
            raise ValueError("reference string must be non-empty")
        self.symbols: list[int] = list(symbols)
        self.m = len(self.symbols)
        dense = {v: r for r, v in enumerate(sorted(set(self.symbols)))}
        ranks = [dense[v] for v in self.symbols]
        sa = _suffix_array(ranks)
        self._rank, lcp = _lcp_array(ranks, sa)
        self._rmq = _SparseTable(lcp) if lcp else None

    def lcp(self, i: int, j: int) -> int:
        """Length of the longest common prefix of the suffixes starting at
        1-based positions i and j."""
        m = self.m
        if not (1 <= i <= m and 1 <= j <= m):
            raise ValueError(f"suffix positions must be in [1, {m}]")
        if i == j:
            return m - i + 1
        a = self._rank[i - 1]
        b = self._rank[j - 1]
        if a > b:
            a, b = b, a
        return self._rmq.min(a, b - 1)


@dataclass
class MismatchStream:
    """Strictly increasing 1-based window positions of the first mismatches;
    truncated means the scan stopped after limit + 1 of them."""

    positions: list[int]
    truncated: bool


class DynString:
    """Length-2m symbol string stored as a fragment tiling over a reference.

    Fragments are kept as a dict from absolute start position to payload
    (an int for a single literal symbol, or a (ref_start, length) tuple for
    a reference substring) with the starts in an ordered key set for
    predecessor lookups. The tiling covers [1, 2m] exactly at all times.
    """

    def __init__(self, ref: RefString, initial: Sequence[int], backend: str | None = None):
        self.ref = ref
        self.n = 2 * ref.m
        if len(initial) != self.n:
            raise ValueError(f"initial content must have length {self.n}, got {len(initial)}")
        self._starts = make_key_set(self.n + 2, backend)
        self._frag: dict[int, int | tuple[int, int]] = {}
        for p, sym in enumerate(initial, start=1):
            self._starts.add(p)
            self._frag[p] = sym

    def fragment_count(self) -> int:
        return len(self._frag)

    def replace(self, x: int, symbol: int) -> None:
        """Overwrite the symbol at position x; splits a reference fragment
        into at most three pieces."""
        if not (1 <= x <= self.n):
            raise ValueError(f"position {x} outside [1, {self.n}]")
        starts = self._starts
        frag = self._frag
        s = starts.pred(x)
        payload = frag[s]
        if type(payload) is tuple:
            rs, ln = payload
            end = s + ln - 1
            if x > s:
                frag[s] = (rs, x - s)
                starts.add(x)
            if x < end:
                starts.add(x + 1)
                frag[x + 1] = (rs + (x - s) + 1, end - x)
        frag[x] = symbol

    def materialize(self) -> list[int]:
        return self.materialize_range(1, self.n)

    def materialize_range(self, lo: int, hi: int) -> list[int]:
        """Symbols at positions lo..hi, inclusive."""
        if not (1 <= lo and hi <= self.n and lo <= hi):
            raise ValueError(f"range [{lo}, {hi}] outside [1, {self.n}]")
        out: list[int] = []
        frag = self._frag
        sym = self.ref.symbols
        s = self._starts.pred(lo)
        pos = lo
        while pos <= hi:
            payload = frag[s]
            if type(payload) is tuple:
                rs, ln = payload
                take_lo = pos - s
                take_hi = min(s + ln - 1, hi) - s
                out.extend(sym[rs - 1 + take_lo : rs + take_hi])
                pos = s + take_hi + 1
                s = s + ln
            else:
                out.append(payload)
                pos += 1
                s = pos
        return out

    def first_mismatches(self, i: int, limit: int) -> MismatchStream:
        """All window positions p in [1, m] with content[i + p - 1] differing
        from the reference at p, in increasing order, truncated after
        limit + 1. Runs of >= 3 fragments fully contained in a matched gap
        are compacted into a single reference substring fragment.
        """
        ref = self.ref
        m = ref.m
        if not (1 <= i <= m + 1):
            raise ValueError(f"window start {i} outside [1, {m + 1}]")
        if limit < 0:
            raise ValueError("limit must be non-negative")
        starts = self._starts
        frag = self._frag
        sym = ref.symbols
        lcp = ref.lcp

        out: list[int] = []
        end_window = i + m - 1
        anchor = i  # first position of the current matched gap
        gap_fulls: list[int] = []  # starts of fragments fully inside the gap
        truncated = False

        pos = i
        s = starts.pred(i)
        payload = frag[s]
        while pos <= end_window:
            if type(payload) is tuple:
                rs, ln = payload
                fend = s + ln - 1
                run = lcp(rs + (pos - s), pos - i + 1)
                rem_frag = fend - pos + 1
                rem_win = end_window - pos + 1
                step = run if run < rem_frag else rem_frag
                if step > rem_win:
                    step = rem_win
                pos += step
                if step == rem_frag:
                    # matched through the fragment end
                    if s >= anchor:
                        gap_fulls.append(s)
                    s = fend + 1
                    if pos <= end_window:
                        payload = frag[s]
                    continue
                if pos > end_window:
                    break  # matched to the window end mid-fragment
                out.append(pos - i + 1)
                self._compact(anchor, gap_fulls, i)
                gap_fulls = []
                anchor = pos + 1
                pos += 1
                if len(out) > limit:
                    truncated = True
                    break
                if pos > fend:
                    s = fend + 1
                    payload = frag[s]
                continue
            # single literal fragment
            if payload == sym[pos - i]:
                if s >= anchor:
                    gap_fulls.append(s)
            else:
                out.append(pos - i + 1)
                self._compact(anchor, gap_fulls, i)
                gap_fulls = []
                anchor = pos + 1
                if len(out) > limit:
                    truncated = True
                    break
            pos += 1
            s = pos
            if pos <= end_window:
                payload = frag[s]
        if not truncated:
            self._compact(anchor, gap_fulls, i)
        return MismatchStream(out, truncated)

    def _compact(self, anchor: int, fulls: list[int], window_start: int) -> None:
        """Merge >= 3 fully matched fragments into one reference substring.

        The merged content equals the reference over the matched range, so
        the replacement fragment is the corresponding reference substring.
        """
        if len(fulls) < 3:
            return
        starts = self._starts
        frag = self._frag
        first = fulls[0]
        last = fulls[-1]
        last_payload = frag[last]
        last_end = last + (last_payload[1] if type(last_payload) is tuple else 1) - 1
        for s in fulls[1:]:
            starts.discard(s)
            del frag[s]
        frag[first] = (first - window_start + 1, last_end - first + 1)

    def check_tiling(self) -> None:
        """Assert the fragments tile [1, 2m] exactly (test helper)."""
        pos = 1
        while pos <= self.n:
            assert pos in self._frag, f"no fragment starts at {pos}"
            payload = self._frag[pos]
            pos += payload[1] if type(payload) is tuple else 1
        assert pos == self.n + 1, "tiling overruns the string"
        assert len(self._frag) == len(self._starts)
