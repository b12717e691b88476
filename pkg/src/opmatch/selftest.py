"""Randomized oracle-equivalence and invariant suites.

Each suite runs a number of seeded random cases and returns a list of
counterexample descriptions (empty means the suite passed). The CLI
`selftest` command wires them together; the test suite reuses them with
larger iteration counts.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass
from typing import Callable

from .fragstring import DynString, RefString
from .instances import Instance
from .matcher import (
    PatternIndex,
    k_isomorphic_check,
    k_isomorphic_subset_oracle,
    match_all,
    verify_window,
)
from .seqcore import OrderedIntDict
from .signature import SlidingSignature, compute_signature, signature_hamming
from .subsequence import (
    WeightedPoint,
    WeightedSeqItem,
    chain_bruteforce,
    heaviest_chain,
    heaviest_increasing_subsequence,
    his_bruteforce,
)

__all__ = ["Suite", "all_suites", "run_suites"]


@dataclass
class Suite:
    name: str
    run: Callable[[random.Random, int], list[str]]


def _random_pair(rng: random.Random, mode: str, m: int) -> tuple[list[int], list[int]]:
    if mode == "distinct":
        a = rng.sample(range(10 * m), m)
        b = rng.sample(range(10 * m), m)
    else:
        sigma = rng.randint(2, 6)
        a = [rng.randrange(sigma) for _ in range(m)]
        b = [rng.randrange(sigma) for _ in range(m)]
    return a, b


def _perturbed_pair(rng: random.Random, mode: str, m: int, k: int) -> tuple[list[int], list[int]]:
    """(a, b) guaranteed k-isomorphic: b is an order/equality copy of a with
    at most k positions replaced."""
    a, _ = _random_pair(rng, mode, m)
    order = sorted(range(m), key=lambda j: (a[j], j))
    b = [0] * m
    if mode == "distinct":
        fresh = sorted(rng.sample(range(10 * m, 30 * m), m))
        for r, j in enumerate(order):
            b[j] = fresh[r]
    else:
        classes: dict[int, int] = {}
        for j in order:
            classes.setdefault(a[j], len(classes))
        for j in range(m):
            b[j] = classes[a[j]] * 3
    for j in rng.sample(range(m), min(k, m)):
        if mode == "distinct":
            b[j] = rng.randrange(50 * m, 90 * m)
        else:
            b[j] = rng.randrange(3 * m + 3)
    if mode == "distinct" and len(set(b)) != m:
        return _perturbed_pair(rng, mode, m, k)  # rare collision; redraw
    return a, b


def suite_ordered_dict(rng: random.Random, iterations: int) -> list[str]:
    """OrderedIntDict answers match a sorted-list reference under random
    interleaved inserts/deletes/queries, on both backends."""
    bad: list[str] = []
    for backend in ("bittrie", "sorted"):
        universe = 512
        d = OrderedIntDict(universe, backend)
        ref: dict[int, int] = {}
        for step in range(iterations):
            op = rng.randrange(6)
            x = rng.randrange(universe)
            if op == 0:
                d.insert(x, step)
                ref[x] = step
            elif op == 1:
                got = d.delete(x)
                want = x in ref
                ref.pop(x, None)
                if got != want:
                    bad.append(f"{backend}: delete({x}) returned {got}, expected {want}")
            elif op == 2:
                keys = [key for key in ref if key <= x]
                want = max(keys) if keys else None
                if d.pred(x) != want:
                    bad.append(f"{backend}: pred({x}) = {d.pred(x)}, expected {want}")
            elif op == 3:
                keys = [key for key in ref if key >= x]
                want = min(keys) if keys else None
                if d.succ(x) != want:
                    bad.append(f"{backend}: succ({x}) = {d.succ(x)}, expected {want}")
            elif op == 4:
                if (x in d) != (x in ref):
                    bad.append(f"{backend}: contains({x}) wrong")
            else:
                want = min(ref) if ref else None
                if d.min() != want:
                    bad.append(f"{backend}: min() = {d.min()}, expected {want}")
            if bad:
                return bad
    return bad


def suite_subsequence(rng: random.Random, iterations: int) -> list[str]:
    """Solver outputs equal exponential brute force; witnesses re-verify."""
    bad: list[str] = []
    for _ in range(iterations):
        ell = rng.randint(0, 12)
        items = [
            WeightedSeqItem(rng.randint(0, 8), rng.randint(1, 9)) for _ in range(ell)
        ]
        want = his_bruteforce(items)
        got, witness = heaviest_increasing_subsequence(items)
        if got != want:
            bad.append(f"his: {items} -> {got}, brute force {want}")
            break
        vals = [items[i - 1].value for i in witness]
        if any(x >= y for x, y in zip(vals, vals[1:])) or sum(
            items[i - 1].weight for i in witness
        ) != got:
            bad.append(f"his witness invalid for {items}")
            break
        pts = [
            WeightedPoint(rng.randint(0, 5), rng.randint(0, 5), rng.randint(1, 9))
            for _ in range(ell)
        ]
        want = chain_bruteforce(pts)
        got, chosen = heaviest_chain(pts)
        if got != want:
            bad.append(f"chain: {pts} -> {got}, brute force {want}")
            break
        shuffled = list(pts)
        rng.shuffle(shuffled)
        if heaviest_chain(shuffled)[0] != got:
            bad.append(f"chain not permutation-invariant on {pts}")
            break
        if sum(p.weight for p in chosen) != got or chain_bruteforce(chosen) != got:
            bad.append(f"chain witness invalid for {pts}")
            break
    return bad


def suite_sliding(rng: random.Random, iterations: int) -> list[str]:
    """After every advance, the window view of the maintained signature
    equals a from-scratch recomputation, on both backends and modes."""
    bad: list[str] = []
    for it in range(iterations):
        mode = "distinct" if rng.random() < 0.5 else "general"
        backend = "bittrie" if it % 2 == 0 else "sorted"
        m = rng.randint(1, 16)
        length = rng.randint(m, 2 * m)
        if mode == "distinct":
            chunk = rng.sample(range(100), length)
        else:
            chunk = [rng.randrange(max(2, m // 2 + 1)) for _ in range(length)]
        sliding = SlidingSignature(chunk, m, mode, backend=backend)
        for i in range(1, length - m + 2):
            want = compute_signature(chunk[i - 1 : i - 1 + m], mode).packed
            got = sliding.window_view()
            if got != want:
                bad.append(f"sliding {mode}/{backend} m={m} chunk={chunk} window {i}")
                break
            if i + m <= length:
                sliding.advance()
        if bad:
            break
    return bad


def suite_dynstring(rng: random.Random, iterations: int) -> list[str]:
    """Mismatch streams and materializations agree with a shadow array under
    random replace/stream sequences."""
    bad: list[str] = []
    for it in range(iterations):
        backend = "bittrie" if it % 2 == 0 else "sorted"
        m = rng.randint(1, 24)
        alphabet = rng.randint(1, 6)
        ref_syms = [rng.randrange(alphabet) for _ in range(m)]
        ref = RefString(ref_syms)
        shadow = [rng.randrange(alphabet + 1) for _ in range(2 * m)]
        dyn = DynString(ref, shadow, backend=backend)
        shadow = list(shadow)
        for _ in range(rng.randint(1, 30)):
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
                    p
                    for p in range(1, m + 1)
                    if shadow[i + p - 2] != ref_syms[p - 1]
                ]
                want = naive[: limit + 1]
                truncated = len(naive) > limit
                if got.positions != want or got.truncated != truncated:
                    bad.append(
                        f"stream ref={ref_syms} shadow={shadow} i={i} limit={limit}: "
                        f"{got.positions}/{got.truncated} vs {want}/{truncated}"
                    )
                    break
                if dyn.materialize() != shadow:
                    bad.append(f"materialize diverged from shadow after stream at {i}")
                    break
            dyn.check_tiling()
        if bad:
            break
    return bad


def suite_filter_soundness(rng: random.Random, iterations: int) -> list[str]:
    """Constructed k-isomorphic pairs never exceed signature Hamming 3k."""
    bad: list[str] = []
    for _ in range(iterations):
        mode = "distinct" if rng.random() < 0.5 else "general"
        m = rng.randint(2, 24)
        k = rng.randint(0, 4)
        a, b = _perturbed_pair(rng, mode, m, k)
        dist = signature_hamming(
            compute_signature(a, mode), compute_signature(b, mode)
        ).distance
        if dist > 3 * k:
            bad.append(f"{mode}: H(S(a),S(b))={dist} > 3k={3 * k} for a={a} b={b}")
            break
    return bad


def suite_reductions(rng: random.Random, iterations: int) -> list[str]:
    """Signature-mismatch reductions decide exactly like the subset oracle."""
    bad: list[str] = []
    for _ in range(iterations):
        mode = "distinct" if rng.random() < 0.5 else "general"
        m = rng.randint(1, 12)
        k = rng.randint(0, 3)
        if rng.random() < 0.5:
            a, b = _perturbed_pair(rng, mode, m, min(k, m))
        else:
            a, b = _random_pair(rng, mode, m)
        pidx = PatternIndex(b, mode)
        ds = signature_hamming(compute_signature(a, mode), pidx.signature).positions
        want = k_isomorphic_subset_oracle(a, b, k)
        if len(ds) > 3 * k:
            if want:
                bad.append(f"{mode}: oracle accepts but filter rejects a={a} b={b} k={k}")
                break
            continue
        got = verify_window(a, pidx, ds, k)
        if got != want:
            bad.append(f"{mode}: verify={got} oracle={want} a={a} b={b} k={k}")
            break
        if k_isomorphic_check(a, b, k, mode) != want:
            bad.append(f"{mode}: direct check disagrees with oracle a={a} b={b} k={k}")
            break
    return bad


def suite_match_oracle(rng: random.Random, iterations: int, filter_cap=None) -> list[str]:
    """match_all equals per-position oracles on random small instances.

    ``filter_cap`` may be a callable k -> cap to exercise broken thresholds.
    """
    bad: list[str] = []
    for _ in range(iterations):
        mode = "distinct" if rng.random() < 0.5 else "general"
        m = rng.randint(1, 10)
        n = rng.randint(m, 40)
        k = rng.randint(0, 3)
        if mode == "distinct":
            text = rng.sample(range(10 * n), n)
            pattern = rng.sample(range(10 * n), m)
        else:
            sigma = rng.randint(3, 6)
            text = [rng.randrange(sigma) for _ in range(n)]
            pattern = [rng.randrange(sigma) for _ in range(m)]
        cap = filter_cap(k) if callable(filter_cap) else filter_cap
        got = match_all(text, pattern, k, mode, filter_cap=cap)
        want = [
            i + 1
            for i in range(n - m + 1)
            if k_isomorphic_subset_oracle(text[i : i + m], pattern, k)
        ]
        if got != want:
            inst = Instance(text=text, pattern=pattern, k=k, mode=mode)
            bad.append(f"match_all {got} != oracle {want} on:\n{inst.to_text()}")
            break
    return bad


def all_suites() -> list[Suite]:
    return [
        Suite("ordered-dict", suite_ordered_dict),
        Suite("subsequence-solvers", suite_subsequence),
        Suite("sliding-signature", suite_sliding),
        Suite("dynstring-stream", suite_dynstring),
        Suite("filter-soundness", suite_filter_soundness),
        Suite("mismatch-reductions", suite_reductions),
        Suite("match-vs-oracle", suite_match_oracle),
    ]


def run_suites(
    iterations: int, seed: int, report: Callable[[str], None] = print
) -> int:
    """Run every suite; report one line each; return the number of failures."""
    failures = 0
    for suite in all_suites():
        if iterations <= 0:
            report(f"{suite.name}: SKIPPED (0 iterations)")
            continue
        # zlib.crc32 is stable across processes, unlike hash() of a str
        rng = random.Random(seed ^ zlib.crc32(suite.name.encode()))
        bad = suite.run(rng, iterations)
        if bad:
            failures += 1
            report(f"{suite.name}: FAIL ({len(bad)} violation)")
            for line in bad[:3]:
                report("  " + line)
        else:
            report(f"{suite.name}: OK ({iterations} cases)")
    return failures
