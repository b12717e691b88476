"""Acceptance gate: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s``. Criteria 2-4 feed the
filter-soundness ledger that criterion 5 inspects, so the module is meant
to run as a whole (criterion 5 passes vacuously when run alone).
"""

import random
import time

from opmatch.cli import main as cli_main
from opmatch.matcher import (
    k_isomorphic_check,
    k_isomorphic_subset_oracle,
    match_all,
    match_naive,
)
from opmatch.selftest import run_suites
from opmatch.signature import compute_signature, signature_hamming
from opmatch.subsequence import (
    WeightedPoint,
    WeightedSeqItem,
    chain_bruteforce,
    heaviest_chain,
    heaviest_increasing_subsequence,
    his_bruteforce,
)

SEQ_A = [11, 4, 12, 1, 9, 3, 10, 7, 2, 5, 13, 0, 6, 8]
SEQ_B = [10, 1, 11, 2, 9, 4, 12, 7, 3, 5, 13, 0, 6, 8]
OFFS_A = [6, 4, -2, 8, 9, 3, -2, 5, -5, -8, -8, 0, -3, -6]
OFFS_B = [4, 10, -2, -2, 9, 3, -4, 5, -5, -4, -4, 0, -3, -6]

# (criterion, text, pattern, k, mode, window_start) of any accepted window
# whose signature distance exceeded 3k; criteria 2-4 append, 5 asserts.
_SOUNDNESS_VIOLATIONS: list[tuple] = []
_SOUNDNESS_CHECKED = [0]


def _record_soundness(criterion, text, pattern, k, mode, accepted):
    sp = compute_signature(pattern, mode)
    m = len(pattern)
    for start in accepted:
        window = text[start - 1 : start - 1 + m]
        dist = signature_hamming(compute_signature(window, mode), sp).distance
        _SOUNDNESS_CHECKED[0] += 1
        if dist > 3 * k:
            _SOUNDNESS_VIOLATIONS.append((criterion, text, pattern, k, mode, start))


def test_criterion_1_golden_examples():
    assert match_all([1, 10, 6, 4, 8, 5, 7, 9, 3], [1, 4, 2, 5, 11], 1) == [4]
    sig_a = compute_signature(SEQ_A, "distinct")
    sig_b = compute_signature(SEQ_B, "distinct")
    assert sig_a.offsets == OFFS_A
    assert sig_b.offsets == OFFS_B
    assert signature_hamming(sig_a, sig_b).distance == 6
    assert k_isomorphic_check(SEQ_A, SEQ_B, 2) is True
    assert k_isomorphic_check(SEQ_A, SEQ_B, 1) is False
    assert k_isomorphic_subset_oracle(SEQ_A, SEQ_B, 1) is False
    print("criterion 1 (golden examples): PASS")


def test_criterion_2_oracle_equivalence_distinct():
    rng = random.Random(0xC2)
    instances = 10_000
    for _ in range(instances):
        m = rng.randint(2, 12)
        n = rng.randint(m, 60)
        k = rng.randint(0, 4)
        text = rng.sample(range(-5 * n, 5 * n), n)
        pattern = rng.sample(range(-5 * n, 5 * n), m)
        got = match_all(text, pattern, k, "distinct")
        want = [
            i + 1
            for i in range(n - m + 1)
            if k_isomorphic_subset_oracle(text[i : i + m], pattern, k)
        ]
        assert got == want, (text, pattern, k)
        _record_soundness(2, text, pattern, k, "distinct", want)
    print(f"criterion 2 (distinct oracle equivalence, {instances} instances): PASS")


def test_criterion_3_oracle_equivalence_general():
    rng = random.Random(0xC3)
    instances = 10_000
    for _ in range(instances):
        m = rng.randint(2, 12)
        n = rng.randint(m, 60)
        k = rng.randint(0, 4)
        sigma = rng.randint(3, 6)
        text = [rng.randrange(sigma) for _ in range(n)]
        pattern = [rng.randrange(sigma) for _ in range(m)]
        got = match_all(text, pattern, k, "general")
        want = [
            i + 1
            for i in range(n - m + 1)
            if k_isomorphic_subset_oracle(text[i : i + m], pattern, k)
        ]
        assert got == want, (text, pattern, k)
        _record_soundness(3, text, pattern, k, "general", want)
    print(f"criterion 3 (general oracle equivalence, {instances} instances): PASS")


def test_criterion_4_midscale_crosscheck():
    rng = random.Random(0xC4)
    instances = 1_000
    for _ in range(instances):
        m = rng.randint(20, 100)
        n = rng.randint(m, 400)
        k = rng.randint(0, 6)
        if rng.random() < 0.5:
            mode = "distinct"
            text = rng.sample(range(20 * n), n)
            pattern = rng.sample(range(20 * n), m)
        else:
            mode = "general"
            sigma = rng.randint(3, max(4, m // 2))
            text = [rng.randrange(sigma) for _ in range(n)]
            pattern = [rng.randrange(sigma) for _ in range(m)]
        got = match_all(text, pattern, k, mode)
        want = [
            i + 1
            for i in range(n - m + 1)
            if k_isomorphic_check(text[i : i + m], pattern, k, mode)
        ]
        assert got == want, (text, pattern, k, mode)
        _record_soundness(4, text, pattern, k, mode, want)
    print(f"criterion 4 (mid-scale cross-check, {instances} instances): PASS")


def test_criterion_5_filter_soundness():
    assert not _SOUNDNESS_VIOLATIONS, _SOUNDNESS_VIOLATIONS[:3]
    print(
        "criterion 5 (signature distance <= 3k on "
        f"{_SOUNDNESS_CHECKED[0]} accepted windows): PASS"
    )


def test_criterion_6_structure_suites():
    rng = random.Random(0xC6)
    cases = 10_000

    for _ in range(cases):
        ell = min(rng.randint(0, 12), rng.randint(0, 12))
        items = [
            WeightedSeqItem(rng.randint(0, 8), rng.randint(1, 9)) for _ in range(ell)
        ]
        assert heaviest_increasing_subsequence(items)[0] == his_bruteforce(items)
        pts = [
            WeightedPoint(rng.randint(0, 5), rng.randint(0, 5), rng.randint(1, 9))
            for _ in range(ell)
        ]
        assert heaviest_chain(pts)[0] == chain_bruteforce(pts)

    from opmatch.fragstring import DynString, RefString

    for case in range(cases):
        backend = "bittrie" if case % 2 == 0 else "sorted"
        m = rng.randint(1, 24)
        alphabet = rng.randint(1, 5)
        syms = [rng.randrange(alphabet) for _ in range(m)]
        ref = RefString(syms)
        shadow = [rng.randrange(alphabet + 1) for _ in range(2 * m)]
        dyn = DynString(ref, list(shadow), backend=backend)
        for _ in range(8):
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

    from opmatch.signature import SlidingSignature

    for case in range(cases):
        mode = "distinct" if case % 2 == 0 else "general"
        backend = "bittrie" if case % 4 < 2 else "sorted"
        m = min(rng.randint(1, 64), rng.randint(1, 64))
        length = rng.randint(m, 2 * m)
        if mode == "distinct":
            chunk = rng.sample(range(10 * length + 10), length)
        else:
            chunk = [rng.randint(0, max(1, m // 2)) for _ in range(length)]
        sliding = SlidingSignature(chunk, m, mode, backend=backend)
        for i in range(1, length - m + 2):
            assert (
                sliding.window_view()
                == compute_signature(chunk[i - 1 : i - 1 + m], mode).packed
            ), (mode, backend, m, chunk, i)
            if i + m <= length:
                sliding.advance()

    print(f"criterion 6 (structure suites, 3 x {cases} cases): PASS")


def test_criterion_7_scaling_smoke():
    rng = random.Random(0xC7)
    m, k = 1000, 2
    pool = rng.sample(range(10**8), 4 * 10**5 + m)
    pattern = pool[:m]
    text = pool[m:]

    t0 = time.perf_counter()
    match_all(text[: 2 * 10**5], pattern, k, "distinct")
    t_small = time.perf_counter() - t0
    t0 = time.perf_counter()
    match_all(text, pattern, k, "distinct")
    t_large = time.perf_counter() - t0
    ratio = t_large / t_small

    naive_windows = 2_000
    t0 = time.perf_counter()
    match_naive(text[: naive_windows + m - 1], pattern, k, "distinct")
    t_naive = time.perf_counter() - t0
    naive_full = t_naive / naive_windows * (4 * 10**5 - m + 1)
    speedup = naive_full / t_large

    assert ratio <= 3.0, f"doubling n scaled wall time by {ratio:.2f}"
    assert speedup >= 10.0, f"fast path only {speedup:.1f}x over naive"
    print(
        f"criterion 7 (scaling smoke: doubling ratio {ratio:.2f} <= 3.0, "
        f"fast {speedup:.0f}x naive >= 10x): PASS"
    )


def test_criterion_8_determinism(capsys):
    def run(argv):
        code = cli_main(argv)
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    rng = random.Random(0xC8)
    text = " ".join(str(x) for x in rng.sample(range(10**6), 2_000))
    pattern = " ".join(str(x) for x in rng.sample(range(10**6), 25))

    outputs = set()
    for threads in ("1", "2", "4"):
        for _ in range(2):
            outputs.add(
                run(["match", "--text", text, "--pattern", pattern, "--k", "3",
                     "--threads", threads, "--json"])
            )
    assert len(outputs) == 1

    for argv in (
        ["gen", "--n", "200", "--m", "12", "--k", "2", "--plant", "2", "--seed", "5"],
        ["signature", "--seq", "11 4 12 1 9 3 10 7 2 5 13 0 6 8"],
        ["verify", "--text", text, "--pattern", pattern, "--k", "25", "--at", "7"],
        ["selftest", "--iterations", "20", "--seed", "11"],
    ):
        assert run(list(argv)) == run(list(argv))
    print("criterion 8 (byte-identical reruns across --threads): PASS")


def test_selftest_suites_pass():
    assert run_suites(150, seed=0xACCE97, report=lambda _line: None) == 0
    print("bundled selftest suites: PASS")
