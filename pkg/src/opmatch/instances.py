"""Instance files: a line-oriented text format for (text, pattern, k, mode)
tuples plus a seeded generator that can plant true occurrences."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field

__all__ = ["Instance", "parse_instance", "parse_int_list", "generate_instance"]

_SPLIT = re.compile(r"[,\s]+")
_KNOWN_KEYS = ("text", "pattern", "k", "mode", "planted")


def parse_int_list(raw: str) -> list[int]:
    """Whitespace/comma-separated signed decimal integers."""
    parts = [p for p in _SPLIT.split(raw.strip()) if p]
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise ValueError(f"not an integer list: {raw.strip()!r}") from exc


@dataclass
class Instance:
    text: list[int]
    pattern: list[int]
    k: int = 0
    mode: str = "auto"
    planted: list[int] = field(default_factory=list)

    def to_text(self) -> str:
        lines = [
            "text: " + " ".join(map(str, self.text)),
            "pattern: " + " ".join(map(str, self.pattern)),
            f"k: {self.k}",
            f"mode: {self.mode}",
        ]
        if self.planted:
            lines.append("planted: " + " ".join(map(str, self.planted)))
        return "\n".join(lines) + "\n"


def parse_instance(raw: str) -> Instance:
    """Parse the writer's format back; unknown keys are rejected."""
    fields: dict[str, str] = {}
    for lineno, line in enumerate(raw.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ValueError(f"line {lineno}: expected 'key: value', got {line!r}")
        key, _, value = line.partition(":")
        key = key.strip()
        if key not in _KNOWN_KEYS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in fields:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value.strip()
    if "text" not in fields or "pattern" not in fields:
        raise ValueError("instance needs both 'text:' and 'pattern:' lines")
    inst = Instance(
        text=parse_int_list(fields["text"]),
        pattern=parse_int_list(fields["pattern"]),
    )
    if "k" in fields:
        inst.k = int(fields["k"])
        if inst.k < 0:
            raise ValueError("k must be non-negative")
    if "mode" in fields:
        mode = fields["mode"]
        if mode not in ("distinct", "general", "auto"):
            raise ValueError(f"unknown mode {mode!r}")
        inst.mode = mode
    if "planted" in fields:
        inst.planted = parse_int_list(fields["planted"])
    return inst


def generate_instance(
    rng: random.Random,
    n: int,
    m: int,
    k: int = 0,
    mode: str = "distinct",
    plant: int = 0,
) -> Instance:
    """Random instance; optionally overwrite ``plant`` non-overlapping windows
    with order-isomorphic copies of the pattern perturbed at <= k positions,
    so each planted window is a true occurrence by construction.
    """
    if m < 1 or n < m:
        raise ValueError("need n >= m >= 1")
    if plant * m > n:
        raise ValueError("too many planted occurrences for the text length")
    spare: list[int] = []
    if mode == "distinct":
        pool = rng.sample(range(-(10**6), 10**6), n + m + plant * (m + k))
        pattern = pool[:m]
        text = pool[m : m + n]
        spare = pool[m + n :]
    elif mode == "general":
        sigma = max(2, min(6, m))
        pattern = [rng.randrange(sigma) for _ in range(m)]
        text = [rng.randrange(sigma) for _ in range(n)]
    else:
        raise ValueError("generate mode must be 'distinct' or 'general'")

    planted: list[int] = []
    if plant:
        slots = _non_overlapping_slots(rng, n, m, plant)
        order = sorted(range(m), key=lambda j: (pattern[j], j))
        for start in slots:
            if mode == "distinct":
                values = sorted(spare[:m])
                spare = spare[m:]
                window = [0] * m
                for r, j in enumerate(order):
                    window[j] = values[r]
            else:
                # same equality classes, fresh increasing class values
                classes: dict[int, int] = {}
                for j in order:
                    classes.setdefault(pattern[j], len(classes))
                window = [classes[pattern[j]] for j in range(m)]
            flips = rng.sample(range(m), rng.randint(0, k)) if k else []
            for j in flips:
                if mode == "distinct":
                    window[j] = spare[0]
                    spare = spare[1:]
                else:
                    window[j] = rng.randrange(len(classes) + 2)
            text[start - 1 : start - 1 + m] = window
            planted.append(start)
    return Instance(text=text, pattern=pattern, k=k, mode=mode, planted=sorted(planted))


def _non_overlapping_slots(rng: random.Random, n: int, m: int, count: int) -> list[int]:
    """1-based window starts spaced at least m apart."""
    slack = n - count * m
    gaps = [0] * (count + 1)
    for _ in range(slack):
        gaps[rng.randrange(count + 1)] += 1
    starts = []
    pos = 1
    for t in range(count):
        pos += gaps[t]
        starts.append(pos)
        pos += m
    return starts
