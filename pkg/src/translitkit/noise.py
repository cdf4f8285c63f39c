"""Seeded generator of informal Romanized spelling variants.

Five rules model how casual writers shorten and simplify Romanized
Indo-Aryan text: long-vowel shortening, medial vowel dropping, consonant
simplification, v/w swapping, and sentence-initial case jitter. Rules run
in that fixed order; candidate sites are scanned left to right and each
fires independently when a uniform draw falls below the rule probability.

Determinism: each (line, rule) pair gets its own Mersenne Twister stream
seeded with the first 8 bytes of SHA-256(seed, line index, rule id), so
output depends only on (text, profile) regardless of platform or worker
layout.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

__all__ = ["RULE_IDS", "NoiseProfile", "apply_noise", "load_profile"]

RULE_IDS = (
    "long_vowel_shorten",
    "medial_vowel_drop",
    "consonant_simplify",
    "vw_swap",
    "case_jitter",
)

DEFAULT_PROBABILITY = 0.3

_LONG_VOWELS = (("aa", "a"), ("ee", "i"), ("oo", "u"))
_DROP_VOWELS = frozenset("aiu")
_CONSONANTS = frozenset("bcdfghjklmnpqrstvwxyz")
_SENTENCE_ENDERS = "।.!?"


@dataclass(frozen=True)
class NoiseProfile:
    """Rule probabilities (each in [0, 1]) plus the stream seed."""

    seed: int = 42
    long_vowel_shorten: float = DEFAULT_PROBABILITY
    medial_vowel_drop: float = DEFAULT_PROBABILITY
    consonant_simplify: float = DEFAULT_PROBABILITY
    vw_swap: float = DEFAULT_PROBABILITY
    case_jitter: float = DEFAULT_PROBABILITY

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed out of range: {self.seed}")
        for rule_id, p in self.rules:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability for {rule_id} out of [0,1]: {p}")

    @property
    def rules(self) -> tuple[tuple[str, float], ...]:
        return tuple((rule_id, getattr(self, rule_id)) for rule_id in RULE_IDS)


def _stream(seed: int, line_index: int, rule_id: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{line_index}:{rule_id}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _long_vowel_shorten(line: str, rng: random.Random, p: float) -> str:
    out: list[str] = []
    i = 0
    n = len(line)
    while i < n:
        pair = line[i : i + 2]
        replaced = False
        for pattern, repl in _LONG_VOWELS:
            if pair == pattern:
                if rng.random() < p:
                    out.append(repl)
                    i += 2
                    replaced = True
                break
        if not replaced:
            out.append(line[i])
            i += 1
    return "".join(out)


def _medial_vowel_drop(line: str, rng: random.Random, p: float) -> str:
    out: list[str] = []
    n = len(line)
    for i, ch in enumerate(line):
        inside = (
            ch in _DROP_VOWELS
            and 0 < i < n - 1
            and line[i - 1].isascii()
            and line[i - 1].isalpha()
            and line[i + 1].isascii()
            and line[i + 1].isalpha()
        )
        if inside and rng.random() < p:
            continue
        out.append(ch)
    return "".join(out)


def _consonant_simplify(line: str, rng: random.Random, p: float) -> str:
    out: list[str] = []
    i = 0
    n = len(line)
    while i < n:
        pair = line[i : i + 2]
        repl = None
        if pair == "ph":
            repl = "f"
        elif pair == "sh":
            repl = "s"
        elif len(pair) == 2 and pair[0] == pair[1] and pair[0] in _CONSONANTS:
            repl = pair[0]
        if repl is not None and rng.random() < p:
            out.append(repl)
            i += 2
        else:
            out.append(line[i])
            i += 1
    return "".join(out)


def _vw_swap(line: str, rng: random.Random, p: float) -> str:
    out: list[str] = []
    for ch in line:
        if ch == "v" or ch == "w":
            if rng.random() < p:
                out.append("w" if ch == "v" else "v")
                continue
        out.append(ch)
    return "".join(out)


def _case_jitter(line: str, rng: random.Random, p: float) -> str:
    out: list[str] = []
    pending = True
    for ch in line:
        if pending and "A" <= ch <= "Z":
            pending = False
            if rng.random() < p:
                out.append(ch.lower())
                continue
        elif pending and "a" <= ch <= "z":
            pending = False
        elif ch in _SENTENCE_ENDERS:
            pending = True
        out.append(ch)
    return "".join(out)


_RULE_FNS = {
    "long_vowel_shorten": _long_vowel_shorten,
    "medial_vowel_drop": _medial_vowel_drop,
    "consonant_simplify": _consonant_simplify,
    "vw_swap": _vw_swap,
    "case_jitter": _case_jitter,
}


def apply_noise(text: str, profile: NoiseProfile) -> str:
    """Apply the noise rules to Roman text, line by line."""
    if not text:
        return text
    lines = text.split("\n")
    for li, line in enumerate(lines):
        for rule_id, p in profile.rules:
            if p <= 0.0 or not line:
                continue
            line = _RULE_FNS[rule_id](line, _stream(profile.seed, li, rule_id), p)
        lines[li] = line
    return "\n".join(lines)


def load_profile(path: str) -> NoiseProfile:
    """Read a profile from key=value lines (``seed=42``,
    ``long_vowel_shorten=0.5``, ...). Missing keys keep their defaults."""
    values: dict[str, object] = {}
    with open(path, encoding="utf-8") as f:
        for line_no, raw in enumerate(f, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key == "seed":
                values["seed"] = int(value)
            elif key in RULE_IDS:
                values[key] = float(value)
            else:
                raise ValueError(f"{path}:{line_no}: unknown profile key {key!r}")
    return NoiseProfile(**values)
