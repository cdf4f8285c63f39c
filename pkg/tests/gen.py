"""Deterministic generators for test corpora.

Words are assembled from weighted syllable inventories and follow the
orthographic conventions of the scripts: independent vowels appear only
word-initially, after another vowel, or after a syllable ending in a vowel
sound; nasal signs attach to syllables or follow an independent vowel;
conjuncts join at most three consonants. Everything is driven by a seeded
``random.Random`` so corpora are reproducible across runs and platforms.
"""

from __future__ import annotations

import random

VIRAMA_BN = "্"
VIRAMA_HI = "्"

_BN = {
    "virama": VIRAMA_BN,
    "consonants": [
        ("ক", 8), ("খ", 2), ("গ", 4), ("ঘ", 1), ("চ", 3), ("ছ", 2), ("জ", 4),
        ("ঝ", 1), ("ট", 3), ("ঠ", 1), ("ড", 2), ("ঢ", 1), ("ণ", 1), ("ত", 6),
        ("থ", 2), ("দ", 5), ("ধ", 2), ("ন", 7), ("প", 5), ("ফ", 1), ("ব", 6),
        ("ভ", 2), ("ম", 6), ("য", 1), ("র", 8), ("ল", 5), ("শ", 3), ("ষ", 1),
        ("স", 5), ("হ", 3),
    ],
    "matras": [
        ("া", 10), ("ি", 6), ("ী", 3), ("ু", 4), ("ূ", 1), ("ে", 6), ("ো", 3),
        ("ৈ", 1), ("ৌ", 1), ("ৃ", 1),
    ],
    "vowels": [
        ("আ", 5), ("অ", 3), ("এ", 3), ("ই", 3), ("ও", 2), ("উ", 2), ("ঐ", 1),
        ("ঔ", 1), ("ঈ", 1), ("ঊ", 1), ("ঋ", 1),
    ],
    "nasals": [("ং", 4), ("ঁ", 1), ("ঃ", 1)],
    "conjunct_tails": ["ত", "ন", "ম", "ল", "র", "ব", "ক", "ট", "থ"],
    "danda": "।",
}

_HI = {
    "virama": VIRAMA_HI,
    "consonants": [
        ("क", 8), ("ख", 2), ("ग", 4), ("घ", 1), ("च", 3), ("छ", 1), ("ज", 4),
        ("झ", 1), ("ट", 3), ("ठ", 1), ("ड", 2), ("ढ", 1), ("ण", 1), ("त", 6),
        ("थ", 2), ("द", 5), ("ध", 2), ("न", 7), ("प", 5), ("फ", 1), ("ब", 5),
        ("भ", 2), ("म", 6), ("य", 3), ("र", 8), ("ल", 5), ("व", 3), ("श", 3),
        ("ष", 1), ("स", 5), ("ह", 3),
    ],
    "matras": [
        ("ा", 10), ("ि", 6), ("ी", 4), ("ु", 4), ("ू", 1), ("े", 6), ("ो", 3),
        ("ै", 1), ("ौ", 1), ("ृ", 1),
    ],
    "vowels": [
        ("आ", 5), ("अ", 4), ("ए", 3), ("इ", 3), ("ओ", 2), ("उ", 2), ("ऐ", 1),
        ("औ", 1), ("ई", 1), ("ऊ", 1), ("ऋ", 1),
    ],
    "nasals": [("ं", 4), ("ँ", 1), ("ः", 1)],
    "conjunct_tails": ["त", "न", "म", "ल", "र", "व", "य", "क", "थ"],
    "danda": "।",
}

INVENTORIES = {"bn": _BN, "hi": _HI}


def _weighted(rng: random.Random, pairs):
    total = sum(w for _, w in pairs)
    pick = rng.random() * total
    acc = 0.0
    for item, w in pairs:
        acc += w
        if pick < acc:
            return item
    return pairs[-1][0]


def make_word(rng: random.Random, lang: str = "bn") -> str:
    """One orthographically well-formed native word."""
    inv = INVENTORIES[lang]
    parts: list[str] = []
    if rng.random() < 0.30:
        parts.append(_weighted(rng, inv["vowels"]))
        if rng.random() < 0.05:
            parts.append(_weighted(rng, inv["nasals"]))
    n_syllables = rng.choices((1, 2, 3, 4), weights=(2, 5, 4, 1))[0]
    for _ in range(n_syllables):
        cluster = _weighted(rng, inv["consonants"])
        if rng.random() < 0.10:
            cluster += inv["virama"] + rng.choice(inv["conjunct_tails"])
            if rng.random() < 0.04:
                cluster += inv["virama"] + rng.choice(inv["conjunct_tails"])
        has_matra = rng.random() < 0.55
        if has_matra:
            cluster += _weighted(rng, inv["matras"])
        has_nasal = rng.random() < 0.07
        if has_nasal:
            cluster += _weighted(rng, inv["nasals"])
        parts.append(cluster)
        if has_matra and not has_nasal and rng.random() < 0.05:
            parts.append(_weighted(rng, inv["vowels"]))
    return "".join(parts)


def make_vocabulary(seed: int, size: int, lang: str = "bn") -> list[str]:
    """Fixed inventory of distinct word types."""
    rng = random.Random(seed)
    seen: set[str] = set()
    vocab: list[str] = []
    while len(vocab) < size:
        word = make_word(rng, lang)
        if word not in seen:
            seen.add(word)
            vocab.append(word)
    return vocab


def sample_words(rng: random.Random, vocab: list[str], count: int) -> list[str]:
    """Zipf-flavored sampling over the vocabulary (rank-weighted)."""
    weights = [1.0 / (rank + 10) for rank in range(len(vocab))]
    return rng.choices(vocab, weights=weights, k=count)


def make_lines(
    seed: int,
    n_lines: int,
    lang: str = "bn",
    vocab_size: int = 4000,
    min_words: int = 8,
    max_words: int = 18,
) -> list[str]:
    """Sentence-like native lines over a shared vocabulary."""
    vocab = make_vocabulary(seed, vocab_size, lang)
    rng = random.Random(seed + 1)
    danda = INVENTORIES[lang]["danda"]
    lines = []
    for _ in range(n_lines):
        words = sample_words(rng, vocab, rng.randint(min_words, max_words))
        line = " ".join(words)
        if rng.random() < 0.7:
            line += danda
        lines.append(line)
    return lines
