"""Shared subword vocabulary over Romanized text.

Deterministic greedy pair-merge training: start from characters, repeatedly
merge the most frequent adjacent symbol pair (ties broken by lexicographic
pair order), stop at the target size or when no pair occurs at least
twice. Each word is prefixed with a reserved boundary symbol before
training so decoding is lossless. Encoded sequences carry a language
prefix token first and an end token last.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "BOUNDARY",
    "SPECIALS",
    "PAD_ID",
    "UNK_ID",
    "BOS_ID",
    "EOS_ID",
    "LANG_IDS",
    "UNK_GLYPH",
    "SubwordVocab",
    "train_bpe",
    "encode",
    "decode",
    "save_vocab",
    "load_vocab",
]

BOUNDARY = "▁"  # lower one-eighth block, marks word starts
SPECIALS = ("<pad>", "<unk>", "<bos>", "<eos>", "<hi>", "<bn>")
PAD_ID, UNK_ID, BOS_ID, EOS_ID = 0, 1, 2, 3
LANG_IDS = {"hi": 4, "bn": 5}
UNK_GLYPH = "⁇"  # double question mark

MIN_PAIR_FREQUENCY = 2

_UNKNOWN = object()  # in-word sentinel for characters outside the vocabulary


@dataclass(frozen=True)
class SubwordVocab:
    """Ordered token inventory (specials, then base characters, then merge
    products) plus the merge list in training order."""

    tokens: tuple[str, ...]
    merges: tuple[tuple[str, str], ...]
    target_size: int
    token_ids: dict[str, int] = field(compare=False, repr=False, default_factory=dict)

    def __post_init__(self):
        if tuple(self.tokens[: len(SPECIALS)]) != SPECIALS:
            raise ValueError("SubwordVocab: specials must occupy ids 0..5")
        if len(self.tokens) > self.target_size:
            raise ValueError("SubwordVocab: more tokens than target_size")
        if not self.token_ids:
            self.token_ids.update({t: i for i, t in enumerate(self.tokens)})
        if len(self.token_ids) != len(self.tokens):
            raise ValueError("SubwordVocab: duplicate tokens")

    @property
    def size(self) -> int:
        return len(self.tokens)

    @property
    def shortfall(self) -> int:
        return self.target_size - len(self.tokens)


def _word_frequencies(corpus: Iterable[str]) -> Counter:
    freqs: Counter = Counter()
    for text in corpus:
        for word in text.split():
            freqs[BOUNDARY + word] += 1
    return freqs


def train_bpe(corpus: Iterable[str], target_size: int) -> SubwordVocab:
    """Train a vocabulary of at most ``target_size`` tokens (specials
    included in the budget)."""
    freqs = _word_frequencies(corpus)
    if not freqs:
        raise ValueError("train_bpe: empty corpus")
    base_chars = sorted({ch for word in freqs for ch in word})
    floor = len(SPECIALS) + len(base_chars)
    if target_size <= floor:
        raise ValueError(
            f"train_bpe: target_size {target_size} must exceed specials + "
            f"base characters ({floor})"
        )

    sequences: dict[str, list[str]] = {word: list(word) for word in freqs}
    tokens: list[str] = list(SPECIALS) + base_chars
    merges: list[tuple[str, str]] = []

    while len(tokens) < target_size:
        pair_counts: Counter = Counter()
        for word, seq in sequences.items():
            if len(seq) < 2:
                continue
            count = freqs[word]
            for i in range(len(seq) - 1):
                pair_counts[(seq[i], seq[i + 1])] += count
        if not pair_counts:
            break
        best_count = max(pair_counts.values())
        if best_count < MIN_PAIR_FREQUENCY:
            break
        best = min(pair for pair, c in pair_counts.items() if c == best_count)
        merged = best[0] + best[1]
        for seq in sequences.values():
            i = 0
            while i < len(seq) - 1:
                if seq[i] == best[0] and seq[i + 1] == best[1]:
                    seq[i : i + 2] = [merged]
                else:
                    i += 1
        merges.append(best)
        tokens.append(merged)

    return SubwordVocab(tokens=tuple(tokens), merges=tuple(merges), target_size=target_size)


def _encode_word(word: str, vocab: SubwordVocab, ranks: dict[tuple[str, str], int]) -> list[int]:
    symbols: list = [ch if ch in vocab.token_ids else _UNKNOWN for ch in word]
    while len(symbols) > 1:
        best_rank = None
        for i in range(len(symbols) - 1):
            rank = ranks.get((symbols[i], symbols[i + 1]))
            if rank is not None and (best_rank is None or rank < best_rank):
                best_rank = rank
        if best_rank is None:
            break
        a, b = vocab.merges[best_rank]
        merged = a + b
        i = 0
        while i < len(symbols) - 1:
            if symbols[i] == a and symbols[i + 1] == b:
                symbols[i : i + 2] = [merged]
            else:
                i += 1
    return [UNK_ID if s is _UNKNOWN else vocab.token_ids[s] for s in symbols]


def encode(text: str, lang: str, vocab: SubwordVocab) -> list[int]:
    """Encode Roman text as [lang prefix] + subword ids + [eos]; characters
    outside the vocabulary map to unk."""
    if lang not in LANG_IDS:
        raise ValueError(f"encode: unknown language {lang!r}")
    ranks = {pair: i for i, pair in enumerate(vocab.merges)}
    ids = [LANG_IDS[lang]]
    if text:
        for piece in text.split(" "):
            ids.extend(_encode_word(BOUNDARY + piece, vocab, ranks))
    ids.append(EOS_ID)
    return ids


def decode(ids: Sequence[int], vocab: SubwordVocab) -> str:
    """Invert encode: strip specials, map unk to the unk glyph, restore
    word boundaries."""
    parts: list[str] = []
    lang_ids = set(LANG_IDS.values())
    for token_id in ids:
        if not 0 <= token_id < len(vocab.tokens):
            raise ValueError(f"decode: id {token_id} out of range")
        if token_id in (PAD_ID, BOS_ID, EOS_ID) or token_id in lang_ids:
            continue
        if token_id == UNK_ID:
            parts.append(UNK_GLYPH)
        else:
            parts.append(vocab.tokens[token_id])
    text = "".join(parts).replace(BOUNDARY, " ")
    if text.startswith(" "):
        text = text[1:]
    return text


def save_vocab(vocab: SubwordVocab, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(
            f"#target_size={vocab.target_size}\t#tokens={len(vocab.tokens)}"
            f"\t#merges={len(vocab.merges)}\n"
        )
        for token in vocab.tokens:
            f.write(token + "\n")
        f.write("#merges\n")
        for a, b in vocab.merges:
            f.write(f"{a} {b}\n")


def load_vocab(path: str) -> SubwordVocab:
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n")
        fields = dict(
            part.lstrip("#").split("=", 1) for part in header.split("\t") if "=" in part
        )
        try:
            target_size = int(fields["target_size"])
            n_tokens = int(fields["tokens"])
            n_merges = int(fields["merges"])
        except (KeyError, ValueError) as exc:
            raise ValueError(f"{path}: malformed vocabulary header") from exc
        tokens = tuple(f.readline().rstrip("\n") for _ in range(n_tokens))
        marker = f.readline().rstrip("\n")
        if marker != "#merges":
            raise ValueError(f"{path}: expected #merges section after tokens")
        merges = []
        for _ in range(n_merges):
            a, _, b = f.readline().rstrip("\n").partition(" ")
            merges.append((a, b))
    return SubwordVocab(tokens=tokens, merges=tuple(merges), target_size=target_size)
