"""Roman->native decoding: trie candidate generation, a character n-gram
language model with add-k smoothing, and beam search.

Candidate generation walks the input left to right, proposing complete
transliteration units (independent vowel, standalone nasal sign, or
consonant cluster with optional conjunct chain, diacritic, nasal sign and
implicit schwa) whose forward emission matches the next characters. Unit
transitions are constrained so that the generated native string segments
and romanizes back to the input exactly; a final re-romanization filter
enforces this. Orthographic pruning mirrors script conventions:
independent vowels appear only word-initially or after a vowel sound,
standalone nasal signs only word-initially or after an independent vowel.

Hypotheses sharing (LM context, pending constraint, previous-unit class)
are recombined with per-state k-best lists, so the returned ranking is the
exact top-k of the unpruned search and widening the beam only extends it.
"""

from __future__ import annotations

import math
import re
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graphemes import MappingTable, ScriptSpec, TranslitError
from .romanize import SCHWA, RomanizerConfig, romanize_word

__all__ = [
    "BOS",
    "EOS",
    "Trie",
    "ReverseIndex",
    "build_reverse_index",
    "CharNGramModel",
    "train_lm",
    "save_lm",
    "load_lm",
    "derom_word",
    "DeromText",
    "derom_text",
]

BOS = "<s>"
EOS = "</s>"

MAX_CONJUNCT_CONSONANTS = 3

# Unit kinds produced by the enumerator.
_U_VOWEL = 0
_U_NASAL = 1
_U_CLUSTER = 2

# Pending constraint on the next unit (set by the schwa rule).
_C_NONE = 0
_C_MUST_CC = 1
_C_MUST_NOT_CC = 2

# Class of the previously generated unit.
_P_START = 0
_P_VOWEL = 1
_P_CLUSTER_VOWELISH = 2
_P_CLUSTER_OTHER = 3
_P_NASAL = 4

_VALUES = 0  # trie node key for payloads; cannot collide with char keys

_WORD_RE = re.compile(r"[A-Za-z]+")


class Trie:
    """Prefix tree from Roman strings to lists of native payloads."""

    __slots__ = ("root",)

    def __init__(self):
        self.root: dict = {}

    def insert(self, key: str, value: str) -> None:
        node = self.root
        for ch in key:
            node = node.setdefault(ch, {})
        node.setdefault(_VALUES, []).append(value)

    def prefix_matches(self, text: str, start: int) -> list[tuple[int, list[str]]]:
        """All (end index, payloads) whose key matches text[start:end]."""
        matches: list[tuple[int, list[str]]] = []
        node = self.root
        i = start
        n = len(text)
        while i < n:
            node = node.get(text[i])
            if node is None:
                break
            i += 1
            values = node.get(_VALUES)
            if values:
                matches.append((i, values))
        return matches


# One unit proposal: (end position, native fragment, kind, has_diacritic,
# has_nasal, schwa emitted).
Unit = tuple[int, str, int, bool, bool, bool]


@dataclass(frozen=True)
class ReverseIndex:
    """Inverted mapping tables plus the forward config used to verify
    candidates."""

    spec: ScriptSpec
    table: MappingTable
    fwd_cfg: RomanizerConfig
    v_trie: Trie
    c_trie: Trie
    d_trie: Trie
    n_trie: Trie

    def iter_units(self, roman: str, start: int) -> Iterator[Unit]:
        for end, natives in self.v_trie.prefix_matches(roman, start):
            for native in natives:
                yield (end, native, _U_VOWEL, False, False, False)
        for end, natives in self.n_trie.prefix_matches(roman, start):
            for native in natives:
                yield (end, native, _U_NASAL, False, False, False)
        for end, natives in self.c_trie.prefix_matches(roman, start):
            for native in natives:
                yield from self._cluster_tails(roman, end, native, 1)

    def _cluster_tails(self, roman: str, pos: int, frag: str, chain: int) -> Iterator[Unit]:
        yield (pos, frag, _U_CLUSTER, False, False, False)
        if pos < len(roman) and roman[pos] == SCHWA:
            yield (pos + 1, frag, _U_CLUSTER, False, False, True)
        for end, marks in self.d_trie.prefix_matches(roman, pos):
            for mark in marks:
                yield (end, frag + mark, _U_CLUSTER, True, False, False)
                for end2, signs in self.n_trie.prefix_matches(roman, end):
                    for sign in signs:
                        yield (end2, frag + mark + sign, _U_CLUSTER, True, True, False)
        for end, signs in self.n_trie.prefix_matches(roman, pos):
            for sign in signs:
                yield (end, frag + sign, _U_CLUSTER, False, True, False)
        if chain < MAX_CONJUNCT_CONSONANTS:
            virama = self.spec.virama
            for end, natives in self.c_trie.prefix_matches(roman, pos):
                for native in natives:
                    yield from self._cluster_tails(roman, end, frag + virama + native, chain + 1)

    def unit_candidates(self, fragment: str) -> list[tuple[str, int, bool, bool, bool]]:
        """Native fragments whose single-unit emission equals ``fragment``
        exactly (diagnostic/test helper)."""
        out = []
        for end, native, kind, has_d, has_n, schwa in self.iter_units(fragment, 0):
            if end == len(fragment):
                out.append((native, kind, has_d, has_n, schwa))
        return out


def build_reverse_index(spec: ScriptSpec, table: MappingTable) -> ReverseIndex:
    """Invert a mapping table into prefix tries for candidate generation."""
    tries = {name: Trie() for name in ("v", "c", "d", "n")}
    for name, mapping in (
        ("v", table.v_map),
        ("c", table.c_map),
        ("d", table.d_map),
        ("n", table.n_map),
    ):
        for cp in sorted(mapping):  # codepoint order keeps payload lists stable
            tries[name].insert(mapping[cp], cp)
    return ReverseIndex(
        spec=spec,
        table=table,
        fwd_cfg=RomanizerConfig(spec, table, sentence_case=False),
        v_trie=tries["v"],
        c_trie=tries["c"],
        d_trie=tries["d"],
        n_trie=tries["n"],
    )


class CharNGramModel:
    """Character n-gram model over native words, add-k smoothed.

    P(c | ctx) = (count(ctx, c) + k) / (count(ctx, *) + k * (V + 1)),
    where V is the alphabet size and the +1 covers the end symbol.
    """

    def __init__(self, order: int, k: float, counts: dict[tuple, dict[str, int]], alphabet: Sequence[str]):
        if order < 1:
            raise ValueError("order must be >= 1")
        if k <= 0:
            raise ValueError("smoothing constant must be > 0")
        self.order = order
        self.k = k
        self.counts = counts
        self.alphabet = tuple(sorted(alphabet))
        self._totals = {ctx: sum(c.values()) for ctx, c in counts.items()}
        self._denom_add = k * (len(self.alphabet) + 1)
        self._log_cache: dict[tuple, float] = {}

    def start_context(self) -> tuple:
        return (BOS,) * (self.order - 1)

    def shift(self, ctx: tuple, sym: str) -> tuple:
        if self.order == 1:
            return ctx
        return ctx[1:] + (sym,)

    def prob(self, ctx: tuple, sym: str) -> float:
        ctx_counts = self.counts.get(ctx)
        count = ctx_counts.get(sym, 0) if ctx_counts else 0
        total = self._totals.get(ctx, 0)
        return (count + self.k) / (total + self._denom_add)

    def log_prob(self, ctx: tuple, sym: str) -> float:
        key = (ctx, sym)
        cached = self._log_cache.get(key)
        if cached is None:
            cached = math.log(self.prob(ctx, sym))
            self._log_cache[key] = cached
        return cached

    def word_log_prob(self, word: str) -> float:
        ctx = self.start_context()
        logp = 0.0
        for ch in word:
            logp += self.log_prob(ctx, ch)
            ctx = self.shift(ctx, ch)
        return logp + self.log_prob(ctx, EOS)


def train_lm(corpus: Iterable[str], order: int = 5, k: float = 1.0) -> CharNGramModel:
    """Count n-grams over the whitespace tokens of native texts, each word
    padded with start symbols and closed with the end symbol."""
    if order < 1:
        raise ValueError("train_lm: order must be >= 1")
    if k <= 0:
        raise ValueError("train_lm: smoothing constant must be > 0")
    counts: dict[tuple, dict[str, int]] = {}
    alphabet: set[str] = set()
    n_words = 0
    pad = (BOS,) * (order - 1)
    for text in corpus:
        for word in unicodedata.normalize("NFC", text).split():
            n_words += 1
            alphabet.update(word)
            seq = pad + tuple(word) + (EOS,)
            for i in range(order - 1, len(seq)):
                ctx = seq[i - order + 1 : i]
                bucket = counts.get(ctx)
                if bucket is None:
                    counts[ctx] = bucket = {}
                bucket[seq[i]] = bucket.get(seq[i], 0) + 1
    if n_words == 0:
        raise ValueError("train_lm: empty corpus")
    return CharNGramModel(order=order, k=k, counts=counts, alphabet=sorted(alphabet))


def save_lm(model: CharNGramModel, path: str) -> None:
    """Plain-text model file: header, then n-gram count lines in sorted
    order so identical models serialize identically."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(
            f"#order={model.order}\t#k={model.k!r}\t#alphabet="
            + " ".join(model.alphabet)
            + "\n"
        )
        lines = []
        for ctx, bucket in model.counts.items():
            for sym, count in bucket.items():
                lines.append((" ".join(ctx + (sym,)), count))
        lines.sort()
        for gram, count in lines:
            f.write(f"{gram}\t{count}\n")


def load_lm(path: str) -> CharNGramModel:
    with open(path, encoding="utf-8") as f:
        header = f.readline().rstrip("\n")
        fields = dict(
            part.lstrip("#").split("=", 1) for part in header.split("\t") if "=" in part
        )
        try:
            order = int(fields["order"])
            k = float(fields["k"])
            alphabet = fields["alphabet"].split(" ") if fields["alphabet"] else []
        except (KeyError, ValueError) as exc:
            raise ValueError(f"{path}: malformed model header") from exc
        counts: dict[tuple, dict[str, int]] = {}
        for raw in f:
            line = raw.rstrip("\n")
            if not line:
                continue
            gram_text, _, count_text = line.partition("\t")
            gram = tuple(gram_text.split(" "))
            ctx, sym = gram[:-1], gram[-1]
            counts.setdefault(ctx, {})[sym] = int(count_text)
    return CharNGramModel(order=order, k=k, counts=counts, alphabet=alphabet)


def derom_word(
    roman: str, index: ReverseIndex, lm: CharNGramModel, beam: int = 8
) -> list[tuple[str, float]]:
    """Decode one lowercase Roman word into ranked native candidates.

    Returns at most ``beam`` (native, log-probability) pairs, best first,
    ties broken by native codepoint order. Every returned candidate
    re-romanizes to the input; an input with no consistent segmentation
    returns an empty list.
    """
    if not roman:
        raise ValueError("derom_word: empty input")
    if roman != roman.lower():
        raise ValueError("derom_word: input must be lowercase")
    if beam < 1:
        raise ValueError("derom_word: beam must be >= 1")

    length = len(roman)
    # buckets[pos]: state -> k-best list of (logp, native); state is
    # (lm context, pending constraint, previous-unit class).
    buckets: list[dict[tuple, list[tuple[float, str]]]] = [{} for _ in range(length + 1)]
    buckets[0][(lm.start_context(), _C_NONE, _P_START)] = [(0.0, "")]

    for pos in range(length):
        bucket = buckets[pos]
        if not bucket:
            continue
        expansions = list(index.iter_units(roman, pos))
        if not expansions:
            continue
        for state, hyps in bucket.items():
            ctx, constraint, prev = state
            if len(hyps) > beam:
                hyps.sort(key=lambda h: (-h[0], h[1]))
                del hyps[beam:]
            for end, frag, kind, has_d, has_n, schwa in expansions:
                if kind == _U_VOWEL:
                    if constraint == _C_MUST_CC:
                        continue
                    if prev not in (_P_START, _P_VOWEL, _P_CLUSTER_VOWELISH):
                        continue
                    new_constraint = _C_NONE
                    new_prev = _P_VOWEL
                elif kind == _U_NASAL:
                    if constraint == _C_MUST_CC:
                        continue
                    if prev not in (_P_START, _P_VOWEL):
                        continue
                    new_constraint = _C_NONE
                    new_prev = _P_NASAL
                else:
                    if constraint == _C_MUST_NOT_CC:
                        continue
                    if has_d or has_n:
                        new_constraint = _C_NONE
                        new_prev = _P_CLUSTER_VOWELISH if (has_d and not has_n) else _P_CLUSTER_OTHER
                    elif schwa:
                        new_constraint = _C_NONE if prev == _P_START else _C_MUST_CC
                        new_prev = _P_CLUSTER_VOWELISH
                    else:
                        if prev == _P_START:
                            continue  # forward engine always schwas a bare initial cluster
                        new_constraint = _C_MUST_NOT_CC
                        new_prev = _P_CLUSTER_OTHER
                for logp, native in hyps:
                    new_ctx = ctx
                    lp = logp
                    for ch in frag:
                        lp += lm.log_prob(new_ctx, ch)
                        new_ctx = lm.shift(new_ctx, ch)
                    new_state = (new_ctx, new_constraint, new_prev)
                    target = buckets[end].get(new_state)
                    if target is None:
                        buckets[end][new_state] = [(lp, native + frag)]
                    else:
                        target.append((lp, native + frag))

    final: dict[str, float] = {}
    for (ctx, constraint, _prev), hyps in buckets[length].items():
        if constraint == _C_MUST_CC:
            continue
        eos_lp = lm.log_prob(ctx, EOS)
        for logp, native in hyps:
            lp = logp + eos_lp
            best = final.get(native)
            if best is None or lp > best:
                final[native] = lp
    ranked = sorted(final.items(), key=lambda kv: (-kv[1], kv[0]))[:beam]
    return [
        (native, lp)
        for native, lp in ranked
        if romanize_word(native, index.fwd_cfg) == roman
    ]


@dataclass(frozen=True)
class DeromText:
    """Text-mode result: decoded text plus how many words fell back to
    their Roman form for lack of candidates."""

    text: str
    fallback_words: int = 0


def derom_text(text: str, index: ReverseIndex, lm: CharNGramModel, beam: int = 8) -> DeromText:
    """Decode each Roman word to its top candidate; words without any
    consistent candidate pass through unchanged and are counted.
    Separators are preserved verbatim."""
    if not text:
        return DeromText("", 0)
    out: list[str] = []
    fallbacks = 0
    last = 0
    for match in _WORD_RE.finditer(text):
        out.append(text[last : match.start()])
        word = match.group()
        candidates = derom_word(word.lower(), index, lm, beam=beam)
        if candidates:
            out.append(candidates[0][0])
        else:
            out.append(word)
            fallbacks += 1
        last = match.end()
    out.append(text[last:])
    return DeromText("".join(out), fallbacks)
