"""Forward native->Roman transliteration.

A word is segmented into units, each unit mapped through the script's
tables, and an implicit schwa "a" appended to a bare consonant cluster
(no diacritic, no nasal) when the cluster is word-initial or the next
unit is again a consonant cluster. Text mode romanizes each maximal
native-script token and leaves everything else untouched.
"""

from __future__ import annotations

import unicodedata
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .graphemes import (
    CONSONANT_CLUSTER,
    NASAL,
    OTHER,
    VOWEL,
    MappingTable,
    ScriptSpec,
    TranslitError,
    TransliterationUnit,
    split_units,
)

__all__ = [
    "UnmappedSymbolError",
    "RomanizerConfig",
    "RomanizedText",
    "map_unit",
    "romanize_word",
    "romanize_text",
    "romanize_lines",
]

SCHWA = "a"
SENTENCE_ENDERS = "।.!?"  # danda, period, bang, question mark

_WORD_CACHE_LIMIT = 200_000


class UnmappedSymbolError(TranslitError):
    """A codepoint belongs to a mapped class but the table has no entry."""

    def __init__(self, cp: str):
        super().__init__(f"no mapping for U+{ord(cp):04X} ({cp})")
        self.codepoint = cp


class RomanizerConfig:
    """Immutable spec+table pair with precomputed lookups and a word cache.

    ``sentence_case`` uppercases the first Roman letter of each sentence
    in text mode.
    """

    def __init__(self, spec: ScriptSpec, table: MappingTable, sentence_case: bool = False):
        # Tables from load_mapping are complete; a hand-built partial table
        # is allowed here and surfaces as UnmappedSymbolError at use time.
        self.spec = spec
        self.table = table
        self.sentence_case = sentence_case
        # Merged codepoint -> Roman value; classes are disjoint so this is safe.
        self._value: dict[str, str] = {}
        self._value.update(table.v_map)
        self._value.update(table.c_map)
        self._value.update(table.d_map)
        self._value.update(table.n_map)
        self._consonants = spec.consonants
        self._script_members = frozenset(spec.all_classified | {spec.virama})
        self._cache: dict[str, str] = {}

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_cache"] = {}
        return state


@dataclass(frozen=True)
class RomanizedText:
    """Text-mode result: the Romanized text plus how many tokens were left
    untouched because a codepoint had no table entry."""

    text: str
    unmapped_tokens: int = 0


def _lookup(table: dict[str, str], cp: str) -> str:
    value = table.get(cp)
    if value is None:
        raise UnmappedSymbolError(cp)
    return value


def map_unit(unit: TransliterationUnit, cfg: RomanizerConfig) -> str:
    """Map one unit to its Roman string (no schwa handling here)."""
    kind = unit.kind
    if kind == VOWEL:
        return _lookup(cfg.table.v_map, unit.codepoints)
    if kind == NASAL:
        return _lookup(cfg.table.n_map, unit.codepoints)
    if kind == OTHER:
        return unit.codepoints
    # Consonant cluster: head, then virama-joined consonants, then
    # diacritic, then nasal, in that order.
    cps = unit.codepoints
    c_map = cfg.table.c_map
    parts = [_lookup(c_map, cps[0])]
    virama = cfg.spec.virama
    i = 1
    n = len(cps)
    while i + 1 < n and cps[i] == virama:
        parts.append(_lookup(c_map, cps[i + 1]))
        i += 2
    if i < n and cps[i] in cfg.spec.diacritics:
        parts.append(_lookup(cfg.table.d_map, cps[i]))
        i += 1
    if i < n and cps[i] in cfg.spec.nasals:
        parts.append(_lookup(cfg.table.n_map, cps[i]))
        i += 1
    return "".join(parts)


def _romanize_word_uncached(word: str, cfg: RomanizerConfig) -> str:
    """Single fused pass over the word; behaviorally identical to
    split_units + map_unit + the schwa rule (tested against it)."""
    w = unicodedata.normalize("NFC", word)
    spec = cfg.spec
    vowels = spec.vowels
    consonants = spec.consonants
    diacritics = spec.diacritics
    nasals = spec.nasals
    virama = spec.virama
    value = cfg._value

    out: list[str] = []
    i = 0
    n = len(w)
    unit_index = 0
    while i < n:
        cp = w[i]
        if cp in consonants:
            roman = value.get(cp)
            if roman is None:
                raise UnmappedSymbolError(cp)
            out.append(roman)
            j = i + 1
            while j + 1 < n and w[j] == virama and w[j + 1] in consonants:
                nxt = value.get(w[j + 1])
                if nxt is None:
                    raise UnmappedSymbolError(w[j + 1])
                out.append(nxt)
                j += 2
            bare = True
            if j < n and w[j] in diacritics:
                mark = value.get(w[j])
                if mark is None:
                    raise UnmappedSymbolError(w[j])
                out.append(mark)
                bare = False
                j += 1
            if j < n and w[j] in nasals:
                sign = value.get(w[j])
                if sign is None:
                    raise UnmappedSymbolError(w[j])
                out.append(sign)
                bare = False
                j += 1
            # Schwa: bare cluster at word start, or followed by another
            # consonant cluster (out-of-range lookahead counts as false).
            if bare and (unit_index == 0 or (j < n and w[j] in consonants)):
                out.append(SCHWA)
            i = j
            unit_index += 1
        elif cp in vowels or cp in nasals:
            roman = value.get(cp)
            if roman is None:
                raise UnmappedSymbolError(cp)
            out.append(roman)
            i += 1
            unit_index += 1
        else:
            j = i + 1
            while j < n and w[j] not in vowels and w[j] not in consonants and w[j] not in nasals:
                j += 1
            out.append(w[i:j])
            i = j
            unit_index += 1
    return "".join(out)


def romanize_word(word: str, cfg: RomanizerConfig) -> str:
    """Romanize one native word (non-empty, no internal whitespace)."""
    if not word:
        raise ValueError("romanize_word: empty word")
    cached = cfg._cache.get(word)
    if cached is not None:
        return cached
    if any(ch.isspace() for ch in word):
        raise ValueError("romanize_word: word contains whitespace")
    result = _romanize_word_uncached(word, cfg)
    if len(cfg._cache) < _WORD_CACHE_LIMIT:
        cfg._cache[word] = result
    return result


def _apply_sentence_case(text: str) -> str:
    chars = list(text)
    pending = True
    for i, ch in enumerate(chars):
        if pending and "a" <= ch <= "z":
            chars[i] = ch.upper()
            pending = False
        elif pending and "A" <= ch <= "Z":
            pending = False
        elif ch in SENTENCE_ENDERS:
            pending = True
    return "".join(chars)


def romanize_text(text: str, cfg: RomanizerConfig) -> RomanizedText:
    """Romanize arbitrary text.

    Whitespace and runs of unclassified codepoints are preserved verbatim;
    each maximal run of script codepoints is romanized as a word. A token
    hitting a table gap passes through unchanged and is counted instead of
    raising.
    """
    if not text:
        return RomanizedText("", 0)
    members = cfg._script_members
    out: list[str] = []
    unmapped = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in members:
            j = i + 1
            while j < n and text[j] in members:
                j += 1
            token = text[i:j]
            try:
                out.append(romanize_word(token, cfg))
            except UnmappedSymbolError:
                out.append(token)
                unmapped += 1
            i = j
        else:
            j = i + 1
            while j < n and text[j] not in members:
                j += 1
            out.append(text[i:j])
            i = j
    result = "".join(out)
    if cfg.sentence_case:
        result = _apply_sentence_case(result)
    return RomanizedText(result, unmapped)


_WORKER_CFG: RomanizerConfig | None = None


def _pool_init(cfg: RomanizerConfig) -> None:
    global _WORKER_CFG
    _WORKER_CFG = cfg


def _pool_chunk(lines: list[str]) -> list[RomanizedText]:
    assert _WORKER_CFG is not None
    return [romanize_text(line, _WORKER_CFG) for line in lines]


def romanize_lines(lines: list[str], cfg: RomanizerConfig, workers: int = 1) -> list[RomanizedText]:
    """Romanize a batch of lines, optionally across worker processes.

    Output order always equals input order, so the worker count never
    changes the result.
    """
    if workers <= 1 or len(lines) < 2 * workers:
        return [romanize_text(line, cfg) for line in lines]
    chunk_size = max(1, (len(lines) + workers * 4 - 1) // (workers * 4))
    chunks = [lines[i : i + chunk_size] for i in range(0, len(lines), chunk_size)]
    results: list[RomanizedText] = []
    with ProcessPoolExecutor(max_workers=workers, initializer=_pool_init, initargs=(cfg,)) as pool:
        for chunk_result in pool.map(_pool_chunk, chunks):
            results.extend(chunk_result)
    return results
