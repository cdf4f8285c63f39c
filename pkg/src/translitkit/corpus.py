"""Corpus construction: line cleaning, aligned CSV pair emission, and
dataset statistics.

The wiki cleaning mode drops lines shorter than 50 characters (after
trimming) or containing markup; generic mode drops only empty lines.
Output CSV is RFC-4180-style (UTF-8, LF, quotes doubled) with a fixed
``native,roman,lang,source`` header, written atomically and byte-identical
for identical inputs regardless of worker count.
"""

from __future__ import annotations

import csv
import os
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .romanize import RomanizerConfig, romanize_lines

__all__ = [
    "CorpusPair",
    "CleanDecision",
    "CorpusStats",
    "StatSummary",
    "BuildReport",
    "MARKUP_PATTERNS",
    "clean_line",
    "build_corpus",
    "compute_stats",
    "render_stats",
]

CSV_HEADER = ("native", "roman", "lang", "source")
MIN_LINE_CHARS = 50
MARKUP_PATTERNS = ("<", ">", "{{", "}}", "[[", "]]", "&lt;", "&gt;")
SENTENCE_ENDERS = "।.!?"
HISTOGRAM_BIN_CHARS = 50

CLEAN_MODES = ("wiki_bn", "generic")


@dataclass(frozen=True)
class CorpusPair:
    """One aligned record: native line, its Romanization, language, source tag."""

    native: str
    roman: str
    lang: str
    source: str

    def __post_init__(self):
        if not self.native or not self.roman:
            raise ValueError("CorpusPair: native and roman must be non-empty")


@dataclass(frozen=True)
class CleanDecision:
    keep: bool
    reason: str | None = None


def clean_line(line: str, mode: str) -> CleanDecision:
    """Keep/discard decision for one input line (no newline)."""
    if mode not in CLEAN_MODES:
        raise ValueError(f"clean_line: unknown mode {mode!r}")
    trimmed = line.strip()
    if mode == "generic":
        if not trimmed:
            return CleanDecision(False, "empty")
        return CleanDecision(True)
    if len(trimmed) < MIN_LINE_CHARS:
        return CleanDecision(False, "too_short")
    if any(pattern in trimmed for pattern in MARKUP_PATTERNS):
        return CleanDecision(False, "markup")
    return CleanDecision(True)


@dataclass
class BuildReport:
    pairs_written: int = 0
    discarded: Counter = field(default_factory=Counter)
    unmapped_skipped: int = 0

    @property
    def discarded_total(self) -> int:
        return sum(self.discarded.values())


def _read_lines(path: str) -> list[str]:
    with open(path, encoding="utf-8") as f:
        content = f.read()
    lines = content.split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # trailing newline artifact, not an input line
    return lines


def build_corpus(
    inputs: Sequence[str],
    cfg: RomanizerConfig,
    mode: str,
    out_path: str,
    lang: str,
    source: str | None = None,
    workers: int = 1,
) -> BuildReport:
    """Clean and romanize input files into an aligned CSV.

    Row order follows input file order, then line order. Lines whose
    romanization hits a table gap are skipped and counted. The CSV is
    written to a temp file and renamed, so a failed run leaves nothing
    behind.
    """
    if lang not in ("hi", "bn"):
        raise ValueError(f"build_corpus: lang must be hi or bn, got {lang!r}")
    report = BuildReport()
    kept: list[tuple[str, str]] = []  # (native, source tag)
    for path in inputs:
        tag = source if source is not None else os.path.basename(path)
        for line in _read_lines(path):
            decision = clean_line(line, mode)
            if decision.keep:
                kept.append((line.strip(), tag))
            else:
                report.discarded[decision.reason] += 1

    romanized = romanize_lines([native for native, _ in kept], cfg, workers=workers)

    out_dir = os.path.dirname(os.path.abspath(out_path))
    fd, tmp_path = tempfile.mkstemp(dir=out_dir, prefix=".corpus-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for (native, tag), result in zip(kept, romanized):
                if result.unmapped_tokens > 0:
                    report.unmapped_skipped += 1
                    continue
                writer.writerow((native, result.text, lang, tag))
                report.pairs_written += 1
        os.replace(tmp_path, out_path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    return report


@dataclass(frozen=True)
class StatSummary:
    mean: float
    max: int
    min: int


@dataclass(frozen=True)
class CorpusStats:
    char_count: StatSummary
    word_count: StatSummary
    sentence_count: StatSummary
    total_texts: int
    vocab_growth: tuple[int, ...]
    length_histogram: tuple[int, ...]


def _sentence_count(text: str) -> int:
    if not text:
        return 0
    count = 0
    segment_has_content = False
    for ch in text:
        if ch in SENTENCE_ENDERS:
            if segment_has_content:
                count += 1
                segment_has_content = False
        elif not ch.isspace():
            segment_has_content = True
    if segment_has_content:
        count += 1
    return max(count, 1)


def _summary(values: list[int]) -> StatSummary:
    return StatSummary(mean=sum(values) / len(values), max=max(values), min=min(values))


def compute_stats(corpus: Iterable[str]) -> CorpusStats:
    """Per-text character/word/sentence statistics, cumulative distinct
    token counts, and a histogram over 50-character length bins."""
    texts = list(corpus)
    if not texts:
        raise ValueError("compute_stats: empty corpus")
    char_counts = []
    word_counts = []
    sentence_counts = []
    growth = []
    seen_tokens: set[str] = set()
    histogram: Counter = Counter()
    for text in texts:
        char_counts.append(len(text))
        tokens = text.split()
        word_counts.append(len(tokens))
        sentence_counts.append(_sentence_count(text))
        seen_tokens.update(tokens)
        growth.append(len(seen_tokens))
        histogram[len(text) // HISTOGRAM_BIN_CHARS] += 1
    bins = tuple(histogram.get(b, 0) for b in range(max(histogram) + 1))
    return CorpusStats(
        char_count=_summary(char_counts),
        word_count=_summary(word_counts),
        sentence_count=_summary(sentence_counts),
        total_texts=len(texts),
        vocab_growth=tuple(growth),
        length_histogram=bins,
    )


def render_stats(stats: CorpusStats) -> str:
    """Stable-order key=value report; means carry exactly two decimals so
    golden-file comparisons are byte-exact."""
    lines = [f"total_texts={stats.total_texts}"]
    for name in ("char_count", "word_count", "sentence_count"):
        summary: StatSummary = getattr(stats, name)
        lines.append(f"{name}_mean={summary.mean:.2f}")
        lines.append(f"{name}_max={summary.max}")
        lines.append(f"{name}_min={summary.min}")
    lines.append(f"distinct_tokens={stats.vocab_growth[-1]}")
    lines.append("length_histogram=" + ",".join(str(c) for c in stats.length_histogram))
    lines.append("vocab_growth=" + ",".join(str(c) for c in stats.vocab_growth))
    return "\n".join(lines) + "\n"
