"""Evaluation metrics for transliteration output.

Segment-level: character and word error rate (edit distance over the
reference length), chrF (character n-gram F-score, beta=2, orders 1..6),
ROUGE-1/2/L F1 over whitespace tokens, and exact-match METEOR. Corpus
level: BLEU with clipped n-gram precisions aggregated over all segments,
uniform weights over orders 1..4, brevity penalty, and no smoothing.

Tokenization everywhere is whitespace splitting after NFC normalization;
punctuation is not split off. CER/WER are reported as raw fractions, all
other metrics scaled to 0..100.
"""

from __future__ import annotations

import math
import unicodedata
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "MetricReport",
    "edit_distance",
    "cer",
    "wer",
    "corpus_bleu",
    "chrf_score",
    "rouge_scores",
    "meteor_score",
    "cer_by_length",
    "evaluate_report",
]

BLEU_MAX_ORDER = 4
CHRF_MAX_ORDER = 6
CHRF_BETA = 2.0
METEOR_ALPHA = 0.9
METEOR_GAMMA = 0.5
METEOR_BETA_EXP = 3.0


def _tokens(text: str) -> list[str]:
    return unicodedata.normalize("NFC", text).split()


def _chars(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def edit_distance(a: Sequence, b: Sequence) -> int:
    """Levenshtein distance with unit costs, iterative two-row DP."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, 1):
        cur = [i]
        for j, y in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x != y)))
        prev = cur
    return prev[-1]


def cer(hyp: str, ref: str) -> float:
    """Character error rate: codepoint edit distance / reference length."""
    ref_chars = _chars(ref)
    if not ref_chars:
        raise ValueError("cer: empty reference")
    return edit_distance(_chars(hyp), ref_chars) / len(ref_chars)


def wer(hyp: str, ref: str) -> float:
    """Word error rate: token edit distance / reference token count."""
    ref_tokens = _tokens(ref)
    if not ref_tokens:
        raise ValueError("wer: reference has no tokens")
    return edit_distance(_tokens(hyp), ref_tokens) / len(ref_tokens)


def _ngram_counts(items: Sequence, n: int) -> Counter:
    return Counter(tuple(items[i : i + n]) for i in range(len(items) - n + 1))


def _clipped_overlap(hyp_counts: Counter, ref_counts: Counter) -> int:
    return sum(min(count, ref_counts[gram]) for gram, count in hyp_counts.items())


def corpus_bleu(hyps: Sequence[str], refs: Sequence[str]) -> float:
    """Corpus BLEU x100, orders 1..4, uniform weights, no smoothing."""
    if len(hyps) != len(refs):
        raise ValueError(f"corpus_bleu: {len(hyps)} hypotheses vs {len(refs)} references")
    if not hyps:
        raise ValueError("corpus_bleu: empty corpus")
    matches = [0] * BLEU_MAX_ORDER
    totals = [0] * BLEU_MAX_ORDER
    hyp_len = 0
    ref_len = 0
    for hyp, ref in zip(hyps, refs):
        hyp_tokens = _tokens(hyp)
        ref_tokens = _tokens(ref)
        hyp_len += len(hyp_tokens)
        ref_len += len(ref_tokens)
        for n in range(1, BLEU_MAX_ORDER + 1):
            hyp_counts = _ngram_counts(hyp_tokens, n)
            matches[n - 1] += _clipped_overlap(hyp_counts, _ngram_counts(ref_tokens, n))
            totals[n - 1] += sum(hyp_counts.values())
    # Orders the corpus is too short to populate drop out of the mean;
    # an order with hypothesis n-grams but zero matches still zeroes BLEU.
    populated = [(m, t) for m, t in zip(matches, totals) if t > 0]
    if not populated or any(m == 0 for m, _ in populated):
        return 0.0
    log_precision = sum(math.log(m / t) for m, t in populated) / len(populated)
    brevity = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return 100.0 * brevity * math.exp(log_precision)


def chrf_score(hyp: str, ref: str) -> float:
    """chrF x100: character n-grams 1..6 with whitespace removed, beta=2.

    Precision and recall are averaged over the orders where both sides
    have at least one n-gram; orders longer than either string drop out.
    """
    ref_chars = _chars(ref)
    if not ref_chars:
        raise ValueError("chrf_score: empty reference")
    hyp_seq = "".join(ch for ch in _chars(hyp) if not ch.isspace())
    ref_seq = "".join(ch for ch in ref_chars if not ch.isspace())
    precisions: list[float] = []
    recalls: list[float] = []
    for n in range(1, CHRF_MAX_ORDER + 1):
        hyp_counts = _ngram_counts(hyp_seq, n)
        ref_counts = _ngram_counts(ref_seq, n)
        hyp_total = sum(hyp_counts.values())
        ref_total = sum(ref_counts.values())
        if hyp_total == 0 or ref_total == 0:
            continue
        overlap = _clipped_overlap(hyp_counts, ref_counts)
        precisions.append(overlap / hyp_total)
        recalls.append(overlap / ref_total)
    if not precisions:
        return 0.0
    p = sum(precisions) / len(precisions)
    r = sum(recalls) / len(recalls)
    if p + r == 0.0:
        return 0.0
    beta_sq = CHRF_BETA * CHRF_BETA
    return 100.0 * (1 + beta_sq) * p * r / (beta_sq * p + r)


def _f1(overlap: int, hyp_total: int, ref_total: int) -> float:
    if overlap == 0 or hyp_total == 0 or ref_total == 0:
        return 0.0
    p = overlap / hyp_total
    r = overlap / ref_total
    return 2.0 * p * r / (p + r)


def _lcs_length(a: list[str], b: list[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, 1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_scores(hyp: str, ref: str) -> tuple[float, float, float]:
    """ROUGE-1, ROUGE-2, ROUGE-L F1 x100 over whitespace tokens."""
    ref_tokens = _tokens(ref)
    if not _chars(ref):
        raise ValueError("rouge_scores: empty reference")
    hyp_tokens = _tokens(hyp)
    r1 = _f1(
        _clipped_overlap(_ngram_counts(hyp_tokens, 1), _ngram_counts(ref_tokens, 1)),
        len(hyp_tokens),
        len(ref_tokens),
    )
    hyp_bi = _ngram_counts(hyp_tokens, 2)
    ref_bi = _ngram_counts(ref_tokens, 2)
    r2 = _f1(
        _clipped_overlap(hyp_bi, ref_bi), sum(hyp_bi.values()), sum(ref_bi.values())
    )
    rl = _f1(_lcs_length(hyp_tokens, ref_tokens), len(hyp_tokens), len(ref_tokens))
    return (100.0 * r1, 100.0 * r2, 100.0 * rl)


def _meteor_alignment(hyp_tokens: list[str], ref_tokens: list[str]) -> list[tuple[int, int]]:
    """Exact-match alignment: each hypothesis token takes the lowest
    still-unused reference position of the same token (first-available)."""
    positions: dict[str, list[int]] = {}
    for j in range(len(ref_tokens) - 1, -1, -1):
        positions.setdefault(ref_tokens[j], []).append(j)
    alignment: list[tuple[int, int]] = []
    for i, token in enumerate(hyp_tokens):
        stack = positions.get(token)
        if stack:
            alignment.append((i, stack.pop()))
    return alignment


def meteor_score(hyp: str, ref: str) -> float:
    """Exact-match METEOR x100 (alpha=0.9, fragmentation penalty
    0.5*(chunks/matches)^3, no stemming or synonymy)."""
    ref_tokens = _tokens(ref)
    if not _chars(ref):
        raise ValueError("meteor_score: empty reference")
    hyp_tokens = _tokens(hyp)
    alignment = _meteor_alignment(hyp_tokens, ref_tokens)
    m = len(alignment)
    if m == 0:
        return 0.0
    chunks = 1
    for (hi, rj), (prev_hi, prev_rj) in zip(alignment[1:], alignment):
        if hi != prev_hi + 1 or rj != prev_rj + 1:
            chunks += 1
    p = m / len(hyp_tokens)
    r = m / len(ref_tokens)
    f_mean = p * r / (METEOR_ALPHA * p + (1 - METEOR_ALPHA) * r)
    penalty = METEOR_GAMMA * (chunks / m) ** METEOR_BETA_EXP
    return 100.0 * f_mean * (1.0 - penalty)


def cer_by_length(
    hyps: Sequence[str], refs: Sequence[str], bucket_width: int = 5
) -> list[tuple[int, float]]:
    """Mean segment CER bucketed by reference word count: bucket 1 covers
    1..width words, bucket 2 width+1..2*width, and so on. Empty buckets
    are omitted."""
    if len(hyps) != len(refs):
        raise ValueError(f"cer_by_length: {len(hyps)} hypotheses vs {len(refs)} references")
    if not hyps:
        raise ValueError("cer_by_length: empty corpus")
    if bucket_width < 1:
        raise ValueError("cer_by_length: bucket width must be >= 1")
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}
    for hyp, ref in zip(hyps, refs):
        word_count = len(_tokens(ref))
        if word_count == 0:
            raise ValueError("cer_by_length: reference has no tokens")
        bucket = (word_count - 1) // bucket_width + 1
        sums[bucket] = sums.get(bucket, 0.0) + cer(hyp, ref)
        counts[bucket] = counts.get(bucket, 0) + 1
    return [(b, sums[b] / counts[b]) for b in sorted(sums)]


@dataclass(frozen=True)
class MetricReport:
    """All corpus metrics for one evaluation run. rouge/bleu/chrf/meteor
    are x100 scores; cer/wer are raw fractions (can exceed 1)."""

    rouge1: float
    rouge2: float
    rougeL: float
    bleu: float
    cer: float
    wer: float
    chrf: float
    meteor: float
    segment_count: int

    def render(self) -> str:
        lines = [
            f"segments={self.segment_count}",
            f"rouge1={self.rouge1:.2f}",
            f"rouge2={self.rouge2:.2f}",
            f"rougeL={self.rougeL:.2f}",
            f"bleu={self.bleu:.2f}",
            f"cer={self.cer:.2f}",
            f"wer={self.wer:.2f}",
            f"chrf={self.chrf:.2f}",
            f"meteor={self.meteor:.2f}",
        ]
        return "\n".join(lines) + "\n"


def evaluate_report(hyps: Sequence[str], refs: Sequence[str]) -> MetricReport:
    """Corpus BLEU plus macro-averaged segment metrics."""
    if len(hyps) != len(refs):
        raise ValueError(f"evaluate_report: {len(hyps)} hypotheses vs {len(refs)} references")
    if not hyps:
        raise ValueError("evaluate_report: empty corpus")
    n = len(hyps)
    acc = {"rouge1": 0.0, "rouge2": 0.0, "rougeL": 0.0, "cer": 0.0, "wer": 0.0, "chrf": 0.0, "meteor": 0.0}
    for hyp, ref in zip(hyps, refs):
        r1, r2, rl = rouge_scores(hyp, ref)
        acc["rouge1"] += r1
        acc["rouge2"] += r2
        acc["rougeL"] += rl
        acc["cer"] += cer(hyp, ref)
        acc["wer"] += wer(hyp, ref)
        acc["chrf"] += chrf_score(hyp, ref)
        acc["meteor"] += meteor_score(hyp, ref)
    return MetricReport(
        rouge1=acc["rouge1"] / n,
        rouge2=acc["rouge2"] / n,
        rougeL=acc["rougeL"] / n,
        bleu=corpus_bleu(hyps, refs),
        cer=acc["cer"] / n,
        wer=acc["wer"] / n,
        chrf=acc["chrf"] / n,
        meteor=acc["meteor"] / n,
        segment_count=n,
    )
