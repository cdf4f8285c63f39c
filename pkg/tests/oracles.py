"""Independent brute-force oracles for the metric suite.

Deliberately written with different machinery than the library: full-matrix
DP instead of two rows, list.count instead of Counter arithmetic, recursive
memoized LCS, power-based geometric means. Used to freeze expected values
and to cross-check the implementations on random inputs.
"""

from __future__ import annotations

import math
from functools import lru_cache


def oracle_edit_distance(a, b) -> int:
    rows = len(a) + 1
    cols = len(b) + 1
    table = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        table[i][0] = i
    for j in range(cols):
        table[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            table[i][j] = min(
                table[i - 1][j] + 1,
                table[i][j - 1] + 1,
                table[i - 1][j - 1] + cost,
            )
    return table[rows - 1][cols - 1]


def oracle_cer(hyp: str, ref: str) -> float:
    assert ref, "oracle_cer needs a non-empty reference"
    return oracle_edit_distance(list(hyp), list(ref)) / len(ref)


def oracle_wer(hyp: str, ref: str) -> float:
    ref_words = ref.split()
    assert ref_words, "oracle_wer needs reference tokens"
    return oracle_edit_distance(hyp.split(), ref_words) / len(ref_words)


def _grams(tokens, n):
    return [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def _clipped(hyp_grams, ref_grams) -> int:
    total = 0
    for gram in set(hyp_grams):
        total += min(hyp_grams.count(gram), ref_grams.count(gram))
    return total


def oracle_bleu(hyps, refs) -> float:
    assert len(hyps) == len(refs) and hyps
    hyp_len = 0
    ref_len = 0
    precisions = []
    for n in range(1, 5):
        match = 0
        total = 0
        for hyp, ref in zip(hyps, refs):
            hyp_grams = _grams(hyp.split(), n)
            ref_grams = _grams(ref.split(), n)
            match += _clipped(hyp_grams, ref_grams)
            total += len(hyp_grams)
        if total > 0:
            precisions.append(match / total)
    for hyp, ref in zip(hyps, refs):
        hyp_len += len(hyp.split())
        ref_len += len(ref.split())
    if not precisions or any(p == 0.0 for p in precisions):
        return 0.0
    geo_mean = 1.0
    for p in precisions:
        geo_mean *= p ** (1.0 / len(precisions))
    bp = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return 100.0 * bp * geo_mean


def oracle_chrf(hyp: str, ref: str, beta: float = 2.0, max_order: int = 6) -> float:
    assert ref
    hyp_chars = [ch for ch in hyp if not ch.isspace()]
    ref_chars = [ch for ch in ref if not ch.isspace()]
    per_order = []
    for n in range(1, max_order + 1):
        hyp_grams = _grams(hyp_chars, n)
        ref_grams = _grams(ref_chars, n)
        if len(hyp_grams) == 0 or len(ref_grams) == 0:
            continue
        overlap = _clipped(hyp_grams, ref_grams)
        per_order.append((overlap / len(hyp_grams), overlap / len(ref_grams)))
    if not per_order:
        return 0.0
    p = sum(pr[0] for pr in per_order) / len(per_order)
    r = sum(pr[1] for pr in per_order) / len(per_order)
    if p + r == 0.0:
        return 0.0
    return 100.0 * (1 + beta * beta) * p * r / (beta * beta * p + r)


def _oracle_f1(overlap, hyp_total, ref_total) -> float:
    if overlap == 0 or hyp_total == 0 or ref_total == 0:
        return 0.0
    precision = overlap / hyp_total
    recall = overlap / ref_total
    return 2 * precision * recall / (precision + recall)


def oracle_rouge(hyp: str, ref: str):
    hyp_tokens = hyp.split()
    ref_tokens = ref.split()

    uni = _oracle_f1(
        _clipped(_grams(hyp_tokens, 1), _grams(ref_tokens, 1)),
        len(hyp_tokens),
        len(ref_tokens),
    )
    hyp_bi = _grams(hyp_tokens, 2)
    ref_bi = _grams(ref_tokens, 2)
    bi = _oracle_f1(_clipped(hyp_bi, ref_bi), len(hyp_bi), len(ref_bi))

    @lru_cache(maxsize=None)
    def lcs(i: int, j: int) -> int:
        if i == len(hyp_tokens) or j == len(ref_tokens):
            return 0
        if hyp_tokens[i] == ref_tokens[j]:
            return 1 + lcs(i + 1, j + 1)
        return max(lcs(i + 1, j), lcs(i, j + 1))

    lcs_f = _oracle_f1(lcs(0, 0), len(hyp_tokens), len(ref_tokens))
    return (100.0 * uni, 100.0 * bi, 100.0 * lcs_f)


def oracle_meteor(hyp: str, ref: str) -> float:
    """Exact-match METEOR under the documented first-available alignment:
    hypothesis tokens scanned left to right, each matched to the smallest
    unused reference index holding the same token."""
    hyp_tokens = hyp.split()
    ref_tokens = ref.split()
    used = [False] * len(ref_tokens)
    pairs = []
    for i, token in enumerate(hyp_tokens):
        for j, ref_token in enumerate(ref_tokens):
            if not used[j] and ref_token == token:
                used[j] = True
                pairs.append((i, j))
                break
    m = len(pairs)
    if m == 0:
        return 0.0
    chunks = 0
    prev = None
    for i, j in pairs:
        if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
            chunks += 1
        prev = (i, j)
    precision = m / len(hyp_tokens)
    recall = m / len(ref_tokens)
    f_mean = precision * recall / (0.9 * precision + 0.1 * recall)
    penalty = 0.5 * (chunks / m) ** 3
    return 100.0 * f_mean * (1 - penalty)
