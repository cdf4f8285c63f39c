"""Toolkit for building, perturbing, and evaluating Romanized/native-script
transliteration corpora for Bengali and Hindi."""

from .backtranslit import (
    CharNGramModel,
    DeromText,
    ReverseIndex,
    build_reverse_index,
    derom_text,
    derom_word,
    load_lm,
    save_lm,
    train_lm,
)
from .corpus import (
    BuildReport,
    CleanDecision,
    CorpusPair,
    CorpusStats,
    build_corpus,
    clean_line,
    compute_stats,
    render_stats,
)
from .graphemes import (
    MappingParseError,
    MappingTable,
    MappingValidationError,
    ScriptSpec,
    TranslitError,
    TransliterationUnit,
    bundled_mapping_path,
    load_mapping,
    split_units,
)
from .metrics import (
    MetricReport,
    cer,
    cer_by_length,
    chrf_score,
    corpus_bleu,
    evaluate_report,
    meteor_score,
    rouge_scores,
    wer,
)
from .noise import NoiseProfile, apply_noise, load_profile
from .romanize import (
    RomanizedText,
    RomanizerConfig,
    UnmappedSymbolError,
    map_unit,
    romanize_lines,
    romanize_text,
    romanize_word,
)
from .subword import SubwordVocab, decode, encode, load_vocab, save_vocab, train_bpe

__version__ = "0.1.0"
