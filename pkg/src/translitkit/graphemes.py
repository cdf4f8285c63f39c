"""Script definitions, mapping tables, and segmentation into transliteration units.

A script is described by four codepoint classes (independent vowels,
consonants, vowel diacritics, nasal signs) plus the virama. Mapping tables
assign each classified codepoint a lowercase Roman string. Both are loaded
from TSV data files; bundled defaults for Bengali and Devanagari live in
``translitkit/data/``.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable

__all__ = [
    "TranslitError",
    "MappingParseError",
    "MappingValidationError",
    "ScriptSpec",
    "MappingTable",
    "TransliterationUnit",
    "VOWEL",
    "CONSONANT_CLUSTER",
    "NASAL",
    "OTHER",
    "load_mapping",
    "bundled_mapping_path",
    "split_units",
]


class TranslitError(Exception):
    """Base class for all toolkit errors."""


class MappingParseError(TranslitError):
    """Raised for a malformed mapping-file row; carries the line number."""

    def __init__(self, path: str, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


class MappingValidationError(TranslitError):
    """Raised when a parsed mapping violates a structural invariant."""


# Unit kinds.
VOWEL = "vowel"
CONSONANT_CLUSTER = "consonant_cluster"
NASAL = "nasal"
OTHER = "other"

SCRIPT_IDS = ("bengali", "devanagari")

# Roman values: lowercase ASCII letters, optionally apostrophe or a
# combining diaeresis.
_VALUE_RE = re.compile(r"^[a-z'̈]+$")
_CODEPOINT_RE = re.compile(r"^U\+([0-9A-Fa-f]{4,6})$")


@dataclass(frozen=True)
class ScriptSpec:
    """Codepoint classes of one script. Classes are pairwise disjoint and
    never contain the virama; anything outside them passes through."""

    script_id: str
    vowels: frozenset[str]
    consonants: frozenset[str]
    diacritics: frozenset[str]
    nasals: frozenset[str]
    virama: str
    passthrough: str = "keep"

    def __post_init__(self):
        if self.script_id not in SCRIPT_IDS:
            raise MappingValidationError(f"unknown script id: {self.script_id!r}")
        classes = [self.vowels, self.consonants, self.diacritics, self.nasals]
        names = ["vowels", "consonants", "diacritics", "nasals"]
        for i in range(len(classes)):
            for j in range(i + 1, len(classes)):
                overlap = classes[i] & classes[j]
                if overlap:
                    raise MappingValidationError(
                        f"classes {names[i]} and {names[j]} overlap on "
                        f"{_fmt_cps(overlap)}"
                    )
        if len(self.virama) != 1:
            raise MappingValidationError("virama must be a single codepoint")
        for name, cls in zip(names, classes):
            if self.virama in cls:
                raise MappingValidationError(f"virama listed under {name}")

    @property
    def all_classified(self) -> frozenset[str]:
        return self.vowels | self.consonants | self.diacritics | self.nasals


@dataclass(frozen=True)
class MappingTable:
    """Native codepoint -> Roman string, one table per class."""

    v_map: dict[str, str]
    c_map: dict[str, str]
    d_map: dict[str, str]
    n_map: dict[str, str]

    def validate_against(self, spec: ScriptSpec) -> None:
        pairs = [
            ("v_map", self.v_map, spec.vowels),
            ("c_map", self.c_map, spec.consonants),
            ("d_map", self.d_map, spec.diacritics),
            ("n_map", self.n_map, spec.nasals),
        ]
        for name, table, cls in pairs:
            if set(table) != cls:
                missing = cls - set(table)
                extra = set(table) - cls
                detail = []
                if missing:
                    detail.append(f"missing {_fmt_cps(missing)}")
                if extra:
                    detail.append(f"extra {_fmt_cps(extra)}")
                raise MappingValidationError(f"{name} keys != class set: " + ", ".join(detail))
            for cp, value in table.items():
                if not value or not _VALUE_RE.match(value):
                    raise MappingValidationError(
                        f"{name}[{_fmt_cp(cp)}] has invalid value {value!r}"
                    )


@dataclass(frozen=True, slots=True)
class TransliterationUnit:
    """One segment of a native word: an independent vowel, a consonant
    cluster (head consonant, optional virama-joined consonants, optional
    diacritic, optional nasal sign), a standalone nasal sign, or a run of
    unclassified codepoints."""

    kind: str
    codepoints: str
    has_diacritic: bool = False
    has_nasal: bool = False


def _fmt_cp(cp: str) -> str:
    return f"U+{ord(cp):04X}"


def _fmt_cps(cps: Iterable[str]) -> str:
    return ", ".join(sorted(_fmt_cp(c) for c in cps))


def _parse_codepoint(text: str, path: str, line_no: int) -> str:
    m = _CODEPOINT_RE.match(text)
    if m:
        return chr(int(m.group(1), 16))
    glyph = unicodedata.normalize("NFC", text)
    if len(glyph) != 1:
        raise MappingParseError(
            path, line_no, f"codepoint field {text!r} is neither U+XXXX nor a single glyph"
        )
    return glyph


def load_mapping(path: str) -> tuple[ScriptSpec, MappingTable]:
    """Load and validate a mapping TSV.

    Format: a mandatory ``#script=<id>\\t#virama=U+XXXX`` header, then one
    rule per line with three tab-separated columns: class (V/C/D/N),
    codepoint (``U+XXXX`` or literal glyph), Roman value. ``#`` lines are
    comments.
    """
    script_id = None
    virama = None
    rows: dict[str, dict[str, str]] = {"V": {}, "C": {}, "D": {}, "N": {}}
    seen: dict[str, tuple[str, int]] = {}

    with open(path, encoding="utf-8") as f:
        for line_no, raw in enumerate(f, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                if line.startswith("#script="):
                    fields = line.split("\t")
                    if len(fields) != 2 or not fields[1].startswith("#virama="):
                        raise MappingParseError(path, line_no, "malformed header line")
                    script_id = fields[0][len("#script="):]
                    virama = _parse_codepoint(fields[1][len("#virama="):], path, line_no)
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise MappingParseError(
                    path, line_no, f"expected 3 tab-separated columns, got {len(fields)}"
                )
            cls, cp_text, value = fields
            if cls not in rows:
                raise MappingParseError(path, line_no, f"unknown class {cls!r}")
            cp = _parse_codepoint(cp_text, path, line_no)
            if not value or not _VALUE_RE.match(value):
                raise MappingParseError(path, line_no, f"invalid Roman value {value!r}")
            if cp in seen:
                prev_cls, prev_line = seen[cp]
                kind = "duplicate key" if prev_cls == cls else "class overlap"
                raise MappingValidationError(
                    f"{path}:{line_no}: {kind}: {_fmt_cp(cp)} already defined "
                    f"under {prev_cls} at line {prev_line}"
                )
            seen[cp] = (cls, line_no)
            rows[cls][cp] = value

    if script_id is None or virama is None:
        raise MappingParseError(path, 1, "missing mandatory #script=...\\t#virama=... header")
    if virama in seen:
        raise MappingValidationError(f"{path}: virama {_fmt_cp(virama)} listed in a class")

    spec = ScriptSpec(
        script_id=script_id,
        vowels=frozenset(rows["V"]),
        consonants=frozenset(rows["C"]),
        diacritics=frozenset(rows["D"]),
        nasals=frozenset(rows["N"]),
        virama=virama,
    )
    table = MappingTable(
        v_map=dict(rows["V"]),
        c_map=dict(rows["C"]),
        d_map=dict(rows["D"]),
        n_map=dict(rows["N"]),
    )
    table.validate_against(spec)
    return spec, table


def bundled_mapping_path(script_id: str) -> str:
    """Filesystem path of the bundled mapping table for a script."""
    name = {"bengali": "bengali.tsv", "devanagari": "devanagari.tsv"}.get(script_id)
    if name is None:
        raise MappingValidationError(f"no bundled mapping for script {script_id!r}")
    return str(resources.files("translitkit.data").joinpath(name))


def split_units(word: str, spec: ScriptSpec) -> list[TransliterationUnit]:
    """Segment a native word (NFC-normalized first) into transliteration
    units, greedy longest-match: a consonant absorbs virama+consonant
    chains, then at most one diacritic, then at most one nasal sign.
    Stray marks (dangling virama, standalone diacritic) join runs of
    unclassified codepoints as ``other`` units."""
    if not word:
        raise ValueError("split_units: empty word")
    if any(ch.isspace() for ch in word):
        raise ValueError("split_units: word contains whitespace")
    w = unicodedata.normalize("NFC", word)
    vowels = spec.vowels
    consonants = spec.consonants
    diacritics = spec.diacritics
    nasals = spec.nasals
    virama = spec.virama

    units: list[TransliterationUnit] = []
    i = 0
    n = len(w)
    while i < n:
        cp = w[i]
        if cp in vowels:
            units.append(TransliterationUnit(VOWEL, cp))
            i += 1
        elif cp in consonants:
            j = i + 1
            while j + 1 < n and w[j] == virama and w[j + 1] in consonants:
                j += 2
            has_d = j < n and w[j] in diacritics
            if has_d:
                j += 1
            has_n = j < n and w[j] in nasals
            if has_n:
                j += 1
            units.append(TransliterationUnit(CONSONANT_CLUSTER, w[i:j], has_d, has_n))
            i = j
        elif cp in nasals:
            units.append(TransliterationUnit(NASAL, cp))
            i += 1
        else:
            j = i + 1
            while j < n and w[j] not in vowels and w[j] not in consonants and w[j] not in nasals:
                j += 1
            units.append(TransliterationUnit(OTHER, w[i:j]))
            i = j
    return units
