#!/usr/bin/env python3
"""Regenerate the committed corpus fixture and its golden stats report.

Run from the repository root:

    python tools/make_fixture.py

The fixture is 1,000 deterministic Bengali lines; a handful are
intentionally too short or carry markup so the cleaning path is exercised.
The golden file freezes the stats report over the raw fixture lines.
"""

from pathlib import Path
import sys

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from gen import make_lines  # noqa: E402

from translitkit.corpus import compute_stats, render_stats  # noqa: E402

FIXTURE_SEED = 20240613
SHORT_EVERY = 97
MARKUP_EVERY = 131


def build_fixture_lines() -> list[str]:
    lines = make_lines(FIXTURE_SEED, 1000, lang="bn", vocab_size=3000, min_words=10, max_words=18)
    for i in range(len(lines)):
        if i % SHORT_EVERY == 3:
            lines[i] = lines[i][:40]
        elif i % MARKUP_EVERY == 7:
            lines[i] = lines[i] + " <ref>{{cite}}</ref>"
    return lines


def main() -> None:
    data_dir = ROOT / "tests" / "data"
    data_dir.mkdir(parents=True, exist_ok=True)
    lines = build_fixture_lines()
    (data_dir / "fixture_bn_1000.txt").write_text(
        "\n".join(lines) + "\n", encoding="utf-8", newline=""
    )
    stats = compute_stats(lines)
    (data_dir / "golden_stats.txt").write_text(render_stats(stats), encoding="utf-8", newline="")
    print(f"wrote {len(lines)} fixture lines and golden stats to {data_dir}")


if __name__ == "__main__":
    main()
