"""Benchmark curation: sampling candidates for labeling and merging labels.

The iterative workflow (sample a fraction, label it, repeat until enough
true positives accumulate) is driven by the caller; the primitives here
stay pure.  Label files are hand-editable CSV:
``report_id,start,end,pattern_name,label``.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .ingest import LabeledCandidate
from .metrics import AgreementMatrix
from .patterns import CandidateSecret

# (report_id, (start, end), pattern_name)
CandidateKey = tuple[str, tuple[int, int], str]


class BenchmarkError(ValueError):
    """Raised for unusable label files or unresolved disagreements."""


@dataclass
class LabelFile:
    rater_id: str
    entries: dict[CandidateKey, bool] = field(default_factory=dict)


def candidate_key(c: CandidateSecret) -> CandidateKey:
    return (c.report_id, c.span, c.pattern_name)


def sample_candidates(
    candidates: list[CandidateSecret],
    fraction: float,
    seed: int,
    exclude: Optional[set[CandidateKey]] = None,
) -> list[CandidateSecret]:
    """Sample ``floor(fraction*n)`` candidates (min 1) without replacement.

    Deterministic for a fixed (input, fraction, seed).  ``exclude`` keys
    are dropped from the pool first, so repeated curation rounds can
    avoid re-sampling already-labeled candidates.
    """
    if not candidates:
        raise BenchmarkError("candidate list is empty")
    if not 0 < fraction <= 1:
        raise BenchmarkError(f"fraction must be in (0, 1], got {fraction}")
    pool = candidates
    if exclude:
        pool = [c for c in candidates if candidate_key(c) not in exclude]
        if not pool:
            raise BenchmarkError("all candidates are excluded")
    k = max(1, int(fraction * len(pool)))
    return random.Random(seed).sample(pool, k)


def load_label_file(path, rater_id: Optional[str] = None) -> LabelFile:
    """Read a label CSV; the rater id defaults to the file stem."""
    path = Path(path)
    lf = LabelFile(rater_id=rater_id or path.stem)
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for required in ("report_id", "start", "end", "pattern_name", "label"):
            if required not in (reader.fieldnames or []):
                raise BenchmarkError(f"{path}: missing required column {required!r}")
        for i, row in enumerate(reader, start=2):
            key = (
                row["report_id"],
                (int(row["start"]), int(row["end"])),
                row["pattern_name"],
            )
            if key in lf.entries:
                raise BenchmarkError(f"{path} row {i}: duplicate candidate key {key}")
            raw = row["label"].strip().lower()
            if raw not in ("true", "false", "1", "0"):
                raise BenchmarkError(
                    f"{path} row {i}: label must be true/false/1/0, got {row['label']!r}"
                )
            lf.entries[key] = raw in ("true", "1")
    return lf


def write_label_template(candidates: list[CandidateSecret], path) -> None:
    """Write a label CSV with blank labels for raters to fill in."""
    with open(Path(path), "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["report_id", "start", "end", "pattern_name", "label"])
        for c in candidates:
            writer.writerow([c.report_id, c.span[0], c.span[1], c.pattern_name, ""])


@dataclass
class BenchmarkResult:
    benchmark: list[LabeledCandidate]
    agreement: Optional[AgreementMatrix]
    disagreements: list[CandidateKey]


def build_benchmark(
    primary: LabelFile,
    secondary: Optional[LabelFile] = None,
    resolutions: Optional[dict[CandidateKey, bool]] = None,
    candidate_texts: Optional[dict[CandidateKey, str]] = None,
) -> BenchmarkResult:
    """Merge rater labels into a benchmark with an agreement summary.

    Overlapping keys are cross-tabulated into an AgreementMatrix.  Every
    disagreement must be settled in ``resolutions`` or the merge fails
    listing the unresolved keys.  Output labels are the primary rater's,
    overridden by resolutions.  ``candidate_texts`` supplies the matched
    text per key; keys without one get a placeholder of the right length.
    """
    if not primary.entries:
        raise BenchmarkError("primary label file is empty")
    resolutions = resolutions or {}
    for key in resolutions:
        if key not in primary.entries:
            raise BenchmarkError(f"resolution for unknown candidate key {key}")

    agreement = None
    disagreements: list[CandidateKey] = []
    if secondary is not None:
        overlap = [k for k in primary.entries if k in secondary.entries]
        if not overlap:
            raise BenchmarkError("no overlapping keys between raters")
        cells = {(True, True): 0, (True, False): 0, (False, True): 0, (False, False): 0}
        for k in overlap:
            p, s = primary.entries[k], secondary.entries[k]
            cells[(p, s)] += 1
            if p != s:
                disagreements.append(k)
        agreement = AgreementMatrix(
            both_pos=cells[(True, True)],
            r1pos_r2neg=cells[(True, False)],
            r1neg_r2pos=cells[(False, True)],
            both_neg=cells[(False, False)],
        )
        unresolved = [k for k in disagreements if k not in resolutions]
        if unresolved:
            raise BenchmarkError(
                f"{len(unresolved)} unresolved disagreements: {unresolved}"
            )

    benchmark = []
    for key, label in primary.entries.items():
        report_id, span, pattern_name = key
        text = (candidate_texts or {}).get(key, "?" * (span[1] - span[0]))
        benchmark.append(
            LabeledCandidate(
                report_id=report_id,
                candidate_text=text,
                span=span,
                pattern_name=pattern_name,
                label=resolutions.get(key, label),
            )
        )
    return BenchmarkResult(
        benchmark=benchmark, agreement=agreement, disagreements=disagreements
    )
