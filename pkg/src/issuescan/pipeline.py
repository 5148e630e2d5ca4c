"""End-to-end detection pipeline: clean -> scan -> window -> classify."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import classify, patterns, preprocess, window
from .classify import ClassifierModel, Verdict
from .patterns import CandidateSecret, SecretPattern
from .preprocess import CleaningRule


def default_model(threshold: float = 0.5) -> ClassifierModel:
    """A heuristic fallback model for running the pipeline untrained.

    Positive weight on entropy, keyword and assignment cues, negative on
    masking; usable for smoke runs, not a substitute for training.
    """
    import numpy as np

    w = np.zeros(len(classify.FEATURE_NAMES))
    names = {n: i for i, n in enumerate(classify.FEATURE_NAMES)}
    w[names["entropy"]] = 1.2
    w[names["mask_ratio"]] = -6.0
    w[names["assignment"]] = 1.0
    for kw in classify.KEYWORDS:
        w[names[f"kw_{kw}"]] = 0.4
    return ClassifierModel(weights=w, bias=-5.0, threshold=threshold)


@dataclass
class DetectionPipeline:
    """Immutable bundle of rules, pattern registry, model, and radius."""

    rules: list[CleaningRule] = field(default_factory=preprocess.compile_rules)
    registry: list[SecretPattern] = field(default_factory=patterns.load_patterns)
    model: ClassifierModel = field(default_factory=default_model)
    radius: int = window.DEFAULT_RADIUS

    def detect(self, text: str, report_id: str = "") -> tuple[str, list[Verdict]]:
        """Run the full pipeline; returns (cleaned text, all verdicts)."""
        cleaned = preprocess.clean(text, self.rules).cleaned
        verdicts = []
        for cand in patterns.scan(cleaned, self.registry, report_id=report_id):
            w = window.extract_window(cleaned, cand.span, self.radius)
            verdicts.append(classify.predict(self.model, w, candidate=cand))
        return cleaned, verdicts

    def candidates(self, text: str, report_id: str = "") -> tuple[str, list[CandidateSecret]]:
        """Clean and scan only, without classification."""
        cleaned = preprocess.clean(text, self.rules).cleaned
        return cleaned, patterns.scan(cleaned, self.registry, report_id=report_id)
