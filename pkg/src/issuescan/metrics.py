"""Evaluation metrics: confusion matrix, precision/recall/F-scores, kappa.

All 0/0 ratios are defined as 0, matching how non-predicting models are
conventionally reported (zero precision and recall rather than NaN).
Per-class F1 is exposed for both classes; on skewed benchmarks either one
may be the "minority" score a caller wants.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValueError("confusion matrix cells must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class MetricsReport:
    precision: float
    recall: float
    f1: float
    f1_positive: float
    f1_negative: float
    f_beta: float
    beta: float

    def to_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "f1_positive": self.f1_positive,
            "f1_negative": self.f1_negative,
            "f_beta": self.f_beta,
            "beta": self.beta,
        }


@dataclass(frozen=True)
class AgreementMatrix:
    """Cross-tabulation of two raters' boolean labels."""

    both_pos: int
    r1pos_r2neg: int
    r1neg_r2pos: int
    both_neg: int

    @property
    def total(self) -> int:
        return self.both_pos + self.r1pos_r2neg + self.r1neg_r2pos + self.both_neg


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def confusion_from(verdicts: list[bool], labels: list[bool]) -> ConfusionMatrix:
    """Count cells by (label, verdict)."""
    if len(verdicts) != len(labels):
        raise ValueError(
            f"length mismatch: {len(verdicts)} verdicts vs {len(labels)} labels"
        )
    if not verdicts:
        raise ValueError("cannot build a confusion matrix from empty input")
    tp = fp = fn = tn = 0
    for v, y in zip(verdicts, labels):
        if y and v:
            tp += 1
        elif y and not v:
            fn += 1
        elif not y and v:
            fp += 1
        else:
            tn += 1
    return ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)


def f_beta_from(precision: float, recall: float, beta: float) -> float:
    """F-beta from precision and recall; 0 when the denominator is 0."""
    if beta <= 0:
        raise ValueError(f"beta must be > 0, got {beta}")
    b2 = beta * beta
    return _ratio((1 + b2) * precision * recall, b2 * precision + recall)


def compute_metrics(cm: ConfusionMatrix, beta: float) -> MetricsReport:
    """Precision, recall, F1, per-class F1, and F-beta for one matrix."""
    if cm.total <= 0:
        raise ValueError("confusion matrix is empty")
    precision = _ratio(cm.tp, cm.tp + cm.fp)
    recall = _ratio(cm.tp, cm.tp + cm.fn)
    f1 = f_beta_from(precision, recall, 1.0)
    # Negative-class F1: treat the negative class as "positive".
    precision_neg = _ratio(cm.tn, cm.tn + cm.fn)
    recall_neg = _ratio(cm.tn, cm.tn + cm.fp)
    return MetricsReport(
        precision=precision,
        recall=recall,
        f1=f1,
        f1_positive=f1,
        f1_negative=f_beta_from(precision_neg, recall_neg, 1.0),
        f_beta=f_beta_from(precision, recall, beta),
        beta=beta,
    )


def cohen_kappa(m: AgreementMatrix) -> float:
    """Chance-corrected agreement between two raters; 1.0 when p_e == 1."""
    n = m.total
    if n <= 0:
        raise ValueError("agreement matrix is empty")
    p_o = (m.both_pos + m.both_neg) / n
    r1_pos = (m.both_pos + m.r1pos_r2neg) / n
    r2_pos = (m.both_pos + m.r1neg_r2pos) / n
    p_e = r1_pos * r2_pos + (1 - r1_pos) * (1 - r2_pos)
    if p_e == 1.0:
        return 1.0
    return (p_o - p_e) / (1 - p_e)
