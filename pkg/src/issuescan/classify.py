"""Candidate classification: lexical/entropy features over context windows.

The built-in classifier is a class-weighted logistic regression trained
with deterministic full-batch gradient descent.  It keeps the pipeline
contract (window in, score out) cheap enough to run anywhere; the remote
adapter forwards windows to an external model service speaking the same
contract when a heavier model is available.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
import requests

from .patterns import CandidateSecret
from .window import ContextWindow

SCHEMA_VERSION = 1

KEYWORDS = ("password", "token", "key", "secret", "auth", "session", "credential")

FEATURE_NAMES = (
    "entropy",
    "length",
    "digit_ratio",
    "upper_ratio",
    "lower_ratio",
    "symbol_ratio",
    "mask_ratio",
    *(f"kw_{k}" for k in KEYWORDS),
    "assignment",
    "context_length",
)

_MASK_RUN = re.compile(r"x{2,}|X{2,}|\*{2,}")


class TrainingError(ValueError):
    """Raised for unusable training data or a diverging optimization."""


class RemoteProtocolError(RuntimeError):
    """Raised when the remote classifier breaks the score protocol."""


class SchemaMismatchError(ValueError):
    """Raised when a feature vector does not match the model schema."""


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    schema_version: int = SCHEMA_VERSION


@dataclass
class ClassifierModel:
    weights: np.ndarray
    bias: float
    threshold: float = 0.5
    schema_version: int = SCHEMA_VERSION
    training_meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 < self.threshold < 1:
            raise ValueError(f"threshold must be in (0,1), got {self.threshold}")


@dataclass(frozen=True)
class Verdict:
    candidate: Optional[CandidateSecret]
    score: float
    is_breach: bool


def entropy(s: str) -> float:
    """Shannon entropy in bits per symbol over code-point frequencies."""
    if not s:
        return 0.0
    n = len(s)
    return -sum(
        (c / n) * math.log2(c / n) for c in Counter(s).values()
    )


def _mask_ratio(s: str) -> float:
    if not s:
        return 0.0
    masked = sum(m.end() - m.start() for m in _MASK_RUN.finditer(s))
    return masked / len(s)


def _has_assignment_left(w: ContextWindow) -> bool:
    i = w.candidate_offset[0] - 1
    while i >= 0 and w.text[i] in " \t'\"":
        i -= 1
    return i >= 0 and w.text[i] in "=:"


def featurize(w: ContextWindow) -> FeatureVector:
    """Deterministic lexical/entropy features for one context window."""
    cand = w.candidate_text
    n = len(cand) or 1
    lowered = w.text.lower()
    values = np.array(
        [
            entropy(cand),
            float(len(cand)),
            sum(c.isdigit() for c in cand) / n,
            sum(c.isupper() for c in cand) / n,
            sum(c.islower() for c in cand) / n,
            sum(not c.isalnum() for c in cand) / n,
            _mask_ratio(cand),
            *(1.0 if k in lowered else 0.0 for k in KEYWORDS),
            1.0 if _has_assignment_left(w) else 0.0,
            float(len(w.text)),
        ],
        dtype=float,
    )
    return FeatureVector(values=values, schema_version=SCHEMA_VERSION)


def _sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def weighted_loss_and_gradient(X, y, weights, bias, sample_weights):
    """Class-weighted cross-entropy and its analytic gradient.

    Loss is the sample-weight-normalized sum of per-instance binary
    cross-entropies.  Returns ``(loss, dloss/dweights, dloss/dbias)``.
    """
    p = _sigmoid(X @ weights + bias)
    eps = 1e-12
    total = sample_weights.sum()
    loss = (
        -np.sum(sample_weights * (y * np.log(p + eps) + (1 - y) * np.log(1 - p + eps)))
        / total
    )
    resid = sample_weights * (p - y) / total
    return loss, X.T @ resid, resid.sum()


def train(
    data: list[tuple[FeatureVector, bool]],
    learning_rate: float = 0.1,
    epochs: int = 500,
    seed: int = 0,
    class_weight: Optional[dict] = None,
    threshold: float = 0.5,
) -> ClassifierModel:
    """Fit logistic-regression weights by full-batch gradient descent.

    ``class_weight`` defaults to inverse class frequency, which matters
    because real candidate sets are heavily skewed toward non-secrets.
    Training is deterministic for a fixed seed.  Features are
    standardized internally; the returned weights are folded back to the
    raw feature scale so the model file stays self-contained.
    """
    if not data:
        raise TrainingError("training data is empty")
    if learning_rate <= 0:
        raise TrainingError(f"learning_rate must be > 0, got {learning_rate}")
    X = np.stack([fv.values for fv, _ in data])
    y = np.array([1.0 if label else 0.0 for _, label in data])
    n_pos = int(y.sum())
    n_neg = len(y) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise TrainingError("training data must contain both classes")

    if class_weight is None:
        class_weight = {0: len(y) / (2 * n_neg), 1: len(y) / (2 * n_pos)}
    sample_weights = np.where(y == 1.0, class_weight[1], class_weight[0])

    mu = X.mean(axis=0)
    sigma = X.std(axis=0)
    sigma[sigma == 0] = 1.0
    Xs = (X - mu) / sigma

    rng = np.random.default_rng(seed)
    w = rng.normal(0.0, 0.01, X.shape[1])
    b = 0.0
    for epoch in range(epochs):
        loss, dw, db = weighted_loss_and_gradient(Xs, y, w, b, sample_weights)
        if not np.isfinite(loss):
            raise TrainingError(f"non-finite loss at epoch {epoch}")
        w -= learning_rate * dw
        b -= learning_rate * db

    # Fold standardization into the weights: w.(x-mu)/sigma + b.
    raw_w = w / sigma
    raw_b = float(b - np.dot(raw_w, mu))
    return ClassifierModel(
        weights=raw_w,
        bias=raw_b,
        threshold=threshold,
        schema_version=SCHEMA_VERSION,
        training_meta={
            "learning_rate": learning_rate,
            "epochs": epochs,
            "seed": seed,
            "class_weight": {str(k): v for k, v in class_weight.items()},
        },
    )


def score_features(model: ClassifierModel, fv: FeatureVector) -> float:
    if fv.schema_version != model.schema_version:
        raise SchemaMismatchError(
            f"feature schema {fv.schema_version} != model schema {model.schema_version}"
        )
    if len(fv.values) != len(model.weights):
        raise SchemaMismatchError(
            f"feature length {len(fv.values)} != weight length {len(model.weights)}"
        )
    return float(_sigmoid(np.dot(model.weights, fv.values) + model.bias))


def predict(
    model: ClassifierModel,
    w: ContextWindow,
    candidate: Optional[CandidateSecret] = None,
) -> Verdict:
    """Score one window; ties at the threshold flag as breaches."""
    score = score_features(model, featurize(w))
    return Verdict(candidate=candidate, score=score, is_breach=score >= model.threshold)


def predict_remote(
    endpoint: str,
    w: ContextWindow,
    timeout: float = 10.0,
    threshold: float = 0.5,
    candidate: Optional[CandidateSecret] = None,
) -> Verdict:
    """Ask a remote model service for a score; threshold locally.

    Protocol: POST ``{"window_text", "candidate_offset"}``, expect a JSON
    object with a ``score`` in [0,1].
    """
    try:
        resp = requests.post(
            endpoint,
            json={"window_text": w.text, "candidate_offset": list(w.candidate_offset)},
            timeout=timeout,
        )
    except requests.RequestException as exc:
        raise RemoteProtocolError(f"remote classifier unreachable: {exc}") from exc
    if not 200 <= resp.status_code < 300:
        raise RemoteProtocolError(
            f"remote classifier returned HTTP {resp.status_code}"
        )
    try:
        payload = resp.json()
    except ValueError as exc:
        raise RemoteProtocolError("remote classifier returned non-JSON body") from exc
    score = payload.get("score") if isinstance(payload, dict) else None
    if not isinstance(score, (int, float)) or not 0.0 <= float(score) <= 1.0:
        raise RemoteProtocolError(
            f"remote classifier response missing a valid score: {payload!r}"
        )
    score = float(score)
    return Verdict(candidate=candidate, score=score, is_breach=score >= threshold)


def save_model(model: ClassifierModel, path) -> None:
    obj = {
        "schema_version": model.schema_version,
        "weights": [float(x) for x in model.weights],
        "bias": float(model.bias),
        "threshold": model.threshold,
        "training_meta": model.training_meta,
    }
    Path(path).write_text(json.dumps(obj, indent=2), encoding="utf-8")


def load_model(path) -> ClassifierModel:
    obj = json.loads(Path(path).read_text(encoding="utf-8"))
    return ClassifierModel(
        weights=np.array(obj["weights"], dtype=float),
        bias=float(obj["bias"]),
        threshold=float(obj["threshold"]),
        schema_version=int(obj["schema_version"]),
        training_meta=obj.get("training_meta", {}),
    )
