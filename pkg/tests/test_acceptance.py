"""Acceptance gate: one test per release criterion, each printing a
single pass/fail line (run pytest with -s to see them on success)."""

import json
import math
import random
import statistics
import time
from pathlib import Path

import numpy as np
from fastapi.testclient import TestClient

from issuescan import classify, metrics, window
from issuescan.patterns import load_patterns, scan
from issuescan.preprocess import apply_rule, clean, compile_rules
from issuescan.service import create_app
from issuescan.synthetic import generate_corpus

FIXTURE_PATH = Path(__file__).parent / "fixtures" / "cleaning_fixtures.json"


def _check(name, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail:
        line += f": {detail}"
    print(line)
    assert ok, line


def test_criterion_metric_oracle():
    a = metrics.f_beta_from(0.6309, 0.6385, 1.0)
    b = metrics.f_beta_from(0.0174, 0.8554, 1.0)
    ok = abs(a - 0.6347) <= 0.0005 and abs(b - 0.0341) <= 0.0005
    _check("metric oracle (reference F1 values)", ok,
           f"f1(0.6309,0.6385)={a:.4f}, f1(0.0174,0.8554)={b:.4f}")


def test_criterion_kappa_oracle():
    k = metrics.cohen_kappa(metrics.AgreementMatrix(184, 13, 16, 187))
    _check("kappa oracle (reference rater matrix)", abs(k - 0.855) <= 0.001,
           f"kappa={k:.4f}")


def test_criterion_synthetic_end_to_end():
    corpus = generate_corpus(n_reports=450, seed=0)
    rules = compile_rules()
    registry = load_patterns()

    instances = []  # (report_index, features, label)
    secrets_by_index = {}
    for report in corpus.reports:
        idx = int(report.id.split("-")[1])
        secrets_by_index[idx] = len(corpus.planted[report.id])
        cleaned = clean(report.body, rules).cleaned
        for cand in scan(cleaned, registry, report_id=report.id):
            w = window.extract_window(cleaned, cand.span, window.DEFAULT_RADIUS)
            instances.append((idx, classify.featurize(w), corpus.label(cand)))

    train_data = [(fv, y) for idx, fv, y in instances if idx % 2 == 0]
    test_data = [(fv, y) for idx, fv, y in instances if idx % 2 == 1]
    test_secret_total = sum(n for idx, n in secrets_by_index.items() if idx % 2 == 1)

    model = classify.train(train_data, learning_rate=0.5, epochs=400, seed=0)
    preds = [classify.score_features(model, fv) >= model.threshold
             for fv, _ in test_data]
    labels = [y for _, y in test_data]
    cm = metrics.confusion_from(preds, labels)
    model_p = cm.tp / max(cm.tp + cm.fp, 1)
    model_r = cm.tp / max(cm.tp + cm.fn, 1)

    # Regex-only baseline: every scanned candidate is flagged.
    base_tp = sum(labels)
    base_p = base_tp / len(labels)
    base_r = base_tp / max(test_secret_total, 1)

    ok = (
        len(corpus.reports) >= 400
        and corpus.secret_count >= 60
        and model_p >= 0.5
        and model_r >= 0.5
        and base_r >= 0.5
        and model_p >= 5 * base_p
    )
    _check(
        "synthetic corpus end to end (trained model vs regex baseline)", ok,
        f"reports={len(corpus.reports)}, planted={corpus.secret_count}, "
        f"model P={model_p:.3f} R={model_r:.3f}, "
        f"baseline P={base_p:.3f} R={base_r:.3f}, ratio={model_p / max(base_p, 1e-9):.1f}x",
    )


def test_criterion_cleaning_fixtures():
    fixtures = json.loads(FIXTURE_PATH.read_text())
    rules = compile_rules()
    by_name = {r.name: r for r in rules}
    counts = {r.name: {"positive": 0, "negative": 0} for r in rules}
    failures = []
    for fx in fixtures:
        rule = by_name[fx["rule"]]
        counts[fx["rule"]][fx["kind"]] += 1
        cleaned_once, removals = apply_rule(fx["text"], rule)
        if fx["kind"] == "positive" and not removals:
            failures.append(f"{fx['rule']} positive not removed")
        if fx["kind"] == "negative" and cleaned_once != fx["text"]:
            failures.append(f"{fx['rule']} negative altered")
        full = clean(fx["text"], rules).cleaned
        if clean(full, rules).cleaned != full:
            failures.append(f"{fx['rule']} not idempotent")
    for name, c in counts.items():
        if c["positive"] < 2 or c["negative"] < 1:
            failures.append(f"{name} coverage {c}")
    _check("cleaning rule fixtures (coverage + idempotence)", not failures,
           f"{len(fixtures)} fixtures over {len(rules)} rules"
           + (f"; failures: {failures[:3]}" if failures else ""))


def test_criterion_gradient_check():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        n, d = int(rng.integers(4, 20)), int(rng.integers(2, 8))
        X = rng.normal(size=(n, d))
        y = rng.integers(0, 2, size=n).astype(float)
        if y.min() == y.max():
            y[0] = 1 - y[0]
        sw = rng.uniform(0.5, 3.0, size=n)
        w = rng.normal(size=d)
        b = float(rng.normal())
        _, dw, db = classify.weighted_loss_and_gradient(X, y, w, b, sw)
        eps = 1e-6
        num = np.zeros(d + 1)
        for j in range(d):
            e = np.zeros(d)
            e[j] = eps
            lp = classify.weighted_loss_and_gradient(X, y, w + e, b, sw)[0]
            lm = classify.weighted_loss_and_gradient(X, y, w - e, b, sw)[0]
            num[j] = (lp - lm) / (2 * eps)
        lp = classify.weighted_loss_and_gradient(X, y, w, b + eps, sw)[0]
        lm = classify.weighted_loss_and_gradient(X, y, w, b - eps, sw)[0]
        num[d] = (lp - lm) / (2 * eps)
        analytic = np.concatenate([dw, [db]])
        rel = np.linalg.norm(analytic - num) / max(np.linalg.norm(num), 1e-12)
        worst = max(worst, rel)
    _check("gradient check (analytic vs central differences)", worst < 1e-4,
           f"worst relative error {worst:.2e} over 100 draws")


def test_criterion_entropy_suite():
    rng = random.Random(2024)
    alphabet = "abcdefgh01234 XYZ-_!~"
    worst = 0.0
    ok = True
    for _ in range(1000):
        s = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 60)))
        h = classify.entropy(s)
        oracle = 0.0
        for ch in set(s):
            p = s.count(ch) / len(s)
            oracle -= p * math.log2(p)
        worst = max(worst, abs(h - oracle))
        if s:
            ok &= -1e-12 <= h <= math.log2(len(set(s))) + 1e-9
            ok &= abs(classify.entropy("".join(sorted(s))) - h) <= 1e-9
    _check("entropy oracle + bound/permutation properties",
           ok and worst < 1e-9, f"max deviation {worst:.2e} over 1000 strings")


def test_criterion_window_properties():
    rng = random.Random(31)
    ok = True
    for _ in range(1000):
        n = rng.randint(1, 300)
        body = "".join(rng.choice("abc \n") for _ in range(n))
        start = rng.randrange(n)
        end = rng.randint(start + 1, n)
        radius = rng.randint(0, 60)
        w = window.extract_window(body, (start, end), radius)
        off = w.candidate_offset
        ok &= w.text[off[0]:off[1]] == body[start:end]
        bound = 2 * radius + (end - start)
        clipped = start - radius < 0 or end + radius > n
        ok &= len(w.text) <= bound and (len(w.text) == bound) == (not clipped)
        if radius:
            ok &= window.extract_window(body, (start, end), radius - 1).text in w.text
    _check("window containment/length/clipping/monotonicity", ok,
           "1000 randomized cases")


def test_criterion_metrics_brute_force():
    rng = random.Random(17)
    ok = True
    for _ in range(500):
        n = rng.randint(1, 80)
        verdicts = [rng.random() < 0.5 for _ in range(n)]
        labels = [rng.random() < 0.3 for _ in range(n)]
        cm = metrics.confusion_from(verdicts, labels)
        tp = sum(v and y for v, y in zip(verdicts, labels))
        fp = sum(v and not y for v, y in zip(verdicts, labels))
        fn = sum(y and not v for v, y in zip(verdicts, labels))
        ok &= (cm.tp, cm.fp, cm.fn, cm.tn) == (tp, fp, fn, n - tp - fp - fn)
        rep = metrics.compute_metrics(cm, beta=1.0)
        ok &= rep.precision == (tp / (tp + fp) if tp + fp else 0.0)
        ok &= rep.recall == (tp / (tp + fn) if tp + fn else 0.0)
    _check("confusion/metrics brute-force equivalence", ok,
           "500 randomized verdict/label vectors")


def test_criterion_service_contract():
    client = TestClient(create_app())

    empty = client.post("/detect", json={"text": ""}).json()
    secret = "AKIA0123456789ABCDEF"
    text = f"our secret access key {secret} leaked in the log"
    hit = client.post("/detect", json={"text": text}).json()
    spans_ok = any(
        text[c["start"]:c["end"]] == secret for c in hit["candidates"]
    )
    missing = client.post("/detect", json={"other": 1}).status_code

    filler = "we saw an unexpected crash in the log output today "
    body = (filler * (10 * 1024 // len(filler) + 1))[: 10 * 1024]
    client.post("/detect", json={"text": body})  # warm-up
    timings = []
    for _ in range(30):
        t0 = time.perf_counter()
        resp = client.post("/detect", json={"text": body})
        timings.append(time.perf_counter() - t0)
        assert resp.status_code == 200
    p50_ms = statistics.median(timings) * 1000

    ok = (
        empty["breach"] is False
        and hit["breach"] is True
        and spans_ok
        and missing == 400
        and p50_ms < 100
    )
    _check("service contract (empty/secret/400/latency)", ok,
           f"p50={p50_ms:.1f} ms for 10 KiB body")
