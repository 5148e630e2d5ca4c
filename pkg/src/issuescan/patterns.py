"""Secret-detection pattern registry and scanner.

The built-in set is a representative subset of the provider-specific and
generic detectors commonly shipped by secret-scanning tools: cloud keys,
OAuth/API tokens, private-key headers, and generic high-entropy
assignments.  A pattern file (JSON-Lines of ``{"name", "pattern",
"capture_group"}``) can replace or extend it up to the full registries
such tools carry.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

# Generic assignment detectors capture group 1 (the value); provider
# detectors match the whole token.
_GENERIC_VALUE = r"([A-Za-z0-9+/_\-]{8,64})"

_BUILTIN_PATTERNS: list[tuple[str, str, int]] = [
    ("aws_access_key_id", r"\b(A3T[A-Z0-9]|AKIA|AGPA|AIDA|AROA|AIPA|ANPA|ANVA|ASIA)[A-Z0-9]{16}\b", 0),
    ("aws_secret_access_key", r"(?i)aws(?:.{0,20})?['\"=:\s]([0-9a-zA-Z/+]{40})\b", 1),
    ("github_pat", r"\bghp_[A-Za-z0-9]{36}\b", 0),
    ("github_oauth", r"\bgho_[A-Za-z0-9]{36}\b", 0),
    ("github_fine_grained_pat", r"\bgithub_pat_[A-Za-z0-9_]{82}\b", 0),
    ("gitlab_pat", r"\bglpat-[A-Za-z0-9\-_]{20}\b", 0),
    ("slack_token", r"\bxox[baprs]-[A-Za-z0-9\-]{10,48}\b", 0),
    ("slack_webhook", r"https://hooks\.slack\.com/services/T[A-Za-z0-9_]{8,}/B[A-Za-z0-9_]{8,}/[A-Za-z0-9_]{24}", 0),
    ("stripe_secret_key", r"\bsk_live_[A-Za-z0-9]{24,}\b", 0),
    ("stripe_restricted_key", r"\brk_live_[A-Za-z0-9]{24,}\b", 0),
    ("google_api_key", r"\bAIza[0-9A-Za-z\-_]{35}\b", 0),
    ("google_oauth_token", r"\bya29\.[0-9A-Za-z\-_]+\b", 0),
    ("heroku_api_key", r"(?i)heroku(?:.{0,20})?\b([0-9a-f]{8}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{12})\b", 1),
    ("twilio_api_key", r"\bSK[0-9a-fA-F]{32}\b", 0),
    ("sendgrid_api_key", r"\bSG\.[A-Za-z0-9\-_]{22}\.[A-Za-z0-9\-_]{43}\b", 0),
    ("mailgun_api_key", r"\bkey-[0-9a-zA-Z]{32}\b", 0),
    ("npm_access_token", r"\bnpm_[A-Za-z0-9]{36}\b", 0),
    ("pypi_api_token", r"\bpypi-AgEIcHlwaS5vcmc[A-Za-z0-9\-_]{50,}\b", 0),
    ("shopify_access_token", r"\bshpat_[0-9a-fA-F]{32}\b", 0),
    ("digitalocean_pat", r"\bdop_v1_[0-9a-f]{64}\b", 0),
    ("telegram_bot_token", r"\b[0-9]{8,10}:AA[A-Za-z0-9_\-]{33}\b", 0),
    ("facebook_access_token", r"\bEAACEdEose0cBA[A-Za-z0-9]+\b", 0),
    ("jwt", r"\beyJ[A-Za-z0-9_\-]{10,}\.[A-Za-z0-9_\-]{10,}\.[A-Za-z0-9_\-]{10,}\b", 0),
    ("private_key_header", r"-----BEGIN (?:RSA |EC |DSA |OPENSSH |PGP )?PRIVATE KEY(?: BLOCK)?-----", 0),
    ("generic_password_assignment", r"(?i)\bpassword\s*[=:]\s*['\"]?" + _GENERIC_VALUE, 1),
    ("generic_secret_assignment", r"(?i)\b[a-z_]*secret\s*[=:]\s*['\"]?" + _GENERIC_VALUE, 1),
    ("generic_token_assignment", r"(?i)\b[a-z_]*token\s*[=:]\s*['\"]?" + _GENERIC_VALUE, 1),
    ("generic_api_key_assignment", r"(?i)\b(?:api[_\-]?key|apikey)\s*[=:]\s*['\"]?" + _GENERIC_VALUE, 1),
    ("generic_key_assignment", r"(?i)\b[a-z_]*key\s*[=:]\s*['\"]?" + _GENERIC_VALUE, 1),
    ("generic_auth_assignment", r"(?i)\bauth(?:orization)?\s*[=:]\s*(?:bearer\s+)?['\"]?" + _GENERIC_VALUE, 1),
]


class PatternError(ValueError):
    """Raised for non-compiling patterns, bad capture groups, duplicates."""


@dataclass(frozen=True)
class SecretPattern:
    """One secret detector: named regex plus the group holding the value."""

    name: str
    pattern: str
    capture_group: int = 0
    regex: re.Pattern = field(compare=False, repr=False, default=None)


@dataclass(frozen=True)
class CandidateSecret:
    """A pattern match inside cleaned text, prior to classification."""

    report_id: str
    text: str
    span: tuple[int, int]
    pattern_name: str


def _compile_pattern(name: str, pattern: str, capture_group: int) -> SecretPattern:
    try:
        regex = re.compile(pattern)
    except re.error as exc:
        raise PatternError(f"pattern {name!r} does not compile: {exc}") from exc
    if capture_group < 0 or capture_group > regex.groups:
        raise PatternError(
            f"pattern {name!r}: capture_group {capture_group} does not exist "
            f"(pattern has {regex.groups} groups)"
        )
    return SecretPattern(name=name, pattern=pattern, capture_group=capture_group, regex=regex)


def load_patterns(source=None) -> list[SecretPattern]:
    """Load a pattern registry, built-in when ``source`` is None.

    Iteration order is stable (file order).  Duplicate names and
    non-compiling patterns are errors.
    """
    if source is None:
        entries = [
            {"name": n, "pattern": p, "capture_group": g}
            for n, p, g in _BUILTIN_PATTERNS
        ]
    else:
        entries = []
        with open(Path(source), encoding="utf-8") as fh:
            for i, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise PatternError(f"line {i}: invalid JSON: {exc}") from exc
                entries.append(obj)

    seen = set()
    registry = []
    for obj in entries:
        name = obj["name"]
        if name in seen:
            raise PatternError(f"duplicate pattern name {name!r}")
        seen.add(name)
        registry.append(
            _compile_pattern(name, obj["pattern"], int(obj.get("capture_group", 0)))
        )
    return registry


def scan(
    cleaned_body: str,
    registry: list[SecretPattern],
    report_id: str = "",
) -> list[CandidateSecret]:
    """Scan cleaned text with every pattern in the registry.

    Returns all non-overlapping-per-pattern matches, sorted by
    ``(start, pattern_name)``.  Exact duplicates (same span, same
    pattern) are dropped; identical spans hit by different patterns are
    both kept.
    """
    found: dict[tuple[int, int, str], CandidateSecret] = {}
    for pat in registry:
        for m in pat.regex.finditer(cleaned_body):
            start, end = m.span(pat.capture_group)
            if start == end or start == -1:
                continue
            key = (start, end, pat.name)
            if key not in found:
                found[key] = CandidateSecret(
                    report_id=report_id,
                    text=cleaned_body[start:end],
                    span=(start, end),
                    pattern_name=pat.name,
                )
    return sorted(found.values(), key=lambda c: (c.span[0], c.pattern_name))
