"""Seeded synthetic issue-report corpus with known ground truth.

Generates bodies mixing prose, every noise family handled by the
cleaning rules, planted real secrets (high-entropy values behind keyword
assignments or provider-shaped tokens), and decoy assignments (masked or
placeholder values) that regex detectors flag but a classifier should
reject.  Ground truth is the set of planted secret values per report, so
any candidate can be labeled exactly.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass, field

from .ingest import IssueReport
from .patterns import CandidateSecret

_WORDS = (
    "the build fails when running on windows after upgrading we see an "
    "unexpected error in production and restarting does not help please "
    "advise how to reproduce this crash it happens every time our users "
    "click save then nothing loads anymore logs attached below thanks"
).split()

_SECRET_KEYS = (
    "password",
    "api_key",
    "access_token",
    "client_secret",
    "secret_key",
    "auth",
    "session_token",
    "credential",
)

_PLACEHOLDERS = (
    "changemechangeme",
    "examplepassword",
    "YOURAPIKEYHERE",
    "dummysecretvalue",
    "placeholdertoken",
    "insertkeyhere",
    "notarealpassword",
    "samplesecret",
)


def _prose(rng: random.Random, n: int) -> str:
    return " ".join(rng.choice(_WORDS) for _ in range(n))


def _hex(rng: random.Random, n: int) -> str:
    return "".join(rng.choice("0123456789abcdef") for _ in range(n))


def _uuid(rng: random.Random) -> str:
    return "-".join(_hex(rng, k) for k in (8, 4, 4, 4, 12))


def _secret_value(rng: random.Random, length: int) -> str:
    # Mixed-case alphanumeric, forced to contain upper+lower+digit so the
    # commit-hash cleaning rule can never swallow it.
    chars = [rng.choice(string.ascii_letters + string.digits) for _ in range(length - 3)]
    chars += [rng.choice(string.ascii_uppercase), rng.choice(string.ascii_lowercase),
              rng.choice(string.digits)]
    rng.shuffle(chars)
    return "".join(chars)


def _noise_snippets(rng: random.Random) -> list[str]:
    """One generator per noise family the cleaning rules target."""
    return [
        'the "config" value is \'quoted\' here',
        f"drwx 2 user group 4096 Jan {rng.randint(1, 28)} {_hex(rng, 4)} build",
        "```shell\nmake install\nmake test\n```",
        '``` shell \n"echo done"\n ```',
        "<details><summary> Saved game </summary>\n\n```" + _hex(rng, 24) + "```",
        f"org.example.{rng.choice(['core', 'util', 'net'])}.Main",
        f"at com.example.app.Main.run(Main.java:{rng.randint(10, 999)})",
        f"https://docs.example.com/page#{_hex(rng, 8)}",
        f"http://cdn.example.org/asset{rng.randint(1, 99)}",
        f"commit id: {_hex(rng, 40)}",
        f"/usr/local/lib/app{rng.randint(1, 9)}/run.log",
        f"/opt/app-{rng.randint(1, 9)}/bin",
        f"sha256: {_hex(rng, 64)}",
        f"git-tree-sha1 = {_hex(rng, 40)}",
        f"build-id: {_hex(rng, 16)}",
        f"{_hex(rng, 8)}, {_hex(rng, 8)}, {_hex(rng, 8)}",
        f"GUIDs: {_uuid(rng)} {_uuid(rng)} {_uuid(rng)}",
        f"<event-{_hex(rng, 6)}>",
        f"id: {_uuid(rng)}",
        f"address: 0x{_hex(rng, 8)}",
        f"Screenshot_{rng.randint(2019, 2025)}_{rng.randint(10, 12)}_{rng.randint(10, 28)}_{rng.randint(10, 23)}_{rng.randint(10, 59)}",
    ]


def _plant_secret(rng: random.Random) -> tuple[str, str]:
    """Returns (line, secret_value)."""
    style = rng.randrange(3)
    if style == 0:
        value = "AKIA" + "".join(
            rng.choice(string.ascii_uppercase + string.digits) for _ in range(16)
        )
        return f"it broke with {value} in the env", value
    if style == 1:
        value = "ghp_" + _secret_value(rng, 36)
        return f"I used {value} for the api call", value
    key = rng.choice(_SECRET_KEYS)
    value = _secret_value(rng, rng.randint(28, 40))
    sep = rng.choice(["=", ": ", " = "])
    return f"{key}{sep}{value}", value


def _plant_decoy(rng: random.Random) -> str:
    key = rng.choice(_SECRET_KEYS)
    kind = rng.randrange(3)
    if kind == 0:
        value = "x" * rng.randint(12, 32)
    elif kind == 1:
        value = rng.choice(["5fS6", "ab12", "Zk9"]) + "x" * rng.randint(10, 24) + "f0w"
    else:
        value = rng.choice(_PLACEHOLDERS)
    sep = rng.choice(["=", ": ", " = "])
    return f"{key}{sep}{value}"


@dataclass
class SyntheticCorpus:
    reports: list[IssueReport]
    planted: dict[str, set[str]] = field(default_factory=dict)

    @property
    def secret_count(self) -> int:
        return sum(len(v) for v in self.planted.values())

    def label(self, candidate: CandidateSecret) -> bool:
        """True iff the candidate text is a planted secret of its report."""
        return candidate.text in self.planted.get(candidate.report_id, set())


def generate_corpus(
    n_reports: int = 450,
    secret_probability: float = 0.22,
    seed: int = 0,
) -> SyntheticCorpus:
    """Generate a corpus with noise from every cleaning-rule family."""
    rng = random.Random(seed)
    reports = []
    planted: dict[str, set[str]] = {}
    for i in range(n_reports):
        rid = f"synth-{i}"
        parts = [_prose(rng, rng.randint(8, 20))]
        snippets = _noise_snippets(rng)
        for snippet in rng.sample(snippets, rng.randint(1, 3)):
            parts.append(snippet)
            parts.append(_prose(rng, rng.randint(4, 12)))
        secrets = set()
        if rng.random() < secret_probability:
            line, value = _plant_secret(rng)
            parts.append(line)
            parts.append(_prose(rng, rng.randint(3, 8)))
            secrets.add(value)
        for _ in range(rng.randint(1, 2)):
            parts.append(_plant_decoy(rng))
            parts.append(_prose(rng, rng.randint(3, 8)))
        rng.shuffle(parts)
        reports.append(
            IssueReport(
                id=rid,
                title=_prose(rng, rng.randint(3, 8)),
                body="\n".join(parts),
                category="bug",
            )
        )
        planted[rid] = secrets
    return SyntheticCorpus(reports=reports, planted=planted)
