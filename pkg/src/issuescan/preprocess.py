"""Noise removal for issue-report bodies.

Issue bodies are full of URLs, commit hashes, file paths, stack traces,
shell blocks and assorted IDs whose high-entropy substrings look exactly
like secrets.  The built-in rule set strips these before scanning.  Each
rule is applied once, in rank order, and every match is replaced with the
empty string.  The rules are deliberately reproduced as written, greedy
over-matching included; corrections belong in alternate rule files.

Note on ordering: the two URL rules are ranked ahead of the dotted-token
package rule, which would otherwise eat URL hosts before the URL rules
see them.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

# (name, pattern) in application order.  The package rule must come after
# the URL rules; everything else keeps its published listing order.
_BUILTIN_RULES: list[tuple[str, str]] = [
    ("quotation_marks", r"""['"\\|]"""),
    (
        "directory_list",
        r"drwx[-\s]*\d+\s+\w+\s+\w+\s+\d+\s+\w+\s+\d+\s+[0-9a-fA-F-]+.*",
    ),
    ("shell_code", r"```shell([^`]+)```"),
    ("shell_code_quoted", r"``` shell \s*\"([^\"]*)\" \s*```"),
    (
        "saved_game",
        r"<details><summary> Saved game </summary>\n\n```(.*?)```",
    ),
    ("url_fragment", r"https?://[^\s#]+#[A-Za-z0-9\-\=\+]+"),
    (
        "url",
        r"http[s]?://(?:[a-zA-Z]|[0-9]|[$-_@.&+]|[!*\\(\\).]|(?:%[0-9a-fA-F][0-9a-fA-F]))+",
    ),
    ("packages", r"(\w+\.)+\w+"),
    ("java_stack_trace", r"at\s[\w.$]+\.([\w]+)\(([^:]+:\d+)\)"),
    ("commit_id", r"commit[ ]?(?:id)?[ ]?[:]?[ ]?([0-9a-f]{40})\b"),
    ("file_path", r"/[\w/. :-]+"),
    ("file_path_segments", r"(/[^/\s]+)+"),
    ("sha256", r"sha256\s*[:]?[=]?\s*[a-fA-F0-9]{64}"),
    ("git_tree_sha1", r"git-tree-sha1\s*=\s*[a-fA-F0-9]+"),
    ("build_id", r"build-id\s*[:]?[=]?\s*([a-fA-F0-9]+)"),
    (
        "uuid_list",
        r"([0-9a-fA-F-]+\s*,\s*[0-9a-fA-F-]+\s*,\s*[0-9a-fA-F-]+)",
    ),
    (
        "guid_list",
        r"GUIDs:\s+([0-9a-fA-F-]+\s+[0-9a-fA-F-]+\s+[0-9a-fA-F-]+)",
    ),
    ("event_id", r"<([^>]+)>"),
    (
        "keyed_uuid",
        r"(?:UUID|GUID|version|id)[\\ =:\"'\s]*\b[a-fA-F0-9]{8}-[a-fA-F0-9]{4}-"
        r"[a-fA-F0-9]{4}-[a-fA-F0-9]{4}-[a-fA-F0-9]{12}\b",
    ),
    ("keyed_hex", r"(?:data|address|id)[\\=:\"'\s]*\b0x[0-9a-fA-F]+\b"),
    (
        "screenshot_name",
        r"Screenshot_(\d{4}[_-]\d{2}[_-]\d{2}[_-]\d{2}[_-]\d{2})",
    ),
]


class RuleError(ValueError):
    """Raised for non-compiling patterns or duplicate rule names."""


@dataclass(frozen=True)
class CleaningRule:
    """A single noise-removal rule: a named regex with an application rank."""

    name: str
    pattern: str
    order: int
    regex: re.Pattern = field(compare=False, repr=False, default=None)


@dataclass(frozen=True)
class Removal:
    rule_name: str
    removed: str
    span: tuple[int, int]  # relative to the text as it was when the rule ran


@dataclass
class CleanResult:
    cleaned: str
    removals: list[Removal]


def _compile_one(name: str, pattern: str, order: int) -> CleaningRule:
    try:
        regex = re.compile(pattern)
    except re.error as exc:
        raise RuleError(f"rule {name!r}: pattern does not compile: {exc}") from exc
    return CleaningRule(name=name, pattern=pattern, order=order, regex=regex)


def compile_rules(source=None) -> list[CleaningRule]:
    """Compile a rule set, built-in when ``source`` is None.

    A rule file is JSON-Lines of ``{"name", "pattern", "order"}``.  Rules
    come back in ascending rank; duplicate names and non-compiling
    patterns are errors.
    """
    if source is None:
        entries = [
            {"name": name, "pattern": pattern, "order": i}
            for i, (name, pattern) in enumerate(_BUILTIN_RULES)
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
                    raise RuleError(f"line {i}: invalid JSON: {exc}") from exc
                entries.append(obj)

    seen = set()
    rules = []
    for obj in entries:
        name = obj["name"]
        if name in seen:
            raise RuleError(f"duplicate rule name {name!r}")
        seen.add(name)
        rules.append(_compile_one(name, obj["pattern"], int(obj["order"])))
    return sorted(rules, key=lambda r: r.order)


def apply_rule(text: str, rule: CleaningRule) -> tuple[str, list[Removal]]:
    """Apply one rule once: delete every match, log what was removed."""
    removals = [
        Removal(rule.name, m.group(0), (m.start(), m.end()))
        for m in rule.regex.finditer(text)
        if m.end() > m.start()
    ]
    if not removals:
        return text, []
    pieces = []
    cursor = 0
    for rem in removals:
        pieces.append(text[cursor : rem.span[0]])
        cursor = rem.span[1]
    pieces.append(text[cursor:])
    return "".join(pieces), removals


def clean(body: str, rules: list[CleaningRule]) -> CleanResult:
    """Run every rule once, in rank order, deleting matches.

    Removal spans are recorded relative to the text as it existed when
    that rule ran.  Empty input cleans to empty output.
    """
    text = body
    all_removals: list[Removal] = []
    for rule in rules:
        text, removals = apply_rule(text, rule)
        all_removals.extend(removals)
    return CleanResult(cleaned=text, removals=all_removals)
