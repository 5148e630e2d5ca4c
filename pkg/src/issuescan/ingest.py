"""Load and persist issue-report corpora and labeled candidate datasets.

Two stable on-disk formats are supported for report corpora: CSV with
RFC-4180 quoting (columns ``label,id,title,body,author_association``,
extra columns ignored) and JSON-Lines (one object per line).  All text is
Unicode; spans everywhere in this package are code-point offsets.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

CATEGORIES = ("bug", "feature", "question", "documentation")

CSV_COLUMNS = ("label", "id", "title", "body", "author_association")


class IngestError(ValueError):
    """Raised for unreadable files, missing columns, or malformed rows."""


@dataclass
class IssueReport:
    """One tracker issue: id, title, raw body, optional category label."""

    id: str
    title: str = ""
    body: str = ""
    category: Optional[str] = None
    author_association: Optional[str] = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("report id must be non-empty")
        if self.category is not None and self.category not in CATEGORIES:
            raise ValueError(
                f"category must be one of {CATEGORIES}, got {self.category!r}"
            )


@dataclass
class LabeledCandidate:
    """A pattern match in cleaned text with a human-assigned label."""

    report_id: str
    candidate_text: str
    span: tuple[int, int]
    pattern_name: str
    label: bool

    def __post_init__(self):
        start, end = self.span
        if not start < end:
            raise ValueError(f"span start must be < end, got {self.span}")
        if len(self.candidate_text) != end - start:
            raise ValueError(
                "candidate_text length %d does not match span %s"
                % (len(self.candidate_text), self.span)
            )


def _report_from_row(row: dict, rownum: int) -> IssueReport:
    rid = row.get("id")
    if rid is None or rid == "":
        raise IngestError(f"row {rownum}: missing or empty id")
    try:
        return IssueReport(
            id=str(rid),
            title=row.get("title") or "",
            body=row.get("body") or "",
            category=row.get("label") or None,
            author_association=row.get("author_association") or None,
        )
    except ValueError as exc:
        raise IngestError(f"row {rownum}: {exc}") from exc


def load_reports(path, format: str = "csv") -> list[IssueReport]:
    """Load issue reports from ``path`` in the declared format.

    CSV files must carry a header row containing at least ``id`` and
    ``body``.  Order is preserved; missing optional columns yield absent
    fields.
    """
    path = Path(path)
    if format == "csv":
        return _load_csv(path)
    if format == "jsonl":
        return _load_jsonl(path)
    raise IngestError(f"unknown format {format!r} (expected csv or jsonl)")


def _load_csv(path: Path) -> list[IssueReport]:
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for required in ("id", "body"):
            if required not in header:
                raise IngestError(f"{path}: missing required column {required!r}")
        return [_report_from_row(row, i) for i, row in enumerate(reader, start=2)]


def _load_jsonl(path: Path) -> list[IssueReport]:
    reports = []
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    with fh:
        for i, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"row {i}: invalid JSON: {exc}") from exc
            if not isinstance(obj, dict):
                raise IngestError(f"row {i}: expected an object")
            # JSONL uses the field names directly, not the CSV aliases.
            rid = obj.get("id")
            if rid is None or rid == "":
                raise IngestError(f"row {i}: missing or empty id")
            try:
                reports.append(
                    IssueReport(
                        id=str(rid),
                        title=obj.get("title") or "",
                        body=obj.get("body") or "",
                        category=obj.get("category"),
                        author_association=obj.get("author_association"),
                    )
                )
            except ValueError as exc:
                raise IngestError(f"row {i}: {exc}") from exc
    return reports


def write_reports(reports: list[IssueReport], path, format: str = "csv") -> None:
    """Write reports so that :func:`load_reports` round-trips them exactly."""
    path = Path(path)
    if format == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for r in reports:
                writer.writerow(
                    [
                        r.category or "",
                        r.id,
                        r.title,
                        r.body,
                        r.author_association or "",
                    ]
                )
    elif format == "jsonl":
        with open(path, "w", encoding="utf-8") as fh:
            for r in reports:
                obj = {"id": r.id, "title": r.title, "body": r.body}
                if r.category is not None:
                    obj["category"] = r.category
                if r.author_association is not None:
                    obj["author_association"] = r.author_association
                fh.write(json.dumps(obj, ensure_ascii=False) + "\n")
    else:
        raise IngestError(f"unknown format {format!r} (expected csv or jsonl)")
