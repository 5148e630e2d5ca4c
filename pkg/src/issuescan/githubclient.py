"""Read-only crawler for issue reports on a code-hosting REST API.

Fetches 100 issues per page, all states, newest first, following
link-header pagination and skipping pull requests (the issues endpoint
interleaves both).  The auth token comes from the ``SCANNER_API_TOKEN``
environment variable or an explicit argument; requests are anonymous
when absent, which is fine for small desk-scale crawls.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Optional

import requests

from .ingest import IssueReport

TOKEN_ENV_VAR = "SCANNER_API_TOKEN"
DEFAULT_API_BASE = "https://api.github.com"
PER_PAGE = 100


class CrawlError(RuntimeError):
    """Raised for missing repos, malformed payloads, or network failures."""


class RateLimitError(CrawlError):
    """Rate limit hit; carries the advertised reset time and a resume URL."""

    def __init__(self, reset_at: Optional[float], resume_url: str):
        self.reset_at = reset_at
        self.resume_url = resume_url
        when = f"resets at epoch {reset_at}" if reset_at else "reset time unknown"
        super().__init__(f"rate limited ({when}); resume from {resume_url}")


@dataclass(frozen=True)
class RepoRef:
    owner: str
    name: str

    def __post_init__(self):
        for part in (self.owner, self.name):
            if not part or "/" in part:
                raise ValueError(f"bad repo component {part!r}")

    @classmethod
    def parse(cls, spec: str) -> "RepoRef":
        owner, _, name = spec.partition("/")
        return cls(owner=owner, name=name)


def _issue_to_report(obj: dict) -> IssueReport:
    return IssueReport(
        id=str(obj["number"]),
        title=obj.get("title") or "",
        body=obj.get("body") or "",
    )


def crawl_issues(
    repo: RepoRef,
    auth_token: Optional[str] = None,
    max_issues: int = 1000,
    api_base: str = DEFAULT_API_BASE,
    on_rate_limit: str = "abort",
    timeout: float = 30.0,
    session: Optional[requests.Session] = None,
) -> list[IssueReport]:
    """Crawl up to ``max_issues`` issues, page order preserved.

    ``on_rate_limit`` is ``"abort"`` (raise :class:`RateLimitError` with
    a resumable cursor) or ``"wait"`` (sleep until the advertised reset
    and retry the same page).
    """
    if max_issues <= 0:
        raise ValueError(f"max_issues must be > 0, got {max_issues}")
    if on_rate_limit not in ("abort", "wait"):
        raise ValueError(f"on_rate_limit must be abort or wait, got {on_rate_limit!r}")

    token = auth_token or os.environ.get(TOKEN_ENV_VAR)
    sess = session or requests.Session()
    headers = {"Accept": "application/vnd.github+json"}
    if token:
        headers["Authorization"] = f"Bearer {token}"

    url = f"{api_base}/repos/{repo.owner}/{repo.name}/issues"
    params = {
        "state": "all",
        "per_page": PER_PAGE,
        "sort": "created",
        "direction": "desc",
    }
    reports: list[IssueReport] = []
    while url and len(reports) < max_issues:
        try:
            resp = sess.get(url, headers=headers, params=params, timeout=timeout)
        except requests.RequestException as exc:
            raise CrawlError(f"network failure fetching {url}: {exc}") from exc
        if resp.status_code == 404:
            raise CrawlError(f"repository {repo.owner}/{repo.name} not found")
        if resp.status_code == 403 and resp.headers.get("X-RateLimit-Remaining") == "0":
            reset_raw = resp.headers.get("X-RateLimit-Reset")
            reset_at = float(reset_raw) if reset_raw else None
            if on_rate_limit == "wait":
                delay = max(0.0, (reset_at or time.time()) - time.time())
                time.sleep(delay)
                continue  # retry the same page
            raise RateLimitError(reset_at, resume_url=url)
        if resp.status_code != 200:
            raise CrawlError(f"unexpected HTTP {resp.status_code} fetching {url}")
        try:
            page = resp.json()
        except ValueError as exc:
            raise CrawlError(f"malformed payload from {url}") from exc
        if not isinstance(page, list):
            raise CrawlError(f"malformed payload from {url}: expected a list")
        for obj in page:
            if not isinstance(obj, dict) or "number" not in obj:
                raise CrawlError(f"malformed issue entry in page from {url}")
            if "pull_request" in obj:
                continue
            reports.append(_issue_to_report(obj))
            if len(reports) >= max_issues:
                break
        url = resp.links.get("next", {}).get("url")
        params = {}  # the next link already carries the query string
    return reports
