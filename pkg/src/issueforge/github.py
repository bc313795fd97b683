"""REST client that materializes repositories, issues, and issue templates
into the corpus-directory schema.

Pagination runs until exhaustion, pull requests are dropped, missing repos are
logged and skipped, and throttling/backoff keeps within a requests-per-hour
budget. Output files are rewritten from scratch and deterministically sorted,
so re-running refreshes the corpus in place.
"""

from __future__ import annotations

import base64
import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable

import requests

from .ingestion import Corpus, RawIssue, RepoRecord, TemplateFile, write_corpus

logger = logging.getLogger(__name__)

PER_PAGE = 100
TEMPLATE_DIR = ".github/ISSUE_TEMPLATE"
TEMPLATE_EXTENSIONS = (".md", ".yml", ".yaml")


class AuthFailure(Exception):
    pass


class RateLimited(Exception):
    pass


class NotFound(Exception):
    pass


class _RateGate:
    """Serializes request starts to at most ``per_hour`` per hour."""

    def __init__(self, per_hour: int, sleeper: Callable[[float], None]):
        self._interval = 3600.0 / per_hour if per_hour > 0 else 0.0
        self._sleeper = sleeper
        self._lock = threading.Lock()
        self._next_allowed = 0.0

    def wait(self) -> None:
        if self._interval <= 0:
            return
        with self._lock:
            now = time.monotonic()
            delay = self._next_allowed - now
            self._next_allowed = max(now, self._next_allowed) + self._interval
        if delay > 0:
            self._sleeper(delay)


class Client:
    def __init__(
        self,
        base_url: str = "https://api.github.com",
        token: str | None = None,
        rate_limit: int = 5000,
        max_retries: int = 5,
        session: requests.Session | None = None,
        sleeper: Callable[[float], None] = time.sleep,
    ):
        self.base_url = base_url.rstrip("/")
        self.session = session or requests.Session()
        self.max_retries = max_retries
        self.sleeper = sleeper
        self.gate = _RateGate(rate_limit, sleeper)
        self.headers = {"Accept": "application/vnd.github+json"}
        if token:
            self.headers["Authorization"] = f"Bearer {token}"

    def get(self, path: str, params: dict | None = None) -> requests.Response:
        url = f"{self.base_url}{path}"
        backoff = 1.0
        for attempt in range(self.max_retries + 1):
            self.gate.wait()
            response = self.session.get(url, params=params, headers=self.headers, timeout=30)
            if response.status_code == 401:
                raise AuthFailure(f"authentication failed for {url}")
            if response.status_code == 404:
                raise NotFound(url)
            if response.status_code in (403, 429):
                if attempt == self.max_retries:
                    raise RateLimited(f"rate limited after {attempt} retries: {url}")
                retry_after = response.headers.get("Retry-After")
                delay = float(retry_after) if retry_after else backoff
                logger.warning("rate limited on %s, retrying in %.1fs", url, delay)
                self.sleeper(delay)
                backoff *= 2
                continue
            response.raise_for_status()
            return response
        raise RateLimited(url)

    def get_json(self, path: str, params: dict | None = None):
        return self.get(path, params=params).json()

    def paginate(self, path: str, params: dict | None = None) -> list:
        """Fetch every page of a list endpoint until exhaustion."""
        items: list = []
        page = 1
        while True:
            page_params = dict(params or {})
            page_params.update({"per_page": PER_PAGE, "page": page})
            batch = self.get_json(path, params=page_params)
            if not batch:
                break
            items.extend(batch)
            if len(batch) < PER_PAGE:
                break
            page += 1
        return items


def _decode_content(payload: dict) -> str:
    content = payload.get("content", "")
    if payload.get("encoding") == "base64" or content and " " not in content:
        try:
            return base64.b64decode(content).decode("utf-8", errors="replace")
        except Exception:
            return content
    return content


def _harvest_repo(client: Client, full_name: str) -> tuple[RepoRecord, list[RawIssue], list[TemplateFile]] | None:
    try:
        repo = client.get_json(f"/repos/{full_name}")
    except NotFound:
        logger.warning("repo not found, skipped: %s", full_name)
        return None
    repo_id = str(repo["id"])

    contributors = client.paginate(f"/repos/{full_name}/contributors")
    try:
        readme_text = _decode_content(client.get_json(f"/repos/{full_name}/readme"))
    except NotFound:
        readme_text = None

    issues: list[RawIssue] = []
    for item in client.paginate(f"/repos/{full_name}/issues", params={"state": "all"}):
        if "pull_request" in item:
            continue
        issues.append(
            RawIssue(
                issue_id=str(item["id"]),
                repo_id=repo_id,
                title=item.get("title") or "",
                body=item.get("body") or "",
                label_names=tuple(label["name"] for label in item.get("labels", [])),
                created_at=item.get("created_at") or "",
            )
        )

    templates: list[TemplateFile] = []
    try:
        listing = client.get_json(f"/repos/{full_name}/contents/{TEMPLATE_DIR}")
    except NotFound:
        listing = []
    for entry in listing:
        name = entry.get("name", "")
        if entry.get("type") != "file" or not name.endswith(TEMPLATE_EXTENSIONS):
            continue
        try:
            payload = client.get_json(f"/repos/{full_name}/contents/{TEMPLATE_DIR}/{name}")
        except NotFound:
            continue
        templates.append(
            TemplateFile(
                repo_id=repo_id,
                path=f"{TEMPLATE_DIR}/{name}",
                raw_text=_decode_content(payload),
            )
        )

    record = RepoRecord(
        repo_id=repo_id,
        full_name=full_name,
        contributors=len(contributors),
        stars=int(repo.get("stargazers_count", 0)),
        readme_text=readme_text,
        about_text=repo.get("description"),
    )
    return record, issues, templates


def fetch_remote(
    repo_list: list[str],
    out_dir: Path | str,
    token: str | None = None,
    rate_limit: int = 5000,
    parallel: int = 4,
    base_url: str = "https://api.github.com",
    session: requests.Session | None = None,
    sleeper: Callable[[float], None] = time.sleep,
    max_retries: int = 5,
) -> Path:
    """Harvest ``repo_list`` into a corpus directory. Unknown repos are skipped."""
    client = Client(
        base_url=base_url,
        token=token,
        rate_limit=rate_limit,
        max_retries=max_retries,
        session=session,
        sleeper=sleeper,
    )
    corpus = Corpus()
    workers = max(1, min(parallel, max(len(repo_list), 1)))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda name: _harvest_repo(client, name), repo_list))
    for result in results:
        if result is None:
            continue
        record, issues, templates = result
        corpus.repos[record.repo_id] = record
        corpus.issues.extend(issues)
        corpus.templates.extend(templates)
    # write_corpus sorts by (repo_id, issue_id), keeping output deterministic
    return write_corpus(corpus, out_dir)
