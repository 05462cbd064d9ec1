"""DOI metadata resolution against a Crossref-style works endpoint.

Supports a fully offline fixture mode (one JSON response document per DOI,
filename = DOI with ``/`` replaced by ``_``) so pipelines and tests run
without network access. Online mode paces requests, retries transient
failures with exponential backoff, and never retries hard failures.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable, Iterator
from urllib.parse import quote

import requests

from .errors import NotADoi
from .ingest import normalize_doi
from .model import ArticleRecord, Corpus

log = logging.getLogger(__name__)

CROSSREF_BASE_URL = "https://api.crossref.org"

STATUSES = ("resolved", "failed", "skipped", "cached")
FAILURE_REASONS = ("not-found", "timeout", "malformed-response", "rate-limited-gave-up")
RETRYABLE_HTTP = (429, 503)


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class ResolverPolicy:
    """Knobs for one resolution session; offline mode requires a fixture dir."""

    rate_limit: float = 1.0  # requests per second
    max_retries: int = 2
    timeout: float = 30.0
    contact_email: str | None = None
    offline: bool = False
    fixture_dir: Path | None = None

    def __post_init__(self) -> None:
        if self.rate_limit <= 0:
            raise ValueError(f"rate_limit must be positive, got {self.rate_limit}")
        if self.max_retries < 0:
            raise ValueError(f"max_retries must be >= 0, got {self.max_retries}")
        if self.timeout <= 0:
            raise ValueError(f"timeout must be positive, got {self.timeout}")
        if self.offline and self.fixture_dir is None:
            raise ValueError("offline mode requires a fixture_dir")
        if self.fixture_dir is not None:
            object.__setattr__(self, "fixture_dir", Path(self.fixture_dir))


@dataclass(frozen=True)
class ResolutionOutcome:
    """One ledger row; doi holds raw identifier text for skipped seeds."""

    doi: str
    status: str
    error_reason: str | None = None
    attempted_at: str = ""
    source: str = ""

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "failed" and not self.error_reason:
            raise ValueError("failed outcomes need an error_reason")


@dataclass(frozen=True)
class ResolutionFailure:
    doi: str
    reason: str
    detail: str = ""

    def __post_init__(self) -> None:
        if self.reason not in FAILURE_REASONS:
            raise ValueError(f"unknown failure reason {self.reason!r}")

    def as_error_reason(self) -> str:
        return f"{self.reason}: {self.detail}" if self.detail else self.reason


class ResolutionLog:
    """Append-only ledger of resolution attempts; entries are never removed."""

    def __init__(self, outcomes: Iterable[ResolutionOutcome] = ()):
        self._outcomes: list[ResolutionOutcome] = list(outcomes)

    def append(self, outcome: ResolutionOutcome) -> None:
        self._outcomes.append(outcome)

    def extend(self, outcomes: Iterable[ResolutionOutcome]) -> None:
        self._outcomes.extend(outcomes)

    @property
    def outcomes(self) -> tuple[ResolutionOutcome, ...]:
        return tuple(self._outcomes)

    def count(self, status: str) -> int:
        return sum(1 for outcome in self._outcomes if outcome.status == status)

    def __len__(self) -> int:
        return len(self._outcomes)

    def __iter__(self) -> Iterator[ResolutionOutcome]:
        return iter(self._outcomes)


class RateLimiter:
    """Spaces calls at least 1/rate seconds apart (single-flight pacing)."""

    def __init__(
        self,
        rate_per_second: float,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self._interval = 1.0 / rate_per_second
        self._clock = clock
        self._sleep = sleep
        self._last: float | None = None

    def wait(self) -> None:
        now = self._clock()
        if self._last is not None:
            remaining = self._last + self._interval - now
            if remaining > 0:
                self._sleep(remaining)
                now = self._clock()
        self._last = now


def _parse_year(message: dict) -> int | None:
    for key in ("issued", "published-print", "published-online"):
        block = message.get(key)
        if not isinstance(block, dict):
            continue
        parts = block.get("date-parts")
        if (
            isinstance(parts, list)
            and parts
            and isinstance(parts[0], list)
            and parts[0]
            and isinstance(parts[0][0], int)
        ):
            return parts[0][0]
    return None


def _parse_authors(message: dict) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """(author names, affiliations); first affiliation name per author."""
    authors: list[str] = []
    affiliations: list[str] = []
    raw = message.get("author")
    if not isinstance(raw, list):
        return (), ()
    for person in raw:
        if not isinstance(person, dict):
            continue
        given = person.get("given") or ""
        family = person.get("family") or ""
        name = " ".join(part for part in (str(given).strip(), str(family).strip()) if part)
        if not name:
            name = str(person.get("name") or "").strip()
        if not name:
            continue
        authors.append(name)
        affiliation_list = person.get("affiliation")
        if isinstance(affiliation_list, list) and affiliation_list:
            first = affiliation_list[0]
            if isinstance(first, dict):
                place = str(first.get("name") or "").strip()
                if place:
                    affiliations.append(place)
    return tuple(authors), tuple(affiliations)


def _parse_references(message: dict) -> tuple[str, ...]:
    refs: list[str] = []
    raw = message.get("reference")
    if not isinstance(raw, list):
        return ()
    for item in raw:
        if not isinstance(item, dict):
            continue
        candidate = item.get("DOI") or item.get("doi")
        if not isinstance(candidate, str):
            continue
        try:
            refs.append(normalize_doi(candidate))
        except NotADoi:
            continue
    return tuple(refs)


def record_from_crossref(message: dict, doi: str, depth: int) -> ArticleRecord:
    """Map a Crossref-style work message onto an ArticleRecord, leniently.

    Missing or malformed fields become empty values; the requested DOI is
    authoritative regardless of what the message claims.
    """
    titles = message.get("title")
    title = None
    if isinstance(titles, list) and titles and isinstance(titles[0], str):
        title = titles[0].strip() or None
    elif isinstance(titles, str):
        title = titles.strip() or None
    authors, affiliations = _parse_authors(message)
    subjects_raw = message.get("subject")
    subjects = (
        tuple(s.strip() for s in subjects_raw if isinstance(s, str) and s.strip())
        if isinstance(subjects_raw, list)
        else ()
    )
    url = message.get("URL") or message.get("url")
    return ArticleRecord(
        doi=doi,
        title=title,
        authors=authors,
        year=_parse_year(message),
        url=url if isinstance(url, str) and url.strip() else None,
        subjects=subjects,
        affiliations=affiliations,
        references=_parse_references(message),
        depth=depth,
        resolved=True,
    )


def fixture_filename(doi: str) -> str:
    return doi.replace("/", "_") + ".json"


class MetadataResolver:
    """Resolves DOIs under one policy, sharing pacing and the HTTP session."""

    def __init__(
        self,
        policy: ResolverPolicy,
        base_url: str = CROSSREF_BASE_URL,
        session: requests.Session | None = None,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.policy = policy
        self._base_url = base_url.rstrip("/")
        self._session = session
        self._limiter = RateLimiter(policy.rate_limit, clock, sleep)
        self._sleep = sleep

    @property
    def source_name(self) -> str:
        return "fixture" if self.policy.offline else "crossref"

    def resolve(self, doi: str, depth: int = 0) -> ArticleRecord | ResolutionFailure:
        if self.policy.offline:
            return self._resolve_fixture(doi, depth)
        return self._resolve_http(doi, depth)

    def _resolve_fixture(self, doi: str, depth: int) -> ArticleRecord | ResolutionFailure:
        path = self.policy.fixture_dir / fixture_filename(doi)
        if not path.exists():
            return ResolutionFailure(doi, "not-found", f"no fixture {path.name}")
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            return ResolutionFailure(doi, "malformed-response", f"fixture unreadable: {exc}")
        return self._record_from_document(document, doi, depth)

    def _record_from_document(
        self, document: object, doi: str, depth: int
    ) -> ArticleRecord | ResolutionFailure:
        if not isinstance(document, dict):
            return ResolutionFailure(doi, "malformed-response", "document is not an object")
        message = document.get("message", document)
        if not isinstance(message, dict):
            return ResolutionFailure(doi, "malformed-response", "message is not an object")
        return record_from_crossref(message, doi, depth)

    def _http_session(self) -> requests.Session:
        if self._session is None:
            from . import __version__

            session = requests.Session()
            agent = f"citemap/{__version__}"
            if self.policy.contact_email:
                agent += f" (mailto:{self.policy.contact_email})"
            session.headers["User-Agent"] = agent
            self._session = session
        return self._session

    def _works_url(self, doi: str) -> str:
        return f"{self._base_url}/works/{quote(doi, safe='')}"

    def _resolve_http(self, doi: str, depth: int) -> ArticleRecord | ResolutionFailure:
        failure = ResolutionFailure(doi, "timeout", "no attempt made")
        backoff = 0.5
        for attempt in range(self.policy.max_retries + 1):
            self._limiter.wait()
            try:
                response = self._http_session().get(
                    self._works_url(doi), timeout=self.policy.timeout
                )
            except requests.Timeout:
                failure = ResolutionFailure(doi, "timeout", "request timed out")
            except requests.RequestException as exc:
                failure = ResolutionFailure(doi, "timeout", f"network error: {exc}")
            else:
                if response.status_code == 200:
                    try:
                        document = response.json()
                    except ValueError:
                        return ResolutionFailure(doi, "malformed-response", "body is not JSON")
                    return self._record_from_document(document, doi, depth)
                if response.status_code == 404:
                    return ResolutionFailure(doi, "not-found", "HTTP 404")
                if response.status_code in RETRYABLE_HTTP:
                    failure = ResolutionFailure(
                        doi, "rate-limited-gave-up", f"HTTP {response.status_code}"
                    )
                else:
                    return ResolutionFailure(
                        doi, "malformed-response", f"HTTP {response.status_code}"
                    )
            if attempt < self.policy.max_retries:
                log.debug("retrying %s after %s (%s)", doi, failure.reason, failure.detail)
                self._sleep(backoff)
                backoff *= 2
        return failure


def resolve_metadata(
    doi: str, policy: ResolverPolicy, depth: int = 0
) -> ArticleRecord | ResolutionFailure:
    """One-shot resolution; batch work should share a MetadataResolver."""
    return MetadataResolver(policy).resolve(doi, depth)


def resolve_batch(
    dois: Iterable[str],
    policy: ResolverPolicy,
    cache: Corpus | None = None,
    resolver: MetadataResolver | None = None,
) -> tuple[list[ArticleRecord], ResolutionLog]:
    """Resolve a DOI sequence with exactly one outcome per input entry.

    Repeats within the batch and hits on already-resolved cache records log
    as ``cached`` without a new request; records holds each newly resolved
    article once.
    """
    resolver = resolver or MetadataResolver(policy)
    records: list[ArticleRecord] = []
    resolution_log = ResolutionLog()
    seen_now: set[str] = set()
    for doi in dois:
        hit = doi in seen_now
        if not hit and cache is not None:
            prior = cache.articles.get(doi)
            hit = prior is not None and prior.resolved
        if hit:
            resolution_log.append(
                ResolutionOutcome(doi, "cached", attempted_at=utc_now(), source="cache")
            )
            continue
        result = resolver.resolve(doi)
        if isinstance(result, ArticleRecord):
            seen_now.add(doi)
            records.append(result)
            resolution_log.append(
                ResolutionOutcome(
                    doi, "resolved", attempted_at=utc_now(), source=resolver.source_name
                )
            )
        else:
            resolution_log.append(
                ResolutionOutcome(
                    doi,
                    "failed",
                    error_reason=result.as_error_reason(),
                    attempted_at=utc_now(),
                    source=resolver.source_name,
                )
            )
    return records, resolution_log
