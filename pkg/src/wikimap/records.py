"""Immutable record types shared by ingestion, storage and analysis."""
from __future__ import annotations

import ipaddress
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional

MAIN = "Main"
CATEGORY = "Category"

# Earliest plausible edit: the wiki went live on 2001-01-15.
WIKI_EPOCH = datetime(2001, 1, 15, tzinfo=timezone.utc)

REGISTERED = "registered"
ANONYMOUS = "anonymous"


def is_ip_literal(text: str) -> bool:
    try:
        ipaddress.ip_address(text)
    except ValueError:
        return False
    return True


@dataclass(frozen=True, order=True)
class AuthorRef:
    """The last editor of a page: a username or, for anonymous edits, an IP."""

    name: str
    kind: str = REGISTERED

    def __post_init__(self):
        if self.kind == REGISTERED:
            if not self.name:
                raise ValueError("registered username must be non-empty")
        elif self.kind == ANONYMOUS:
            if not is_ip_literal(self.name):
                raise ValueError(f"not an IP literal: {self.name!r}")
        else:
            raise ValueError(f"unknown author kind {self.kind!r}")

    @classmethod
    def registered(cls, username: str) -> "AuthorRef":
        return cls(username, REGISTERED)

    @classmethod
    def anonymous(cls, ip: str) -> "AuthorRef":
        return cls(ip, ANONYMOUS)

    @property
    def is_anonymous(self) -> bool:
        return self.kind == ANONYMOUS

    @property
    def key(self) -> tuple[str, str]:
        """Sort key used for deterministic tie-breaks."""
        return (self.name, self.kind)

    def __str__(self):
        return self.name


UNKNOWN_AUTHOR = AuthorRef.anonymous("0.0.0.0")


@dataclass(frozen=True)
class PageRecord:
    page_id: int
    title: str
    namespace: str
    last_edit: datetime
    last_editor: AuthorRef
    text_bytes: int = 0
    word_count: int = 0
    is_redirect: bool = False

    @property
    def is_article(self) -> bool:
        return self.namespace == MAIN

    @property
    def is_category(self) -> bool:
        return self.namespace == CATEGORY

    def check(self, dump_time: Optional[datetime] = None) -> None:
        """Raise ValueError if the record violates its invariants."""
        if self.page_id <= 0:
            raise ValueError(f"page_id must be positive, got {self.page_id}")
        if not self.title:
            raise ValueError("empty title")
        if self.last_edit.tzinfo is None:
            raise ValueError("last_edit must be timezone-aware")
        if self.last_edit < WIKI_EPOCH:
            raise ValueError(f"last_edit {self.last_edit} predates the wiki")
        if dump_time is not None and self.last_edit > dump_time:
            raise ValueError(f"last_edit {self.last_edit} after dump time {dump_time}")
        if self.text_bytes < 0 or self.word_count < 0:
            raise ValueError("negative size")


@dataclass(frozen=True)
class CategoryAssignment:
    member_page_id: int
    category_title: str
    sort_key: str = ""
    link_timestamp: Optional[datetime] = None


def format_timestamp(ts: datetime) -> str:
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_timestamp(text: str) -> datetime:
    """Parse the ISO-8601 ``YYYY-MM-DDTHH:MM:SSZ`` form used by exports."""
    ts = datetime.strptime(text.strip(), "%Y-%m-%dT%H:%M:%SZ")
    return ts.replace(tzinfo=timezone.utc)


def epoch_seconds(ts: datetime) -> int:
    return int(ts.timestamp())


def dedupe_assignments(assignments):
    """Drop repeated (member, category) pairs, keeping the first occurrence."""
    seen = set()
    out = []
    for a in assignments:
        key = (a.member_page_id, a.category_title)
        if key in seen:
            continue
        seen.add(key)
        out.append(a)
    return out
