"""On-disk corpus snapshots: ``pages.tsv``, ``assignments.tsv``, ``meta.json``."""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Iterable, Optional

from .diagnostics import WarningLog
from .errors import ChecksumMismatch, SerializationError, SnapshotError, VersionMismatch
from .records import (
    AuthorRef,
    CategoryAssignment,
    PageRecord,
    dedupe_assignments,
    format_timestamp,
    parse_timestamp,
)

FORMAT_VERSION = 1

PAGE_COLUMNS = (
    "page_id", "namespace", "title", "last_edit", "editor_kind", "editor",
    "text_bytes", "word_count", "is_redirect",
)
ASSIGNMENT_COLUMNS = ("member_page_id", "category_title", "sort_key", "link_timestamp")

_UNESCAPE = re.compile(r"\\(.)", re.DOTALL)
_UNESCAPE_MAP = {"t": "\t", "n": "\n", "\\": "\\"}


def escape_field(text: str) -> str:
    return text.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def unescape_field(text: str) -> str:
    def sub(m):
        try:
            return _UNESCAPE_MAP[m.group(1)]
        except KeyError:
            raise SnapshotError(f"invalid escape \\{m.group(1)} in snapshot field") from None

    return _UNESCAPE.sub(sub, text)


@dataclass(frozen=True)
class CorpusSnapshot:
    pages: tuple = ()
    assignments: tuple = ()
    dump_time: Optional[datetime] = None
    sha256: Optional[str] = field(default=None, compare=False)

    @property
    def meta(self) -> dict:
        return {
            "dump_time": format_timestamp(self.dump_time) if self.dump_time else None,
            "pages": len(self.pages),
            "assignments": len(self.assignments),
            "version": FORMAT_VERSION,
        }


def build_snapshot(
    pages: Iterable[PageRecord],
    assignments: Iterable[CategoryAssignment],
    dump_time: Optional[datetime] = None,
    warnings: Optional[WarningLog] = None,
) -> CorpusSnapshot:
    """Collect parsed records, dropping duplicate page ids and assignment pairs.

    ``dump_time`` defaults to the latest last-edit time seen.
    """
    warnings = warnings if warnings is not None else WarningLog()
    seen = set()
    kept = []
    for page in pages:
        if page.page_id in seen:
            warnings.warn("duplicate_page_id", page.page_id)
            continue
        seen.add(page.page_id)
        kept.append(page)
    links = dedupe_assignments(assignments)
    if dump_time is None and kept:
        dump_time = max(p.last_edit for p in kept)
    return CorpusSnapshot(tuple(kept), tuple(links), dump_time)


def _page_line(p: PageRecord) -> str:
    return "\t".join((
        str(p.page_id),
        escape_field(p.namespace),
        escape_field(p.title),
        format_timestamp(p.last_edit),
        p.last_editor.kind,
        escape_field(p.last_editor.name),
        str(p.text_bytes),
        str(p.word_count),
        "1" if p.is_redirect else "0",
    ))


def _assignment_line(a: CategoryAssignment) -> str:
    return "\t".join((
        str(a.member_page_id),
        escape_field(a.category_title),
        escape_field(a.sort_key),
        format_timestamp(a.link_timestamp) if a.link_timestamp else "",
    ))


def _encode_table(header, lines) -> bytes:
    text = "\t".join(header) + "\n" + "".join(line + "\n" for line in lines)
    try:
        return text.encode("utf-8")
    except UnicodeEncodeError as exc:
        raise SerializationError(f"field not encodable as UTF-8: {exc}") from None


def _checksum(pages_bytes: bytes, assignments_bytes: bytes) -> str:
    h = hashlib.sha256()
    h.update(pages_bytes)
    h.update(assignments_bytes)
    return h.hexdigest()


def write_corpus(snapshot: CorpusSnapshot, path) -> dict:
    """Write ``snapshot`` into directory ``path``; returns a size summary."""
    path = Path(path)
    pages_bytes = _encode_table(PAGE_COLUMNS, map(_page_line, snapshot.pages))
    links_bytes = _encode_table(ASSIGNMENT_COLUMNS, map(_assignment_line, snapshot.assignments))
    meta = dict(snapshot.meta, sha256=_checksum(pages_bytes, links_bytes))
    meta_bytes = (json.dumps(meta, indent=2, sort_keys=True) + "\n").encode("utf-8")
    path.mkdir(parents=True, exist_ok=True)
    (path / "pages.tsv").write_bytes(pages_bytes)
    (path / "assignments.tsv").write_bytes(links_bytes)
    (path / "meta.json").write_bytes(meta_bytes)
    return {
        "pages": len(snapshot.pages),
        "assignments": len(snapshot.assignments),
        "bytes": len(pages_bytes) + len(links_bytes) + len(meta_bytes),
        "sha256": meta["sha256"],
    }


def _rows(data: bytes, header, name):
    lines = data.decode("utf-8").split("\n")
    if not lines or lines[0] != "\t".join(header):
        raise SnapshotError(f"{name}: unexpected header")
    if lines[-1] != "":
        raise SnapshotError(f"{name}: missing final newline")
    for lineno, line in enumerate(lines[1:-1], start=2):
        cells = line.split("\t")
        if len(cells) != len(header):
            raise SnapshotError(f"{name}:{lineno}: expected {len(header)} fields, got {len(cells)}")
        yield cells


def _parse_page(c) -> PageRecord:
    return PageRecord(
        page_id=int(c[0]),
        namespace=unescape_field(c[1]),
        title=unescape_field(c[2]),
        last_edit=parse_timestamp(c[3]),
        last_editor=AuthorRef(unescape_field(c[5]), c[4]),
        text_bytes=int(c[6]),
        word_count=int(c[7]),
        is_redirect=c[8] == "1",
    )


def _parse_assignment(c) -> CategoryAssignment:
    return CategoryAssignment(
        member_page_id=int(c[0]),
        category_title=unescape_field(c[1]),
        sort_key=unescape_field(c[2]),
        link_timestamp=parse_timestamp(c[3]) if c[3] else None,
    )


def read_corpus(path) -> CorpusSnapshot:
    path = Path(path)
    meta = json.loads((path / "meta.json").read_text(encoding="utf-8"))
    version = meta.get("version")
    if not isinstance(version, int) or version > FORMAT_VERSION:
        raise VersionMismatch(f"snapshot format version {version!r} is newer than {FORMAT_VERSION}")
    pages_bytes = (path / "pages.tsv").read_bytes()
    links_bytes = (path / "assignments.tsv").read_bytes()
    digest = _checksum(pages_bytes, links_bytes)
    if digest != meta.get("sha256"):
        raise ChecksumMismatch(f"snapshot checksum {digest} does not match meta.json")
    try:
        pages = tuple(_parse_page(c) for c in _rows(pages_bytes, PAGE_COLUMNS, "pages.tsv"))
        links = tuple(
            _parse_assignment(c) for c in _rows(links_bytes, ASSIGNMENT_COLUMNS, "assignments.tsv")
        )
    except (ValueError, UnicodeDecodeError) as exc:
        raise SnapshotError(f"unreadable snapshot: {exc}") from None
    if len(pages) != meta.get("pages") or len(links) != meta.get("assignments"):
        raise SnapshotError("record counts disagree with meta.json")
    dump_time = parse_timestamp(meta["dump_time"]) if meta.get("dump_time") else None
    return CorpusSnapshot(pages, links, dump_time, sha256=digest)
