"""Streaming reader for MediaWiki ``<mediawiki>`` export XML."""
from __future__ import annotations

from datetime import datetime
from typing import Iterator, Optional
from xml.parsers import expat

from ..diagnostics import WarningLog
from ..errors import EmptyTitle, MalformedXml
from ..records import UNKNOWN_AUTHOR, AuthorRef, PageRecord, is_ip_literal, parse_timestamp
from .compression import open_dump
from .titles import NamespaceMap, classify_namespace, normalize_title

CHUNK_SIZE = 1 << 16
_REDIRECT_PREFIX = "#redirect"


def _local(name: str) -> str:
    return name.rpartition(":")[2]


class _Revision:
    __slots__ = ("timestamp", "username", "ip", "has_contributor", "text_bytes",
                 "word_count", "head", "_in_word")

    def __init__(self):
        self.timestamp = ""
        self.username = None
        self.ip = None
        self.has_contributor = False
        self.text_bytes = 0
        self.word_count = 0
        self.head = ""
        self._in_word = False

    def add_text(self, data: str) -> None:
        self.text_bytes += len(data.encode("utf-8", "surrogatepass"))
        if len(self.head) < 32:
            self.head += data[: 32 - len(self.head)]
        words = len(data.split())
        if words and self._in_word and not data[0].isspace():
            words -= 1  # run continues from the previous chunk
        self.word_count += words
        self._in_word = not data[-1].isspace()


class _Handler:
    """Expat callbacks; completed pages accumulate in ``out``."""

    def __init__(self, ns_map, warnings, dump_time):
        self.ns_map = ns_map
        self.ns_from_siteinfo = ns_map is None
        self._site_names = {}
        self.warnings = warnings
        self.dump_time = dump_time
        self.out = []
        self.stack = []
        self._text = None
        self._ns_key = None
        self._reset_page()

    def _reset_page(self):
        self.title = None
        self.page_id = None
        self.redirect = False
        self.best = None
        self.rev = None

    def start(self, name, attrs):
        name = _local(name)
        parent = self.stack[-1] if self.stack else None
        self.stack.append(name)
        if name == "page":
            self._reset_page()
        elif name == "revision" and parent == "page":
            self.rev = _Revision()
        elif name == "redirect" and parent == "page":
            self.redirect = True
        elif name == "contributor" and self.rev is not None:
            self.rev.has_contributor = True
        elif name == "namespace" and parent == "namespaces":
            self._ns_key = int(attrs.get("key", "0"))
            self._text = []
        if name in ("title", "id", "timestamp", "username", "ip"):
            self._text = []

    def data(self, data):
        if self.stack and self.stack[-1] == "text" and self.rev is not None:
            if data:
                self.rev.add_text(data)
        elif self._text is not None:
            self._text.append(data)

    def end(self, name):
        name = _local(name)
        self.stack.pop()
        parent = self.stack[-1] if self.stack else None
        text = "".join(self._text) if self._text is not None else ""
        self._text = None
        if name == "title" and parent == "page":
            self.title = text
        elif name == "id" and parent == "page":
            self.page_id = text.strip()
        elif name == "timestamp" and parent == "revision":
            self.rev.timestamp = text.strip()
        elif name == "username" and parent == "contributor":
            self.rev.username = text.strip()
        elif name == "ip" and parent == "contributor":
            self.rev.ip = text.strip()
        elif name == "revision" and parent == "page":
            if self.best is None or self.rev.timestamp > self.best.timestamp:
                self.best = self.rev
            self.rev = None
        elif name == "namespace" and parent == "namespaces":
            self._site_names[self._ns_key] = text.strip()
        elif name == "namespaces" and self.ns_from_siteinfo:
            try:
                self.ns_map = NamespaceMap(dict(self._site_names))
            except ValueError as exc:
                self.warnings.warn("bad_siteinfo", exc)
        elif name == "page":
            self._finish_page()

    def _author(self, rev) -> AuthorRef:
        if rev.username:
            return AuthorRef.registered(rev.username)
        if rev.ip:
            if is_ip_literal(rev.ip):
                return AuthorRef.anonymous(rev.ip)
            self.warnings.warn("invalid_ip", f"page={self.page_id} ip={rev.ip!r}")
            return UNKNOWN_AUTHOR
        self.warnings.warn("missing_contributor", f"page={self.page_id}")
        return UNKNOWN_AUTHOR

    def _finish_page(self):
        if self.ns_map is None:
            self.ns_map = NamespaceMap.default()
        rev = self.best
        try:
            page_id = int(self.page_id)
        except (TypeError, ValueError):
            self.warnings.warn("bad_page_id", f"title={self.title!r}")
            return
        if rev is None or not rev.timestamp:
            self.warnings.warn("missing_revision", f"page={page_id}")
            return
        if not self.title or not self.title.strip():
            self.warnings.warn("empty_title", f"page={page_id}")
            return
        namespace, rest = classify_namespace(self.title.strip(), self.ns_map)
        try:
            title = normalize_title(rest)
        except EmptyTitle:
            self.warnings.warn("empty_title", f"page={page_id}")
            return
        try:
            last_edit = parse_timestamp(rev.timestamp)
        except ValueError:
            self.warnings.warn("bad_timestamp", f"page={page_id} ts={rev.timestamp!r}")
            return
        is_redirect = self.redirect or rev.head.lstrip().casefold().startswith(_REDIRECT_PREFIX)
        record = PageRecord(
            page_id=page_id,
            title=title,
            namespace=namespace,
            last_edit=last_edit,
            last_editor=self._author(rev),
            text_bytes=rev.text_bytes,
            word_count=rev.word_count,
            is_redirect=is_redirect,
        )
        try:
            record.check(self.dump_time)
        except ValueError as exc:
            self.warnings.warn("invalid_page", f"page={page_id} {exc}")
            return
        self.out.append(record)


def parse_xml_dump(
    source,
    namespace_map: Optional[NamespaceMap] = None,
    warnings: Optional[WarningLog] = None,
    dump_time: Optional[datetime] = None,
    chunk_size: int = CHUNK_SIZE,
) -> Iterator[PageRecord]:
    """Yield one PageRecord per ``<page>`` element, in document order.

    ``source`` may be a path or binary stream, optionally gzip/bzip2
    compressed. Page text is measured while streaming and never kept.
    An explicit ``namespace_map`` overrides the dump's siteinfo block.
    """
    warnings = warnings if warnings is not None else WarningLog()
    stream = open_dump(source)
    handler = _Handler(namespace_map, warnings, dump_time)
    parser = expat.ParserCreate()
    parser.buffer_text = True
    parser.buffer_size = chunk_size
    parser.StartElementHandler = handler.start
    parser.EndElementHandler = handler.end
    parser.CharacterDataHandler = handler.data
    try:
        while True:
            chunk = stream.read(chunk_size)
            final = not chunk
            try:
                parser.Parse(chunk, final)
            except expat.ExpatError as exc:
                raise MalformedXml(
                    f"malformed XML at line {exc.lineno} column {exc.offset}: "
                    f"{expat.ErrorString(exc.code)}",
                    offset=parser.ErrorByteIndex,
                ) from None
            if handler.out:
                yield from handler.out
                handler.out.clear()
            if final:
                break
    finally:
        if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
            stream.close()
