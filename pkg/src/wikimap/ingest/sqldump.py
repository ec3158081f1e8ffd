"""Streaming reader (and writer) for the ``categorylinks`` mysqldump."""
from __future__ import annotations

import re
from datetime import datetime, timezone
from typing import Iterable, Iterator, Optional

from ..diagnostics import WarningLog
from ..errors import EmptyTitle, UnterminatedStringLiteral
from ..records import CategoryAssignment
from .compression import open_dump
from .titles import normalize_title

CHUNK_SIZE = 1 << 16

# 2005-era schema; used when the dump carries no CREATE TABLE.
DEFAULT_COLUMNS = ("cl_from", "cl_to", "cl_sortkey", "cl_timestamp")

_SPECIAL = re.compile(rb"[;'\"`]|--|/\*|#")

_INSERT = re.compile(
    rb"\s*INSERT\s+(?:IGNORE\s+)?INTO\s+`?(?P<table>[\w$]+)`?\s*"
    rb"(?:\((?P<cols>[^)]*)\)\s*)?VALUES\s*",
    re.IGNORECASE,
)
_CREATE = re.compile(
    rb"\s*CREATE\s+TABLE\s+(?:IF\s+NOT\s+EXISTS\s+)?`?(?P<table>[\w$]+)`?\s*\(",
    re.IGNORECASE,
)
_COLUMN_DEF = re.compile(rb"^\s*`?(?P<name>\w+)`?\s+\w", re.MULTILINE)
_NON_COLUMN = {b"PRIMARY", b"KEY", b"UNIQUE", b"INDEX", b"FULLTEXT", b"CONSTRAINT", b"FOREIGN"}

_TOKEN = re.compile(
    rb"\s*(?:"
    rb"(?P<str>'(?:[^'\\]|\\.|'')*')"
    rb"|(?P<num>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)"
    rb"|(?P<null>NULL\b)"
    rb"|(?P<punct>[(),])"
    rb")",
    re.DOTALL | re.IGNORECASE,
)

_ESCAPES = {
    b"0": b"\x00", b"b": b"\x08", b"n": b"\n", b"r": b"\r", b"t": b"\t",
    b"Z": b"\x1a", b"\\": b"\\", b"'": b"'", b'"': b'"',
}
_ESCAPE_RE = re.compile(rb"\\(.)|''", re.DOTALL)


def _unescape(body: bytes) -> bytes:
    def sub(m):
        if m.group(0) == b"''":
            return b"'"
        return _ESCAPES.get(m.group(1), m.group(1))

    return _ESCAPE_RE.sub(sub, body)


_NORMAL, _STRING, _BACKTICK, _LINE_COMMENT, _BLOCK_COMMENT = range(5)
_LOOKAHEAD = 2


def split_statements(stream, chunk_size: int = CHUNK_SIZE) -> Iterator[tuple[int, bytes]]:
    """Yield ``(byte_offset, statement)`` for each ``;``-terminated statement.

    Comments are replaced by a space. Only one statement is buffered at a
    time, so memory is bounded by the longest statement.
    """
    state = _NORMAL
    quote = b"'"
    lit_offset = 0
    stmt = bytearray()
    stmt_offset = None
    buf = b""
    base = 0
    i = 0
    eof = False

    def add(piece: bytes, at: int):
        nonlocal stmt_offset
        if stmt_offset is None:
            stripped = piece.lstrip()
            if not stripped:
                return
            at += len(piece) - len(stripped)
            piece = stripped
            stmt_offset = at
        stmt.extend(piece)

    while not eof:
        data = stream.read(chunk_size)
        eof = not data
        base += i
        buf = buf[i:] + data
        i = 0
        n = len(buf)
        limit = n if eof else n - _LOOKAHEAD
        while i < limit:
            if state == _NORMAL:
                m = _SPECIAL.search(buf, i)
                if m is None or m.start() >= limit:
                    add(buf[i:limit], base + i)
                    i = limit
                    break
                add(buf[i:m.start()], base + i)
                tok = m.group(0)
                i = m.end()
                if tok == b";":
                    if stmt_offset is not None:
                        yield stmt_offset, bytes(stmt)
                    stmt.clear()
                    stmt_offset = None
                elif tok in (b"'", b'"'):
                    add(tok, base + m.start())
                    state, quote, lit_offset = _STRING, tok, base + m.start()
                elif tok == b"`":
                    add(tok, base + m.start())
                    state, lit_offset = _BACKTICK, base + m.start()
                elif tok == b"--":
                    if i < n and buf[i:i + 1] not in (b" ", b"\t", b"\n", b"\r"):
                        # MySQL needs whitespace after "--" for a comment
                        add(b"-", base + m.start())
                        i = m.start() + 1
                    else:
                        state = _LINE_COMMENT
                elif tok == b"#":
                    state = _LINE_COMMENT
                else:
                    state = _BLOCK_COMMENT
            elif state == _STRING:
                j = buf.find(quote, i)
                k = buf.find(b"\\", i, j if j >= 0 else n)
                if 0 <= k < limit:
                    add(buf[i:k + 2], base + i)
                    i = k + 2
                elif j < 0 or j >= limit:
                    add(buf[i:limit], base + i)
                    i = limit
                elif j + 1 < n and buf[j + 1:j + 2] == quote:
                    add(buf[i:j + 2], base + i)
                    i = j + 2
                else:
                    add(buf[i:j + 1], base + i)
                    i = j + 1
                    state = _NORMAL
            elif state == _BACKTICK:
                j = buf.find(b"`", i)
                if j < 0 or j >= limit:
                    add(buf[i:limit], base + i)
                    i = limit
                else:
                    add(buf[i:j + 1], base + i)
                    i = j + 1
                    state = _NORMAL
            elif state == _LINE_COMMENT:
                j = buf.find(b"\n", i)
                if j < 0 or j >= limit:
                    i = limit
                else:
                    i = j + 1
                    state = _NORMAL
            else:
                j = buf.find(b"*/", i)
                if j < 0 or j >= limit:
                    i = limit
                else:
                    i = j + 2
                    add(b" ", base + j)
                    state = _NORMAL
    if state in (_STRING, _BACKTICK):
        raise UnterminatedStringLiteral("unterminated string literal", offset=lit_offset)
    if stmt_offset is not None:
        yield stmt_offset, bytes(stmt)


def _create_columns(stmt: bytes) -> Optional[tuple]:
    m = _CREATE.match(stmt)
    if not m:
        return None
    body = stmt[m.end():]
    cols = []
    for line in body.split(b"\n"):
        cm = _COLUMN_DEF.match(line)
        if cm and cm.group("name").upper() not in _NON_COLUMN:
            cols.append(cm.group("name").decode())
    return m.group("table"), tuple(cols)


def _parse_timestamp(raw) -> Optional[datetime]:
    if raw is None:
        return None
    text = raw.strip()
    for fmt in ("%Y%m%d%H%M%S", "%Y-%m-%d %H:%M:%S"):
        try:
            return datetime.strptime(text, fmt).replace(tzinfo=timezone.utc)
        except ValueError:
            continue
    return None


def _tuples(values: bytes, offset: int) -> Iterator[list]:
    """Tokenize ``(v, ...),(v, ...)`` into lists of Python values."""
    pos = 0
    n = len(values)
    row = None
    while pos < n:
        m = _TOKEN.match(values, pos)
        if m is None:
            if not values[pos:].strip():
                break
            raise ValueError(f"unexpected SQL token at byte offset {offset + pos}")
        pos = m.end()
        kind = m.lastgroup
        if kind == "punct":
            p = m.group("punct")
            if p == b"(":
                row = []
            elif p == b")":
                if row is not None:
                    yield row
                row = None
        elif row is not None:
            if kind == "str":
                row.append(_unescape(m.group("str")[1:-1]))
            elif kind == "num":
                row.append(m.group("num"))
            else:
                row.append(None)


def parse_categorylinks_sql(
    source,
    warnings: Optional[WarningLog] = None,
    table: str = "categorylinks",
    chunk_size: int = CHUNK_SIZE,
) -> Iterator[CategoryAssignment]:
    """Yield one CategoryAssignment per value tuple of ``INSERT`` statements.

    Columns are taken from an explicit INSERT column list, else from the
    dump's CREATE TABLE, else the 2005 four-column layout. Tuples of the
    wrong arity are skipped with a warning.
    """
    warnings = warnings if warnings is not None else WarningLog()
    stream = open_dump(source)
    columns = DEFAULT_COLUMNS
    suffix = table.encode()
    try:
        for offset, stmt in split_statements(stream, chunk_size):
            created = _create_columns(stmt)
            if created is not None:
                if created[0].endswith(suffix) and created[1]:
                    columns = created[1]
                continue
            m = _INSERT.match(stmt)
            if m is None or not m.group("table").endswith(suffix):
                continue
            cols = columns
            if m.group("cols"):
                cols = tuple(c.strip().strip(b"`").decode() for c in m.group("cols").split(b","))
            try:
                idx_from = cols.index("cl_from")
                idx_to = cols.index("cl_to")
            except ValueError:
                warnings.warn("unknown_columns", ",".join(cols))
                continue
            idx_key = cols.index("cl_sortkey") if "cl_sortkey" in cols else None
            idx_ts = cols.index("cl_timestamp") if "cl_timestamp" in cols else None
            rows = _tuples(stmt[m.end():], offset + m.end())
            while True:
                try:
                    row = next(rows)
                except StopIteration:
                    break
                except ValueError as exc:
                    warnings.warn("bad_values", exc)
                    break
                if len(row) != len(cols):
                    warnings.warn("arity_mismatch", f"offset={offset} expected={len(cols)} got={len(row)}")
                    continue
                assignment = _make_assignment(row, idx_from, idx_to, idx_key, idx_ts, warnings)
                if assignment is not None:
                    yield assignment
    finally:
        if isinstance(source, str) or hasattr(source, "__fspath__"):
            stream.close()


def _decode(raw, warnings: WarningLog) -> str:
    if isinstance(raw, bytes):
        try:
            return raw.decode("utf-8")
        except UnicodeDecodeError:
            warnings.warn("bad_utf8", repr(raw[:40]))
            return raw.decode("utf-8", "replace")
    return "" if raw is None else str(raw)


def _make_assignment(row, idx_from, idx_to, idx_key, idx_ts, warnings):
    try:
        member = int(_decode(row[idx_from], warnings))
    except ValueError:
        warnings.warn("bad_cl_from", repr(row[idx_from]))
        return None
    if member <= 0:
        warnings.warn("bad_cl_from", str(member))
        return None
    try:
        title = normalize_title(_decode(row[idx_to], warnings))
    except EmptyTitle:
        warnings.warn("empty_title", f"cl_from={member}")
        return None
    sort_key = _decode(row[idx_key], warnings) if idx_key is not None else ""
    ts = None
    if idx_ts is not None and row[idx_ts] is not None:
        ts = _parse_timestamp(_decode(row[idx_ts], warnings))
    return CategoryAssignment(member, title, sort_key, ts)


def _quote(text: str) -> str:
    out = text.replace("\\", "\\\\").replace("'", "\\'")
    out = out.replace("\n", "\\n").replace("\r", "\\r").replace("\x00", "\\0")
    return "'" + out + "'"


def write_categorylinks_sql(
    assignments: Iterable[CategoryAssignment], rows_per_insert: int = 1000
) -> str:
    """Serialize assignments as a mysqldump-style categorylinks script."""
    lines = [
        "CREATE TABLE `categorylinks` (",
        "  `cl_from` int(8) unsigned NOT NULL default '0',",
        "  `cl_to` varchar(255) binary NOT NULL default '',",
        "  `cl_sortkey` varchar(86) binary NOT NULL default '',",
        "  `cl_timestamp` timestamp(14) NOT NULL,",
        "  UNIQUE KEY `cl_from` (`cl_from`,`cl_to`)",
        ");",
    ]
    batch = []

    def flush():
        if batch:
            lines.append("INSERT INTO `categorylinks` VALUES " + ",".join(batch) + ";")
            batch.clear()

    for a in assignments:
        ts = a.link_timestamp.strftime("%Y%m%d%H%M%S") if a.link_timestamp else ""
        batch.append(f"({a.member_page_id},{_quote(a.category_title)},{_quote(a.sort_key)},{_quote(ts)})")
        if len(batch) >= rows_per_insert:
            flush()
    flush()
    return "\n".join(lines) + "\n"
