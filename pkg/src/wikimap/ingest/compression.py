"""Transparent gzip/bzip2 detection by magic bytes."""
from __future__ import annotations

import bz2
import gzip
import io
import os

GZIP_MAGIC = b"\x1f\x8b"
BZIP2_MAGIC = b"BZh"


def open_dump(source):
    """Return a binary file object over the decompressed dump.

    ``source`` is a path or an already open binary stream. Plain input
    passes through untouched.
    """
    if isinstance(source, (str, os.PathLike)):
        stream = open(source, "rb")
    else:
        stream = source
    if not hasattr(stream, "peek"):
        stream = io.BufferedReader(stream) if isinstance(stream, io.RawIOBase) else _Peekable(stream)
    head = stream.peek(3)[:3]
    if head.startswith(GZIP_MAGIC):
        return gzip.GzipFile(fileobj=stream, mode="rb")
    if head.startswith(BZIP2_MAGIC):
        return bz2.BZ2File(stream, mode="rb")
    return stream


class _Peekable(io.RawIOBase):
    """Adapter giving ``peek`` to file objects that lack it (e.g. BytesIO)."""

    def __init__(self, inner):
        self._inner = inner
        self._buf = b""

    def readable(self):
        return True

    def peek(self, n=1):
        if len(self._buf) < n:
            self._buf += self._inner.read(n - len(self._buf)) or b""
        return self._buf

    def readinto(self, b):
        if self._buf:
            n = min(len(b), len(self._buf))
            b[:n] = self._buf[:n]
            self._buf = self._buf[n:]
            return n
        data = self._inner.read(len(b))
        if not data:
            return 0
        b[: len(data)] = data
        return len(data)

    def close(self):
        self._inner.close()
        super().close()
