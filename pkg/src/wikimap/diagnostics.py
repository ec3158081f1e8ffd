"""Warning counters written to stderr as ``warn <code> <detail>`` lines."""
from __future__ import annotations

import sys
from collections import Counter


class WarningLog:
    def __init__(self, stream=None, quiet: bool = False):
        self.counts: Counter = Counter()
        self._stream = stream
        self.quiet = quiet

    def warn(self, code: str, detail: object = "") -> None:
        self.counts[code] += 1
        if self.quiet:
            return
        stream = self._stream if self._stream is not None else sys.stderr
        detail = str(detail).replace("\n", " ")
        stream.write(f"warn {code} {detail}\n")

    def __getitem__(self, code: str) -> int:
        return self.counts[code]

    @property
    def total(self) -> int:
        return sum(self.counts.values())
