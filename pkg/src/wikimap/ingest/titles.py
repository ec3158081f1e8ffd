"""Title canonicalization and namespace classification."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import EmptyTitle
from ..records import CATEGORY, MAIN

MAIN_NS_ID = 0
CATEGORY_NS_ID = 14

# Namespaces of a 2005-era MediaWiki install, for dumps without <siteinfo>.
DEFAULT_NAMESPACES = {
    -2: "Media",
    -1: "Special",
    0: "",
    1: "Talk",
    2: "User",
    3: "User talk",
    4: "Wikipedia",
    5: "Wikipedia talk",
    6: "Image",
    7: "Image talk",
    8: "MediaWiki",
    9: "MediaWiki talk",
    10: "Template",
    11: "Template talk",
    12: "Help",
    13: "Help talk",
    14: "Category",
    15: "Category talk",
    100: "Portal",
    101: "Portal talk",
}

_UNDERSCORES = re.compile(r"_+")


def normalize_title(raw: str) -> str:
    """Canonical MediaWiki form: underscores for spaces, first letter uppercase."""
    title = _UNDERSCORES.sub("_", raw.strip().replace(" ", "_")).strip("_")
    if not title:
        raise EmptyTitle(f"title {raw!r} is empty after normalization")
    return title[0].upper() + title[1:]


def _prefix_key(prefix: str) -> str:
    return " ".join(prefix.replace("_", " ").split()).casefold()


@dataclass
class NamespaceMap:
    """Prefix to namespace-id mapping, usually read from a dump's siteinfo."""

    names: dict = field(default_factory=lambda: dict(DEFAULT_NAMESPACES))

    def __post_init__(self):
        if self.names.get(MAIN_NS_ID, None) != "":
            raise ValueError("namespace 0 must have the empty prefix")
        if not self.names.get(CATEGORY_NS_ID):
            raise ValueError("namespace 14 (Category) must have a prefix")
        self._by_prefix = {
            _prefix_key(name): ns_id for ns_id, name in self.names.items() if name
        }

    @classmethod
    def default(cls) -> "NamespaceMap":
        return cls()

    def lookup(self, prefix: str):
        """Return the namespace id for ``prefix`` or None."""
        return self._by_prefix.get(_prefix_key(prefix))

    def namespace_name(self, ns_id: int) -> str:
        if ns_id == MAIN_NS_ID:
            return MAIN
        if ns_id == CATEGORY_NS_ID:
            return CATEGORY
        return self.names[ns_id]


def classify_namespace(raw_title: str, ns_map: NamespaceMap) -> tuple[str, str]:
    """Split a full page title into (namespace, title-without-prefix).

    Titles whose text before the first colon is not a known namespace
    prefix are Main-namespace titles that happen to contain a colon.
    """
    prefix, sep, rest = raw_title.partition(":")
    if sep:
        ns_id = ns_map.lookup(prefix)
        if ns_id is not None and ns_id != MAIN_NS_ID:
            return ns_map.namespace_name(ns_id), rest
    return MAIN, raw_title
