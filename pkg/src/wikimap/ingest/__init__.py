"""Streaming readers for the page XML dump and the categorylinks SQL dump."""

from .compression import open_dump
from .sqldump import parse_categorylinks_sql, split_statements, write_categorylinks_sql
from .titles import DEFAULT_NAMESPACES, NamespaceMap, classify_namespace, normalize_title
from .xmldump import parse_xml_dump

__all__ = [
    "DEFAULT_NAMESPACES",
    "NamespaceMap",
    "classify_namespace",
    "normalize_title",
    "open_dump",
    "parse_categorylinks_sql",
    "parse_xml_dump",
    "split_statements",
    "write_categorylinks_sql",
]
