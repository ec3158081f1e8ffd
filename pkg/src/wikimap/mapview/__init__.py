"""Overlay coloring and SVG/Pajek output for laid-out maps."""

from .overlays import (
    DEFAULT_KEYWORD_RULES,
    DEFAULT_PALETTE,
    AgeGradient,
    ColorAssignment,
    Keyword,
    OverlaySpec,
    TopAuthors,
    age_overlay,
    apply_overlay,
    keyword_overlay,
    top_author_overlay,
)
from .pajek import export_pajek, format_pajek, read_pajek
from .svg import render_svg

__all__ = [
    "DEFAULT_KEYWORD_RULES",
    "DEFAULT_PALETTE",
    "AgeGradient",
    "ColorAssignment",
    "Keyword",
    "OverlaySpec",
    "TopAuthors",
    "age_overlay",
    "apply_overlay",
    "export_pajek",
    "format_pajek",
    "keyword_overlay",
    "read_pajek",
    "render_svg",
    "top_author_overlay",
]
