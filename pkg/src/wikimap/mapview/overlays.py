"""Node coloring schemes: title keywords, last-edit age, top authors."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..coocnet import NO_TIME

DEFAULT_COLOR = "#c0c0c0"
BLACK = "#000000"
LIGHT_GREEN = "#90ee90"

# purple, blue, light green, black, orange, then five further distinct hues
DEFAULT_PALETTE = (
    "#800080",
    "#0000ff",
    "#90ee90",
    "#000000",
    "#ffa500",
    "#e6194b",
    "#008080",
    "#9a6324",
    "#f032e6",
    "#808000",
)

DEFAULT_KEYWORD_RULES = (
    ("Companies", "#ffa500"),
    ("Death", BLACK),
    ("Film", "#e6194b"),
)

_HEX = re.compile(r"^#[0-9a-fA-F]{6}$")


def check_color(color: str) -> str:
    if not _HEX.match(color):
        raise ValueError(f"colors must be #rrggbb, got {color!r}")
    return color.lower()


def hex_to_rgb(color: str) -> tuple:
    color = check_color(color)
    return tuple(int(color[i:i + 2], 16) for i in (1, 3, 5))


def rgb_to_hex(rgb) -> str:
    return "#" + "".join(f"{int(c):02x}" for c in rgb)


@dataclass(frozen=True)
class Keyword:
    rules: tuple = DEFAULT_KEYWORD_RULES

    def __post_init__(self):
        if not self.rules:
            raise ValueError("keyword mode needs at least one rule")


@dataclass(frozen=True)
class AgeGradient:
    old_color: str = BLACK
    young_color: str = LIGHT_GREEN


@dataclass(frozen=True)
class TopAuthors:
    k: int = 10
    palette: tuple = DEFAULT_PALETTE
    other_color: str = DEFAULT_COLOR

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.k > len(self.palette):
            raise ValueError(f"k={self.k} exceeds palette size {len(self.palette)}")


@dataclass(frozen=True)
class OverlaySpec:
    mode: object = field(default_factory=Keyword)
    label_set: frozenset = frozenset()
    default_color: str = DEFAULT_COLOR


@dataclass
class ColorAssignment:
    """Per-node hex colors plus the nodes drawn enlarged with a label."""

    colors: dict
    labeled: set = field(default_factory=set)
    legend: dict = field(default_factory=dict)

    def __getitem__(self, node):
        return self.colors[node]

    def __len__(self):
        return len(self.colors)


def _display(title: str) -> str:
    return title.replace("_", " ").casefold()


def _labeled(network, label_set) -> set:
    wanted = set(label_set)
    return {i for i, t in enumerate(network.titles) if t in wanted}


def keyword_overlay(network, rules=DEFAULT_KEYWORD_RULES, label_set=(), default_color=DEFAULT_COLOR):
    """First rule whose keyword occurs in the title (case-insensitive) wins."""
    if not rules:
        raise ValueError("keyword mode needs at least one rule")
    prepared = [(_display(word), check_color(color)) for word, color in rules]
    default_color = check_color(default_color)
    colors = {}
    for i, title in enumerate(network.titles):
        shown = _display(title)
        colors[i] = next((c for word, c in prepared if word in shown), default_color)
    legend = {word: check_color(color) for word, color in rules}
    return ColorAssignment(colors, _labeled(network, label_set), legend)


def age_overlay(
    network,
    old_color: str = BLACK,
    young_color: str = LIGHT_GREEN,
    default_color: str = DEFAULT_COLOR,
    label_set=(),
):
    """Interpolate per channel between the oldest and newest last edit.

    Nodes with no category page (no timestamp) get ``default_color``.
    """
    old = np.array(hex_to_rgb(old_color), dtype=np.float64)
    young = np.array(hex_to_rgb(young_color), dtype=np.float64)
    default_color = check_color(default_color)
    times = np.asarray(network.last_edit)
    known = times != NO_TIME
    colors = {}
    if known.any():
        lo = int(times[known].min())
        hi = int(times[known].max())
    for i in range(network.n_nodes):
        if not known[i]:
            colors[i] = default_color
            continue
        frac = 1.0 if hi == lo else (int(times[i]) - lo) / (hi - lo)
        rgb = np.floor(old + (young - old) * frac + 0.5)
        colors[i] = rgb_to_hex(rgb)
    legend = {"old": check_color(old_color), "young": check_color(young_color)}
    return ColorAssignment(colors, _labeled(network, label_set), legend)


def rank_authors(network) -> list:
    """Authors by number of category nodes they last edited; ties by key."""
    counts = Counter(a for a in network.last_editor if a is not None)
    return sorted(counts.items(), key=lambda kv: (-kv[1], kv[0].key))


def top_author_overlay(
    network,
    k: int = 10,
    palette=DEFAULT_PALETTE,
    other_color: str = DEFAULT_COLOR,
    label_set=(),
):
    """Color each node by its category page's last editor if in the top k.

    Returns the assignment; its ``legend`` maps author name to color in
    rank order.
    """
    spec = TopAuthors(k, tuple(palette), other_color)
    other = check_color(spec.other_color)
    top = rank_authors(network)[: spec.k]
    legend = {a: check_color(spec.palette[r]) for r, (a, _) in enumerate(top)}
    colors = {}
    for i in range(network.n_nodes):
        author = network.last_editor[i]
        colors[i] = legend.get(author, other) if author is not None else other
    named = {a.name: c for a, c in legend.items()}
    return ColorAssignment(colors, _labeled(network, label_set), named)


def apply_overlay(network, spec: OverlaySpec) -> ColorAssignment:
    mode = spec.mode
    if isinstance(mode, Keyword):
        return keyword_overlay(network, mode.rules, spec.label_set, spec.default_color)
    if isinstance(mode, AgeGradient):
        return age_overlay(network, mode.old_color, mode.young_color, spec.default_color, spec.label_set)
    if isinstance(mode, TopAuthors):
        return top_author_overlay(network, mode.k, mode.palette, mode.other_color, spec.label_set)
    raise TypeError(f"unknown overlay mode {mode!r}")


def mode_name(spec: Optional[OverlaySpec]) -> str:
    mode = spec.mode if spec is not None else None
    return {Keyword: "keyword", AgeGradient: "age", TopAuthors: "authors"}.get(type(mode), "custom")
