"""Pipeline configuration loaded from an optional JSON file."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from typing import Optional

from .coocnet import RAW_COOCCURRENCE, RAW_SUM
from .layout import LayoutParams
from .mapview.overlays import (
    BLACK,
    DEFAULT_COLOR,
    DEFAULT_KEYWORD_RULES,
    DEFAULT_PALETTE,
    LIGHT_GREEN,
    check_color,
)

# Link cut, tail threshold and author count used for the published maps.
DEFAULT_CUT_FRACTION = 0.686
DEFAULT_XMIN = 20
DEFAULT_TOP_AUTHORS = 10


class ConfigError(ValueError):
    pass


@dataclass
class Paths:
    xml: Optional[str] = None
    sql: Optional[str] = None
    snapshot: Optional[str] = None
    output: Optional[str] = None


@dataclass
class PipelineConfig:
    paths: Paths = field(default_factory=Paths)
    cut_fraction: float = DEFAULT_CUT_FRACTION
    cut_key: str = "cos"
    raw_formula: str = RAW_COOCCURRENCE
    xmin: int = DEFAULT_XMIN
    top_k_authors: int = DEFAULT_TOP_AUTHORS
    layout: LayoutParams = field(default_factory=LayoutParams)
    keyword_rules: tuple = DEFAULT_KEYWORD_RULES
    label_set: tuple = ()
    age_old_color: str = BLACK
    age_young_color: str = LIGHT_GREEN
    palette: tuple = DEFAULT_PALETTE
    other_color: str = DEFAULT_COLOR
    default_color: str = DEFAULT_COLOR
    canvas: tuple = (1024, 1024)

    def validate(self) -> "PipelineConfig":
        if not 0.0 <= self.cut_fraction < 1.0:
            raise ConfigError("cut_fraction must be in [0, 1)")
        if self.cut_key not in ("cos", "raw"):
            raise ConfigError("cut_key must be 'cos' or 'raw'")
        if self.raw_formula not in (RAW_COOCCURRENCE, RAW_SUM):
            raise ConfigError(f"raw_formula must be {RAW_COOCCURRENCE!r} or {RAW_SUM!r}")
        if self.xmin < 1 or self.top_k_authors < 1:
            raise ConfigError("xmin and top_k_authors must be >= 1")
        if self.top_k_authors > len(self.palette):
            raise ConfigError("top_k_authors exceeds the palette size")
        if not self.keyword_rules:
            raise ConfigError("keyword_rules must not be empty")
        try:
            for _, color in self.keyword_rules:
                check_color(color)
            for color in (*self.palette, self.other_color, self.default_color,
                          self.age_old_color, self.age_young_color):
                check_color(color)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return self

    def to_json(self) -> dict:
        data = asdict(self)
        data["keyword_rules"] = [list(r) for r in self.keyword_rules]
        data["label_set"] = list(self.label_set)
        data["palette"] = list(self.palette)
        data["canvas"] = list(self.canvas)
        return data


def _build(cls, data: dict, where: str):
    names = {f.name for f in fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ConfigError(f"unknown {where} keys: {', '.join(sorted(unknown))}")
    return data


def config_from_dict(data: dict) -> PipelineConfig:
    data = dict(_build(PipelineConfig, data, "config"))
    try:
        if "paths" in data:
            data["paths"] = Paths(**_build(Paths, data["paths"], "paths"))
        if "layout" in data:
            data["layout"] = LayoutParams(**_build(LayoutParams, data["layout"], "layout"))
        if "keyword_rules" in data:
            data["keyword_rules"] = tuple((str(w), str(c)) for w, c in data["keyword_rules"])
        for key in ("label_set", "palette", "canvas"):
            if key in data:
                data[key] = tuple(data[key])
        return PipelineConfig(**data).validate()
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def load_config(path: Optional[str]) -> PipelineConfig:
    if path is None:
        return PipelineConfig()
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be an object")
    return config_from_dict(data)
