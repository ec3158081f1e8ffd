"""Corpus statistics: counts, membership histograms, author activity, timeline."""
from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from typing import Iterable

from .records import CATEGORY, MAIN

ALL = "All"


@dataclass(frozen=True)
class Histogram:
    """Sorted ``(value, frequency)`` pairs with positive frequencies."""

    items: tuple = ()

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "Histogram":
        counts = Counter(values)
        return cls(tuple(sorted(counts.items())))

    def as_dict(self) -> dict:
        return dict(self.items)

    def to_tsv(self) -> str:
        return "value\tfrequency\n" + "".join(f"{v}\t{f}\n" for v, f in self.items)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


@dataclass(frozen=True)
class StatsReport:
    article_count: int = 0
    category_count: int = 0
    unique_author_count: int = 0
    uncategorized_article_count: int = 0
    mean_categories_per_article: float = 0.0
    mean_categories_per_categorized_article: float = 0.0
    categories_unassigned_count: int = 0
    categories_single_article_count: int = 0
    registered_single_edit_authors: int = 0
    mean_pages_per_registered_author: float = 0.0
    anon_last_edited_pages: int = 0
    mean_article_bytes: float = 0.0
    total_words: int = 0
    empty: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class TimelineRow:
    month: str
    articles: int
    categories: int
    contributors: int


class CorpusView:
    """Joins pages and assignments once; shared by the statistics below.

    Only assignments whose member is a Main-namespace page count as
    article memberships. The category universe is every Category page
    plus every title used as a category by some article.
    """

    def __init__(self, snapshot):
        self.snapshot = snapshot
        self.articles = [p for p in snapshot.pages if p.namespace == MAIN]
        self.category_pages = {p.title: p for p in snapshot.pages if p.namespace == CATEGORY}
        article_ids = {p.page_id for p in self.articles}
        cats_of = defaultdict(set)
        members = defaultdict(set)
        for a in snapshot.assignments:
            if a.member_page_id in article_ids:
                cats_of[a.member_page_id].add(a.category_title)
                members[a.category_title].add(a.member_page_id)
        self.categories_of = cats_of
        self.member_count = {t: len(m) for t, m in members.items()}
        self.categories = set(self.category_pages) | set(self.member_count)


def _view(snapshot_or_view) -> CorpusView:
    if isinstance(snapshot_or_view, CorpusView):
        return snapshot_or_view
    return CorpusView(snapshot_or_view)


def corpus_counts(snapshot) -> StatsReport:
    view = _view(snapshot)
    articles = view.articles
    n = len(articles)
    if n == 0:
        return StatsReport(category_count=len(view.category_pages), empty=True)
    total_links = sum(len(c) for c in view.categories_of.values())
    categorized = len(view.categories_of)
    per_author = Counter(p.last_editor for p in articles)
    registered = {a: c for a, c in per_author.items() if not a.is_anonymous}
    sizes = [view.member_count.get(t, 0) for t in view.categories]
    return StatsReport(
        article_count=n,
        category_count=len(view.category_pages),
        unique_author_count=len(per_author),
        uncategorized_article_count=n - categorized,
        mean_categories_per_article=total_links / n,
        mean_categories_per_categorized_article=total_links / categorized if categorized else 0.0,
        categories_unassigned_count=sum(1 for s in sizes if s == 0),
        categories_single_article_count=sum(1 for s in sizes if s == 1),
        registered_single_edit_authors=sum(1 for c in registered.values() if c == 1),
        mean_pages_per_registered_author=(
            sum(registered.values()) / len(registered) if registered else 0.0
        ),
        anon_last_edited_pages=sum(c for a, c in per_author.items() if a.is_anonymous),
        mean_article_bytes=sum(p.text_bytes for p in articles) / n,
        total_words=sum(p.word_count for p in articles),
    )


def categories_per_article_hist(snapshot) -> Histogram:
    view = _view(snapshot)
    return Histogram.from_values(len(view.categories_of.get(p.page_id, ())) for p in view.articles)


def articles_per_category_hist(snapshot) -> Histogram:
    view = _view(snapshot)
    return Histogram.from_values(view.member_count.get(t, 0) for t in view.categories)


def top_categories(snapshot, n: int = 20) -> list:
    """Most used categories as ``(title, member_count)``, ties by title."""
    if n < 1:
        raise ValueError("n must be >= 1")
    view = _view(snapshot)
    ranked = sorted(view.member_count.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:n]


def author_activity(snapshot, k: int = 10, namespace: str = ALL) -> list:
    """Authors ranked by number of pages they last edited.

    ``namespace`` is ``"Main"``, ``"Category"`` or ``"All"``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if namespace not in (MAIN, CATEGORY, ALL):
        raise ValueError(f"namespace filter must be Main, Category or All, not {namespace!r}")
    pages = snapshot.snapshot.pages if isinstance(snapshot, CorpusView) else snapshot.pages
    counts = Counter(
        p.last_editor for p in pages if namespace == ALL or p.namespace == namespace
    )
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0].key))
    return ranked[:k]


def _month_key(ts: datetime) -> tuple:
    ts = ts.astimezone(timezone.utc)
    return (ts.year, ts.month)


def _month_range(first: tuple, last: tuple):
    y, m = first
    while (y, m) <= last:
        yield y, m
        m += 1
        if m == 13:
            y, m = y + 1, 1


def timeline(snapshot) -> list:
    """Cumulative monthly counts of articles, categories and contributors.

    A page counts from the month of its last edit; contributors are the
    distinct last editors of the counted pages.
    """
    pages = snapshot.snapshot.pages if isinstance(snapshot, CorpusView) else snapshot.pages
    pages = [p for p in pages if p.namespace in (MAIN, CATEGORY)]
    if not pages:
        return []
    by_month = defaultdict(list)
    for p in pages:
        by_month[_month_key(p.last_edit)].append(p)
    rows = []
    articles = categories = 0
    authors = set()
    for ym in _month_range(min(by_month), max(by_month)):
        for p in by_month.get(ym, ()):
            if p.namespace == MAIN:
                articles += 1
            else:
                categories += 1
            authors.add(p.last_editor)
        rows.append(TimelineRow(f"{ym[0]:04d}-{ym[1]:02d}", articles, categories, len(authors)))
    return rows


def timeline_tsv(rows) -> str:
    return "month\tarticles\tcategories\tcontributors\n" + "".join(
        f"{r.month}\t{r.articles}\t{r.categories}\t{r.contributors}\n" for r in rows
    )


def full_report(snapshot, top_n: int = 20, top_k: int = 10) -> dict:
    """Everything the ``stats`` command writes, as plain JSON-ready data."""
    view = _view(snapshot)
    return {
        "report": corpus_counts(view).to_dict(),
        "categories_per_article": [list(x) for x in categories_per_article_hist(view)],
        "articles_per_category": [list(x) for x in articles_per_category_hist(view)],
        "top_categories": [list(x) for x in top_categories(view, top_n)],
        "author_activity": {
            ns: [[str(a), a.kind, c] for a, c in author_activity(view, top_k, ns)]
            for ns in (MAIN, CATEGORY, ALL)
        },
        "timeline": [asdict(r) for r in timeline(view)],
    }


def format_table(report: StatsReport) -> str:
    rows = report.to_dict()
    width = max(len(k) for k in rows)
    out = []
    for key, value in rows.items():
        if isinstance(value, float):
            value = f"{value:.4f}"
        out.append(f"{key:<{width}}  {value}")
    return "\n".join(out) + "\n"


def report_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
