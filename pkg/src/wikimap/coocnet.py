"""Category co-occurrence network with cosine-normalized link weights.

Two categories are linked when some article carries both; the raw weight
is the number of such articles and the cosine weight divides it by the
geometric mean of the two category sizes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional

import numpy as np

from . import _kernels
from .errors import DomainError, EmptyNetwork
from .records import AuthorRef, epoch_seconds, format_timestamp
from .stats import CorpusView, Histogram
from .store import escape_field

RAW_COOCCURRENCE = "cooccurrence"
RAW_SUM = "sum"
NO_TIME = -1


@dataclass(frozen=True)
class IncidenceMatrix:
    """Binary article x category membership in CSR form.

    Rows are Main-namespace pages (sorted by page id), columns are category
    titles (sorted). Column metadata comes from the category page when one
    exists; ``NO_TIME`` / ``None`` otherwise.
    """

    article_ids: np.ndarray
    titles: tuple
    indptr: np.ndarray
    indices: np.ndarray
    sizes: np.ndarray
    last_edit: np.ndarray
    last_editor: tuple
    orphan_category_pages: tuple = ()

    @property
    def n_articles(self) -> int:
        return len(self.article_ids)

    @property
    def n_categories(self) -> int:
        return len(self.titles)

    @property
    def nonempty_rows(self) -> int:
        return int(np.count_nonzero(np.diff(self.indptr)))

    def row(self, r: int) -> np.ndarray:
        return self.indices[self.indptr[r]:self.indptr[r + 1]]

    @classmethod
    def from_sets(cls, rows, titles=None) -> "IncidenceMatrix":
        """Build from a list of per-article category-title collections."""
        if titles is None:
            titles = sorted({t for r in rows for t in r})
        col = {t: i for i, t in enumerate(titles)}
        indptr = [0]
        indices = []
        for r in rows:
            indices.extend(sorted(col[t] for t in set(r)))
            indptr.append(len(indices))
        indices = np.asarray(indices, dtype=np.int64)
        sizes = np.bincount(indices, minlength=len(titles)).astype(np.int64)
        return cls(
            article_ids=np.arange(1, len(rows) + 1, dtype=np.int64),
            titles=tuple(titles),
            indptr=np.asarray(indptr, dtype=np.int64),
            indices=indices,
            sizes=sizes,
            last_edit=np.full(len(titles), NO_TIME, dtype=np.int64),
            last_editor=(None,) * len(titles),
        )


def build_incidence(snapshot) -> IncidenceMatrix:
    """Article x category incidence from a snapshot.

    Categories without a category page still get a column.
    """
    view = snapshot if isinstance(snapshot, CorpusView) else CorpusView(snapshot)
    titles = tuple(sorted(view.member_count))
    col = {t: i for i, t in enumerate(titles)}
    articles = sorted(p.page_id for p in view.articles)
    indptr = np.zeros(len(articles) + 1, dtype=np.int64)
    chunks = []
    for r, pid in enumerate(articles):
        cats = view.categories_of.get(pid)
        ids = sorted(col[t] for t in cats) if cats else []
        chunks.append(ids)
        indptr[r + 1] = indptr[r] + len(ids)
    indices = np.fromiter((c for ids in chunks for c in ids), dtype=np.int64, count=int(indptr[-1]))
    sizes = np.bincount(indices, minlength=len(titles)).astype(np.int64)
    last_edit = np.full(len(titles), NO_TIME, dtype=np.int64)
    editors = [None] * len(titles)
    for t, page in view.category_pages.items():
        i = col.get(t)
        if i is not None:
            last_edit[i] = epoch_seconds(page.last_edit)
            editors[i] = page.last_editor
    orphans = tuple(sorted(t for t in view.category_pages if t not in col))
    return IncidenceMatrix(
        article_ids=np.asarray(articles, dtype=np.int64),
        titles=titles,
        indptr=indptr,
        indices=indices,
        sizes=sizes,
        last_edit=last_edit,
        last_editor=tuple(editors),
        orphan_category_pages=orphans,
    )


def cosine_weight(raw: int, n_i: int, n_j: int) -> float:
    """``raw / sqrt(n_i * n_j)``, the bibliometric cosine of two categories."""
    if n_i <= 0 or n_j <= 0 or raw <= 0:
        raise DomainError(f"counts must be positive: raw={raw}, n_i={n_i}, n_j={n_j}")
    if raw > min(n_i, n_j):
        raise DomainError(f"raw={raw} exceeds min(n_i={n_i}, n_j={n_j})")
    return raw / math.sqrt(n_i * n_j)


class CoocEdge(NamedTuple):
    cat_i: int
    cat_j: int
    raw: int
    cos: float


@dataclass(frozen=True)
class CoocNetwork:
    titles: tuple
    sizes: np.ndarray
    last_edit: np.ndarray
    last_editor: tuple
    src: np.ndarray
    dst: np.ndarray
    raw: np.ndarray
    cos: np.ndarray
    raw_formula: str = RAW_COOCCURRENCE

    @property
    def n_nodes(self) -> int:
        return len(self.titles)

    @property
    def n_edges(self) -> int:
        return len(self.src)

    @property
    def degree(self) -> np.ndarray:
        return np.bincount(self.src, minlength=self.n_nodes) + np.bincount(
            self.dst, minlength=self.n_nodes
        )

    @property
    def isolated(self) -> np.ndarray:
        return self.degree == 0

    def edges(self) -> Iterator[CoocEdge]:
        for i, j, r, c in zip(self.src.tolist(), self.dst.tolist(), self.raw.tolist(), self.cos.tolist()):
            yield CoocEdge(i, j, r, c)

    def editor(self, node: int) -> Optional[AuthorRef]:
        return self.last_editor[node]

    def max_raw_edge(self) -> Optional[CoocEdge]:
        if not self.n_edges:
            return None
        # highest raw; ties to the smallest (i, j)
        e = int(np.lexsort((self.dst, self.src, -self.raw))[0])
        return CoocEdge(int(self.src[e]), int(self.dst[e]), int(self.raw[e]), float(self.cos[e]))


def project_cooccurrence(incidence: IncidenceMatrix, raw_formula: str = RAW_COOCCURRENCE) -> CoocNetwork:
    """Project the incidence onto category pairs sharing at least one article.

    With ``raw_formula="sum"`` the raw weight is ``n_i + n_j`` (the literal
    sum of both membership columns) instead of the co-occurrence count;
    the edge set is the same.
    """
    if raw_formula not in (RAW_COOCCURRENCE, RAW_SUM):
        raise ValueError(f"unknown raw formula {raw_formula!r}")
    n_cols = incidence.n_categories
    keys = _kernels.active().pair_keys(incidence.indptr, incidence.indices, n_cols)
    uniq, counts = np.unique(keys, return_counts=True)
    src = uniq // max(n_cols, 1)
    dst = uniq % max(n_cols, 1)
    sizes = incidence.sizes
    if raw_formula == RAW_SUM:
        raw = sizes[src] + sizes[dst]
    else:
        raw = counts.astype(np.int64)
    denom = np.sqrt(sizes[src].astype(np.float64) * sizes[dst].astype(np.float64))
    cos = raw / denom
    return CoocNetwork(
        titles=incidence.titles,
        sizes=sizes,
        last_edit=incidence.last_edit,
        last_editor=incidence.last_editor,
        src=src.astype(np.int64),
        dst=dst.astype(np.int64),
        raw=raw.astype(np.int64),
        cos=cos,
        raw_formula=raw_formula,
    )


def weight_histogram(network: CoocNetwork) -> Histogram:
    if network.n_edges == 0:
        raise EmptyNetwork("network has no edges")
    values, counts = np.unique(network.raw, return_counts=True)
    return Histogram(tuple(zip(values.tolist(), counts.tolist())))


def retained_count(n_edges: int, cut_fraction: float) -> int:
    """``ceil((1 - f) * E)`` with ``f`` read as the decimal it prints as."""
    keep = (1 - Fraction(repr(float(cut_fraction)))) * n_edges
    return min(n_edges, math.ceil(keep))


def edge_order(network: CoocNetwork, key: str = "cos") -> np.ndarray:
    """Edge indices from strongest to weakest.

    ``key="cos"`` ranks by cosine, then raw (desc), then (cat_i, cat_j)
    ascending; ``key="raw"`` swaps the first two criteria.
    """
    if key == "cos":
        return np.lexsort((network.dst, network.src, -network.raw, -network.cos))
    if key == "raw":
        return np.lexsort((network.dst, network.src, -network.cos, -network.raw))
    raise ValueError(f"cut key must be 'cos' or 'raw', not {key!r}")


def edge_cut(network: CoocNetwork, cut_fraction: float, key: str = "cos") -> CoocNetwork:
    """Keep the strongest ``ceil((1 - cut_fraction) * E)`` edges.

    Nodes are never dropped; those left without edges become isolated.
    """
    if not 0.0 <= cut_fraction < 1.0:
        raise ValueError(f"cut_fraction must be in [0, 1), got {cut_fraction}")
    if network.n_edges == 0:
        raise EmptyNetwork("network has no edges")
    keep = edge_order(network, key)[: retained_count(network.n_edges, cut_fraction)]
    keep.sort()  # back to canonical (i, j) order
    return replace(
        network,
        src=network.src[keep],
        dst=network.dst[keep],
        raw=network.raw[keep],
        cos=network.cos[keep],
    )


def nodes_tsv(network: CoocNetwork) -> str:
    lines = ["id\ttitle\tn_i\tlast_edit\tlast_editor"]
    for i, title in enumerate(network.titles):
        ts = int(network.last_edit[i])
        when = format_timestamp(_from_epoch(ts)) if ts != NO_TIME else ""
        who = network.last_editor[i]
        lines.append(
            f"{i}\t{escape_field(title)}\t{int(network.sizes[i])}\t{when}\t"
            f"{escape_field(who.name) if who else ''}"
        )
    return "\n".join(lines) + "\n"


def edges_tsv(network: CoocNetwork) -> str:
    lines = ["cat_i\tcat_j\traw\tcos"]
    for e in network.edges():
        lines.append(f"{e.cat_i}\t{e.cat_j}\t{e.raw}\t{e.cos:.15g}")
    return "\n".join(lines) + "\n"


def _from_epoch(ts: int) -> datetime:
    return datetime.fromtimestamp(ts, tz=timezone.utc)
