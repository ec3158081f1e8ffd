"""Brute-force reference implementations and random input generators.

Everything here is deliberately naive (nested loops, full enumeration) and
shares no code paths with the package beyond its record types.
"""
from __future__ import annotations

import math
import random
from datetime import datetime, timedelta, timezone
from itertools import combinations

import mpmath

from wikimap.records import CATEGORY, MAIN, AuthorRef, CategoryAssignment, PageRecord
from wikimap.store import CorpusSnapshot

T0 = datetime(2003, 1, 1, tzinfo=timezone.utc)


def random_snapshot(seed, max_pages=500, max_categories=60):
    rng = random.Random(seed)
    n_pages = rng.randint(0, max_pages)
    n_cats = rng.randint(1, max_categories)
    cat_titles = [f"Cat_{i}" for i in range(n_cats)]
    authors = [AuthorRef.registered(f"user{i}") for i in range(rng.randint(1, 12))]
    authors += [AuthorRef.anonymous(f"10.0.0.{i}") for i in range(rng.randint(0, 4))]
    pages = []
    for pid in range(1, n_pages + 1):
        roll = rng.random()
        if roll < 0.7:
            ns, title = MAIN, f"Page_{pid}"
        elif roll < 0.9:
            ns, title = CATEGORY, rng.choice(cat_titles)
        else:
            ns, title = "Talk", f"Page_{pid}"
        when = T0 + timedelta(days=rng.randint(0, 1000), seconds=rng.randint(0, 86399))
        pages.append(PageRecord(
            page_id=pid, title=title, namespace=ns, last_edit=when,
            last_editor=rng.choice(authors), text_bytes=rng.randint(0, 5000),
            word_count=rng.randint(0, 800), is_redirect=rng.random() < 0.05,
        ))
    # a category page title can only exist once
    seen = set()
    unique = []
    for p in pages:
        if p.namespace == CATEGORY:
            if p.title in seen:
                continue
            seen.add(p.title)
        unique.append(p)
    pages = unique
    links = []
    pairs = set()
    for p in pages:
        for _ in range(rng.choice([0, 0, 1, 1, 2, 3, 5])):
            c = rng.choice(cat_titles)
            if (p.page_id, c) not in pairs:
                pairs.add((p.page_id, c))
                links.append(CategoryAssignment(p.page_id, c))
    # assignments pointing at unknown pages are ignored downstream
    links.append(CategoryAssignment(10**6, rng.choice(cat_titles)))
    return CorpusSnapshot(tuple(pages), tuple(links), None)


def stats_oracle(snap):
    articles = [p for p in snap.pages if p.namespace == MAIN]
    cat_pages = [p for p in snap.pages if p.namespace == CATEGORY]

    pairs = {(a.member_page_id, a.category_title) for a in snap.assignments}
    article_ids = {p.page_id for p in articles}
    art_pairs = [(m, c) for m, c in pairs if m in article_ids]

    def cats_of(page):
        return sorted({c for m, c in art_pairs if m == page.page_id})

    def members(title):
        return sorted({m for m, c in art_pairs if c == title})

    per_article = [len(cats_of(p)) for p in articles]
    universe = sorted({p.title for p in cat_pages}
                      | {c for _, c in art_pairs})
    sizes = {t: len(members(t)) for t in universe}
    authors = []
    for p in articles:
        if p.last_editor not in authors:
            authors.append(p.last_editor)
    counts = {a: sum(1 for p in articles if p.last_editor == a) for a in authors}
    registered = [a for a in authors if not a.is_anonymous]
    n = len(articles)
    total = sum(per_article)
    categorized = sum(1 for v in per_article if v > 0)
    report = {
        "article_count": n,
        "category_count": len(cat_pages),
        "unique_author_count": len(authors),
        "uncategorized_article_count": sum(1 for v in per_article if v == 0),
        "mean_categories_per_article": total / n if n else 0.0,
        "mean_categories_per_categorized_article": total / categorized if categorized else 0.0,
        "categories_unassigned_count": sum(1 for t in universe if sizes[t] == 0) if n else 0,
        "categories_single_article_count": sum(1 for t in universe if sizes[t] == 1) if n else 0,
        "registered_single_edit_authors": sum(1 for a in registered if counts[a] == 1),
        "mean_pages_per_registered_author": (
            sum(counts[a] for a in registered) / len(registered) if registered else 0.0),
        "anon_last_edited_pages": sum(counts[a] for a in authors if a.is_anonymous),
        "mean_article_bytes": sum(p.text_bytes for p in articles) / n if n else 0.0,
        "total_words": sum(p.word_count for p in articles),
        "empty": n == 0,
    }
    cpa = {}
    for v in per_article:
        cpa[v] = cpa.get(v, 0) + 1
    apc = {}
    for t in universe:
        apc[sizes[t]] = apc.get(sizes[t], 0) + 1
    top = [(t, sizes[t]) for t in universe if sizes[t] > 0]
    top.sort(key=lambda x: (-x[1], x[0]))
    return report, sorted(cpa.items()), sorted(apc.items()), top


def activity_oracle(snap, namespace):
    pages = [p for p in snap.pages if namespace == "All" or p.namespace == namespace]
    authors = sorted({p.last_editor for p in pages}, key=lambda a: a.key)
    rows = [(a, sum(1 for p in pages if p.last_editor == a)) for a in authors]
    # stable sort on count after key order gives the tie-break
    rows.sort(key=lambda r: -r[1])
    return rows


def timeline_oracle(snap):
    pages = [p for p in snap.pages if p.namespace in (MAIN, CATEGORY)]
    if not pages:
        return []
    first = min(p.last_edit for p in pages)
    last = max(p.last_edit for p in pages)
    rows = []
    y, m = first.year, first.month
    while (y, m) <= (last.year, last.month):
        end = datetime(y + (m == 12), m % 12 + 1, 1, tzinfo=timezone.utc)
        upto = [p for p in pages if p.last_edit < end]
        rows.append((f"{y:04d}-{m:02d}",
                     sum(1 for p in upto if p.namespace == MAIN),
                     sum(1 for p in upto if p.namespace == CATEGORY),
                     len({p.last_editor for p in upto})))
        y, m = (y + 1, 1) if m == 12 else (y, m + 1)
    return rows


def random_incidence_rows(seed, max_articles=50, max_categories=20):
    rng = random.Random(seed)
    n_cats = rng.randint(1, max_categories)
    titles = [f"C{i:02d}" for i in range(n_cats)]
    rows = []
    for _ in range(rng.randint(0, max_articles)):
        k = rng.randint(0, min(n_cats, 8))
        rows.append(set(rng.sample(titles, k)))
    return rows


def projection_oracle(rows):
    """All-pairs set intersection: {(a, b): (raw, cos)} with a < b."""
    members = {}
    for k, row in enumerate(rows):
        for t in row:
            members.setdefault(t, set()).add(k)
    out = {}
    for a, b in combinations(sorted(members), 2):
        raw = len(members[a] & members[b])
        if raw:
            out[(a, b)] = (raw, raw / math.sqrt(len(members[a]) * len(members[b])))
    return out


def closure_reach(nodes, edges, target):
    """Nodes that reach ``target`` via a transitive-closure matrix."""
    idx = {n: i for i, n in enumerate(nodes)}
    n = len(nodes)
    reach = [[False] * n for _ in range(n)]
    for i in range(n):
        reach[i][i] = True
    for a, b in edges:
        reach[idx[a]][idx[b]] = True
    for k in range(n):
        rk = reach[k]
        for i in range(n):
            if reach[i][k]:
                ri = reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    if target not in idx:
        return set()
    t = idx[target]
    return {nodes[i] for i in range(n) if reach[i][t]}


def closure_matrix(nodes, edges):
    import numpy as np

    idx = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    r = np.eye(n, dtype=bool)
    for a, b in edges:
        r[idx[a], idx[b]] = True
    for k in range(n):
        r |= np.outer(r[:, k], r[k, :])
    return r


def mle_oracle(samples_hist, xmin):
    """Discrete power-law MLE by golden-section search with mpmath's zeta."""
    tail = [(v, f) for v, f in samples_hist if v >= xmin]
    n = sum(f for _, f in tail)
    s = sum(f * math.log(v) for v, f in tail)

    def nll(g):
        return g * s + n * float(mpmath.log(mpmath.zeta(g, xmin)))

    lo, hi = 1.05, 6.0
    phi = (math.sqrt(5) - 1) / 2
    a = hi - phi * (hi - lo)
    b = lo + phi * (hi - lo)
    fa, fb = nll(a), nll(b)
    while hi - lo > 1e-7:
        if fa < fb:
            hi, b, fb = b, a, fa
            a = hi - phi * (hi - lo)
            fa = nll(a)
        else:
            lo, a, fa = a, b, fb
            b = lo + phi * (hi - lo)
            fb = nll(b)
    return (lo + hi) / 2
