"""Regenerate the bundled synthetic dump and its expected values.

Run from the repository root:  python tests/data/make_fixture.py

Expected values are computed here by direct enumeration over the
ground-truth tables, without importing wikimap.
"""
import json
import math
import random
from collections import Counter, deque
from datetime import datetime, timedelta, timezone
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from xml.sax.saxutils import escape

OUT = Path(__file__).parent / "fixture"
SEED = 20051105

AUTHORS = [("Whobot", None), ("Rambot", None), ("Alice", None), ("Bob", None), (None, "192.0.2.7")]
USER_IDS = {"Whobot": 101, "Rambot": 102, "Alice": 103, "Bob": 104}

PARENTS = {
    "Categories": [],
    "Culture": ["Categories"],
    "Science": ["Categories"],
    "Geography": ["Categories"],
    "History": ["Categories"],
    "People": ["Categories"],
    "Mathematics": ["Categories"],
    "Society": ["Categories"],
    "Fundamental": ["Categories"],
    "Film": ["Culture"],
    "Film_actors": ["Film", "People"],
    "American_actors": ["Film_actors"],
    "Music": ["Culture"],
    "Music_albums": ["Music"],
    "Physics": ["Science"],
    "Chemistry": ["Science", "Chemistry"],  # self-loop
    "Biology": ["Science"],
    "Algebra": ["Mathematics"],
    "Deaths_in_2004": ["People"],
    "Births_in_1950": ["People"],
    "Companies_of_the_United_States": ["Society"],
    "US_counties": ["Geography"],
    "Cities_in_Ohio": ["US_counties"],
    "Archaeology": ["History"],
    "Ancient_history": ["History"],
    # three-cycle hanging off Fundamental
    "Philosophy": ["Fundamental", "Logic"],
    "Logic": ["Linguistics"],
    "Linguistics": ["Philosophy", "Society"],
    "O'Brien_family": ["People"],
    "Orphan_topics": [],  # the one category not reachable from the root
}
LEAVES = [c for c in PARENTS if c not in ("Categories",) and PARENTS[c] != ["Categories"]]


def ts(rng, lo, hi):
    span = int((hi - lo).total_seconds())
    return lo + timedelta(seconds=rng.randrange(span))


def iso(t):
    return t.strftime("%Y-%m-%dT%H:%M:%SZ")


def main():
    rng = random.Random(SEED)
    start = datetime(2003, 1, 1, tzinfo=timezone.utc)
    cats_start = datetime(2004, 5, 1, tzinfo=timezone.utc)
    end = datetime(2005, 11, 5, tzinfo=timezone.utc)

    pages = []  # (id, full_title, ns, title, ts, author, text)
    pid = 10
    for i in range(160):
        title = f"Article {i:03d}" if i % 40 else f"Foo:Bar {i:03d}"
        author = AUTHORS[rng.randrange(len(AUTHORS))]
        words = " ".join(f"w{rng.randrange(100)}" for _ in range(rng.randrange(0, 40)))
        text = "#REDIRECT [[Article 001]]" if i == 7 else words
        pages.append((pid, title, "Main", title.replace(" ", "_"), ts(rng, start, end), author, text))
        pid += 1
    for cat in PARENTS:
        author = AUTHORS[0] if rng.random() < 0.4 else AUTHORS[rng.randrange(len(AUTHORS))]
        text = " ".join(f"[[Category:{p}]]" for p in PARENTS[cat])
        pages.append((pid, "Category:" + cat.replace("_", " "), "Category", cat,
                      ts(rng, cats_start, end), author, text))
        pid += 1
    for i, prefix in enumerate(["Talk", "User", "User talk", "Wikipedia", "Template"]):
        pages.append((pid, f"{prefix}:Page {i}", prefix, f"Page_{i}", ts(rng, start, end), AUTHORS[2], "x"))
        pid += 1

    by_title = {(p[2], p[3]): p[0] for p in pages}
    links = []
    for p in pages:
        if p[2] == "Main":
            if rng.random() < 0.3:
                continue
            k = rng.choice([1, 1, 2, 2, 3, 4])
            for c in rng.sample(LEAVES, k):
                links.append((p[0], c))
    # a few dense articles so some pairs co-occur often
    for p in pages[:160:9]:
        for c in ("Film_actors", "American_actors"):
            if (p[0], c) not in links:
                links.append((p[0], c))
    for cat, parents in PARENTS.items():
        for parent in parents:
            links.append((by_title[("Category", cat)], parent))
    links.append((by_title[("User", "Page_1")], "Film"))  # non-article member
    sql_links = links + links[:5]  # duplicates the reader must collapse

    write_xml(pages)
    write_sql(sql_links)
    expected = oracle(pages, links)
    (OUT / "expected.json").write_text(json.dumps(expected, indent=2, sort_keys=True) + "\n")


def write_xml(pages):
    ns = [(-2, "Media"), (-1, "Special"), (0, ""), (1, "Talk"), (2, "User"), (3, "User talk"),
          (4, "Wikipedia"), (5, "Wikipedia talk"), (6, "Image"), (10, "Template"), (14, "Category"),
          (15, "Category talk")]
    out = ['<mediawiki xmlns="http://www.mediawiki.org/xml/export-0.3/" version="0.3" xml:lang="en">',
           "  <siteinfo>", "    <sitename>Wikipedia</sitename>", "    <namespaces>"]
    for key, name in ns:
        out.append(f'      <namespace key="{key}">{escape(name)}</namespace>' if name
                   else f'      <namespace key="{key}" />')
    out += ["    </namespaces>", "  </siteinfo>"]
    for pid, full, _, _, t, (user, ip), text in pages:
        who = (f"<username>{escape(user)}</username><id>{USER_IDS[user]}</id>" if user
               else f"<ip>{ip}</ip>")
        out += [
            "  <page>",
            f"    <title>{escape(full)}</title>",
            f"    <id>{pid}</id>",
            "    <revision>",
            f"      <id>{pid * 7}</id>",
            f"      <timestamp>{iso(t)}</timestamp>",
            f"      <contributor>{who}</contributor>",
            f'      <text xml:space="preserve">{escape(text)}</text>',
            "    </revision>",
            "  </page>",
        ]
    out.append("</mediawiki>")
    (OUT / "pages.xml").write_text("\n".join(out) + "\n", encoding="utf-8")


def write_sql(links):
    def q(s):
        return "'" + s.replace("\\", "\\\\").replace("'", "\\'") + "'"

    rows = [f"({m},{q(c)},{q('k' + str(m))},'20051001000000')" for m, c in links]
    out = [
        "-- MySQL dump of categorylinks (synthetic fixture)",
        "/*!40101 SET NAMES utf8 */;",
        "DROP TABLE IF EXISTS `categorylinks`;",
        "CREATE TABLE `categorylinks` (",
        "  `cl_from` int(8) unsigned NOT NULL default '0',",
        "  `cl_to` varchar(255) binary NOT NULL default '',",
        "  `cl_sortkey` varchar(86) binary NOT NULL default '',",
        "  `cl_timestamp` timestamp(14) NOT NULL,",
        "  UNIQUE KEY `cl_from` (`cl_from`,`cl_to`)",
        ") TYPE=InnoDB;",
    ]
    for i in range(0, len(rows), 50):
        out.append("INSERT INTO `categorylinks` VALUES " + ",".join(rows[i:i + 50]) + ";")
    (OUT / "categorylinks.sql").write_text("\n".join(out) + "\n", encoding="utf-8")


def oracle(pages, links):
    links = list(dict.fromkeys(links))
    ns_of = {p[0]: p[2] for p in pages}
    articles = [p for p in pages if p[2] == "Main"]
    cat_pages = [p for p in pages if p[2] == "Category"]
    art_links = [(m, c) for m, c in links if ns_of.get(m) == "Main"]
    cats_of = {p[0]: {c for m, c in art_links if m == p[0]} for p in articles}
    members = {}
    for m, c in art_links:
        members.setdefault(c, set()).add(m)
    universe = {p[3] for p in cat_pages} | set(members)
    author_key = [p[5] for p in articles]
    per_author = Counter(author_key)
    registered = {a: n for a, n in per_author.items() if a[0] is not None}
    categorized = sum(1 for s in cats_of.values() if s)

    # co-occurrence by brute-force set intersection over all category pairs
    cats = sorted(members)
    edges = {}
    for a, b in combinations(cats, 2):
        raw = len(members[a] & members[b])
        if raw:
            edges[(a, b)] = (raw, raw / math.sqrt(len(members[a]) * len(members[b])))
    top = sorted(edges.items(), key=lambda kv: (-kv[1][0], kv[0]))[0]
    keep = math.ceil((1 - Fraction("0.686")) * len(edges))
    ranked = sorted(edges.items(), key=lambda kv: (-kv[1][1], -kv[1][0], kv[0]))[:keep]
    retained_nodes = {c for (a, b), _ in ranked for c in (a, b)}

    # hierarchy: reverse reachability from the root
    parents = {}
    for m, c in links:
        if ns_of.get(m) == "Category":
            child = next(p[3] for p in cat_pages if p[0] == m)
            parents.setdefault(child, set()).add(c)
    nodes = {p[3] for p in cat_pages} | {c for _, c in links}
    reach = {"Categories"}
    queue = deque(["Categories"])
    while queue:
        x = queue.popleft()
        for child, ps in parents.items():
            if x in ps and child not in reach:
                reach.add(child)
                queue.append(child)

    return {
        "pages": len(pages),
        "assignments": len(links),
        "stats": {
            "article_count": len(articles),
            "category_count": len(cat_pages),
            "unique_author_count": len(per_author),
            "uncategorized_article_count": len(articles) - categorized,
            "mean_categories_per_article": len(art_links) / len(articles),
            "mean_categories_per_categorized_article": len(art_links) / categorized,
            "categories_unassigned_count": sum(1 for c in universe if len(members.get(c, ())) == 0),
            "categories_single_article_count": sum(1 for c in universe if len(members.get(c, ())) == 1),
            "registered_single_edit_authors": sum(1 for n in registered.values() if n == 1),
            "mean_pages_per_registered_author": sum(registered.values()) / len(registered),
            "anon_last_edited_pages": sum(n for a, n in per_author.items() if a[0] is None),
            "mean_article_bytes": sum(len(p[6].encode()) for p in articles) / len(articles),
            "total_words": sum(len(p[6].split()) for p in articles),
            "empty": False,
        },
        "map": {
            "articles": len(articles),
            "categorized_articles": categorized,
            "categories": len(members),
            "category_pages_without_members": sum(1 for p in cat_pages if p[3] not in members),
            "nodes_with_edges": len({c for e in edges for c in e}),
            "isolated_nodes": len(members) - len({c for e in edges for c in e}),
            "edges": len(edges),
            "max_raw": top[1][0],
            "max_raw_pair": list(top[0]),
            "edges_retained": keep,
            "nodes_retained": len(retained_nodes),
        },
        "hierarchy": {
            "nodes": len(nodes),
            "disconnected": sorted(nodes - reach),
            "cycles": [["Chemistry"], ["Linguistics", "Logic", "Philosophy"]],
        },
    }


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    main()
