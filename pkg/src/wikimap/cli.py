"""Command line entry point: ``wikimap ingest|stats|map|hierarchy``.

Exit codes: 0 success, 1 bad configuration, 2 dump parse failure, 3 I/O
failure during ingest, 4 missing or corrupt snapshot, 5 empty network
after the link cut, 6 hierarchy root missing.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path

from . import _kernels, hierarchy, stats
from .config import ConfigError, load_config
from .coocnet import (
    build_incidence,
    edge_cut,
    edges_tsv,
    nodes_tsv,
    project_cooccurrence,
    weight_histogram,
)
from .diagnostics import WarningLog
from .errors import EmptyNetwork, InsufficientTail, DegenerateSupport, ParseError, RootMissing, SnapshotError
from .ingest import parse_categorylinks_sql, parse_xml_dump
from .layout import layout_force
from .mapview import age_overlay, export_pajek, keyword_overlay, render_svg, top_author_overlay
from .powerlaw import fit_power_law
from .stats import CorpusView
from .store import build_snapshot, read_corpus, write_corpus

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARSE = 2
EXIT_IO = 3
EXIT_SNAPSHOT = 4
EXIT_EMPTY = 5
EXIT_ROOT = 6

log = logging.getLogger("wikimap")


def _dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _write(out: Path, name: str, text: str, written: list) -> None:
    (out / name).write_text(text, encoding="utf-8", newline="\n")
    written.append(name)


def _load_snapshot(path):
    try:
        return read_corpus(path)
    except (OSError, SnapshotError, ValueError, KeyError) as exc:
        print(f"error: cannot read snapshot {path}: {exc}", file=sys.stderr)
        return None


def cmd_ingest(xml_path, sql_path, snapshot_dir, quiet=False) -> int:
    warnings = WarningLog(quiet=quiet)
    try:
        log.info("parsing page dump %s", xml_path)
        pages = list(parse_xml_dump(xml_path, warnings=warnings))
        log.info("parsing categorylinks dump %s", sql_path)
        links = list(parse_categorylinks_sql(sql_path, warnings=warnings))
        snapshot = build_snapshot(pages, links, warnings=warnings)
        log.info("writing snapshot to %s", snapshot_dir)
        write_corpus(snapshot, snapshot_dir)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"pages={len(snapshot.pages)} assignments={len(snapshot.assignments)}")
    return EXIT_OK


def cmd_stats(snapshot_dir, out_dir, fmt="json") -> int:
    snapshot = _load_snapshot(snapshot_dir)
    if snapshot is None:
        return EXIT_SNAPSHOT
    log.info("computing statistics")
    view = CorpusView(snapshot)
    data = stats.full_report(view)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    _write(out, "stats.json", _dump_json(data), written)
    _write(out, "categories_per_article.tsv", stats.categories_per_article_hist(view).to_tsv(), written)
    _write(out, "articles_per_category.tsv", stats.articles_per_category_hist(view).to_tsv(), written)
    _write(out, "timeline.tsv", stats.timeline_tsv(stats.timeline(view)), written)
    if fmt == "table":
        sys.stdout.write(stats.format_table(stats.corpus_counts(view)))
    else:
        sys.stdout.write(_dump_json(data["report"]))
    return EXIT_OK


def run_map(snapshot, config, out_dir) -> dict:
    """Build, cut, lay out and render the category map; returns the manifest.

    Raises EmptyNetwork when no edge survives.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    log.info("building incidence")
    view = CorpusView(snapshot)
    incidence = build_incidence(view)
    log.info("projecting %d articles onto %d categories", incidence.n_articles, incidence.n_categories)
    network = project_cooccurrence(incidence, config.raw_formula)
    if network.n_edges == 0:
        raise EmptyNetwork("no co-occurring categories")
    _write(out, "nodes.tsv", nodes_tsv(network), written)
    _write(out, "edges.tsv", edges_tsv(network), written)
    hist = weight_histogram(network)
    _write(out, "weights.tsv", hist.to_tsv(), written)
    try:
        fit = fit_power_law(hist, config.xmin)
        power_law = dataclasses.asdict(fit)
    except (InsufficientTail, DegenerateSupport) as exc:
        power_law = {"error": type(exc).__name__, "detail": str(exc), "xmin": config.xmin}

    log.info("cutting %.1f%% of %d links", 100 * config.cut_fraction, network.n_edges)
    cut = edge_cut(network, config.cut_fraction, config.cut_key)
    if cut.n_edges == 0:
        raise EmptyNetwork("no links retained after the cut")
    _write(out, "edges_cut.tsv", edges_tsv(cut), written)
    keep = (~cut.isolated).nonzero()[0]
    log.info("laying out %d nodes", len(keep))
    points = layout_force(cut, config.layout, nodes=keep)
    _write(out, "layout.tsv", points.to_tsv(), written)
    coords = points.as_dict()

    labels = config.label_set
    overlays = {
        "map.svg": keyword_overlay(cut, config.keyword_rules, labels, config.default_color),
        "map_age.svg": age_overlay(
            cut, config.age_old_color, config.age_young_color, config.default_color, labels
        ),
        "map_authors.svg": top_author_overlay(
            cut, config.top_k_authors, config.palette, config.other_color, labels
        ),
    }
    for name, colors in overlays.items():
        _write(out, name, render_svg(coords, colors, cut.titles, tuple(config.canvas)), written)
    legend = {
        "keyword": overlays["map.svg"].legend,
        "age": overlays["map_age.svg"].legend,
        "authors": overlays["map_authors.svg"].legend,
    }
    _write(out, "legend.json", _dump_json(legend), written)
    _write(out, "map.net", export_pajek(cut, points), written)

    top = network.max_raw_edge()
    degree = network.degree
    manifest = {
        "backend": _kernels.active().name,
        "parameters": config.to_json(),
        "counts": {
            "articles": incidence.n_articles,
            "categorized_articles": incidence.nonempty_rows,
            "categories": incidence.n_categories,
            "category_pages_without_members": len(incidence.orphan_category_pages),
            "nodes_with_edges": int((degree > 0).sum()),
            "isolated_nodes": int((degree == 0).sum()),
            "edges": network.n_edges,
            "max_raw": top.raw,
            "max_raw_pair": [network.titles[top.cat_i], network.titles[top.cat_j]],
            "edges_retained": cut.n_edges,
            "nodes_retained": len(keep),
        },
        "power_law": power_law,
        "outputs": sorted(written + ["manifest.json"]),
    }
    manifest["parameters"].pop("paths", None)
    _write(out, "manifest.json", _dump_json(manifest), [])
    return manifest


def cmd_map(snapshot_dir, config, out_dir) -> int:
    snapshot = _load_snapshot(snapshot_dir)
    if snapshot is None:
        return EXIT_SNAPSHOT
    try:
        manifest = run_map(snapshot, config, out_dir)
    except EmptyNetwork as exc:
        print(f"error: empty network: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    c = manifest["counts"]
    print(f"nodes={c['nodes_with_edges']} edges={c['edges']} retained={c['edges_retained']} "
          f"laid_out={c['nodes_retained']}")
    return EXIT_OK


def cmd_hierarchy(snapshot_dir, out_dir, root=hierarchy.DEFAULT_ROOT, depth=3) -> int:
    snapshot = _load_snapshot(snapshot_dir)
    if snapshot is None:
        return EXIT_SNAPSHOT
    graph = hierarchy.build_category_graph(snapshot)
    try:
        tree = hierarchy.depth_listing(graph, root, depth)
    except RootMissing:
        print(f"error: root category {root!r} not found", file=sys.stderr)
        return EXIT_ROOT
    report = hierarchy.hierarchy_report(graph, root, depth)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    _write(out, "hierarchy.json", hierarchy.dumps(report), written)
    _write(out, "cycles.json", hierarchy.dumps(report["cycles"]), written)
    _write(out, "listing.txt", hierarchy.listing_text(tree), written)
    _write(out, "listing.json", hierarchy.dumps(tree.to_dict()), written)
    print(f"nodes={report['nodes']} edges={report['edges']} "
          f"disconnected={report['disconnected_count']} cycles={len(report['cycles'])}")
    return EXIT_OK


def _global_options(parser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--config", default=default, help="JSON pipeline configuration")
    parser.add_argument("--seed", type=int, default=default, help="layout seed (unsigned 64-bit)")
    parser.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS if suppress else False,
                        help="suppress stage log and warnings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wikimap", description=__doc__.splitlines()[0])
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse dumps into a snapshot directory")
    _global_options(p, suppress=True)
    p.add_argument("xml", nargs="?", help="page XML dump (.xml, .gz, .bz2)")
    p.add_argument("sql", nargs="?", help="categorylinks SQL dump")
    p.add_argument("snapshot", nargs="?", help="snapshot directory to write")

    p = sub.add_parser("stats", help="corpus statistics")
    _global_options(p, suppress=True)
    p.add_argument("snapshot", nargs="?")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--out", help="output directory")

    p = sub.add_parser("map", help="build, lay out and render the category map")
    _global_options(p, suppress=True)
    p.add_argument("snapshot", nargs="?")
    p.add_argument("--out", help="output directory")
    p.add_argument("--cut", type=float, dest="cut_fraction", help="fraction of links to cut")
    p.add_argument("--xmin", type=int, help="power-law tail threshold")
    p.add_argument("--raw-formula", choices=("cooccurrence", "sum"))
    p.add_argument("--cut-key", choices=("cos", "raw"))

    p = sub.add_parser("hierarchy", help="category hierarchy listing, cycles, disconnected categories")
    _global_options(p, suppress=True)
    p.add_argument("snapshot", nargs="?")
    p.add_argument("--out", help="output directory")
    p.add_argument("--root", default=hierarchy.DEFAULT_ROOT)
    p.add_argument("--depth", type=int, default=3)
    return parser


def _need(value, what, parser):
    if value is None:
        parser.error(f"{what} is required (argument or config paths)")
    return value


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = load_config(args.config)
        if args.seed is not None:
            config.layout = dataclasses.replace(config.layout, seed=args.seed)
        for key in ("cut_fraction", "xmin", "raw_formula", "cut_key"):
            value = getattr(args, key, None)
            if value is not None:
                setattr(config, key, value)
        config.validate()
    except (ConfigError, OSError, ValueError) as exc:
        print(f"error: configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    paths = config.paths
    snapshot = getattr(args, "snapshot", None) or paths.snapshot
    out = getattr(args, "out", None) or paths.output or "wikimap-out"
    if args.command == "ingest":
        return cmd_ingest(
            _need(args.xml or paths.xml, "xml dump", parser),
            _need(args.sql or paths.sql, "sql dump", parser),
            _need(snapshot, "snapshot directory", parser),
            quiet=args.quiet,
        )
    snapshot = _need(snapshot, "snapshot directory", parser)
    if args.command == "stats":
        return cmd_stats(snapshot, out, args.format)
    if args.command == "map":
        return cmd_map(snapshot, config, out)
    if args.command == "hierarchy":
        if args.depth < 0:
            parser.error("--depth must be >= 0")
        return cmd_hierarchy(snapshot, out, args.root, args.depth)
    parser.error(f"unknown command {args.command}")
    return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
