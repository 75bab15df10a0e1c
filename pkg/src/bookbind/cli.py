"""Command-line front end.

Exit codes:
  0   success
  1   sweep completed but at least one row failed
  2   embedding invalid (properness/crossing violations or bad coverage)
  3   construction unsupported for the given parameters (reduction printed)
  4   search ended without a definitive answer (budget exhausted)
  64  usage: bad arguments or malformed spec string
  65  well-formed but invalid parameters (bounds, palette too small, ...)
  66  I/O or unreadable input file
  70  internal error: a construction recipe failed to complete

Spec strings: ``s=5,t=8,phi=shift:2``, ``s=4,t=9,phi=refl:one``, or
``circulant:n=9,S=1,3`` where a circulant is accepted (build/mbt only).

BOOKBIND_THREADS is read and clamped but the tool is single-threaded; any
value other than 1 just earns a note on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from math import gcd

from .bundle_decomp import DecompositionError
from .constructions import CompletionError, ConstructionResult, Unsupported, embed
from .graph_core import (
    BundleSpec,
    Graph,
    InvalidSpecError,
    Reflection,
    Shift,
    SpecFormatError,
    bundle,
    circulant,
    format_bundle_spec,
    parse_bundle_spec,
    predict_bipartite,
    vertex_pair,
)
from .layout_engine import (
    COLOR_NAMES,
    BookEmbedding,
    CoverageError,
    classify,
    validate,
)
from .oracle import (
    CERTIFIED,
    EXACT,
    OracleError,
    SearchBudget,
    brute_force_mbt,
    certify,
    search_fixed_pages,
)

EXIT_OK = 0
EXIT_SWEEP_FAILURES = 1
EXIT_INVALID_EMBEDDING = 2
EXIT_UNSUPPORTED = 3
EXIT_UNDECIDED = 4
EXIT_USAGE = 64
EXIT_PARAMS = 65
EXIT_IO = 66
EXIT_INTERNAL = 70


class _Parser(argparse.ArgumentParser):
    """argparse's default error exit is 2, which collides with the
    invalid-embedding code; route usage problems to 64 instead."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_spec(text: str) -> Graph | BundleSpec:
    """Bundle spec string, or ``circulant:n=..,S=k1,k2,..`` for a graph."""

    if text.startswith("circulant:"):
        body = text[len("circulant:") :]
        left, sep, right = body.partition(",S=")
        if not sep or not left.startswith("n="):
            raise SpecFormatError(f"expected circulant:n=<int>,S=<k1>,<k2>,..: {text!r}")
        try:
            n = int(left[2:])
            jumps = [int(part) for part in right.split(",")]
        except ValueError as exc:
            raise SpecFormatError(f"bad circulant spec {text!r}: {exc}") from exc
        return circulant(n, jumps)
    return parse_bundle_spec(text)


def _require_bundle(parsed: Graph | BundleSpec, command: str) -> BundleSpec:
    if not isinstance(parsed, BundleSpec):
        raise InvalidSpecError(f"{command} works on bundle specs, not circulants")
    return parsed


def _graph_of(parsed: Graph | BundleSpec) -> Graph:
    return bundle(parsed) if isinstance(parsed, BundleSpec) else parsed


def _dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _dot(g: Graph) -> str:
    lines = ["graph g {"]
    lines += [f"  {u} -- {v};" for u, v in g.edge_list]
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_build(args) -> int:
    g = _graph_of(_parse_spec(args.spec))
    text = g.to_json() + "\n" if args.format == "json" else _dot(g)
    _emit(text, args.out)
    return EXIT_OK


def _embedding_payload(res: ConstructionResult) -> dict:
    return {
        "spec": format_bundle_spec(res.spec),
        "rule": res.rule,
        "pages": res.claimed_pages,
        "classification": classify(res.graph, res.embedding),
        "embedding": json.loads(res.embedding.to_json()),
    }


def _report_unsupported(res: Unsupported) -> int:
    payload = {
        "unsupported": res.reason,
        "reduction": None if res.reduction is None else json.loads(res.reduction.to_json()),
    }
    sys.stdout.write(_dumps(payload))
    return EXIT_UNSUPPORTED


def cmd_embed(args) -> int:
    spec = _require_bundle(_parse_spec(args.spec), "embed")
    res = embed(spec)
    if isinstance(res, Unsupported):
        return _report_unsupported(res)
    _emit(_dumps(_embedding_payload(res)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = _parse_spec(args.spec)
    g = _graph_of(spec)
    try:
        with open(args.embedding, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        sys.stderr.write(f"cannot read {args.embedding}: {exc}\n")
        return EXIT_IO
    try:
        emb = BookEmbedding.from_json(text)
    except SpecFormatError as exc:
        sys.stderr.write(f"{args.embedding}: {exc}\n")
        return EXIT_IO
    try:
        report = validate(g, emb)
    except CoverageError as exc:
        sys.stdout.write(_dumps({"ok": False, "error": str(exc)}))
        return EXIT_INVALID_EMBEDDING
    payload = {
        "ok": report.ok,
        "proper": report.is_proper,
        "noncrossing": report.is_noncrossing,
        "pages_used": report.pages_used,
        "violations": [[list(e), list(f), why] for e, f, why in report.violations],
    }
    sys.stdout.write(_dumps(payload))
    return EXIT_OK if report.ok else EXIT_INVALID_EMBEDDING


def cmd_mbt(args) -> int:
    g = _graph_of(_parse_spec(args.spec))
    budget = SearchBudget(args.max_orders, args.max_nodes, args.time_limit)
    if args.pages is not None:
        res = search_fixed_pages(g, args.pages, budget)
        payload = {
            "m": res.m,
            "found": res.found,
            "exhausted": res.exhausted,
            "counters": res.counters,
            "witness": None if res.witness is None else json.loads(res.witness.to_json()),
        }
        sys.stdout.write(_dumps(payload))
        return EXIT_OK if res.found or res.exhausted else EXIT_UNDECIDED
    res = brute_force_mbt(g, budget)
    payload = {
        "status": res.status,
        "value": res.value,
        "counters": res.counters,
        "witness": None if res.witness is None else json.loads(res.witness.to_json()),
    }
    sys.stdout.write(_dumps(payload))
    return EXIT_OK if res.status == EXACT else EXIT_UNDECIDED


def _render_svg(
    emb: BookEmbedding, radius: float, palette: list[str], labels: str, t: int
) -> str:
    n = len(emb.order)
    margin = 40.0
    size = 2 * (radius + margin)
    cx = cy = radius + margin
    pos = {}
    for k, v in enumerate(emb.order):  # clockwise from twelve o'clock
        theta = 2 * math.pi * k / n
        pos[v] = (cx + radius * math.sin(theta), cy - radius * math.cos(theta))
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.2f}" '
        f'height="{size:.2f}" viewBox="0 0 {size:.2f} {size:.2f}">',
        f'  <circle class="spine" cx="{cx:.2f}" cy="{cy:.2f}" r="{radius:.2f}" '
        f'fill="none" stroke="#cccccc"/>',
    ]
    for (u, v), page in sorted(emb.pages.items()):
        (x1, y1), (x2, y2) = pos[u], pos[v]
        lines.append(
            f'  <line class="chord" x1="{x1:.2f}" y1="{y1:.2f}" '
            f'x2="{x2:.2f}" y2="{y2:.2f}" stroke="{palette[page]}"/>'
        )
    for k, v in enumerate(emb.order):
        x, y = pos[v]
        lines.append(f'  <circle class="vertex" cx="{x:.2f}" cy="{y:.2f}" r="3.00" fill="#222222"/>')
        if labels == "pair":
            p, q = vertex_pair(v, t)
            label = f"({p + 1},{q + 1})"
        else:
            label = str(v)
        theta = 2 * math.pi * k / n
        lx = cx + (radius + 16) * math.sin(theta)
        ly = cy - (radius + 16) * math.cos(theta)
        lines.append(
            f'  <text class="label" x="{lx:.2f}" y="{ly:.2f}" '
            f'font-size="10" text-anchor="middle">{label}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def cmd_render(args) -> int:
    spec = _require_bundle(_parse_spec(args.spec), "render")
    res = embed(spec)
    if isinstance(res, Unsupported):
        return _report_unsupported(res)
    if res.graph.n == 0:
        raise InvalidSpecError("nothing to render: empty graph")
    palette = list(COLOR_NAMES) if args.palette is None else args.palette.split(",")
    need = max(res.embedding.pages.values()) + 1
    if len(palette) < need or any(not c.strip() for c in palette):
        raise InvalidSpecError(f"palette needs at least {need} non-empty colors")
    if args.radius <= 0:
        raise InvalidSpecError(f"radius must be positive, got {args.radius}")
    svg = _render_svg(res.embedding, args.radius, palette, args.labels, res.spec.t)
    _emit(svg, args.out)
    return EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError as exc:
        raise SpecFormatError(f"bad range {text!r}; want A or A:B") from exc
    return a, b


def _sweep_specs(family: str, s_range: tuple[int, int], t_range: tuple[int, int]):
    for s in range(s_range[0], s_range[1] + 1):
        for t in range(t_range[0], t_range[1] + 1):
            if family == "shift":
                for d in range(1, t // 2 + 1):
                    if gcd(t, d) > 1:
                        yield BundleSpec(s, t, Shift(d))
            else:
                kinds = ("one",) if t % 2 else ("none", "two")
                for kind in kinds:
                    yield BundleSpec(s, t, Reflection(kind))


def cmd_sweep(args) -> int:
    s_range = _parse_range(args.s)
    t_range = _parse_range(args.t)
    if s_range[0] > s_range[1] or t_range[0] > t_range[1]:
        raise InvalidSpecError(f"empty sweep ranges s={args.s} t={args.t}")
    rows = failures = 0
    for spec in _sweep_specs(args.family, s_range, t_range):
        rows += 1
        name = format_bundle_spec(spec)
        predicted = 4 if predict_bipartite(spec) else 5
        try:
            res = embed(spec)
            if isinstance(res, Unsupported):
                raise CompletionError("sweep", res.reason)
            report = validate(res.graph, res.embedding)
            cert = certify(res.spec, res.embedding)
            ok = (
                report.ok
                and report.pages_used == predicted == res.claimed_pages
                and cert.status == CERTIFIED
            )
            line = (
                f"{name}\tpredicted={predicted}\tpages={report.pages_used}"
                f"\tvalid={'yes' if report.ok else 'NO'}"
                f"\tcertified={'yes' if cert.status == CERTIFIED else 'NO'}"
                f"\t{'ok' if ok else 'FAIL'}"
            )
        except (CompletionError, OracleError, CoverageError) as exc:
            ok = False
            line = f"{name}\tpredicted={predicted}\tERROR: {exc}"
        failures += 0 if ok else 1
        sys.stdout.write(line + "\n")
    if rows == 0:
        raise InvalidSpecError("sweep matched no parameter combinations")
    sys.stdout.write(f"rows={rows} failures={failures}\n")
    return EXIT_SWEEP_FAILURES if failures else EXIT_OK


def _build_parser() -> _Parser:
    p = _Parser(prog="bookbind", description="Matching book embeddings of cycle bundles.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="construct the graph and print it")
    b.add_argument("spec")
    b.add_argument("--format", choices=("json", "dot"), default="json")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    e = sub.add_parser("embed", help="produce an optimal matching book embedding")
    e.add_argument("spec")
    e.add_argument("--out")
    e.set_defaults(func=cmd_embed)

    v = sub.add_parser("verify", help="validate an embedding JSON file against a spec")
    v.add_argument("spec")
    v.add_argument("--embedding", required=True, help="path to embedding JSON")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("mbt", help="brute-force matching book thickness")
    m.add_argument("spec")
    m.add_argument("--pages", type=int, help="test exactly this page count")
    m.add_argument("--max-orders", type=int)
    m.add_argument("--max-nodes", type=int)
    m.add_argument("--time-limit", type=float, help="seconds")
    m.set_defaults(func=cmd_mbt)

    r = sub.add_parser("render", help="deterministic SVG of the embedding")
    r.add_argument("spec")
    r.add_argument("--out")
    r.add_argument("--radius", type=float, default=180.0)
    r.add_argument("--palette", help="comma-separated chord colors, one per page")
    r.add_argument("--labels", choices=("flat", "pair"), default="flat")
    r.set_defaults(func=cmd_render)

    w = sub.add_parser("sweep", help="embed+verify+certify a parameter grid")
    w.add_argument("--family", choices=("shift", "reflection"), required=True)
    w.add_argument("--s", required=True, metavar="A:B")
    w.add_argument("--t", required=True, metavar="A:B")
    w.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    threads = os.environ.get("BOOKBIND_THREADS")
    if threads is not None and threads.strip() != "1":
        sys.stderr.write("note: BOOKBIND_THREADS ignored; bookbind is single-threaded\n")
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse exits; fold into the return-code API
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SpecFormatError as exc:
        sys.stderr.write(f"bookbind: {exc}\n")
        return EXIT_USAGE
    except (InvalidSpecError, DecompositionError, OracleError) as exc:
        sys.stderr.write(f"bookbind: {exc}\n")
        return EXIT_PARAMS
    except CoverageError as exc:
        sys.stderr.write(f"bookbind: {exc}\n")
        return EXIT_INVALID_EMBEDDING
    except CompletionError as exc:
        sys.stderr.write(f"bookbind: construction failed: {exc}\n")
        return EXIT_INTERNAL
    except OSError as exc:
        sys.stderr.write(f"bookbind: {exc}\n")
        return EXIT_IO


def entrypoint() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entrypoint()
