"""Circular layouts, chord crossings, and the matching-book-embedding check.

An embedding is valid when its page assignment is a proper edge colouring
(no two edges at a common vertex share a page) and no two same-page chords
cross in the circular layout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .graph_core import Edge, Graph, SpecFormatError, make_edge

YELLOW, GREEN, PURPLE, RED, BLUE = range(5)
COLOR_NAMES = ("yellow", "green", "purple", "red", "blue")

REASON_ENDPOINT = "shared-endpoint"
REASON_CROSSING = "crossing"

DISPERSABLE = "dispersable"
NEARLY_DISPERSABLE = "nearly-dispersable"
NEITHER = "neither"


class CoverageError(ValueError):
    """Embedding is structurally broken: wrong vertex order or edge set."""


def chords_cross(a: int, b: int, c: int, d: int) -> bool:
    """Do chords a-b and c-d cross, given circle positions of the endpoints?

    True exactly when the endpoints strictly interleave around the circle.
    A shared endpoint never counts as a crossing.
    """

    if len({a, b, c, d}) < 4:
        return False
    a, b = (a, b) if a < b else (b, a)
    c, d = (c, d) if c < d else (d, c)
    return (a < c < b < d) or (c < a < d < b)


@dataclass
class BookEmbedding:
    """Spine order plus a total edge -> page map using ``m`` pages."""

    order: tuple[int, ...]
    pages: dict[Edge, int]
    m: int

    def __post_init__(self) -> None:
        self.order = tuple(self.order)
        self.pages = {make_edge(u, v): p for (u, v), p in self.pages.items()}

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    def pages_used(self) -> int:
        return len(set(self.pages.values()))

    def to_json(self) -> str:
        payload = {
            "order": list(self.order),
            "pages": [[u, v, p] for (u, v), p in sorted(self.pages.items())],
            "m": self.m,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "BookEmbedding":
        try:
            payload = json.loads(text)
            order = tuple(int(v) for v in payload["order"])
            pages = {make_edge(int(u), int(v)): int(p) for u, v, p in payload["pages"]}
            m = int(payload["m"])
        except (json.JSONDecodeError, TypeError, KeyError, ValueError) as exc:
            raise SpecFormatError(f"bad embedding payload: {exc}") from exc
        return cls(order, pages, m)


Violation = tuple[Edge, Edge, str]


@dataclass
class ValidationReport:
    is_proper: bool
    is_noncrossing: bool
    pages_used: int
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return self.is_proper and self.is_noncrossing


def validate(g: Graph, emb: BookEmbedding) -> ValidationReport:
    """Check properness and page planarity; structural breakage raises.

    Raises CoverageError when the spine is not a permutation of the vertex
    set, the page map does not cover exactly E(g), or a page index falls
    outside ``0..m-1``.  Colouring faults are collected as violations.
    """

    if sorted(emb.order) != list(range(g.n)):
        raise CoverageError("spine order is not a permutation of the vertex set")
    if set(emb.pages) != g.edges:
        missing = sorted(g.edges - set(emb.pages))
        extra = sorted(set(emb.pages) - g.edges)
        raise CoverageError(f"page map mismatch: missing {missing}, extra {extra}")
    if emb.m < 1:
        raise CoverageError(f"page count m={emb.m} must be at least 1")
    for e, p in emb.pages.items():
        if not 0 <= p < emb.m:
            raise CoverageError(f"page {p} of edge {e} outside 0..{emb.m - 1}")

    pos = emb.position()
    by_page: dict[int, list[Edge]] = {}
    for e, p in emb.pages.items():
        by_page.setdefault(p, []).append(e)

    violations: list[Violation] = []
    for page_edges in by_page.values():
        page_edges.sort()
        for i, e in enumerate(page_edges):
            for f in page_edges[i + 1 :]:
                if set(e) & set(f):
                    violations.append((e, f, REASON_ENDPOINT))
                elif chords_cross(pos[e[0]], pos[e[1]], pos[f[0]], pos[f[1]]):
                    violations.append((e, f, REASON_CROSSING))
    violations.sort()
    is_proper = all(r != REASON_ENDPOINT for _, _, r in violations)
    is_noncrossing = all(r != REASON_CROSSING for _, _, r in violations)
    return ValidationReport(is_proper, is_noncrossing, emb.pages_used(), tuple(violations))


def classify(g: Graph, emb: BookEmbedding) -> str:
    """Classify a *valid* embedding against the degree bound.

    This grades the witness only; it pins the optimum exactly when the page
    count also meets the known lower bound (see the oracle module).
    """

    report = validate(g, emb)
    if not report.ok:
        raise CoverageError(f"embedding invalid: {report.violations[:3]}")
    delta = max((len(a) for a in g.adjacency), default=0)
    if report.pages_used == delta:
        return DISPERSABLE
    if report.pages_used == delta + 1:
        return NEARLY_DISPERSABLE
    return NEITHER
