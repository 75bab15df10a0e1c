"""Cycle decompositions of twisted tori and the reduction to circulants.

Every twisted torus splits into its ``s`` fibre cycles plus a residual
2-regular graph made of the rung and seam edges.  The shape of the residual
depends on the gluing: a ``d``-shift residual falls into ``gcd(t, d)`` long
cycles, a reflection residual into column pairs.  When ``gcd(t, d) = 1`` the
whole graph collapses to a circulant on ``Z_{s*t}`` and we emit the relabel
certificate instead of an embedding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd

from .graph_core import (
    BundleSpec,
    Graph,
    Pair,
    Reflection,
    Shift,
    SpecFormatError,
    make_edge,
    vertex_index,
)

KIND_FIBER = "fiber"
KIND_SINGLE_JUMP = "single-jump"
KIND_SHIFT_RESIDUAL = "shift-residual"
KIND_TRIVIAL_SHIFT_RESIDUAL = "trivial-shift-residual"
KIND_REFLECTION_RESIDUAL = "reflection-residual"


class DecompositionError(ValueError):
    """Requested decomposition does not exist for these parameters."""


@dataclass(frozen=True)
class Decomposition:
    """A named family of vertex-disjoint cycles, each a closed vertex sequence."""

    kind: str
    cycles: tuple[tuple[int, ...], ...]

    def total_vertices(self) -> int:
        return sum(len(c) for c in self.cycles)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        edges = set()
        for cyc in self.cycles:
            for i, u in enumerate(cyc):
                edges.add(make_edge(u, cyc[(i + 1) % len(cyc)]))
        return frozenset(edges)

    def to_json(self) -> str:
        payload = {"kind": self.kind, "cycles": [list(c) for c in self.cycles]}
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Decomposition":
        try:
            payload = json.loads(text)
            kind = payload["kind"]
            cycles = tuple(tuple(int(v) for v in c) for c in payload["cycles"])
        except (json.JSONDecodeError, TypeError, KeyError, ValueError) as exc:
            raise SpecFormatError(f"bad decomposition payload: {exc}") from exc
        return cls(kind, cycles)


def fiber_cycles(spec: BundleSpec) -> Decomposition:
    """The ``s`` fibre copies of C_t, row by row."""

    t = spec.t
    cycles = tuple(
        tuple(vertex_index(p, q, t) for q in range(t)) for p in range(spec.s)
    )
    return Decomposition(KIND_FIBER, cycles)


def single_jump_cycles(t: int, d: int) -> Decomposition:
    """Orbits of ``q -> q + d`` on Z_t as cycles of the jump-d circulant.

    There are ``gcd(t, d)`` of them, each of length ``t / gcd(t, d)``.  The
    half jump ``d = t/2`` pairs columns into single edges rather than cycles,
    so it is rejected, as is ``d = 0``.
    """

    if not 0 < d < t:
        raise DecompositionError(f"jump {d} out of range 1..{t - 1}")
    if 2 * d == t:
        raise DecompositionError(f"half jump {d} on Z_{t} gives edges, not cycles")
    g = gcd(t, d)
    length = t // g
    cycles = tuple(
        tuple((k + l * d) % t for l in range(length)) for k in range(g)
    )
    return Decomposition(KIND_SINGLE_JUMP, cycles)


def shrink(g: Graph, parts: list[set[int]] | tuple[set[int], ...]) -> Graph:
    """Contract each part to a single vertex, dropping loops and parallel edges.

    Vertices not covered by any part survive as singletons.  New ids follow
    the ascending order of each part's smallest original vertex.
    """

    owner: dict[int, int] = {}
    groups: list[set[int]] = []
    for part in parts:
        part = set(part)
        if not part:
            raise DecompositionError("empty part in shrink")
        for v in part:
            if not 0 <= v < g.n:
                raise DecompositionError(f"part vertex {v} out of range")
            if v in owner:
                raise DecompositionError(f"vertex {v} appears in two parts")
            owner[v] = len(groups)
        groups.append(part)
    for v in range(g.n):
        if v not in owner:
            owner[v] = len(groups)
            groups.append({v})
    order = sorted(range(len(groups)), key=lambda i: min(groups[i]))
    rank = {gi: i for i, gi in enumerate(order)}
    edges = set()
    for u, v in g.edges:
        ru, rv = rank[owner[u]], rank[owner[v]]
        if ru != rv:
            edges.add(make_edge(ru, rv))
    return Graph(len(groups), frozenset(edges))


def shift_residual_cycles(s: int, t: int, d: int) -> Decomposition:
    """Cycles of the rung+seam subgraph of a d-shift torus.

    For ``d > 0`` the residual is ``gcd(t, d)`` cycles of length
    ``s * t / gcd(t, d)``: from column ``k`` walk the rungs to the seam, cross
    to column ``k + d``, and repeat until the column orbit closes.  The
    trivial shift ``d = 0`` degenerates into ``t`` plain s-cycles and is
    flagged with its own kind.
    """

    BundleSpec(s, t, Shift(d))  # bounds check
    if d == 0:
        cycles = tuple(
            tuple(vertex_index(p, q, t) for p in range(s)) for q in range(t)
        )
        return Decomposition(KIND_TRIVIAL_SHIFT_RESIDUAL, cycles)
    g = gcd(t, d)
    length = t // g
    cycles = []
    for k in range(g):
        cyc = []
        for l in range(length):
            col = (k + l * d) % t
            cyc.extend(vertex_index(p, col, t) for p in range(s))
        cycles.append(tuple(cyc))
    return Decomposition(KIND_SHIFT_RESIDUAL, tuple(cycles))


def reflection_residual_cycles(s: int, t: int, kind: str) -> Decomposition:
    """Cycles of the rung+seam subgraph of a reflection torus.

    Columns swapped by the reflection merge into one cycle of length ``2s``;
    each fixed column closes into its own s-cycle.  Cycles are listed by
    ascending smallest column.
    """

    phi = Reflection(kind)
    BundleSpec(s, t, phi)  # bounds + parity check
    cycles = []
    seen: set[int] = set()
    for c in range(t):
        if c in seen:
            continue
        mate = phi.apply(c, t)
        seen.update({c, mate})
        if mate == c:
            cycles.append(tuple(vertex_index(p, c, t) for p in range(s)))
        else:
            down = [vertex_index(p, c, t) for p in range(s)]
            back = [vertex_index(p, mate, t) for p in range(s)]
            cycles.append(tuple(down + back))
    return Decomposition(KIND_REFLECTION_RESIDUAL, tuple(cycles))


def residual_cycles(spec: BundleSpec) -> Decomposition:
    if isinstance(spec.phi, Shift):
        return shift_residual_cycles(spec.s, spec.t, spec.phi.d)
    return reflection_residual_cycles(spec.s, spec.t, spec.phi.kind)


@dataclass(frozen=True)
class DiophantineSolution:
    """The unique solution of ``a*x + b*y = c`` with ``0 <= x <= b-1``."""

    x: int
    y: int

    @property
    def position(self) -> int:
        """1-based rank of element ``1+c`` in ``{1, 1+a, 1+2a, ...}`` mod b."""

        return self.x + 1


def solve_position(a: int, b: int, c: int) -> DiophantineSolution:
    """Solve ``a*x + b*y = c`` with ``0 <= x <= b-1`` for coprime ``a, b``.

    The solution in that window is unique.  ``position`` then locates
    ``1 + c`` inside the ordered set ``{1, 1+a, 1+2a, ...}`` taken mod ``b``.
    """

    if b <= 0:
        raise DecompositionError(f"modulus b must be positive, got {b}")
    if gcd(a, b) != 1:
        raise DecompositionError(
            f"{a}*x + {b}*y = {c}: gcd({a}, {b}) != 1, no unique solution window"
        )
    x = (c * pow(a, -1, b)) % b if b > 1 else 0
    return DiophantineSolution(x, (c - a * x) // b)


@dataclass(frozen=True)
class CirculantReduction:
    """Relabelling that carries a coprime-shift torus onto a circulant.

    ``labels`` maps every torus vertex ``(p, q)`` to its class in ``Z_n``;
    rung and seam edges land on jump 1 and fibre edges on ``fiber_jump``
    (stored already folded into ``1..n//2``).
    """

    s: int
    t: int
    d: int
    n: int
    jump: int
    labels: tuple[tuple[int, int, int], ...]

    def flat_map(self) -> dict[int, int]:
        """Torus flat index -> circulant vertex."""

        return {vertex_index(p, q, self.t): lab for p, q, lab in self.labels}

    def pair_map(self) -> dict[Pair, int]:
        return {(p, q): lab for p, q, lab in self.labels}

    def target(self) -> Graph:
        from .graph_core import circulant

        return circulant(self.n, {1, self.jump})

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "jump": self.jump,
            "relabel": [[p, q, lab] for p, q, lab in self.labels],
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def to_circulant(s: int, t: int, d: int) -> CirculantReduction:
    """Reduce a shift torus with ``gcd(t, d) = 1`` to ``C(Z_{st}, {1, jump})``.

    The rung+seam residual is then a single Hamiltonian cycle; numbering the
    vertices along it (starting at ``(0, 0)`` and crossing the seam first)
    sends rungs and seams to jump 1, and every fibre edge to the constant
    jump ``s * x0`` where ``x0`` is the least positive solution of
    ``(t - d) * x = 1 (mod t)``.
    """

    BundleSpec(s, t, Shift(d))  # bounds check
    if d == 0 or gcd(t, d) != 1:
        raise DecompositionError(
            f"circulant reduction needs gcd(t, d) = 1 with d > 0, got t={t}, d={d}"
        )
    n = s * t
    x0 = solve_position(t - d, t, 1).x
    raw = (s * x0) % n
    jump = min(raw, n - raw)
    d_inv = pow(d, -1, t)
    labels = []
    for p in range(s):
        for q in range(t):
            l = (-q * d_inv) % t
            labels.append((p, q, (l * s - p) % n))
    return CirculantReduction(s, t, d, n, jump, tuple(sorted(labels)))
