"""Serialization and drawing: graph6, rotation documents, DOT, edge lists, SVG.

All text output uses LF line endings and is byte-deterministic for a given
input.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from logdiam.construction import (
    INTERNAL,
    LEAF,
    ROOT,
    SUBDIVISION,
    TREE_A,
    TREE_B,
    GkGraph,
    GkParams,
    VertexLabel,
    level_size,
)
from logdiam.embedded import EmbeddedGraph, EmbeddingError

GRAPH6_HEADER = ">>graph6<<"
ROTDOC_VERSION = 1


class FormatError(ValueError):
    """Malformed serialized input."""


# -- graph6 -------------------------------------------------------------------


def _encode_size(n: int) -> bytes:
    if n < 0 or n >= 2**36:
        raise ValueError(f"graph6 cannot encode n={n}")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def _decode_size(data: bytes) -> tuple[int, int]:
    """Return (n, offset of the adjacency section)."""
    if not data:
        raise FormatError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        width, start = 6, 2
    else:
        width, start = 3, 1
    field = data[start : start + width]
    if len(field) < width:
        raise FormatError("truncated graph6 size field")
    n = 0
    for byte in field:
        n = (n << 6) | (byte - 63)
    return n, start + width


_SIX_BITS = np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)


def to_graph6(n: int, edges) -> str:
    """Encode a simple undirected graph (no header, no trailing newline)."""
    pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    if len(pairs):
        if np.any(pairs[:, 0] == pairs[:, 1]):
            raise ValueError("graph6 cannot encode loops")
        if pairs.min() < 0 or pairs.max() >= n:
            raise IndexError(f"edge endpoint out of range for n={n}")
    lo = pairs.min(axis=1)
    hi = pairs.max(axis=1)
    nbits = n * (n - 1) // 2
    bits = np.zeros(-(-nbits // 6) * 6, dtype=np.uint8)
    # column-major upper triangle: bit (i, j), i < j, sits at j(j-1)/2 + i
    bits[hi * (hi - 1) // 2 + lo] = 1
    body = bits.reshape(-1, 6) @ _SIX_BITS + 63
    return (_encode_size(n) + body.astype(np.uint8).tobytes()).decode("ascii")


def from_graph6(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Decode graph6 text to ``(n, edges)`` with edges sorted by ``(j, i)``."""
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    data = s.encode("ascii", errors="replace")
    raw = np.frombuffer(data, dtype=np.uint8)
    bad = np.flatnonzero((raw < 63) | (raw > 126))
    if len(bad):
        pos = int(bad[0])
        raise FormatError(f"byte {data[pos]!r} at offset {pos} outside graph6 range 63..126")
    n, offset = _decode_size(data)
    nbits = n * (n - 1) // 2
    body = raw[offset:]
    need = -(-nbits // 6)
    if len(body) != need:
        raise FormatError(f"graph6 adjacency section has {len(body)} bytes, expected {need}")
    bits = ((body[:, None] - 63) & _SIX_BITS) != 0
    if bits.ravel()[nbits:].any():
        raise FormatError("nonzero padding bits in graph6 adjacency section")
    k = np.flatnonzero(bits.ravel()[:nbits])
    j = ((1 + np.sqrt(1 + 8 * k.astype(np.float64))) / 2).astype(np.int64)
    # float rounding guard
    j -= j * (j - 1) // 2 > k
    j += (j + 1) * j // 2 <= k
    i = k - j * (j - 1) // 2
    return n, list(zip(i.tolist(), j.tolist()))


def graph_to_graph6(g: EmbeddedGraph) -> str:
    if not g.is_simple():
        raise ValueError("graph6 requires a simple graph")
    return to_graph6(g.vertex_count, g.edges())


def graph_from_graph6(text: str) -> EmbeddedGraph:
    """Decode into an :class:`EmbeddedGraph` with insertion-order rotations."""
    n, edges = from_graph6(text)
    return EmbeddedGraph.from_edges(n, edges)


# -- rotation documents ---------------------------------------------------------


@dataclass
class RotationDocument:
    n: int
    edges: list[tuple[int, int]]
    rotations: list[list[int]]
    labels: list[VertexLabel] | None = None
    version: int = ROTDOC_VERSION

    def to_graph(self) -> EmbeddedGraph:
        g = EmbeddedGraph(self.n)
        for u, v in self.edges:
            g.add_edge(u, v)
        for v, rot in enumerate(self.rotations):
            try:
                g.set_rotation(v, rot)
            except EmbeddingError as exc:
                raise FormatError(str(exc)) from None
        return g.freeze()

    def encode(self) -> str:
        doc = {
            "version": self.version,
            "n": self.n,
            "edges": [[u, v] for u, v in self.edges],
            "rotations": [list(r) for r in self.rotations],
        }
        if self.labels is not None:
            doc["labels"] = [
                {"tree": lab.tree, "kind": lab.kind, "depth": lab.depth, "pos": lab.pos}
                for lab in self.labels
            ]
        return json.dumps(doc, separators=(",", ":"), ensure_ascii=True) + "\n"


def to_rotation_doc(g: EmbeddedGraph, labels: list[VertexLabel] | None = None) -> RotationDocument:
    return RotationDocument(
        n=g.vertex_count,
        edges=g.edges(),
        rotations=[list(r) for r in g.rotations()],
        labels=list(labels) if labels is not None else None,
    )


def _require_int(value, what: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise FormatError(f"{what} must be an integer, got {value!r}")
    return value


def decode_rotation_doc(text: str) -> RotationDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"rotation document is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError("rotation document must be a JSON object")
    for key in ("version", "n", "edges", "rotations"):
        if key not in doc:
            raise FormatError(f"rotation document lacks {key!r}")
    if doc["version"] != ROTDOC_VERSION:
        raise FormatError(f"unsupported rotation document version {doc['version']!r}")
    n = _require_int(doc["n"], "n")
    if n < 0:
        raise FormatError("n must be non-negative")
    edges = []
    for e in doc["edges"]:
        if not (isinstance(e, list) and len(e) == 2):
            raise FormatError(f"edge entry {e!r} is not a pair")
        u, v = (_require_int(x, "edge endpoint") for x in e)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"edge ({u}, {v}) out of range for n={n}")
        edges.append((u, v))
    rotations = doc["rotations"]
    if not isinstance(rotations, list) or len(rotations) != n:
        raise FormatError(f"expected {n} rotations")
    ndarts = 2 * len(edges)
    for v, rot in enumerate(rotations):
        if not isinstance(rot, list):
            raise FormatError(f"rotation of vertex {v} is not a list")
        for d in rot:
            _require_int(d, "dart id")
            if not 0 <= d < ndarts:
                raise FormatError(f"dart id {d} at vertex {v} out of range [0, {ndarts})")
    labels = None
    if doc.get("labels") is not None:
        raw = doc["labels"]
        if not isinstance(raw, list) or len(raw) != n:
            raise FormatError(f"expected {n} labels")
        try:
            labels = [VertexLabel(r["tree"], r["kind"], int(r["depth"]), int(r["pos"])) for r in raw]
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed label record: {exc}") from None
    return RotationDocument(n, edges, [list(r) for r in rotations], labels)


def from_rotation_doc(text: str) -> EmbeddedGraph:
    return decode_rotation_doc(text).to_graph()


def gk_to_rotation_doc(gk: GkGraph) -> str:
    return to_rotation_doc(gk.graph, gk.labels).encode()


def gk_from_rotation_doc(doc: RotationDocument) -> GkGraph:
    """Rebuild a :class:`GkGraph` from a labelled document."""
    if doc.labels is None:
        raise FormatError("document carries no vertex labels")
    roots = {lab.tree: v for v, lab in enumerate(doc.labels) if lab.kind == ROOT}
    leaves = [lab.depth for lab in doc.labels if lab.kind == LEAF]
    if set(roots) != {TREE_A, TREE_B} or not leaves:
        raise FormatError("labels do not describe two rooted trees with shared leaves")
    return GkGraph(doc.to_graph(), doc.labels, GkParams(leaves[0]), roots[TREE_A], roots[TREE_B])


# -- plain text exports ---------------------------------------------------------


def to_edge_list(g: EmbeddedGraph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())


def to_dot(g: EmbeddedGraph, labels: list[VertexLabel] | None = None) -> str:
    """Graphviz source; subdivision vertices are black, tree vertices white."""
    lines = ["graph G {", "  node [shape=circle, style=filled, fillcolor=white, label=\"\"];"]
    for v in range(g.vertex_count):
        if labels is not None and labels[v].kind == SUBDIVISION:
            lines.append(f"  {v} [fillcolor=black];")
        else:
            lines.append(f"  {v};")
    tree_edges = _tree_edge_mask(g, labels)
    for j, (u, v) in enumerate(g.edges()):
        style = " [penwidth=2.5]" if tree_edges[j] else ""
        lines.append(f"  {u} -- {v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _tree_edge_mask(g: EmbeddedGraph, labels: list[VertexLabel] | None) -> list[bool]:
    """An edge is a tree edge unless both ends sit on one level (matching)."""
    if labels is None:
        return [False] * g.edge_count
    return [not _is_matching(labels[u], labels[v]) for u, v in g.edges()]


def _is_matching(a: VertexLabel, b: VertexLabel) -> bool:
    return a.kind == b.kind and a.depth == b.depth and a.tree == b.tree


# -- SVG --------------------------------------------------------------------------


@dataclass(frozen=True)
class RenderSpec:
    step: float = 18.0
    vertex_radius: float = 3.6
    margin: float = 30.0
    tree_stroke: float = 2.4
    matching_stroke: float = 0.9
    shade_heptagons: bool = True
    arc_samples_per_radian: float = 12.0


def _distance_from_root_a(lab: VertexLabel, k: int) -> int:
    """Distance to rootA inside the construction (tree B mirrored)."""
    if lab.kind == ROOT:
        t = 0
    elif lab.kind == LEAF:
        return 2 * k - 2
    elif lab.kind == INTERNAL:
        t = 2 * lab.depth - 1
    else:
        t = 2 * lab.depth - 2
    return t if lab.tree == TREE_A else 4 * k - 4 - t


def _angle(lab: VertexLabel) -> float:
    if lab.kind == ROOT:
        return math.pi / 2
    m = level_size(lab.depth)
    return 2 * math.pi * (lab.pos + 0.5) / m


class _Layout:
    def __init__(self, gk: GkGraph, spec: RenderSpec):
        self.gk = gk
        self.spec = spec
        k = gk.k
        self.outer = (4 * k - 4) * spec.step
        self.size = 2 * (self.outer + 1.5 * spec.step + spec.margin)
        self.c = self.size / 2
        self.polar = []
        for lab in gk.labels:
            r = _distance_from_root_a(lab, k) * spec.step
            self.polar.append((r, _angle(lab)))

    def xy(self, r: float, theta: float) -> tuple[float, float]:
        return self.c + r * math.cos(theta), self.c - r * math.sin(theta)

    def point(self, v: int) -> tuple[float, float]:
        return self.xy(*self.polar[v])

    def arc(self, r: float, t0: float, t1: float) -> list[tuple[float, float]]:
        steps = max(2, int(abs(t1 - t0) * self.spec.arc_samples_per_radian) + 1)
        return [self.xy(r, t0 + (t1 - t0) * i / steps) for i in range(steps + 1)]

    def edge_points(self, u: int, v: int, matching: bool) -> list[tuple[float, float]]:
        """Polyline from ``u`` to ``v``."""
        labels = self.gk.labels
        (ru, tu), (rv, tv) = self.polar[u], self.polar[v]
        if matching:
            delta = (tv - tu + math.pi) % (2 * math.pi) - math.pi
            return self.arc(ru, tu, tu + delta)
        if labels[u].kind == ROOT and labels[u].tree == TREE_B:
            return self._root_b_edge(v)[::-1]
        if labels[v].kind == ROOT and labels[v].tree == TREE_B:
            return self._root_b_edge(u)
        return [self.point(u), self.point(v)]

    def _root_b_edge(self, child: int) -> list[tuple[float, float]]:
        """Child of rootB -> rootB: out radially, then around the outer ring."""
        r, theta = self.polar[child]
        pos = self.gk.labels[child].pos
        ring = self.outer + (0.5 * self.spec.step if pos == 2 else 0.0)
        top = math.pi / 2
        end = top if theta <= math.pi else top + 2 * math.pi
        pts = [self.xy(r, theta)] + self.arc(ring, theta, end)
        if ring != self.outer:
            pts.append(self.xy(self.outer, top))
        return pts


def _fmt(pts: list[tuple[float, float]]) -> str:
    head, *rest = pts
    return f"M{head[0]:.2f},{head[1]:.2f}" + "".join(f" L{x:.2f},{y:.2f}" for x, y in rest)


def to_svg(gk: GkGraph, spec: RenderSpec | None = None) -> str:
    """Radial drawing: tree A inside the leaf circle, tree B mirrored outside.

    Tree vertices are white, subdivision vertices black, tree edges bold and
    matching edges thin arcs along their level circle.  Faces of length 7
    are shaded gray when ``spec.shade_heptagons`` is set.  The drawing is
    illustrative; planarity is certified by the genus, not by the picture.
    """
    spec = spec or RenderSpec()
    g = gk.graph
    lay = _Layout(gk, spec)
    edges = g.edges()
    matching = [_is_matching(gk.labels[u], gk.labels[v]) for u, v in edges]
    polylines = [lay.edge_points(u, v, m) for (u, v), m in zip(edges, matching)]

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{lay.size:.0f}" '
        f'height="{lay.size:.0f}" viewBox="0 0 {lay.size:.2f} {lay.size:.2f}">',
        f"<title>G_{gk.k}: {g.vertex_count} vertices, {g.edge_count} edges</title>",
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if spec.shade_heptagons:
        out.append('<g id="faces" fill="#c8c8c8" stroke="none">')
        for orbit in g.face_orbits():
            if orbit.length != 7:
                continue
            pts: list[tuple[float, float]] = []
            for d in orbit.darts:
                seg = polylines[d >> 1]
                pts += seg[::-1] if d & 1 else seg
            out.append(f'<path class="face face7" d="{_fmt(pts)} Z"/>')
        out.append("</g>")
    out.append('<g id="edges" fill="none" stroke="black" stroke-linejoin="round">')
    for j, pts in enumerate(polylines):
        if matching[j]:
            out.append(f'<path class="edge matching" stroke-width="{spec.matching_stroke}" d="{_fmt(pts)}"/>')
        else:
            out.append(f'<path class="edge tree" stroke-width="{spec.tree_stroke}" d="{_fmt(pts)}"/>')
    out.append("</g>")
    out.append('<g id="vertices" stroke="black" stroke-width="1">')
    for v, lab in enumerate(gk.labels):
        x, y = lay.point(v)
        if lab.kind == SUBDIVISION:
            cls, fill = "vertex subdivision", "black"
        else:
            cls, fill = f"vertex tree {lab.kind}", "white"
        out.append(
            f'<circle class="{cls}" data-v="{v}" cx="{x:.2f}" cy="{y:.2f}" r="{spec.vertex_radius}" fill="{fill}"/>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


__all__ = [
    "FormatError",
    "RenderSpec",
    "RotationDocument",
    "decode_rotation_doc",
    "from_graph6",
    "from_rotation_doc",
    "gk_from_rotation_doc",
    "gk_to_rotation_doc",
    "graph_from_graph6",
    "graph_to_graph6",
    "to_dot",
    "to_edge_list",
    "to_graph6",
    "to_rotation_doc",
    "to_svg",
]
