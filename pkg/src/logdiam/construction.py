"""Construction of the family G_k.

Two rooted trees T_k (root of degree 3, every other internal vertex with two
children, all leaves at depth k) are glued along their leaves, internal
tree edges are subdivided, and every even distance level of each tree gets a
cyclic matching between neighbouring non-siblings.  The result is a cubic
plane graph whose embedding is fixed by an explicit rotation table.

Vertex ids follow a fixed block layout::

    rootA, A internals by (depth, pos), rootB, B internals, leaves,
    A subdivisions, B subdivisions

Conventions worth knowing:

* Level positions increase counterclockwise around rootA.
* Leaf ``i`` of tree A is identified with leaf ``i`` of tree B.
* The level matching joins ``v_1 v_2, v_3 v_4, ..., v_l v_0``.  Pairing
  ``v_0 v_1, v_2 v_3, ...`` instead joins siblings and closes triangles
  with their common parent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from logdiam.embedded import EmbeddedGraph, new_graph

DEFAULT_K_CAP = 26

TREE_A = "A"
TREE_B = "B"
SHARED = "shared"

ROOT = "root"
INTERNAL = "internal"
SUBDIVISION = "subdivision"
LEAF = "leaf"

TREE_EDGE = "tree"
MATCHING_EDGE = "matching"


class ConstructionError(RuntimeError):
    """The construction produced something that violates its own invariants."""


class VertexLabel(NamedTuple):
    """Role of a vertex in G_k.

    ``depth`` is the tree depth for roots (0), internals and leaves (k); a
    subdivision vertex carries the depth and position of the child endpoint
    of the edge it subdivides.
    """

    tree: str
    kind: str
    depth: int
    pos: int

    @property
    def is_tree_vertex(self) -> bool:
        return self.kind != SUBDIVISION


@dataclass(frozen=True)
class GkParams:
    k: int
    cap: int = DEFAULT_K_CAP

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")
        if self.k > self.cap:
            raise ValueError(f"k={self.k} exceeds the configured cap {self.cap}")


def level_size(depth: int) -> int:
    """Number of tree vertices at ``depth >= 1`` in T_k."""
    return 3 * 2 ** (depth - 1)


@dataclass
class TernaryTree:
    """T_k with ids ``0`` (root) then level by level, left to right."""

    k: int
    labels: list[tuple[str, int, int]]
    edges: list[tuple[int, int]]  # (parent, child), ordered by child id

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    def level(self, depth: int) -> list[int]:
        return [v for v, (_, d, _) in enumerate(self.labels) if d == depth]

    @property
    def leaves(self) -> list[int]:
        return self.level(self.k)


def build_ternary_tree(k: int) -> TernaryTree:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    labels: list[tuple[str, int, int]] = [(ROOT, 0, 0)]
    edges: list[tuple[int, int]] = []
    offset = {1: 1}
    for d in range(1, k + 1):
        kind = LEAF if d == k else INTERNAL
        for p in range(level_size(d)):
            child = offset[d] + p
            parent = 0 if d == 1 else offset[d - 1] + p // 2
            labels.append((kind, d, p))
            edges.append((parent, child))
        offset[d + 1] = offset[d] + level_size(d)
    return TernaryTree(k, labels, edges)


@dataclass
class MatchingLevel:
    tree: str
    distance: int
    members: list[int]

    @property
    def ell(self) -> int:
        return len(self.members) - 1


@dataclass
class StagedGraph:
    """Intermediate construction state: labelled vertices and tagged edges.

    Tree edges are stored oriented ``(parent, child)`` within their own tree.
    """

    k: int
    labels: list[VertexLabel]
    edges: list[tuple[int, int]]
    kinds: list[str]
    matching_levels: list[MatchingLevel] = field(default_factory=list)

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.vertex_count, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def index(self) -> dict[VertexLabel, int]:
        return {lab: v for v, lab in enumerate(self.labels)}

    def members(self, tree: str, kind: str, depth: int) -> list[int]:
        """Vertices of one tree level, sorted by position."""
        found = [
            (lab.pos, v)
            for v, lab in enumerate(self.labels)
            if lab.tree == tree and lab.kind == kind and lab.depth == depth
        ]
        return [v for _, v in sorted(found)]


def glue_trees(tree_a: TernaryTree, tree_b: TernaryTree) -> StagedGraph:
    """Identify leaf ``i`` of ``tree_a`` with leaf ``i`` of ``tree_b``."""
    if tree_a.k != tree_b.k:
        raise ValueError(f"cannot glue T_{tree_a.k} to T_{tree_b.k}")
    k = tree_a.k
    n_inner = tree_a.vertex_count - level_size(k)
    labels: list[VertexLabel] = []
    for tree in (TREE_A, TREE_B):
        for kind, d, p in tree_a.labels[:n_inner]:
            labels.append(VertexLabel(tree, kind, d, p))
    for _, d, p in tree_a.labels[n_inner:]:
        labels.append(VertexLabel(SHARED, LEAF, d, p))

    def remap(v: int, shift: int) -> int:
        return v + shift if v < n_inner else v + n_inner

    edges = [(remap(p, 0), remap(c, 0)) for p, c in tree_a.edges]
    edges += [(remap(p, n_inner), remap(c, n_inner)) for p, c in tree_b.edges]
    return StagedGraph(k, labels, edges, [TREE_EDGE] * len(edges))


def subdivide_internal_edges(glued: StagedGraph) -> StagedGraph:
    """Subdivide every tree edge whose endpoints are both internal."""
    labels = list(glued.labels)
    edges: list[tuple[int, int]] = []
    kinds: list[str] = []
    for (p, c), kind in zip(glued.edges, glued.kinds):
        lp, lc = labels[p], labels[c]
        if kind == TREE_EDGE and lp.kind == INTERNAL and lc.kind == INTERNAL:
            s = len(labels)
            labels.append(VertexLabel(lc.tree, SUBDIVISION, lc.depth, lc.pos))
            edges += [(p, s), (s, c)]
            kinds += [TREE_EDGE, TREE_EDGE]
        else:
            edges.append((p, c))
            kinds.append(kind)
    return StagedGraph(glued.k, labels, edges, kinds, list(glued.matching_levels))


def cousin_pairs(members: list[int]) -> list[tuple[int, int]]:
    """Cyclic pairs ``(v_1, v_2), (v_3, v_4), ..., (v_l, v_0)``."""
    m = len(members)
    if m % 2:
        raise ConstructionError(f"level of odd size {m} cannot be matched")
    return [(members[i], members[(i + 1) % m]) for i in range(1, m, 2)]


def add_level_matchings(g: StagedGraph) -> None:
    """Add the cyclic non-sibling matching on every even distance level.

    Distance ``2d - 2`` from a root holds the subdivision vertices whose child
    endpoint sits at depth ``d``; distance ``2k - 2`` holds the leaves, which
    both trees share, so that level is matched once.
    """
    k = g.k
    levels: dict[tuple[str, str, int], list[tuple[int, int]]] = {}
    for v, lab in enumerate(g.labels):
        levels.setdefault((lab.tree, lab.kind, lab.depth), []).append((lab.pos, v))

    def members(tree: str, kind: str, depth: int) -> list[int]:
        return [v for _, v in sorted(levels.get((tree, kind, depth), []))]

    leaf_pairs = None
    for tree in (TREE_A, TREE_B):
        for d in range(2, k):
            level = members(tree, SUBDIVISION, d)
            g.matching_levels.append(MatchingLevel(tree, 2 * d - 2, level))
            for u, v in cousin_pairs(level):
                g.edges.append((u, v))
                g.kinds.append(MATCHING_EDGE)
        leaves = members(SHARED, LEAF, k)
        g.matching_levels.append(MatchingLevel(tree, 2 * k - 2, leaves))
        pairs = cousin_pairs(leaves)
        if leaf_pairs is None:
            leaf_pairs = pairs
        elif pairs != leaf_pairs:
            raise ConstructionError("leaf pairings of the two trees disagree")
    for u, v in leaf_pairs:
        g.edges.append((u, v))
        g.kinds.append(MATCHING_EDGE)


def _rotation_for(lab: VertexLabel, roles: dict) -> list[int]:
    """Counterclockwise dart order for one vertex from its role table."""
    children = [d for _, d in sorted(roles.get("child", []))]
    if lab.kind == ROOT:
        pattern = children
    elif lab.kind == INTERNAL:
        pattern = [children[0], children[1], roles["parent"][lab.tree]]
    elif lab.kind == SUBDIVISION:
        child, parent, match = children[0], roles["parent"][lab.tree], roles["matching"]
        pattern = [child, match, parent] if lab.pos % 2 else [child, parent, match]
    else:
        pa, pb, match = roles["parent"][TREE_A], roles["parent"][TREE_B], roles["matching"]
        return [pb, match, pa] if lab.pos % 2 else [pb, pa, match]
    if lab.tree == TREE_B:
        pattern = pattern[::-1]
    return pattern


def assign_rotations(g: StagedGraph) -> EmbeddedGraph:
    """Create the embedded graph for a fully matched stage.

    Tree A is drawn with rootA in the centre and positions increasing
    counterclockwise; tree B is its reflection through the leaf circle, so
    each tree-B vertex uses the reversed tree-A pattern.
    """
    emb = new_graph(g.vertex_count)
    roles: list[dict] = [{} for _ in range(g.vertex_count)]
    labels = g.labels
    for (u, v), kind in zip(g.edges, g.kinds):
        j = emb.add_edge(u, v)
        if kind == TREE_EDGE:
            roles[u].setdefault("child", []).append((labels[v].pos, 2 * j))
            roles[v].setdefault("parent", {})[labels[u].tree] = 2 * j + 1
        else:
            roles[u]["matching"] = 2 * j
            roles[v]["matching"] = 2 * j + 1
    for v, lab in enumerate(labels):
        emb.set_rotation(v, _rotation_for(lab, roles[v]))
    emb.freeze()
    genus = emb.euler_genus()
    if genus != 0:
        raise ConstructionError(f"rotation table produced genus {genus}, expected 0")
    return emb


@dataclass
class GkGraph:
    graph: EmbeddedGraph
    labels: list[VertexLabel]
    params: GkParams
    root_a: int
    root_b: int
    matching_levels: list[MatchingLevel] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.params.k

    def label(self, v: int) -> VertexLabel:
        return self.labels[v]

    def name(self, v: int) -> str:
        """Short human-readable name, e.g. ``rootA`` or ``A.sub(3,5)``."""
        lab = self.labels[v]
        if lab.kind == ROOT:
            return f"root{lab.tree}"
        if lab.kind == LEAF:
            return f"leaf({lab.pos})"
        tag = "int" if lab.kind == INTERNAL else "sub"
        return f"{lab.tree}.{tag}({lab.depth},{lab.pos})"


def build_gk(params: GkParams | int) -> GkGraph:
    if isinstance(params, int):
        params = GkParams(params)
    k = params.k
    tree = build_ternary_tree(k)
    staged = subdivide_internal_edges(glue_trees(tree, tree))
    add_level_matchings(staged)
    emb = assign_rotations(staged)
    if not emb.is_regular(3):
        raise ConstructionError("G_k is not cubic")
    root_b = tree.vertex_count - level_size(k)
    return GkGraph(emb, staged.labels, params, 0, root_b, staged.matching_levels)


@dataclass(frozen=True)
class ExpectedCounts:
    vertices: int
    edges: int
    faces: int
    leaves: int
    per_level: tuple[int, ...]  # tree vertices at depth 0..k in one T_k


def expected_counts(k: int) -> ExpectedCounts:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    v = 15 * 2 ** (k - 1) - 16
    e = 3 * v // 2
    return ExpectedCounts(
        vertices=v,
        edges=e,
        faces=e - v + 2,
        leaves=3 * 2 ** (k - 1),
        per_level=(1,) + tuple(level_size(d) for d in range(1, k + 1)),
    )
