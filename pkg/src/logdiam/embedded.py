"""Dart-based rotation systems.

An :class:`EmbeddedGraph` stores an undirected multigraph together with a
cyclic counterclockwise order of the darts leaving every vertex.  Edge ``j``
owns darts ``2j`` (tail to head) and ``2j + 1`` (head to tail), so the twin
of a dart is obtained by flipping its lowest bit.

Faces are the orbits of the face-successor permutation
``alpha(d) = rot(twin(d))`` where ``rot`` moves to the next dart
counterclockwise around the same vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from logdiam import kernels

UNREACHED = -1


class EmbeddingError(ValueError):
    """Raised for malformed rotations or operations on incomplete embeddings."""


class FrozenGraphError(RuntimeError):
    pass


@dataclass(frozen=True)
class FaceOrbit:
    darts: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.darts)


def twin(d: int) -> int:
    return d ^ 1


class EmbeddedGraph:
    """Undirected graph with a rotation system.

    Built in two phases: edges are appended with :meth:`add_edge`, then each
    vertex receives its counterclockwise dart order via :meth:`set_rotation`.
    After :meth:`freeze` the graph is read-only and may be shared freely.
    """

    def __init__(self, vertex_count: int):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        self._n = vertex_count
        self._tails: list[int] = []
        self._heads: list[int] = []
        self._rotation: list[tuple[int, ...] | None] = [None] * vertex_count
        self._incident: list[list[int]] = [[] for _ in range(vertex_count)]
        self._frozen = False
        self._cache: dict[str, object] = {}

    # -- construction -----------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._tails)

    @property
    def dart_count(self) -> int:
        return 2 * len(self._tails)

    @property
    def frozen(self) -> bool:
        return self._frozen

    def _check_mutable(self) -> None:
        if self._frozen:
            raise FrozenGraphError("graph is frozen")

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise IndexError(f"vertex {v} out of range [0, {self._n})")

    def add_edge(self, u: int, v: int) -> int:
        """Append edge ``u``-``v``; its darts are not yet placed in rotations."""
        self._check_mutable()
        self._check_vertex(u)
        self._check_vertex(v)
        j = len(self._tails)
        self._tails.append(u)
        self._heads.append(v)
        self._incident[u].append(2 * j)
        self._incident[v].append(2 * j + 1)
        self._cache.clear()
        return j

    def set_rotation(self, v: int, darts: Sequence[int]) -> None:
        """Fix the counterclockwise order of the darts leaving ``v``."""
        self._check_mutable()
        self._check_vertex(v)
        darts = tuple(int(d) for d in darts)
        if sorted(darts) != sorted(self._incident[v]):
            raise EmbeddingError(
                f"rotation at vertex {v} must be a permutation of {sorted(self._incident[v])}, got {list(darts)}"
            )
        self._rotation[v] = darts
        self._cache.clear()

    def freeze(self) -> "EmbeddedGraph":
        self._frozen = True
        return self

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        rotations: Sequence[Sequence[int]] | None = None,
    ) -> "EmbeddedGraph":
        """Build a frozen graph; without ``rotations`` darts keep insertion order."""
        g = cls(vertex_count)
        for u, v in edges:
            g.add_edge(u, v)
        for v in range(vertex_count):
            g.set_rotation(v, rotations[v] if rotations is not None else g._incident[v])
        return g.freeze()

    # -- plain accessors ----------------------------------------------------

    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self._tails, self._heads))

    def endpoints(self, j: int) -> tuple[int, int]:
        return self._tails[j], self._heads[j]

    def origin(self, d: int) -> int:
        j = d >> 1
        return self._heads[j] if d & 1 else self._tails[j]

    def head(self, d: int) -> int:
        return self.origin(d ^ 1)

    def darts_at(self, v: int) -> list[int]:
        """Darts leaving ``v`` in insertion order (placement-independent)."""
        return list(self._incident[v])

    def rotation(self, v: int) -> tuple[int, ...]:
        rot = self._rotation[v]
        if rot is None:
            raise EmbeddingError(f"rotation at vertex {v} not set")
        return rot

    def rotations(self) -> list[tuple[int, ...]]:
        return [self.rotation(v) for v in range(self._n)]

    def is_fully_placed(self) -> bool:
        return all(
            r is not None or not inc for r, inc in zip(self._rotation, self._incident)
        )

    def neighbors(self, v: int) -> list[int]:
        return [self.head(d) for d in self._incident[v]]

    def degrees(self) -> np.ndarray:
        return np.array([len(inc) for inc in self._incident], dtype=np.int64)

    def is_regular(self, r: int) -> bool:
        return bool(np.all(self.degrees() == r))

    def is_simple(self) -> bool:
        seen = set()
        for u, v in zip(self._tails, self._heads):
            if u == v:
                return False
            key = (u, v) if u < v else (v, u)
            if key in seen:
                return False
            seen.add(key)
        return True

    # -- derived arrays -----------------------------------------------------

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form (``indptr``, ``indices``), insertion order."""
        if "csr" not in self._cache:
            n = self._n
            indptr = np.zeros(n + 1, dtype=np.int64)
            indptr[1:] = np.cumsum([len(inc) for inc in self._incident])
            indices = np.empty(indptr[-1], dtype=np.int32)
            tails = np.asarray(self._tails, dtype=np.int64)
            heads = np.asarray(self._heads, dtype=np.int64)
            flat = np.fromiter(
                (d for inc in self._incident for d in inc), dtype=np.int64, count=indptr[-1]
            )
            j = flat >> 1
            indices[:] = np.where(flat & 1, tails[j], heads[j])
            self._cache["csr"] = (indptr, indices)
        return self._cache["csr"]  # type: ignore[return-value]

    def _face_successor(self, clockwise: bool = False) -> np.ndarray:
        key = "alpha_cw" if clockwise else "alpha"
        if key not in self._cache:
            nd = self.dart_count
            nxt = np.empty(nd, dtype=np.int64)
            placed = np.zeros(nd, dtype=bool)
            for v, rot in enumerate(self._rotation):
                if rot is None:
                    continue
                m = len(rot)
                step = -1 if clockwise else 1
                for i, d in enumerate(rot):
                    nxt[d] = rot[(i + step) % m]
                    placed[d] = True
            if not placed.all():
                missing = np.flatnonzero(~placed)[:5].tolist()
                raise EmbeddingError(f"darts not placed in any rotation, e.g. {missing}")
            # alpha(d) = rot(twin(d))
            self._cache[key] = nxt[np.arange(nd) ^ 1]
        return self._cache[key]  # type: ignore[return-value]

    # -- faces and genus ----------------------------------------------------

    def face_orbits(self, clockwise: bool = False) -> list[FaceOrbit]:
        """Orbits of the face successor, smallest unvisited dart first.

        ``clockwise=True`` traces faces with the mirrored convention
        ``rot^-1 o twin``; the multiset of lengths is the same.
        """
        alpha = self._face_successor(clockwise).tolist()
        seen = [False] * len(alpha)
        orbits = []
        for start in range(len(alpha)):
            if seen[start]:
                continue
            orbit = []
            d = start
            while not seen[d]:
                seen[d] = True
                orbit.append(d)
                d = alpha[d]
            orbits.append(FaceOrbit(tuple(orbit)))
        return orbits

    def face_lengths(self) -> np.ndarray:
        """Lengths of all face orbits, in :meth:`face_orbits` order."""
        if "face_lengths" not in self._cache:
            alpha = self._face_successor()
            self._cache["face_lengths"] = kernels.orbit_lengths(alpha)
        return self._cache["face_lengths"]  # type: ignore[return-value]

    def face_count(self) -> int:
        return len(self.face_lengths())

    def connected_components(self) -> np.ndarray:
        """Component id per vertex, numbered by smallest member vertex."""
        if "components" not in self._cache:
            indptr, indices = self.csr()
            self._cache["components"] = kernels.component_labels(indptr, indices)
        return self._cache["components"]  # type: ignore[return-value]

    def component_count(self) -> int:
        comp = self.connected_components()
        return int(comp.max()) + 1 if len(comp) else 0

    def is_connected(self) -> bool:
        return self.component_count() == 1

    def euler_genus(self) -> int:
        """Total orientable genus ``(2c - V + E - F) / 2`` over all components.

        An edgeless vertex counts as a sphere with a single face.
        """
        isolated = int(np.sum(self.degrees() == 0))
        faces = self.face_count() + isolated
        twice = 2 * self.component_count() - self._n + self.edge_count - faces
        assert twice % 2 == 0, "Euler characteristic parity violated"
        return twice // 2

    # -- traversal ----------------------------------------------------------

    def bfs(self, source: int) -> np.ndarray:
        """Unweighted distances from ``source``; unreachable vertices get -1."""
        self._check_vertex(source)
        indptr, indices = self.csr()
        return kernels.bfs_distances(indptr, indices, source)

    def __repr__(self) -> str:
        return f"EmbeddedGraph(V={self._n}, E={self.edge_count}, frozen={self._frozen})"


def new_graph(vertex_count: int) -> EmbeddedGraph:
    return EmbeddedGraph(vertex_count)
