"""Face censuses, exact diameters and claim verification for G_k."""

from __future__ import annotations

import math
import os
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from logdiam import kernels
from logdiam.construction import GkGraph, build_gk
from logdiam.embedded import EmbeddedGraph

BFS_ALL = "bfs-all"
IFUB = "ifub"
DOUBLE_SWEEP = "double-sweep"
METHODS = (BFS_ALL, IFUB, DOUBLE_SWEEP)

PASS = "PASS"
FAIL = "FAIL"
DISCREPANCY = "DISCREPANCY"

REFUTE_MARGIN = 1e-9


class DisconnectedGraphError(ValueError):
    pass


# -- faces ------------------------------------------------------------------


@dataclass(frozen=True)
class FaceCensus:
    histogram: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.histogram.values())

    @property
    def max_length(self) -> int:
        return max((n for n, c in self.histogram.items() if c), default=0)

    @property
    def min_length(self) -> int:
        return min((n for n, c in self.histogram.items() if c), default=0)

    @property
    def weighted_sum(self) -> int:
        return sum(n * c for n, c in self.histogram.items())

    def nonzero(self) -> dict[int, int]:
        return {n: c for n, c in sorted(self.histogram.items()) if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, FaceCensus):
            return NotImplemented
        return self.nonzero() == other.nonzero()

    def __str__(self) -> str:
        return " ".join(f"{n}:{c}" for n, c in self.nonzero().items())


def face_census(g: EmbeddedGraph) -> FaceCensus:
    counts = Counter(g.face_lengths().tolist())
    return FaceCensus(dict(sorted(counts.items())))


def expected_census(k: int) -> FaceCensus:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    q = 2 ** (k - 2)
    return FaceCensus({4: 3 * q, 5: 6, 6: 6 * q - 6, 7: 6 * q - 6})


# -- diameter ----------------------------------------------------------------


@dataclass(frozen=True)
class DiameterResult:
    value: int
    witness: tuple[int, int]
    method: str
    exact: bool
    bfs_calls: int = 0


def _threads(threads: int | None) -> int:
    return max(1, threads or os.cpu_count() or 1)


def _eccentricities(g: EmbeddedGraph, sources: np.ndarray, threads: int | None = None):
    indptr, indices = g.csr()
    nblocks = min(len(sources), 4 * _threads(threads)) or 1
    ecc, far, reached = kernels.eccentricities(
        indptr, indices, np.ascontiguousarray(sources, dtype=np.int64), nblocks
    )
    if len(reached) and reached.min() < g.vertex_count:
        raise DisconnectedGraphError("graph is not connected")
    return ecc, far


def _farthest(g: EmbeddedGraph, src: int):
    indptr, indices = g.csr()
    dist, ecc, far, reached = kernels.bfs_farthest(indptr, indices, src)
    if reached < g.vertex_count:
        raise DisconnectedGraphError("graph is not connected")
    return dist, int(ecc), int(far)


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


def diameter_bfs_all(g: EmbeddedGraph, threads: int | None = None) -> DiameterResult:
    """Exact diameter from one BFS per vertex.

    The witness is the lexicographically smallest pair ``u < v`` at maximum
    distance: ``u`` is the first vertex of maximum eccentricity and ``v`` the
    smallest vertex farthest from it.
    """
    n = g.vertex_count
    if n == 0:
        raise ValueError("empty graph has no diameter")
    ecc, far = _eccentricities(g, np.arange(n), threads)
    u = int(np.argmax(ecc))
    return DiameterResult(int(ecc[u]), _pair(u, int(far[u])), BFS_ALL, True, n)


def double_sweep(g: EmbeddedGraph, seed: int = 0) -> DiameterResult:
    """Lower bound from two successive farthest-vertex BFS passes."""
    _, _, a = _farthest(g, seed)
    _, ecc_a, b = _farthest(g, a)
    return DiameterResult(ecc_a, _pair(a, b), DOUBLE_SWEEP, False, 2)


def _midpoint(g: EmbeddedGraph, a: int, b: int, dist_a: np.ndarray) -> int:
    """Vertex halfway along a shortest a-b path, walking back from ``b``."""
    target = int(dist_a[b]) // 2
    indptr, indices = g.csr()
    v = b
    while dist_a[v] > target:
        nbrs = indices[indptr[v] : indptr[v + 1]]
        v = int(min(w for w in nbrs if dist_a[w] == dist_a[v] - 1))
    return v


def _sweep_bound_holds(profiles: np.ndarray, remaining: np.ndarray, best: int, max_classes: int) -> bool:
    """Whether every pair of ``remaining`` vertices is provably within ``best``.

    Uses ``d(x, y) <= min_s d(s, x) + d(s, y)`` over the sweep sources.  Vertices
    with identical distance profiles are bucketed; the test is skipped (False)
    when there are too many distinct profiles.
    """
    classes = np.unique(profiles[remaining], axis=0)
    if len(classes) > max_classes:
        return False
    return not kernels.pair_bound_exceeds(classes, best)


def ifub(
    g: EmbeddedGraph,
    start_hint: int | None = None,
    threads: int | None = None,
    sweep_bound: bool = True,
    max_classes: int = 4096,
) -> DiameterResult:
    """Exact diameter by iterative fringe upper bounding.

    Levels of a BFS tree rooted at a central vertex are processed from the
    deepest inwards.  Once every vertex deeper than level ``i`` has had its
    eccentricity computed, any remaining pair is at distance at most ``2i``,
    so the search stops as soon as the best value found reaches that bound.
    Without ``start_hint`` the root is the midpoint of a double sweep from
    vertex 0.

    With ``sweep_bound`` the remaining pairs are additionally bounded through
    every BFS source already run (seed, sweep endpoints, root).  Nearly
    self-centred graphs such as G_k need this: there the plain fringe bound
    only closes after almost every vertex has been expanded.
    """
    n = g.vertex_count
    if n == 0:
        raise ValueError("empty graph has no diameter")
    calls = 0
    sources: list[np.ndarray] = []
    if start_hint is None:
        dist_0, _, a = _farthest(g, 0)
        dist_a, ecc_a, b = _farthest(g, a)
        dist_b = _farthest(g, b)[0]
        calls += 3
        sources += [dist_0, dist_a, dist_b]
        best, witness = ecc_a, _pair(a, b)
        root = _midpoint(g, a, b, dist_a)
    else:
        best, witness, root = -1, (start_hint, start_hint), start_hint
    dist, ecc_root, far_root = _farthest(g, root)
    calls += 1
    sources.append(dist)
    if ecc_root > best:
        best, witness = ecc_root, _pair(root, far_root)
    profiles = np.stack(sources, axis=1) if sweep_bound else None

    order = np.argsort(dist, kind="stable")
    bounds = np.searchsorted(dist[order], np.arange(ecc_root + 2))
    level = ecc_root
    while level > 0 and best < 2 * level:
        if profiles is not None and _sweep_bound_holds(profiles, order[: bounds[level + 1]], best, max_classes):
            break
        fringe = order[bounds[level] : bounds[level + 1]]
        ecc, far = _eccentricities(g, fringe, threads)
        calls += len(fringe)
        i = int(np.argmax(ecc))
        if ecc[i] > best:
            best, witness = int(ecc[i]), _pair(int(fringe[i]), int(far[i]))
        level -= 1
    return DiameterResult(int(best), witness, IFUB, True, calls)


def diameter(g: EmbeddedGraph, method: str = IFUB, threads: int | None = None) -> DiameterResult:
    if method == BFS_ALL:
        return diameter_bfs_all(g, threads)
    if method == IFUB:
        return ifub(g, threads=threads)
    if method == DOUBLE_SWEEP:
        return double_sweep(g)
    raise ValueError(f"unknown diameter method {method!r}; choose from {METHODS}")


def validate_witness(g: EmbeddedGraph, result: DiameterResult) -> bool:
    u, v = result.witness
    return int(g.bfs(u)[v]) == result.value


# -- bounds ------------------------------------------------------------------


def fullerene_lower_bound(n: int) -> float:
    """Known diameter lower bound for fullerene graphs on ``n`` vertices."""
    if n < 1:
        raise ValueError("n must be positive")
    return math.sqrt(24 * n - 15) / 6 - 0.5


def vertex_connectivity_small(g: EmbeddedGraph, limit: int = 200) -> int:
    """Vertex connectivity by exhaustive cut search, for small graphs.

    Cuts of size up to 3 are enumerated directly; higher connectivity is
    settled with a max-flow computation.  A complete graph ``K_n`` reports
    ``n - 1``.
    """
    n = g.vertex_count
    if n > limit:
        raise ValueError(f"vertex_connectivity_small is limited to {limit} vertices, got {n}")
    if n <= 1:
        return 0
    if not g.is_connected():
        return 0
    indptr, indices = g.csr()
    for size in range(1, min(3, n - 2) + 1):
        if len(kernels.find_vertex_cut(indptr, indices, size)):
            return size
    if n - 1 <= 3:
        return n - 1
    import networkx as nx

    simple = nx.Graph()
    simple.add_nodes_from(range(n))
    simple.add_edges_from((u, v) for u, v in g.edges() if u != v)
    return int(nx.node_connectivity(simple))


# -- claims ------------------------------------------------------------------


@dataclass
class ClaimEntry:
    id: str
    measured: object
    bound: object
    verdict: str
    note: str = ""


@dataclass
class ClaimReport:
    k: int
    entries: list[ClaimEntry] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(e.verdict == FAIL for e in self.entries)

    @property
    def has_discrepancy(self) -> bool:
        return any(e.verdict == DISCREPANCY for e in self.entries)

    @property
    def overall(self) -> str:
        if self.failed:
            return FAIL
        return DISCREPANCY if self.has_discrepancy else PASS

    def entry(self, claim_id: str) -> ClaimEntry:
        for e in self.entries:
            if e.id == claim_id:
                return e
        raise KeyError(claim_id)


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


def verify_claims(gk: GkGraph, method: str = IFUB, threads: int | None = None) -> ClaimReport:
    """Check each structural and metric claim about G_k on a built instance.

    The two diameter upper bounds stated for the family (``3k`` and
    ``3 log2 n``) are reported as DISCREPANCY rather than FAIL when they are
    exceeded but ``4 log2 n`` still holds; the logarithmic bound gets its own
    entry.
    """
    g = gk.graph
    k = gk.k
    n = g.vertex_count
    report = ClaimReport(k)
    add = report.entries.append

    degs = g.degrees()
    add(ClaimEntry("cubic", f"deg {int(degs.min())}..{int(degs.max())}", "3", _verdict(g.is_regular(3))))
    add(ClaimEntry("simple", g.is_simple(), True, _verdict(g.is_simple())))
    comps = g.component_count()
    add(ClaimEntry("connected", comps, 1, _verdict(comps == 1)))
    genus = g.euler_genus()
    add(ClaimEntry("planar-genus0", genus, 0, _verdict(genus == 0)))

    census = face_census(g)
    expected_max = 7 if k >= 3 else 5
    lengths_ok = set(census.nonzero()) <= {4, 5, 6, 7} and census.max_length == expected_max
    add(ClaimEntry("face-lengths", str(census), f"subset of {{4,5,6,7}}, max {expected_max}", _verdict(lengths_ok)))

    add(ClaimEntry("size-n-ge-2^k", n, 2**k, _verdict(n >= 2**k)))

    if comps != 1:
        add(ClaimEntry("diameter", None, None, FAIL, "graph is disconnected"))
        return report
    diam = diameter(g, method, threads)
    log_bound = 4 * math.log2(n)
    log_ok = diam.value <= log_bound

    def soft(measured: int, bound: float) -> str:
        if measured <= bound:
            return PASS
        return DISCREPANCY if log_ok else FAIL

    kind = "exact" if diam.exact else "lower bound"
    note = f"{kind} via {diam.method}, witness {gk.name(diam.witness[0])}-{gk.name(diam.witness[1])}"
    add(ClaimEntry("diameter-le-3k", diam.value, 3 * k, soft(diam.value, 3 * k), note))
    add(ClaimEntry("diameter-le-3log2n", diam.value, round(3 * math.log2(n), 6), soft(diam.value, 3 * math.log2(n)), note))
    add(ClaimEntry("diameter-le-4log2n", diam.value, round(log_bound, 6), _verdict(log_ok), note))
    return report


# -- refutation table -------------------------------------------------------


@dataclass(frozen=True)
class RefutationRow:
    k: int
    n: int
    diameter: int
    three_k: int
    three_log2_n: float
    fullerene_bound: float
    refutes: bool

    COLUMNS = ("k", "n", "diam", "3k", "3log2n", "fullerene_bound", "refutes")

    def values(self) -> tuple:
        return (self.k, self.n, self.diameter, self.three_k, self.three_log2_n, self.fullerene_bound, self.refutes)


def refutes(diam: int, n: int) -> bool:
    return fullerene_lower_bound(n) - diam > REFUTE_MARGIN


def refutation_table(k_min: int, k_max: int, method: str = IFUB, threads: int | None = None) -> list[RefutationRow]:
    if not 2 <= k_min <= k_max:
        raise ValueError(f"need 2 <= k_min <= k_max, got {k_min}, {k_max}")
    if method == DOUBLE_SWEEP:
        raise ValueError("the refutation needs an exact diameter")
    rows = []
    for k in range(k_min, k_max + 1):
        gk = build_gk(k)
        n = gk.graph.vertex_count
        d = diameter(gk.graph, method, threads).value
        rows.append(
            RefutationRow(k, n, d, 3 * k, 3 * math.log2(n), fullerene_lower_bound(n), refutes(d, n))
        )
    return rows


def smallest_refuting_k(rows: list[RefutationRow]) -> int | None:
    return next((r.k for r in rows if r.refutes), None)
