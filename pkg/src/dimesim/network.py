"""Social-network generation and diagnostics.

Holme-Kim growth (preferential attachment with triad-formation steps, tuned
for scale-free degree structure with high clustering) is the production
topology; Erdős–Rényi is provided for comparison. Graphs are undirected,
simple, and immutable once constructed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

__all__ = [
    "SocialGraph",
    "NetworkParams",
    "GraphStats",
    "generate_holme_kim",
    "generate_erdos_renyi",
    "graph_stats",
]


class SocialGraph:
    """Undirected simple graph with per-node sorted neighbour lists.

    Construction validates simplicity (no self-loops, no parallel edges);
    symmetry is implied by building from unordered pairs.
    """

    def __init__(self, node_count: int, edges):
        if node_count < 1:
            raise ValueError("node_count must be >= 1")
        edges = np.asarray(sorted({(min(i, j), max(i, j)) for i, j in edges}), dtype=np.int64)
        if edges.size:
            if edges.min() < 0 or edges.max() >= node_count:
                raise ValueError("edge endpoint out of range")
            if np.any(edges[:, 0] == edges[:, 1]):
                raise ValueError("self-loops are not allowed")
        else:
            edges = edges.reshape(0, 2)
        self._n = node_count
        self._edges = edges
        rows = np.concatenate([edges[:, 0], edges[:, 1]])
        cols = np.concatenate([edges[:, 1], edges[:, 0]])
        data = np.ones(rows.shape[0], dtype=np.float64)
        self._adj = sparse.csr_matrix((data, (rows, cols)), shape=(node_count, node_count))
        self._degrees = np.asarray(self._adj.sum(axis=1)).ravel().astype(np.int64)
        indptr, indices = self._adj.indptr, self._adj.indices
        self._neighbors = [indices[indptr[i]:indptr[i + 1]] for i in range(node_count)]

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return self._edges.shape[0]

    @property
    def edges(self) -> np.ndarray:
        """(E, 2) array of edges with i < j, sorted."""
        return self._edges

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    @property
    def adjacency(self) -> sparse.csr_matrix:
        return self._adj

    def neighbors(self, i: int) -> np.ndarray:
        return self._neighbors[i]

    def degree(self, i: int) -> int:
        return int(self._degrees[i])

    def has_edge(self, i: int, j: int) -> bool:
        return j in set(self._neighbors[i].tolist())

    # -- edge-list text format: one "i j" pair per line, 0-based, i < j --

    def save_edge_list(self, path) -> None:
        lines = [f"{i} {j}" for i, j in self._edges]
        Path(path).write_text(f"# nodes {self._n}\n" + "\n".join(lines) + "\n")

    @classmethod
    def load_edge_list(cls, path) -> "SocialGraph":
        text = Path(path).read_text().strip().splitlines()
        n = None
        edges = []
        for line in text:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if parts and parts[0] == "nodes":
                    n = int(parts[1])
                continue
            i, j = line.split()
            edges.append((int(i), int(j)))
        if n is None:
            n = max(max(i, j) for i, j in edges) + 1
        return cls(n, edges)


@dataclass(frozen=True)
class NetworkParams:
    """Holme-Kim growth parameters.

    ``m`` edges attach each new node, of which on average ``m_t`` come from
    triad-formation steps; growth starts from a complete seed of ``n0`` nodes.
    """

    n: int = 1000
    m: int = 6
    m_t: float = 5.0
    n0: int = 13

    def __post_init__(self):
        if not (self.n0 >= self.m >= 1):
            raise ValueError("requires n0 >= m >= 1")
        if not (0 <= self.m_t <= self.m):
            raise ValueError("requires 0 <= m_t <= m")
        if self.n < self.n0:
            raise ValueError("requires n >= n0")


def generate_holme_kim(params: NetworkParams, rng: np.random.Generator) -> SocialGraph:
    """Grow a scale-free graph with tunable clustering.

    Each new node attaches exactly ``m`` distinct edges: the first by
    preferential attachment, each subsequent edge by triad formation
    (a random neighbour of the previous preferential-attachment target)
    with probability m_t/(m-1), otherwise by preferential attachment, so
    that on average m_t of each node's edges close triangles.  At the
    defaults (m=6, m_t=5) every edge after the first attempts triad
    formation.  Duplicate and self edges are rejected and redrawn; a triad
    step with no valid candidate falls back to preferential attachment.
    """
    n, m, n0 = params.n, params.m, params.n0
    tf_prob = min(1.0, params.m_t / (m - 1)) if m > 1 else 0.0

    neighbor_sets = [set() for _ in range(n)]
    edges = []
    # degree-proportional sampling pool: node index repeated once per degree
    pool = []

    def add_edge(u, v):
        neighbor_sets[u].add(v)
        neighbor_sets[v].add(u)
        edges.append((u, v))
        pool.append(u)
        pool.append(v)

    for i in range(n0):
        for j in range(i + 1, n0):
            add_edge(i, j)

    for new in range(n0, n):
        last_pa_target = None

        def draw_pa():
            while True:
                target = pool[int(rng.integers(len(pool)))]
                if target != new and target not in neighbor_sets[new]:
                    return target

        for e in range(m):
            target = None
            if e > 0 and rng.random() < tf_prob:
                candidates = [
                    k for k in neighbor_sets[last_pa_target]
                    if k != new and k not in neighbor_sets[new]
                ]
                if candidates:
                    target = candidates[int(rng.integers(len(candidates)))]
            if target is None:
                target = draw_pa()
                last_pa_target = target
            add_edge(new, target)

    return SocialGraph(n, edges)


def generate_erdos_renyi(n: int, edge_prob: float, rng: np.random.Generator) -> SocialGraph:
    """Link each unordered pair independently with probability ``edge_prob``."""
    if not (0.0 <= edge_prob <= 1.0):
        raise ValueError("edge_prob must lie in [0, 1]")
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(iu.shape[0]) < edge_prob
    return SocialGraph(n, zip(iu[mask].tolist(), ju[mask].tolist()))


@dataclass(frozen=True)
class GraphStats:
    mean_degree: float
    global_clustering: float
    characteristic_path_length: float
    degree_histogram: np.ndarray  # (k, 2) rows of (degree, count)
    connected: bool

    def histogram_csv(self) -> str:
        lines = ["degree,count"]
        lines += [f"{int(d)},{int(c)}" for d, c in self.degree_histogram]
        return "\n".join(lines) + "\n"


def graph_stats(graph: SocialGraph) -> GraphStats:
    """Mean degree, transitivity, characteristic path length, degree histogram.

    Path length is the average shortest-path distance over node pairs; for a
    disconnected graph it is computed on the largest component and flagged.
    """
    n = graph.node_count
    if n == 0 or graph.edge_count == 0:
        raise ValueError("graph statistics require a non-empty graph")
    adj = graph.adjacency
    degrees = graph.degrees
    mean_degree = 2.0 * graph.edge_count / n

    # global clustering = 3 * triangles / connected triples
    triangles = (adj @ adj @ adj).diagonal().sum() / 6.0
    triples = float(np.sum(degrees * (degrees - 1) / 2.0))
    clustering = 3.0 * triangles / triples if triples > 0 else 0.0

    n_comp, labels = csgraph.connected_components(adj, directed=False)
    connected = n_comp == 1
    if connected:
        nodes = np.arange(n)
    else:
        largest = np.argmax(np.bincount(labels))
        nodes = np.flatnonzero(labels == largest)
    sub = adj[np.ix_(nodes, nodes)].tocsr()
    dist = csgraph.shortest_path(sub, method="D", unweighted=True)
    k = len(nodes)
    path_length = float(dist[np.triu_indices(k, 1)].mean()) if k > 1 else 0.0

    values, counts = np.unique(degrees, return_counts=True)
    histogram = np.column_stack([values, counts])
    return GraphStats(
        mean_degree=mean_degree,
        global_clustering=float(clustering),
        characteristic_path_length=path_length,
        degree_histogram=histogram,
        connected=connected,
    )
