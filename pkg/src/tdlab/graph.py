"""Simple undirected graphs stored as per-vertex neighbourhood bitsets.

Vertices are ``0..n-1``; ``adj[v]`` is an int whose bit ``u`` is set iff
``u`` is adjacent to ``v``.  Graphs are immutable once built.

Vertex numbering of the named families is fixed so that golden files
stay stable:

* ``star(n)``: center 0, leaves 1..n
* ``wheel(n)``: hub 0, rim 1..n in cycle order
* ``helm(n)``: hub 0, rim 1..n, leaf of rim vertex i is n+i
* ``generalized_helm(n, m)``: hub 0, rim 1..n, leaves of rim vertex i are
  n+1+(i-1)m .. n+im
* ``friendship(n, q)``: center 0, cycle c occupies 1+c(q-1) .. (c+1)(q-1)
  as a path whose two ends are adjacent to the center
* ``gadget_g(n)``: clique vertices 0..2n-1, outer vertex 2n+i adjacent to
  clique vertices 2i and 2i+1
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ParameterError, SizeError

MAX_ORDER = 4096
MAX_CORPUS_ORDER = 7


def _bit_count(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_ORDER:
            raise ParameterError(f"graph order must satisfy 1 <= n <= {MAX_ORDER}, got {self.n}")
        if len(self.adj) != self.n:
            raise ParameterError("adjacency length does not match order")
        full = (1 << self.n) - 1
        for u, nb in enumerate(self.adj):
            if nb & ~full:
                raise ParameterError(f"vertex {u} has a neighbour outside 0..{self.n - 1}")
            if nb >> u & 1:
                raise ParameterError(f"loop at vertex {u}")
            for v in _bits(nb):
                if not self.adj[v] >> u & 1:
                    raise ParameterError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) out of range for order {n}")
            if u == v:
                raise ParameterError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return _bit_count(self.adj[v])

    def degrees(self) -> list[int]:
        return [_bit_count(a) for a in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u]) if u < v]

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def has_isolated_vertex(self) -> bool:
        return any(a == 0 for a in self.adj)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- family specs --------------------------------------------------------

_FAMILY_ARITY = {
    "complete": 1,
    "empty": 1,
    "star": 1,
    "path": 1,
    "cycle": 1,
    "wheel": 1,
    "helm": 1,
    "generalized_helm": 2,
    "friendship": 2,
    "gadget_g": 1,
}


@dataclass(frozen=True)
class FamilySpec:
    """A named family instance, e.g. ``FamilySpec("friendship", (3, 4))``.

    ``from_file`` specs carry the path in ``path`` and no parameters.
    """

    kind: str
    params: tuple[int, ...] = ()
    path: str | None = None

    def __post_init__(self):
        kind, p = self.kind, self.params
        if kind == "from_file":
            if self.path is None:
                raise ParameterError("from_file spec needs a path")
            return
        if kind not in _FAMILY_ARITY:
            raise ParameterError(f"unknown family kind {kind!r}; expected one of {sorted(_FAMILY_ARITY)}")
        if len(p) != _FAMILY_ARITY[kind]:
            raise ParameterError(f"{kind} takes {_FAMILY_ARITY[kind]} parameter(s), got {len(p)}")
        n = p[0]
        need = {
            "complete": (n >= 1, "n >= 1"),
            "empty": (n >= 1, "n >= 1"),
            "star": (n >= 1, "n >= 1"),
            "path": (n >= 1, "n >= 1"),
            "cycle": (n >= 3, "n >= 3"),
            "wheel": (n >= 3, "n >= 3"),
            "helm": (n >= 3, "n >= 3"),
            "generalized_helm": (n >= 3 and p[-1] >= 1, "n >= 3 and m >= 1"),
            "friendship": (n >= 1 and p[-1] >= 3, "n >= 1 and q >= 3"),
            "gadget_g": (n >= 1, "n >= 1"),
        }
        ok, rule = need[kind]
        if not ok:
            raise ParameterError(f"{kind}{p}: parameters must satisfy {rule}")

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse the ``kind:p1[,p2]`` mini-grammar (``helm:5``, ``friendship:3,4``)."""
        m = re.fullmatch(r"\s*([a-z_]+)\s*:\s*(\d+(?:\s*,\s*\d+)*)\s*", text)
        if not m:
            raise ParameterError(f"cannot parse family spec {text!r}; expected kind:p1[,p2]")
        params = tuple(int(t) for t in m.group(2).split(","))
        return cls(m.group(1), params)

    def __str__(self):
        if self.kind == "from_file":
            return f"file:{self.path}"
        return f"{self.kind}:{','.join(map(str, self.params))}"

    @property
    def order(self) -> int:
        p = self.params
        return {
            "complete": lambda: p[0],
            "empty": lambda: p[0],
            "star": lambda: p[0] + 1,
            "path": lambda: p[0],
            "cycle": lambda: p[0],
            "wheel": lambda: p[0] + 1,
            "helm": lambda: 2 * p[0] + 1,
            "generalized_helm": lambda: p[0] * (p[1] + 1) + 1,
            "friendship": lambda: p[0] * (p[1] - 1) + 1,
            "gadget_g": lambda: 3 * p[0],
            "from_file": lambda: read_edge_list(self.path).n,
        }[self.kind]()


# -- constructors --------------------------------------------------------

def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def empty(n: int) -> Graph:
    if n < 1:
        raise ParameterError("empty graph needs n >= 1")
    return Graph(n, (0,) * n)


def star(n: int) -> Graph:
    return Graph.from_edges(n + 1, ((0, i) for i in range(1, n + 1)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterError("cycle needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def wheel(n: int) -> Graph:
    return join(complete(1), cycle(n))


def generalized_helm(n: int, m: int) -> Graph:
    if n < 3 or m < 1:
        raise ParameterError("generalized helm needs n >= 3 and m >= 1")
    edges = [(0, i) for i in range(1, n + 1)]
    edges += [(i, i % n + 1) for i in range(1, n + 1)]
    for i in range(1, n + 1):
        first = n + 1 + (i - 1) * m
        edges += [(i, leaf) for leaf in range(first, first + m)]
    return Graph.from_edges(n * (m + 1) + 1, edges)


def helm(n: int) -> Graph:
    return generalized_helm(n, 1)


def friendship(n: int, q: int) -> Graph:
    if n < 1 or q < 3:
        raise ParameterError("friendship graph needs n >= 1 and q >= 3")
    edges = []
    for c in range(n):
        first = 1 + c * (q - 1)
        last = first + q - 2
        edges += [(0, first), (last, 0)]
        edges += [(v, v + 1) for v in range(first, last)]
    return Graph.from_edges(n * (q - 1) + 1, edges)


def gadget_g(n: int) -> Graph:
    """Clique K_2n plus n outer vertices, each on a private clique pair."""
    if n < 1:
        raise ParameterError("gadget_g needs n >= 1")
    edges = list(itertools.combinations(range(2 * n), 2))
    for i in range(n):
        u = 2 * n + i
        edges += [(u, 2 * i), (u, 2 * i + 1)]
    return Graph.from_edges(3 * n, edges)


def gadget_outer(n: int) -> int:
    """Bitmask of the outer vertices of ``gadget_g(n)``."""
    return ((1 << n) - 1) << (2 * n)


def build_family(spec: FamilySpec) -> Graph:
    p = spec.params
    builders = {
        "complete": lambda: complete(p[0]),
        "empty": lambda: empty(p[0]),
        "star": lambda: star(p[0]),
        "path": lambda: path(p[0]),
        "cycle": lambda: cycle(p[0]),
        "wheel": lambda: wheel(p[0]),
        "helm": lambda: helm(p[0]),
        "generalized_helm": lambda: generalized_helm(p[0], p[1]),
        "friendship": lambda: friendship(p[0], p[1]),
        "gadget_g": lambda: gadget_g(p[0]),
        "from_file": lambda: read_edge_list(spec.path),
    }
    return builders[spec.kind]()


# -- products ------------------------------------------------------------

def disjoint_union(g: Graph, h: Graph) -> Graph:
    shift = g.n
    return Graph(g.n + h.n, g.adj + tuple(a << shift for a in h.adj))


def join(g: Graph, h: Graph) -> Graph:
    g_all = g.full_mask
    h_all = h.full_mask << g.n
    adj = tuple(a | h_all for a in g.adj) + tuple((a << g.n) | g_all for a in h.adj)
    return Graph(g.n + h.n, adj)


def corona(g: Graph, h: Graph) -> Graph:
    """One copy of ``g`` and ``g.n`` copies of ``h``; copy i hangs off vertex i.

    Copy i occupies vertices ``g.n + i*h.n .. g.n + (i+1)*h.n - 1``.
    """
    n, k = g.n, h.n
    adj = list(g.adj) + [0] * (n * k)
    for i in range(n):
        base = n + i * k
        block = ((1 << k) - 1) << base
        adj[i] |= block
        for a in range(k):
            adj[base + a] = (h.adj[a] << base) | (1 << i)
    return Graph(n + n * k, tuple(adj))


def lexicographic(g: Graph, h: Graph) -> Graph:
    """G[H]: vertex (u, a) is numbered ``u * h.n + a``."""
    k = h.n
    block = (1 << k) - 1
    adj = []
    for u in range(g.n):
        outer = 0
        for v in _bits(g.adj[u]):
            outer |= block << (v * k)
        for a in range(k):
            adj.append(outer | (h.adj[a] << (u * k)))
    return Graph(g.n * k, tuple(adj))


# -- metrics -------------------------------------------------------------

@dataclass(frozen=True)
class GraphMetrics:
    order: int
    edges: int
    min_degree: int
    max_degree: int
    connected: bool
    support_count: int
    leaf_count: int

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "edges": self.edges,
            "min_degree": self.min_degree,
            "max_degree": self.max_degree,
            "connected": self.connected,
            "support_count": self.support_count,
            "leaf_count": self.leaf_count,
        }


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == g.full_mask


def support_mask(g: Graph) -> int:
    """Bitmask of support vertices (vertices adjacent to a leaf)."""
    leaves = sum(1 << v for v in range(g.n) if g.degree(v) == 1)
    return sum(1 << v for v in range(g.n) if g.adj[v] & leaves)


def metrics(g: Graph) -> GraphMetrics:
    deg = g.degrees()
    return GraphMetrics(
        order=g.n,
        edges=sum(deg) // 2,
        min_degree=min(deg),
        max_degree=max(deg),
        connected=is_connected(g),
        support_count=_bit_count(support_mask(g)),
        leaf_count=deg.count(1),
    )


# -- labelled corpus -----------------------------------------------------

def pair_list(n: int) -> list[tuple[int, int]]:
    """Edge ``e`` of an adjacency mask is the e-th pair of ``combinations(range(n), 2)``."""
    return list(itertools.combinations(range(n), 2))


def corpus_arrays(n: int, connected_only: bool = False, min_degree: int = 0):
    """Vectorised labelled corpus on ``n`` vertices.

    Returns ``(masks, adj)`` where ``masks`` are the edge masks that pass
    the filters and ``adj`` is an ``(len(masks), n)`` uint8 array of
    neighbourhood bitsets.
    """
    if not 1 <= n <= MAX_CORPUS_ORDER:
        raise SizeError(f"corpus order must satisfy 1 <= n <= {MAX_CORPUS_ORDER}, got {n}")
    pairs = pair_list(n)
    masks = np.arange(1 << len(pairs), dtype=np.int64)
    adj = np.zeros((masks.size, n), dtype=np.uint8)
    for e, (u, v) in enumerate(pairs):
        bit = ((masks >> e) & 1).astype(np.uint8)
        adj[:, u] |= bit << v
        adj[:, v] |= bit << u
    keep = np.ones(masks.size, dtype=bool)
    if min_degree > 0:
        deg = popcount8(adj)
        keep &= deg.min(axis=1) >= min_degree
    if connected_only:
        keep &= connected_rows(adj)
    return masks[keep], adj[keep]


_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def popcount8(a: np.ndarray) -> np.ndarray:
    return _POP8[a]


def connected_rows(adj: np.ndarray) -> np.ndarray:
    n = adj.shape[1]
    reach = np.ones(adj.shape[0], dtype=np.uint8)
    for _ in range(n - 1):
        nxt = reach.copy()
        for v in range(n):
            nxt |= np.where((reach >> v) & 1, adj[:, v], 0).astype(np.uint8)
        reach = nxt
    return reach == (1 << n) - 1


def graph_from_mask(n: int, mask: int) -> Graph:
    return Graph.from_edges(n, (p for e, p in enumerate(pair_list(n)) if mask >> e & 1))


def enumerate_small_graphs(n: int, connected_only: bool = False, min_degree: int = 0) -> Iterator[Graph]:
    """Yield every labelled graph on ``n`` vertices passing the filters, once each.

    No isomorphism reduction is done.
    """
    _, adj = corpus_arrays(n, connected_only, min_degree)
    for row in adj:
        yield Graph(n, tuple(int(a) for a in row))


# -- edge-list files -----------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise ParameterError("edge list is empty")
    lineno, head = rows[0]
    if len(head) != 2:
        raise ParameterError(f"line {lineno}: header must be 'n m'")
    n, m = (int(t) for t in head)
    if len(rows) - 1 != m:
        raise ParameterError(f"header announces {m} edges but {len(rows) - 1} were given")
    seen = set()
    edges = []
    for lineno, tok in rows[1:]:
        if len(tok) != 2:
            raise ParameterError(f"line {lineno}: expected 'u v'")
        u, v = (int(t) for t in tok)
        if not (0 <= u < n and 0 <= v < n):
            raise ParameterError(f"line {lineno}: edge ({u}, {v}) out of range for order {n}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParameterError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(n, edges)


def read_edge_list(path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def edge_set(g: Graph) -> set[tuple[int, int]]:
    return set(g.edges())


def union_all(graphs: Sequence[Graph]) -> Graph:
    out = graphs[0]
    for h in graphs[1:]:
        out = disjoint_union(out, h)
    return out
