"""Graph representation, graph6 codec, generators and structural queries.

Graphs are small (at most 64 vertices) so every vertex set, including each
adjacency list, is a single integer bitmask.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

logger = logging.getLogger(__name__)

MAX_ORDER = 64

# A vertex set is a plain int; bit v set means vertex v is a member.
VertexSet = int


# ============================================================
# ERRORS
# ============================================================
class GraphError(ValueError):
    """Invalid graph construction, generator parameters or vertex index."""


class Graph6Error(ValueError):
    """Base class for graph6 decoding failures."""


class InvalidCharacterError(Graph6Error):
    pass


class EmptyGraphError(Graph6Error):
    pass


class OrderTooLargeError(Graph6Error):
    pass


class TruncatedDataError(Graph6Error):
    pass


class TrailingDataError(Graph6Error):
    pass


class PaddingError(Graph6Error):
    pass


# ============================================================
# BIT HELPERS
# ============================================================
def popcount(mask: int) -> int:
    return bin(mask).count("1")


def vertices(mask: VertexSet) -> list[int]:
    """Members of a vertex set in ascending order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def edge_pairs(n: int) -> list[tuple[int, int]]:
    """Vertex pairs in graph6 order: upper triangle, column by column."""
    return [(i, j) for j in range(1, n) for i in range(j)]


# ============================================================
# GRAPH
# ============================================================
@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_ORDER:
            raise GraphError(f"order must be in [1, {MAX_ORDER}], got {self.n}")
        if len(self.adj) != self.n:
            raise GraphError(f"expected {self.n} adjacency masks, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for v, nbrs in enumerate(self.adj):
            if nbrs & ~full:
                raise GraphError(f"vertex {v} has neighbours outside 0..{self.n - 1}")
            if nbrs >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in vertices(nbrs):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"edge {v}-{u} is not symmetric")

    def __repr__(self):
        return f"<Graph n={self.n} m={self.m}>"

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def from_edge_mask(cls, n: int, mask: int) -> "Graph":
        """Graph whose k-th graph6-ordered pair is an edge iff bit k of mask is set."""
        pairs = edge_pairs(n)
        if mask >> len(pairs):
            raise GraphError(f"edge mask has bits beyond the {len(pairs)} pairs of n={n}")
        return cls.from_edges(n, (pairs[k] for k in vertices(mask)))

    @property
    def full_mask(self) -> VertexSet:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def neighbors(self, v: int) -> list[int]:
        return vertices(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in edge_pairs(self.n) if self.adj[i] >> j & 1]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def with_edge(self, u: int, v: int) -> "Graph":
        return Graph.from_edges(self.n, self.edges() + [(u, v)])


# ============================================================
# GRAPH6 CODEC
# ============================================================
def parse_graph6(line: str) -> Graph:
    """Decode one graph6 string (no ``>>graph6<<`` header)."""
    data = line.strip()
    if not data:
        raise TruncatedDataError("empty graph6 string")
    for pos, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise InvalidCharacterError(f"invalid graph6 character {ch!r} at offset {pos}")

    values = [ord(ch) - 63 for ch in data]
    if values[0] < 63:
        n, pos = values[0], 1
    elif len(values) > 1 and values[1] == 63:
        raise OrderTooLargeError(f"order above {MAX_ORDER} (36-bit size field)")
    else:
        if len(values) < 4:
            raise TruncatedDataError("truncated 18-bit size field")
        n = (values[1] << 12) | (values[2] << 6) | values[3]
        pos = 4
    if n == 0:
        raise EmptyGraphError("graph6 string encodes the empty graph")
    if n > MAX_ORDER:
        raise OrderTooLargeError(f"order {n} exceeds {MAX_ORDER}")

    pairs = edge_pairs(n)
    need = -(-len(pairs) // 6)
    body = values[pos:]
    if len(body) < need:
        raise TruncatedDataError(f"expected {need} edge bytes, found {len(body)}")
    if len(body) > need:
        raise TrailingDataError(f"{len(body) - need} trailing byte(s) after edge data")

    bits = 0
    for value in body:
        bits = (bits << 6) | value
    pad = need * 6 - len(pairs)
    if bits & ((1 << pad) - 1):
        raise PaddingError("nonzero padding bits")
    bits >>= pad

    adj = [0] * n
    total = len(pairs)
    for k, (i, j) in enumerate(pairs):
        if bits >> (total - 1 - k) & 1:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    else:
        head = "~" + "".join(chr(((n >> shift) & 63) + 63) for shift in (12, 6, 0))
    pairs = edge_pairs(n)
    bits = 0
    for i, j in pairs:
        bits = (bits << 1) | (g.adj[i] >> j & 1)
    need = -(-len(pairs) // 6)
    bits <<= need * 6 - len(pairs)
    body = "".join(chr(((bits >> (6 * (need - 1 - k))) & 63) + 63) for k in range(need))
    return head + body


# ============================================================
# GENERATORS
# ============================================================
def _expect(kind: str, params: Sequence[int], count: int) -> list[int]:
    if len(params) != count:
        raise GraphError(f"{kind} takes {count} parameter(s), got {len(params)}")
    return [int(p) for p in params]


def _check_order(kind: str, n: int) -> None:
    if not 1 <= n <= MAX_ORDER:
        raise GraphError(f"{kind}: order {n} outside [1, {MAX_ORDER}]")


def path_graph(n: int) -> Graph:
    _check_order("path", n)
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    _check_order("cycle", n)
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)] + [(n - 1, 0)])


def complete_graph(n: int) -> Graph:
    _check_order("complete", n)
    return Graph.from_edges(n, edge_pairs(n))


def empty_graph(n: int) -> Graph:
    _check_order("empty", n)
    return Graph(n, (0,) * n)


def complete_bipartite_graph(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError(f"complete_bipartite needs both sides >= 1, got {a}, {b}")
    _check_order("complete_bipartite", a + b)
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def hypercube_graph(d: int) -> Graph:
    if d < 0 or (1 << d) > MAX_ORDER:
        raise GraphError(f"hypercube dimension {d} gives an order outside [1, {MAX_ORDER}]")
    n = 1 << d
    return Graph.from_edges(n, ((x, x ^ (1 << b)) for x in range(n) for b in range(d) if x < x ^ (1 << b)))


def star_graph(k: int) -> Graph:
    if k < 0:
        raise GraphError(f"star needs k >= 0 leaves, got {k}")
    _check_order("star", k + 1)
    return Graph.from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


def double_star_graph(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise GraphError(f"double_star needs leaf counts >= 0, got {a}, {b}")
    n = a + b + 2
    _check_order("double_star", n)
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + j) for j in range(b)]
    return Graph.from_edges(n, edges)


def prism_graph(k: int) -> Graph:
    if k < 3:
        raise GraphError(f"prism needs k >= 3, got {k}")
    _check_order("prism", 2 * k)
    ring = [(i, (i + 1) % k) for i in range(k)]
    edges = ring + [(u + k, v + k) for u, v in ring] + [(i, i + k) for i in range(k)]
    return Graph.from_edges(2 * k, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


GENERATORS = {
    "path": (path_graph, 1),
    "cycle": (cycle_graph, 1),
    "complete": (complete_graph, 1),
    "complete_bipartite": (complete_bipartite_graph, 2),
    "hypercube": (hypercube_graph, 1),
    "star": (star_graph, 1),
    "double_star": (double_star_graph, 2),
    "empty": (empty_graph, 1),
    "prism": (prism_graph, 1),
    "petersen": (petersen_graph, 0),
}


def make_generator(kind: str, params: Sequence[int]) -> Graph:
    try:
        build, arity = GENERATORS[kind]
    except KeyError:
        raise GraphError(f"unknown generator {kind!r}; choose from {', '.join(GENERATORS)}") from None
    return build(*_expect(kind, params, arity))


def random_connected_graph(n: int, percent: int, rng: random.Random) -> Graph:
    """Random spanning tree plus each remaining pair with probability percent/100."""
    _check_order("random", n)
    if not 0 <= percent <= 100:
        raise GraphError(f"edge percentage must be in [0, 100], got {percent}")
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    for pair in edge_pairs(n):
        if pair not in edges and rng.random() * 100 < percent:
            edges.add(pair)
    return Graph.from_edges(n, sorted(edges))


def random_graphs(n: int, percent: int, seed: int, count: int) -> Iterator[Graph]:
    if count < 0:
        raise GraphError(f"count must be >= 0, got {count}")
    rng = random.Random(seed)
    for _ in range(count):
        yield random_connected_graph(n, percent, rng)


# ============================================================
# STRUCTURAL QUERIES
# ============================================================
def reach(g: Graph, start: int, within: VertexSet) -> VertexSet:
    """Vertices of ``within`` reachable from ``start`` inside ``within``."""
    seen = 1 << start
    frontier = seen
    adj = g.adj
    while frontier:
        grown = 0
        for v in vertices(frontier):
            grown |= adj[v]
        frontier = grown & within & ~seen
        seen |= frontier
    return seen


def is_connected_set(g: Graph, mask: VertexSet) -> bool:
    if not mask:
        return False
    start = (mask & -mask).bit_length() - 1
    return reach(g, start, mask) == mask


def is_connected(g: Graph) -> bool:
    return is_connected_set(g, g.full_mask)


def min_degree(g: Graph) -> int:
    return min(g.degree(v) for v in range(g.n))


def is_tree(g: Graph) -> bool:
    return g.m == g.n - 1 and is_connected(g)


def is_path_graph(g: Graph) -> bool:
    if not is_connected(g):
        return False
    if g.n <= 2:
        return True
    degrees = sorted(g.degree(v) for v in range(g.n))
    return degrees[:2] == [1, 1] and degrees[-1] == 2


def delete_vertex(g: Graph, v: int) -> Graph:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")
    if g.n == 1:
        raise GraphError("cannot delete the only vertex of K_1")
    low = (1 << v) - 1
    adj = []
    for u in range(g.n):
        if u == v:
            continue
        nbrs = g.adj[u]
        adj.append((nbrs & low) | ((nbrs >> (v + 1)) << v))
    return Graph(g.n - 1, tuple(adj))


def local_connectivity(g: Graph, s: int, t: int) -> int:
    """Maximum number of internally disjoint s-t paths, for non-adjacent s != t.

    Unit-capacity max-flow on the vertex-split network: vertex x becomes
    x_in = x and x_out = x + n joined by one arc; edge uv becomes u_out -> v_in
    and v_out -> u_in. Residual arcs are stored as bitmasks per node.
    """
    if s == t or g.has_edge(s, t):
        raise GraphError(f"local connectivity needs distinct non-adjacent vertices, got {s}, {t}")
    n = g.n
    residual = [0] * (2 * n)
    for x in range(n):
        residual[x] |= 1 << (x + n)
        for y in vertices(g.adj[x]):
            residual[x + n] |= 1 << y
    source, sink = s + n, t

    flow = 0
    while True:
        parent = {source: -1}
        seen = 1 << source
        frontier = [source]
        while frontier and sink not in parent:
            nxt = []
            for x in frontier:
                for y in vertices(residual[x] & ~seen):
                    seen |= 1 << y
                    parent[y] = x
                    nxt.append(y)
            frontier = nxt
        if sink not in parent:
            return flow
        y = sink
        while y != source:
            x = parent[y]
            residual[x] &= ~(1 << y)
            residual[y] |= 1 << x
            y = x
        flow += 1


def vertex_connectivity(g: Graph) -> int:
    """kappa(G); 0 when disconnected and n - 1 for complete graphs."""
    if not is_connected(g):
        return 0
    n = g.n
    if g.m == n * (n - 1) // 2:
        return n - 1
    best = min_degree(g)
    # some vertex among the first kappa + 1 lies outside a minimum cut, and every
    # vertex it is separated from has a larger index
    i = 0
    while i <= best and i < n:
        for j in range(i + 1, n):
            if not g.has_edge(i, j):
                best = min(best, local_connectivity(g, i, j))
        i += 1
    return best
