"""Small simple graphs: parsing, SCT filtering, canonical keys and structure queries.

Vertices are labelled ``0..n-1``. Graph values are immutable, so they can be
shared freely between census workers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

import numpy as np

GRAPH6_MAX_N = 62
CANONICAL_MAX_N = 8


class GraphError(ValueError):
    """Invalid graph input."""


class Graph6Error(GraphError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"graph6 byte {offset}: {message}")
        self.offset = offset


class UnsupportedSizeError(ValueError):
    """Requested vertex count is outside what an operation supports."""


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise GraphError("adjacency length does not match n")
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise GraphError(f"neighbours of {v} are not sorted and unique")
            for w in nbrs:
                if w == v:
                    raise GraphError(f"self-loop at vertex {v}")
                if not 0 <= w < self.n:
                    raise GraphError(f"neighbour {w} of {v} out of range")
                if v not in self.adjacency[w]:
                    raise GraphError(f"adjacency not symmetric for {{{v},{w}}}")

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], n: Optional[int] = None) -> "Graph":
        edges = [tuple(e) for e in edges]
        labels = [v for e in edges for v in e]
        if any(len(e) != 2 for e in edges):
            raise GraphError("every edge needs exactly two endpoints")
        if any((not isinstance(v, (int, np.integer))) or v < 0 for v in labels):
            raise GraphError("vertex labels must be non-negative integers")
        size = (max(labels) + 1) if labels else 0
        if n is None:
            n = size
        elif n < size:
            raise GraphError(f"edge label {size - 1} exceeds n={n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for i, j in edges:
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            nbrs[i].add(int(j))
            nbrs[j].add(int(i))
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.adjacency[i] if i < j]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for i, j in self.edges():
            a[i, j] = a[j, i] = 1.0
        return a

    def laplacian(self) -> np.ndarray:
        a = self.adjacency_matrix()
        return np.diag(a.sum(axis=1)) - a

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph whose vertex ``perm[v]`` plays the role of old vertex ``v``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabelling must be a permutation of 0..n-1")
        return Graph.from_edges(((perm[i], perm[j]) for i, j in self.edges()), n=self.n)

    def to_graph6(self) -> str:
        return format_graph6(self)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# --- constructors -----------------------------------------------------------

def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(((i, (i + 1) % n) for i in range(n)), n=n)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(combinations(range(n), 2), n=n)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(((i, i + 1) for i in range(n - 1)), n=n)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shifted = [(i + g.n, j + g.n) for i, j in h.edges()]
    return Graph.from_edges(g.edges() + shifted, n=g.n + h.n)


def glue_c5(d: int, body: Optional[Graph] = None) -> Graph:
    """C5 on 0..4 with every body vertex 5..4+d joined to both ends of edge {0,4}."""
    if d < 1:
        raise GraphError("glue_c5 needs d >= 1")
    if body is not None and body.n != d:
        raise GraphError(f"body has {body.n} vertices, expected {d}")
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]
    for b in range(5, 5 + d):
        edges += [(0, b), (4, b)]
    if body is not None:
        edges += [(i + 5, j + 5) for i, j in body.edges()]
    return Graph.from_edges(edges, n=5 + d)


# --- parsing ----------------------------------------------------------------

def _pair_order(n: int) -> list[tuple[int, int]]:
    # graph6 column order: x(0,1), x(0,2), x(1,2), x(0,3), ...
    return [(i, j) for j in range(1, n) for i in range(j)]


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    line = text.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    if not line:
        raise Graph6Error("empty input", 0)
    data = line.encode("ascii", errors="replace")
    for k, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(f"value {b} outside 63..126", k)
    n = data[0] - 63
    if n > GRAPH6_MAX_N:
        raise Graph6Error("only the single-byte size header (n <= 62) is supported", 0)
    pairs = _pair_order(n)
    need = -(-len(pairs) // 6)
    if len(data) - 1 != need:
        raise Graph6Error(f"expected {need} payload bytes for n={n}, got {len(data) - 1}",
                          min(len(data), 1 + need))
    bits = []
    for b in data[1:]:
        v = b - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    edges = [p for p, bit in zip(pairs, bits) if bit]
    return Graph.from_edges(edges, n=n)


def _bits_to_graph6(n: int, bits: Sequence[int]) -> bytes:
    bits = list(bits) + [0] * (-len(bits) % 6)
    out = bytearray([n + 63])
    for k in range(0, len(bits), 6):
        v = 0
        for bit in bits[k:k + 6]:
            v = (v << 1) | bit
        out.append(v + 63)
    return bytes(out)


def format_graph6(g: Graph) -> str:
    if g.n > GRAPH6_MAX_N:
        raise UnsupportedSizeError("graph6 output limited to n <= 62")
    bits = [1 if g.has_edge(i, j) else 0 for i, j in _pair_order(g.n)]
    return _bits_to_graph6(g.n, bits).decode("ascii")


def parse_edge_list(pairs: Iterable[Sequence[int]], n: Optional[int] = None) -> Graph:
    return Graph.from_edges(pairs, n=n)


def parse_edge_json(text: str) -> Graph:
    """Parse ``{"n": int?, "edges": [[i, j], ...]}`` (a bare edge array is accepted too)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid edge-list JSON: {exc}") from exc
    if isinstance(obj, list):
        obj = {"edges": obj}
    if not isinstance(obj, dict) or "edges" not in obj:
        raise GraphError("edge-list JSON needs an 'edges' array")
    return Graph.from_edges(obj["edges"], n=obj.get("n"))


# --- queries ----------------------------------------------------------------

def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def is_sct(g: Graph) -> bool:
    """Simple, connected, every vertex of degree at least two."""
    return g.n > 0 and min(g.degrees()) >= 2 and is_connected(g)


def connectivity_mu(g: Graph) -> Fraction:
    if g.n < 2:
        raise GraphError("connectivity needs at least two vertices")
    return Fraction(min(g.degrees()), g.n - 1)


@dataclass(frozen=True)
class KLet:
    vertices: tuple[int, ...]
    shared_neighborhood: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.vertices)


def _twin_classes(g: Graph, closed: bool) -> list[KLet]:
    groups: dict[tuple[int, ...], list[int]] = {}
    for v in range(g.n):
        nbhd = set(g.adjacency[v])
        if closed:
            nbhd.add(v)
        groups.setdefault(tuple(sorted(nbhd)), []).append(v)
    lets = [KLet(tuple(vs), nb) for nb, vs in groups.items() if len(vs) >= 2]
    lets.sort(key=lambda s: (-s.k, s.vertices))
    return lets


def find_klets(g: Graph) -> list[KLet]:
    """Maximal vertex classes with identical open neighbourhoods, largest first."""
    return _twin_classes(g, closed=False)


def find_closed_klets(g: Graph) -> list[KLet]:
    return _twin_classes(g, closed=True)


def klet_codim_bound(g: Graph) -> Optional[int]:
    """Upper bound ``V - k + 1`` on codim(I_G) from the largest k-let with k >= 3.

    Closed neighbourhoods count as well: a vertex may be included in its own
    neighbour set without changing the generator, which covers K_n.
    """
    ks = [s.k for s in find_klets(g) + find_closed_klets(g) if s.k >= 3]
    if not ks:
        return None
    return g.n - max(ks) + 1


def _canonical_cycle(cycle: Sequence[int]) -> list[int]:
    k = cycle.index(min(cycle))
    rot = list(cycle[k:]) + list(cycle[:k])
    if len(rot) > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[1:][::-1]
    return rot


def chordless_cycles(g: Graph, min_len: int = 4) -> list[list[int]]:
    """All induced cycles of length >= min_len, one per cycle up to rotation/reflection.

    Depth-first growth of induced paths rooted at the cycle's smallest vertex.
    """
    if min_len < 3:
        raise ValueError("min_len must be at least 3")
    adj = [set(a) for a in g.adjacency]
    found: list[list[int]] = []

    def extend(path: list[int], interior_nbrs: set[int]):
        s, last = path[0], path[-1]
        for w in adj[last]:
            if w <= s or w in path or w in interior_nbrs:
                continue
            if s in adj[w]:
                if len(path) >= 2 and path[1] < w and len(path) + 1 >= min_len:
                    found.append(path + [w])
                continue
            # the old tail becomes interior: later vertices may not touch it
            extend(path + [w], interior_nbrs | adj[last])

    for s in range(g.n):
        for v1 in adj[s]:
            if v1 > s:
                extend([s, v1], set())
    return sorted(_canonical_cycle(c) for c in found)


def has_chordless_cycle(g: Graph, min_len: int = 5) -> bool:
    return bool(chordless_cycles(g, min_len))


# --- canonical labelling ----------------------------------------------------

@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.intp).reshape(-1, n)


@lru_cache(maxsize=None)
def _pair_index(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    pairs = _pair_order(n)
    i = np.array([p[0] for p in pairs], dtype=np.intp)
    j = np.array([p[1] for p in pairs], dtype=np.intp)
    weights = np.array([1 << (len(pairs) - 1 - k) for k in range(len(pairs))], dtype=np.int64)
    return i, j, weights


def _image_codes(adj: np.ndarray) -> np.ndarray:
    """Bit-string code (MSB = x(0,1)) of the graph under every relabelling."""
    n = adj.shape[0]
    perms = _perm_table(n)
    i, j, weights = _pair_index(n)
    bits = adj[perms[:, i], perms[:, j]]
    return bits.astype(np.int64) @ weights


def _code_to_graph(n: int, code: int) -> Graph:
    pairs = _pair_order(n)
    m = len(pairs)
    edges = [p for k, p in enumerate(pairs) if (code >> (m - 1 - k)) & 1]
    return Graph.from_edges(edges, n=n)


def _key_from_code(n: int, code: int) -> bytes:
    m = n * (n - 1) // 2
    return _bits_to_graph6(n, [(code >> (m - 1 - k)) & 1 for k in range(m)])


def canonical_key(g: Graph) -> bytes:
    """Minimal upper-triangle bit string over all relabellings, as graph6 bytes.

    For a fixed ``n`` the graph6 byte order coincides with the bit-string
    order, so comparing keys compares the underlying strings.
    """
    if g.n > CANONICAL_MAX_N:
        raise UnsupportedSizeError(f"canonical_key supports n <= {CANONICAL_MAX_N}, got {g.n}")
    if g.n < 2:
        return _bits_to_graph6(g.n, [])
    codes = _image_codes(g.adjacency_matrix().astype(bool))
    return _key_from_code(g.n, int(codes.min()))


def canonical_form(g: Graph) -> Graph:
    return parse_graph6(canonical_key(g))


def enumerate_sct(n: int) -> list[Graph]:
    """One representative per isomorphism class of SCT graphs on n vertices.

    Walks every labelled graph once; each new orbit is expanded through all
    relabellings and marked, so only one canonical computation runs per class.
    """
    if not 4 <= n <= 6:
        raise UnsupportedSizeError(f"built-in enumeration covers 4 <= n <= 6, got {n}")
    m = n * (n - 1) // 2
    seen = np.zeros(1 << m, dtype=bool)
    reps: list[tuple[bytes, Graph]] = []
    for code in range(1 << m):
        if seen[code]:
            continue
        g = _code_to_graph(n, code)
        images = _image_codes(g.adjacency_matrix().astype(bool))
        seen[images] = True
        if is_sct(g):
            best = int(images.min())
            reps.append((_key_from_code(n, best), _code_to_graph(n, best)))
    reps.sort(key=lambda kv: kv[0])
    return [gr for _, gr in reps]


def read_graph6_file(path: str) -> list[Graph]:
    graphs = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            if line.strip():
                graphs.append(parse_graph6(line))
    return graphs
