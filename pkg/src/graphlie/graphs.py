"""Finite simple graphs: parsing, complement, components, canonical forms.

Vertices are labeled 1..m and that labeling is meaningful everywhere else
in the package (it fixes the generator order of the associated algebras).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations


@dataclass(frozen=True)
class SimpleGraph:
    m: int
    edges: frozenset

    @staticmethod
    def make(m: int, edge_pairs) -> "SimpleGraph":
        if not isinstance(m, int) or m < 1:
            raise ValueError("vertex count must be a positive integer")
        edges = set()
        for pair in edge_pairs:
            i, j = pair
            if not (isinstance(i, int) and isinstance(j, int)):
                raise ValueError(f"edge {pair!r} has non-integer endpoints")
            if i == j:
                raise ValueError(f"loop at vertex {i} is not allowed")
            if not (1 <= i <= m and 1 <= j <= m):
                raise ValueError(f"edge {pair!r} outside vertex range 1..{m}")
            edges.add((min(i, j), max(i, j)))
        return SimpleGraph(m, frozenset(edges))

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def neighbors(self, i: int) -> set:
        out = set()
        for a, b in self.edges:
            if a == i:
                out.add(b)
            elif b == i:
                out.add(a)
        return out

    def nonedges(self) -> list:
        return [
            (i, j) for i, j in combinations(range(1, self.m + 1), 2)
            if (i, j) not in self.edges
        ]

    def complement(self) -> "SimpleGraph":
        return SimpleGraph(self.m, frozenset(self.nonedges()))

    def is_complete(self) -> bool:
        return len(self.edges) == self.m * (self.m - 1) // 2

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def to_edge_list(self) -> dict:
        return {"m": self.m, "edges": [list(e) for e in self.sorted_edges()]}


@dataclass(frozen=True)
class GraphAnalysis:
    components: tuple
    isolated: frozenset
    complete: bool


def parse_graph(text: str, fmt: str = "edge-list-json") -> SimpleGraph:
    """Parse "edge-list-json" ({"m": int, "edges": [[i, j], ...]}) or "graph6"."""
    if fmt == "edge-list-json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed edge list JSON: {exc}") from exc
        if not isinstance(data, dict) or "m" not in data or "edges" not in data:
            raise ValueError('edge list JSON must be {"m": int, "edges": [[i, j], ...]}')
        edges = data["edges"]
        if not isinstance(edges, list):
            raise ValueError("edges must be a list of pairs")
        pairs = []
        for e in edges:
            if not isinstance(e, (list, tuple)) or len(e) != 2:
                raise ValueError(f"edge {e!r} is not a pair")
            pairs.append((e[0], e[1]))
        return SimpleGraph.make(data["m"], pairs)
    if fmt == "graph6":
        return from_graph6(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def from_graph6(code: str) -> SimpleGraph:
    code = code.strip()
    if not code:
        raise ValueError("empty graph6 code")
    if code.startswith(">>graph6<<"):
        code = code[len(">>graph6<<"):]
    vals = []
    for ch in code:
        o = ord(ch)
        if not 63 <= o <= 126:
            raise ValueError(f"invalid graph6 character {ch!r}")
        vals.append(o - 63)
    if vals[0] == 63:
        raise ValueError("graph6 codes with more than 62 vertices are not supported")
    m = vals[0]
    if m < 1:
        raise ValueError("graph6 code must have at least one vertex")
    nbits = m * (m - 1) // 2
    bits = []
    for v in vals[1:]:
        for shift in range(5, -1, -1):
            bits.append((v >> shift) & 1)
    if len(bits) < nbits or any(bits[nbits:]):
        raise ValueError("graph6 bit payload has the wrong length")
    edges = []
    idx = 0
    for j in range(1, m):
        for i in range(j):
            if bits[idx]:
                edges.append((i + 1, j + 1))
            idx += 1
    return SimpleGraph.make(m, edges)


def to_graph6(graph: SimpleGraph) -> str:
    if graph.m > 62:
        raise ValueError("graph6 codes with more than 62 vertices are not supported")
    bits = []
    for j in range(1, graph.m):
        for i in range(j):
            bits.append(1 if graph.adjacent(i + 1, j + 1) else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(graph.m + 63)]
    for pos in range(0, len(bits), 6):
        val = 0
        for b in bits[pos:pos + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def analyze(graph: SimpleGraph) -> GraphAnalysis:
    parent = list(range(graph.m + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in graph.edges:
        parent[find(a)] = find(b)
    comps: dict = {}
    for v in range(1, graph.m + 1):
        comps.setdefault(find(v), set()).add(v)
    components = tuple(
        frozenset(c) for c in sorted(comps.values(), key=min)
    )
    isolated = frozenset(v for c in components if len(c) == 1 for v in c)
    return GraphAnalysis(components, isolated, graph.is_complete())


def canonical_form(graph: SimpleGraph) -> str:
    """Lexicographically least upper-triangular adjacency bit string.

    The minimum runs over all vertex relabelings, with pairs ordered
    (1,2),(1,3),...,(1,m),(2,3),... so equal strings mean isomorphic graphs.
    """
    if graph.m > 8:
        raise ValueError("canonical form is limited to at most 8 vertices")
    pairs = list(combinations(range(graph.m), 2))
    verts = list(range(1, graph.m + 1))
    best = None
    for order in permutations(verts):
        bits = tuple(
            1 if graph.adjacent(order[i], order[j]) else 0 for i, j in pairs
        )
        if best is None or bits < best:
            best = bits
    return "".join(str(b) for b in best)


def graph_from_canonical(m: int, form: str) -> SimpleGraph:
    pairs = list(combinations(range(1, m + 1), 2))
    if len(form) != len(pairs):
        raise ValueError("canonical string length does not match vertex count")
    return SimpleGraph.make(m, [p for p, bit in zip(pairs, form) if bit == "1"])


def enumerate_graphs(n: int) -> list:
    """One representative per isomorphism class on n vertices, sorted by canonical string.

    Builds up from n-1 vertices by attaching a new vertex with every possible
    neighbor set, which reaches every class because deleting a vertex of any
    n-vertex graph lands in some (n-1)-vertex class.
    """
    if not 1 <= n <= 7:
        raise ValueError("enumeration is limited to 1..7 vertices")
    reps = {canonical_form(SimpleGraph.make(1, []))}
    size = 1
    while size < n:
        size += 1
        next_reps = set()
        for form in reps:
            base = graph_from_canonical(size - 1, form)
            for mask in range(1 << (size - 1)):
                edges = set(base.edges)
                for v in range(1, size):
                    if mask >> (v - 1) & 1:
                        edges.add((v, size))
                g = SimpleGraph.make(size, edges)
                next_reps.add(canonical_form(g))
        reps = next_reps
    return [graph_from_canonical(n, form) for form in sorted(reps)]
