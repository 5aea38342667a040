"""Graded bases and structure constants of k-step nilpotent graph Lie algebras.

The algebra attached to a graph G on vertices 1..m is the free k-step
nilpotent Lie algebra on those generators modulo the brackets of
non-adjacent pairs. Its degree-j slice embeds into the span of length-j
words of the trace monoid in which two letters commute exactly when they
are not adjacent in G, by sending a bracket word to its associative
expansion uv - vu written in normal form. Ranks of expansions therefore
decide everything, in exact rational arithmetic.

Candidates for basis labels are the Lyndon words of length at most k with
their standard bracketings; their images span each slice because they span
the free Lie algebra before the quotient. A greedy sweep in lexicographic
order keeps the first rank-extending subset, one block of constant
multidegree at a time (expansions of different content never interact).
An independent dimension count from the clique polynomial of the
complement graph cross-checks the result of the sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import InternalInvariantError
from .graphs import SimpleGraph
from .liealg import BasisLabel, GradedLieAlgebra
from .linalg import ONE, ZERO, RowReducer


class TraceContext:
    """Commutation table of a graph plus a normal form cache."""

    def __init__(self, graph: SimpleGraph):
        self.graph = graph
        self.m = graph.m
        table = [[False] * (graph.m + 1) for _ in range(graph.m + 1)]
        for i in range(1, graph.m + 1):
            for j in range(1, graph.m + 1):
                if i != j and not graph.adjacent(i, j):
                    table[i][j] = True
        self.commutes = table
        self._cache: dict = {}

    def normal_form(self, word) -> tuple:
        """Lexicographically least representative of the trace class of word.

        A letter occurrence can be first in some representative exactly when
        it commutes with everything before it; taking the least such letter
        and recursing yields the minimum. Equal letters never commute, so the
        movable occurrence of each letter value is unique.
        """
        word = tuple(word)
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        for v in word:
            if not 1 <= v <= self.m:
                raise ValueError(f"letter {v} outside alphabet 1..{self.m}")
        commutes = self.commutes
        rest = list(word)
        out = []
        while rest:
            best_letter = None
            best_pos = -1
            for pos, a in enumerate(rest):
                if best_letter is not None and a >= best_letter:
                    continue
                if all(commutes[a][b] for b in rest[:pos]):
                    best_letter = a
                    best_pos = pos
            out.append(best_letter)
            del rest[best_pos]
        result = tuple(out)
        self._cache[word] = result
        return result

    def commutator(self, left: dict, right: dict, k: int) -> dict:
        """Expansion of [x, y] from word expansions of x and y, truncated past degree k."""
        out: dict = {}
        for w1, c1 in left.items():
            for w2, c2 in right.items():
                if len(w1) + len(w2) > k:
                    continue
                coef = c1 * c2
                w = self.normal_form(w1 + w2)
                s = out.get(w, ZERO) + coef
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
                w = self.normal_form(w2 + w1)
                s = out.get(w, ZERO) - coef
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return out


_CONTEXTS: dict = {}


def _context(graph: SimpleGraph) -> TraceContext:
    ctx = _CONTEXTS.get(graph)
    if ctx is None:
        ctx = _CONTEXTS[graph] = TraceContext(graph)
    return ctx


def trace_normal_form(word, graph: SimpleGraph) -> tuple:
    return _context(graph).normal_form(tuple(word))


def lyndon_words(m: int, maxlen: int) -> list:
    """All Lyndon words over 1..m of length 1..maxlen, in lexicographic order (Duval)."""
    if m < 1 or maxlen < 1:
        return []
    out = []
    w = [1]
    while w:
        out.append(tuple(w))
        size = len(w)
        while len(w) < maxlen:
            w.append(w[len(w) - size])
        while w and w[-1] == m:
            w.pop()
        if w:
            w[-1] += 1
    return out


def standard_bracketing(word):
    """Right standard factorization: w = uv with v the least proper suffix."""
    word = tuple(word)
    if len(word) == 1:
        return word[0]
    cut = min(range(1, len(word)), key=lambda s: word[s:])
    return (standard_bracketing(word[:cut]), standard_bracketing(word[cut:]))


def bracket_word_leaves(tree) -> tuple:
    if isinstance(tree, int):
        return (tree,)
    return bracket_word_leaves(tree[0]) + bracket_word_leaves(tree[1])


def bracket_word_label(tree) -> str:
    if isinstance(tree, int):
        return f"v{tree}"
    return f"[{bracket_word_label(tree[0])},{bracket_word_label(tree[1])}]"


def multidegree_of_leaves(leaves, m: int) -> tuple:
    md = [0] * m
    for v in leaves:
        md[v - 1] += 1
    return tuple(md)


def expand_bracket_word(tree, graph: SimpleGraph, k: int) -> dict:
    """Word expansion of a bracket word, as {normal form: coefficient}."""
    leaves = bracket_word_leaves(tree)
    if len(leaves) > k:
        raise ValueError(f"bracket word of degree {len(leaves)} exceeds the bound k={k}")
    for v in leaves:
        if not (isinstance(v, int) and 1 <= v <= graph.m):
            raise ValueError(f"leaf {v!r} is not a vertex of the graph")
    ctx = _context(graph)

    def rec(node):
        if isinstance(node, int):
            return {(node,): ONE}
        return ctx.commutator(rec(node[0]), rec(node[1]), k)

    return rec(tree)


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        else:
            p += 1
    if n > 1:
        result = -result
    return result


def clique_polynomial(graph: SimpleGraph) -> list:
    """Coefficients [c_0, c_1, ...] counting cliques of each size (c_0 = 1)."""
    counts = [1] + [0] * graph.m
    verts = range(1, graph.m + 1)
    for size in range(1, graph.m + 1):
        found = 0
        for subset in combinations(verts, size):
            if all(graph.adjacent(a, b) for a, b in combinations(subset, 2)):
                found += 1
        if found == 0:
            break
        counts[size] = found
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def dimension_oracle(graph: SimpleGraph, k: int) -> list:
    """Per-degree dimensions for degrees 1..k, independent of any basis.

    The generating series of the trace monoid of the complement is
    1 / C(-t) with C the clique polynomial of the complement; writing
    log(1 / C(-t)) = sum q_n t^n, the dimensions satisfy
    n q_n = sum_{d | n} d l_d and Moebius inversion recovers l_d.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    cpoly = clique_polynomial(graph.complement())
    # a_n = coefficient of t^n in C(-t); s = 1 / C(-t) from a * s = 1
    a = [((-1) ** n) * c for n, c in enumerate(cpoly)]
    s = [ONE] + [ZERO] * k
    for n in range(1, k + 1):
        acc = ZERO
        for i in range(1, min(n, len(a) - 1) + 1):
            acc += a[i] * s[n - i]
        s[n] = -acc
    # n q_n from the log derivative recurrence n s_n = sum j q_j s_{n-j}
    nq = [ZERO] * (k + 1)
    for n in range(1, k + 1):
        acc = n * s[n]
        for j in range(1, n):
            acc -= nq[j] * s[n - j]
        nq[n] = acc
    dims = []
    for d in range(1, k + 1):
        acc = ZERO
        for e in range(1, d + 1):
            if d % e == 0:
                acc += _mobius(d // e) * nq[e]
        if acc % d != 0 or acc < 0:
            raise InternalInvariantError("dimension count is not a nonnegative integer")
        dims.append(int(acc) // d)
    return dims


@dataclass(eq=False)
class BasisElement:
    index: int
    degree: int
    word: tuple
    tree: object
    multidegree: tuple
    expansion: dict

    @property
    def label(self) -> str:
        return bracket_word_label(self.tree)


@dataclass(eq=False)
class GradedBasis:
    graph: SimpleGraph
    k: int
    dims: tuple
    elements: list

    def elements_of_degree(self, degree: int) -> list:
        return [e for e in self.elements if e.degree == degree]

    def multidegrees_of_degree(self, degree: int) -> list:
        return sorted(e.multidegree for e in self.elements_of_degree(degree))


def graded_basis(graph: SimpleGraph, k: int) -> GradedBasis:
    """Greedy homogeneous basis with Lyndon word labels, degree by degree."""
    if k < 1:
        raise ValueError("k must be at least 1")
    oracle = dimension_oracle(graph, k)
    ctx = _context(graph)
    by_length: dict = {}
    for word in lyndon_words(graph.m, k):
        by_length.setdefault(len(word), []).append(word)
    elements = []
    dims = []
    for degree in range(1, k + 1):
        picked_before = len(elements)
        blocks: dict = {}
        for word in by_length.get(degree, []):
            tree = standard_bracketing(word)
            expansion = expand_bracket_word(tree, graph, k)
            if not expansion:
                continue
            md = multidegree_of_leaves(word, graph.m)
            reducer, columns = blocks.setdefault(md, (RowReducer(full=True), {}))
            row = {}
            for w, c in expansion.items():
                col = columns.setdefault(w, len(columns))
                row[col] = c
            if reducer.add(row):
                elements.append(
                    BasisElement(len(elements), degree, word, tree, md, expansion)
                )
        got = len(elements) - picked_before
        if got != oracle[degree - 1]:
            raise InternalInvariantError(
                f"degree {degree}: greedy basis found {got} elements, "
                f"dimension count expects {oracle[degree - 1]}"
            )
        dims.append(got)
    return GradedBasis(graph, k, tuple(dims), elements)


class _BlockSolver:
    """Coordinates with respect to the expansions of one multidegree block."""

    def __init__(self, members):
        self.members = list(members)
        self.columns: dict = {}
        rows = []
        for e in self.members:
            row = {}
            for w, c in e.expansion.items():
                col = self.columns.setdefault(w, len(self.columns))
                row[col] = c
            rows.append(row)
        self.offset = len(self.columns) + 1
        self.red = RowReducer(full=True)
        for pos, row in enumerate(rows):
            row = dict(row)
            row[self.offset + pos] = ONE
            if not self.red.add(row):
                raise InternalInvariantError("basis expansions are dependent")

    def solve(self, expansion: dict) -> dict:
        row = {}
        for w, c in expansion.items():
            col = self.columns.get(w)
            if col is None:
                raise InternalInvariantError("bracket leaves the expected word block")
            row[col] = c
        rem = self.red.reduce(row)
        if any(c < self.offset for c in rem):
            raise InternalInvariantError("bracket is not in the span of the basis")
        out = {}
        for c, v in rem.items():
            idx = self.members[c - self.offset].index
            out[idx] = -v
        return out


@lru_cache(maxsize=128)
def _structure_constants_cached(graph: SimpleGraph, k: int) -> GradedLieAlgebra:
    gb = graded_basis(graph, k)
    ctx = _context(graph)
    solvers: dict = {}
    for e in gb.elements:
        solvers.setdefault((e.degree, e.multidegree), []).append(e)
    solvers = {key: _BlockSolver(members) for key, members in solvers.items()}
    sc = {}
    total = len(gb.elements)
    for i in range(total):
        ei = gb.elements[i]
        for j in range(i + 1, total):
            ej = gb.elements[j]
            degree = ei.degree + ej.degree
            if degree > k:
                continue
            expansion = ctx.commutator(ei.expansion, ej.expansion, k)
            if not expansion:
                continue
            md = tuple(a + b for a, b in zip(ei.multidegree, ej.multidegree))
            solver = solvers.get((degree, md))
            if solver is None:
                raise InternalInvariantError("bracket lands in an empty multidegree block")
            terms = solver.solve(expansion)
            if terms:
                sc[(i, j)] = terms
    labels = tuple(
        BasisLabel(e.label, e.degree, e.multidegree) for e in gb.elements
    )
    algebra = GradedLieAlgebra(total, sc, gb.dims, labels=labels, k=k)
    algebra.basis_data = gb
    return algebra


def structure_constants(graph: SimpleGraph, k: int) -> GradedLieAlgebra:
    """The graph Lie algebra as a graded algebra with exact structure constants.

    Results are cached per (graph, k); callers must treat them as immutable.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    return _structure_constants_cached(graph, k)
