"""Finite-dimensional Lie algebras over Q given by exact structure constants.

Structure constants are stored once per unordered basis pair: sc maps
(i, j) with i < j to a sparse dict {l: c} meaning [e_i, e_j] = sum c e_l.
A GradedLieAlgebra additionally knows a grading (block sizes by degree)
and, when it was built from a graph, a label and a multidegree for every
basis element. All three ingredients are treated as immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalInvariantError
from .linalg import (
    ONE,
    ZERO,
    RatMatrix,
    RowReducer,
    Subspace,
    frac,
    frac_str,
    full_space,
    kernel_basis,
    vec_to_dict,
)


@dataclass(frozen=True)
class BasisLabel:
    label: str
    degree: int
    multidegree: tuple


def _clean_sc(n: int, sc: dict) -> dict:
    out = {}
    for (i, j), terms in sc.items():
        if not 0 <= i < j < n:
            raise ValueError(f"structure constant key ({i},{j}) must satisfy 0 <= i < j < n")
        cleaned = {}
        for l, c in terms.items():
            if not 0 <= l < n:
                raise ValueError(f"structure constant target {l} out of range")
            c = frac(c)
            if c:
                cleaned[l] = c
        if cleaned:
            out[(i, j)] = cleaned
    return out


class LieAlgebra:
    def __init__(self, n: int, sc: dict, k: int | None = None):
        if n < 0:
            raise ValueError("dimension must be nonnegative")
        self.n = n
        self.k = k
        self.sc = _clean_sc(n, sc)
        self._adj = None

    def bracket_basis(self, i: int, j: int) -> dict:
        """[e_i, e_j] as a sparse vector, any i, j."""
        if i == j:
            return {}
        if i < j:
            return dict(self.sc.get((i, j), {}))
        terms = self.sc.get((j, i), {})
        return {l: -c for l, c in terms.items()}

    def adjacency(self) -> dict:
        """adj[i][j] = [e_i, e_j] for every stored pair, both orientations."""
        if self._adj is None:
            adj: dict = {}
            for (i, j), terms in self.sc.items():
                adj.setdefault(i, {})[j] = terms
                adj.setdefault(j, {})[i] = {l: -c for l, c in terms.items()}
            self._adj = adj
        return self._adj

    def bracket_sparse(self, x: dict, y: dict) -> dict:
        adj = self.adjacency()
        out: dict = {}
        for i, xi in x.items():
            row = adj.get(i)
            if not row:
                continue
            for j, yj in y.items():
                terms = row.get(j)
                if not terms:
                    continue
                coef = xi * yj
                for l, c in terms.items():
                    s = out.get(l, ZERO) + coef * c
                    if s:
                        out[l] = s
                    else:
                        out.pop(l, None)
        return out


class GradedLieAlgebra(LieAlgebra):
    def __init__(self, n, sc, grading, labels=None, k=None):
        grading = tuple(int(d) for d in grading)
        if any(d < 0 for d in grading):
            raise ValueError("grading blocks must be nonnegative")
        if sum(grading) != n:
            raise ValueError("grading blocks must sum to the dimension")
        super().__init__(n, sc, k=k if k is not None else len(grading))
        self.grading = grading
        self.degrees = tuple(
            d + 1 for d, size in enumerate(grading) for _ in range(size)
        )
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("one label per basis element required")
            for lab, deg in zip(labels, self.degrees):
                if lab.degree != deg:
                    raise ValueError("label degree disagrees with the grading")
        self.labels = labels

    def degree_of(self, idx: int) -> int:
        return self.degrees[idx]

    def degree_block(self, degree: int) -> range:
        start = sum(self.grading[: degree - 1])
        return range(start, start + self.grading[degree - 1])


def bracket_vectors(algebra: LieAlgebra, x, y) -> list:
    """[x, y] for dense vectors x, y."""
    if len(x) != algebra.n or len(y) != algebra.n:
        raise ValueError("vector length does not match the algebra dimension")
    out = algebra.bracket_sparse(vec_to_dict(x), vec_to_dict(y))
    dense = [ZERO] * algebra.n
    for l, c in out.items():
        dense[l] = c
    return dense


def bracket_subspaces(algebra: LieAlgebra, s: Subspace, t: Subspace) -> Subspace:
    """Span of [x, y] over x in S, y in T."""
    if s.ambient_dim != algebra.n or t.ambient_dim != algebra.n:
        raise ValueError("subspace ambient dimension does not match the algebra")
    red = RowReducer(full=True)
    for srow in s.basis_rows():
        for trow in t.basis_rows():
            out = algebra.bracket_sparse(srow, trow)
            if out:
                red.add(out)
    return Subspace(algebra.n, red.rows_sorted())


def lower_central_series(algebra: LieAlgebra) -> list:
    """Descending chain g^0 = g, g^{i+1} = [g, g^i], stopping at stabilization."""
    chain = [full_space(algebra.n)]
    while True:
        nxt = bracket_subspaces(algebra, chain[0], chain[-1])
        if nxt.dim == chain[-1].dim:
            if nxt.dim != 0:
                chain.append(nxt)
            break
        chain.append(nxt)
        if nxt.dim == 0:
            break
    return chain


def is_nilpotent(algebra: LieAlgebra) -> bool:
    return lower_central_series(algebra)[-1].dim == 0


def center(algebra: LieAlgebra) -> Subspace:
    """Kernel of the stacked adjoint maps x -> ([x, e_j])_j."""
    n = algebra.n
    entries = {}
    for (i, j), terms in algebra.sc.items():
        for l, c in terms.items():
            entries[(j * n + l, i)] = entries.get((j * n + l, i), ZERO) + c
            entries[(i * n + l, j)] = entries.get((i * n + l, j), ZERO) - c
    stacked = RatMatrix(n * n, n, entries)
    return kernel_basis(stacked)


def jacobi_report(algebra: LieAlgebra) -> list:
    """Triples i < j < l where the Jacobi identity fails; empty means it holds.

    Only triples meeting a stored structure constant are evaluated: if none
    of the three inner brackets has an entry, every term is identically zero.
    """
    candidates = set()
    n = algebra.n
    for (i, j) in algebra.sc:
        for l in range(n):
            if l != i and l != j:
                candidates.add(tuple(sorted((i, j, l))))
    bad = []
    for (i, j, l) in sorted(candidates):
        acc: dict = {}
        for (a, b, c) in ((i, j, l), (j, l, i), (l, i, j)):
            inner = algebra.bracket_basis(b, c)
            for t, coef in inner.items():
                outer = algebra.bracket_basis(a, t)
                for u, d in outer.items():
                    s = acc.get(u, ZERO) + coef * d
                    if s:
                        acc[u] = s
                    else:
                        acc.pop(u, None)
        if acc:
            bad.append((i, j, l))
    return bad


def grading_support_check(algebra: GradedLieAlgebra) -> bool:
    """Every nonzero c_{ij}^l satisfies deg l = deg i + deg j, same for multidegrees."""
    if not isinstance(algebra, GradedLieAlgebra):
        raise ValueError("grading support check needs a graded algebra")
    if algebra.labels is None:
        raise ValueError("grading support check needs labeled basis elements")
    for (i, j), terms in algebra.sc.items():
        di, dj = algebra.degrees[i], algebra.degrees[j]
        mi = algebra.labels[i].multidegree
        mj = algebra.labels[j].multidegree
        target_md = tuple(a + b for a, b in zip(mi, mj))
        for l in terms:
            if algebra.degrees[l] != di + dj:
                return False
            if algebra.labels[l].multidegree != target_md:
                return False
    return True


def associated_graded(algebra: LieAlgebra) -> GradedLieAlgebra:
    """Associated graded algebra of the lower central series filtration.

    The adapted basis extends a basis of g^i to g^{i-1} using original basis
    vectors first, in index order; when the original basis is already adapted
    the output therefore equals the input basis for basis, including labels.
    """
    chain = lower_central_series(algebra)
    if chain[-1].dim != 0:
        raise ValueError("associated graded requires a nilpotent algebra")
    depth = len(chain) - 1
    red = RowReducer(full=True)
    chosen = []
    for level in range(depth, 0, -1):
        target = chain[level - 1]
        for i in range(algebra.n):
            if red.rank == target.dim:
                break
            unit = {i: ONE}
            if target.contains(unit) and red.add(unit):
                chosen.append((level, unit))
        for row in target.basis_rows():
            if red.rank == target.dim:
                break
            if red.add(row):
                chosen.append((level, dict(row)))
    if red.rank != algebra.n:
        raise InternalInvariantError("adapted basis does not span the algebra")
    chosen.sort(key=lambda pair: pair[0])
    levels = [lv for lv, _ in chosen]
    vectors = [v for _, v in chosen]
    grading = [levels.count(d) for d in range(1, depth + 1)]

    identity_basis = all(
        len(v) == 1 and v.get(idx) == ONE for idx, v in enumerate(vectors)
    )
    if identity_basis:
        solver = None
    else:
        solver = _CoordinateSolver(vectors, algebra.n)

    sc = {}
    for i in range(algebra.n):
        for j in range(i + 1, algebra.n):
            w = algebra.bracket_sparse(vectors[i], vectors[j])
            if not w:
                continue
            coords = dict(w) if solver is None else solver.solve(w)
            d = levels[i] + levels[j]
            terms = {}
            for l, c in coords.items():
                if levels[l] == d:
                    terms[l] = c
                elif levels[l] < d:
                    raise InternalInvariantError(
                        "bracket escapes its lower central series level"
                    )
            if terms:
                sc[(i, j)] = terms
    labels = None
    if identity_basis and isinstance(algebra, GradedLieAlgebra):
        if algebra.labels is not None and list(algebra.degrees) == levels:
            labels = algebra.labels
    return GradedLieAlgebra(algebra.n, sc, grading, labels=labels, k=depth)


class _CoordinateSolver:
    """Express vectors in a fixed basis given as sparse rows."""

    def __init__(self, rows, ambient: int):
        self.offset = ambient
        self.red = RowReducer(full=True)
        for idx, row in enumerate(rows):
            aug = dict(row)
            aug[self.offset + idx] = ONE
            if not self.red.add(aug):
                raise ValueError("basis rows are dependent")

    def solve(self, vec: dict) -> dict:
        rem = self.red.reduce(dict(vec))
        if any(c < self.offset for c in rem):
            raise InternalInvariantError("vector outside the spanned space")
        return {c - self.offset: -v for c, v in rem.items()}


def algebra_to_json_dict(algebra: LieAlgebra) -> dict:
    brackets = []
    for (i, j) in sorted(algebra.sc):
        terms = [
            {"l": l, "c": frac_str(c)} for l, c in sorted(algebra.sc[(i, j)].items())
        ]
        brackets.append({"i": i, "j": j, "terms": terms})
    basis = None
    grading = None
    if isinstance(algebra, GradedLieAlgebra):
        grading = list(algebra.grading)
        if algebra.labels is not None:
            basis = [
                {
                    "label": lab.label,
                    "degree": lab.degree,
                    "multidegree": list(lab.multidegree),
                }
                for lab in algebra.labels
            ]
    return {
        "n": algebra.n,
        "k": algebra.k,
        "grading": grading,
        "basis": basis,
        "brackets": brackets,
    }


def algebra_from_json_dict(data: dict) -> LieAlgebra:
    try:
        n = data["n"]
        k = data.get("k")
        brackets = data["brackets"]
    except (TypeError, KeyError) as exc:
        raise ValueError(f"malformed algebra JSON: missing {exc}") from exc
    sc = {}
    for entry in brackets:
        i, j = entry["i"], entry["j"]
        if not (isinstance(i, int) and isinstance(j, int) and i < j):
            raise ValueError("bracket entries must have integer i < j")
        sc[(i, j)] = {t["l"]: Fraction(t["c"]) for t in entry["terms"]}
    grading = data.get("grading")
    if grading is None:
        return LieAlgebra(n, sc, k=k)
    basis = data.get("basis")
    labels = None
    if basis is not None:
        labels = [
            BasisLabel(b["label"], b["degree"], tuple(b["multidegree"]))
            for b in basis
        ]
    return GradedLieAlgebra(n, sc, grading, labels=labels, k=k)
