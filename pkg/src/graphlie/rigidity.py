"""Deformation witnesses and the rigidity classification.

A deformation cocycle sigma is supported on a single pair of degree-one
basis directions a1, a2 with value y: sigma(a1, a2) = y and sigma vanishes
whenever either argument lies in the complementary subalgebra h spanned by
the remaining basis vectors. When h is a subalgebra and y centralizes h,
mu + t sigma is a Lie bracket for every t. deform_check verifies the two
coefficient identities of that statement triple by triple.

Witness shapes:

  graded (k >= 3)   non-adjacent vertices a1, a2 and a degree-k basis
                    element y outside [g', g'] + [a1, g'] + [a2, g'],
                    preferring multidegree (k-1, 1, 0, ...) up to order.
  two-step (k = 2)  non-adjacent vertices v, w whose bracket images
                    [v, g] + [w, g] miss part of the center; any central
                    vector z outside that span certifies non-rigidity.

classify runs, in order: the abelian shortcut, the abelian-factor
shortcut, the witness search, the cohomological criterion h2 = 0 (only
meaningful for k = 2), and the complete-graph citation, before giving up
with unknown. A witness together with h2 = 0, whenever both happen to be
computed, is a contradiction and aborts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .basis import structure_constants
from .cohomology import H2Report, h2_nil, is_at_most_two_step
from .errors import InternalInvariantError
from .graphs import SimpleGraph, analyze, enumerate_graphs, to_graph6
from .liealg import GradedLieAlgebra, LieAlgebra, center
from .linalg import ONE, ZERO, Subspace, frac, frac_str, vec_to_dict


@dataclass(frozen=True)
class DeformationCocycle:
    n: int
    a1: int
    a2: int
    y: tuple

    def apply_sparse(self, x: dict, z: dict) -> dict:
        coef = (
            x.get(self.a1, ZERO) * z.get(self.a2, ZERO)
            - x.get(self.a2, ZERO) * z.get(self.a1, ZERO)
        )
        if not coef:
            return {}
        return {l: coef * c for l, c in enumerate(self.y) if c}


@dataclass(frozen=True)
class DeformedAlgebra:
    base: LieAlgebra
    cocycle: DeformationCocycle

    def at_t(self, t) -> LieAlgebra:
        """Materialize mu + t sigma at a concrete rational t."""
        t = frac(t)
        sc = {pair: dict(terms) for pair, terms in self.base.sc.items()}
        a1, a2 = self.cocycle.a1, self.cocycle.a2
        key = (min(a1, a2), max(a1, a2))
        sign = 1 if a1 < a2 else -1
        slot = sc.setdefault(key, {})
        for l, c in enumerate(self.cocycle.y):
            if not c:
                continue
            s = slot.get(l, ZERO) + sign * t * c
            if s:
                slot[l] = s
            else:
                slot.pop(l, None)
        if not slot:
            sc.pop(key, None)
        return LieAlgebra(self.base.n, sc, k=self.base.k)


def build_sigma(algebra: GradedLieAlgebra, a1: int, a2: int, y) -> DeformationCocycle:
    """Validated deformation cocycle supported on two degree-one directions."""
    if not isinstance(algebra, GradedLieAlgebra):
        raise ValueError("build_sigma needs a graded algebra")
    n = algebra.n
    if a1 == a2:
        raise ValueError("the two directions must be distinct")
    for a in (a1, a2):
        if not 0 <= a < n or algebra.degrees[a] != 1:
            raise ValueError(f"index {a} is not a degree-one basis direction")
    if len(y) != n:
        raise ValueError("y must be a vector of the algebra")
    y = tuple(frac(c) for c in y)
    rest = [i for i in range(n) if i not in (a1, a2)]
    for i_pos, i in enumerate(rest):
        for j in rest[i_pos + 1:]:
            terms = algebra.bracket_basis(i, j)
            if terms.get(a1) or terms.get(a2):
                raise ValueError("the complementary span is not a subalgebra")
    y_sparse = vec_to_dict(y)
    for h in rest:
        if algebra.bracket_sparse(y_sparse, {h: ONE}):
            raise ValueError("y does not centralize the complementary subalgebra")
    return DeformationCocycle(n, a1, a2, y)


@dataclass(frozen=True)
class DeformCheckResult:
    ok: bool
    violation: tuple | None

    def __bool__(self) -> bool:
        return self.ok


def _candidate_triples(deformed: DeformedAlgebra) -> list:
    """Basis triples on which either coefficient identity could be nonzero.

    sigma vanishes unless both a1 and a2 appear among its arguments'
    coordinates, so a triple contributes only if it contains both a1 and
    a2, or if it contains one of them and some bracket of the other two
    members reaches the other. Every other triple is zero term by term.
    """
    base = deformed.base
    a1, a2 = deformed.cocycle.a1, deformed.cocycle.a2
    n = base.n
    cands = set()
    for z in range(n):
        if z != a1 and z != a2:
            cands.add(tuple(sorted((a1, a2, z))))
    for (i, j), terms in base.sc.items():
        for a, other in ((a1, a2), (a2, a1)):
            if other in terms and a != i and a != j:
                cands.add(tuple(sorted((i, j, a))))
    return sorted(cands)


def deform_check(deformed: DeformedAlgebra, exhaustive: bool = False) -> DeformCheckResult:
    """Both coefficient identities of mu + t sigma, checked on basis triples.

    The t^1 identity is the cyclic sum of mu(sigma(x,y),z) + sigma(mu(x,y),z),
    the t^2 identity the cyclic sum of sigma(sigma(x,y),z). The default
    candidate set provably covers every triple with a nonzero term;
    exhaustive=True loops over all of them anyway.
    """
    base = deformed.base
    sigma = deformed.cocycle
    if exhaustive:
        triples = combinations(range(base.n), 3)
    else:
        triples = _candidate_triples(deformed)
    for (x, y, z) in triples:
        t1: dict = {}
        t2: dict = {}
        for (p, q, r) in ((x, y, z), (y, z, x), (z, x, y)):
            ep, eq, er = {p: ONE}, {q: ONE}, {r: ONE}
            s_pq = sigma.apply_sparse(ep, eq)
            if s_pq:
                for l, c in base.bracket_sparse(s_pq, er).items():
                    s = t1.get(l, ZERO) + c
                    if s:
                        t1[l] = s
                    else:
                        t1.pop(l, None)
                for l, c in sigma.apply_sparse(s_pq, er).items():
                    s = t2.get(l, ZERO) + c
                    if s:
                        t2[l] = s
                    else:
                        t2.pop(l, None)
            mu_pq = base.bracket_basis(p, q)
            if mu_pq:
                for l, c in sigma.apply_sparse(mu_pq, er).items():
                    s = t1.get(l, ZERO) + c
                    if s:
                        t1[l] = s
                    else:
                        t1.pop(l, None)
        if t1 or t2:
            return DeformCheckResult(False, (x, y, z))
    return DeformCheckResult(True, None)


def certify_graded_witness(algebra: GradedLieAlgebra, a1: int, a2: int, y) -> bool:
    """Degree-k witness conditions: [a1,a2] = 0, y in the top slice, and
    y outside [g',g'] + [a1,g'] + [a2,g']."""
    if not isinstance(algebra, GradedLieAlgebra):
        raise ValueError("graded witnesses need a graded algebra")
    k = len(algebra.grading)
    if k < 3:
        raise ValueError("graded witnesses need k >= 3")
    n = algebra.n
    for a in (a1, a2):
        if not 0 <= a < n or algebra.degrees[a] != 1:
            raise ValueError(f"index {a} is not a degree-one basis direction")
    if a1 == a2:
        raise ValueError("witness directions must be distinct")
    if len(y) != n:
        raise ValueError("y must be a vector of the algebra")
    y_sparse = vec_to_dict(y)
    if not y_sparse:
        return False
    if algebra.bracket_basis(a1, a2):
        return False
    top = algebra.degree_block(k)
    if any(i not in top for i in y_sparse):
        return False
    obstruction = _graded_obstruction(algebra, a1, a2)
    return not obstruction.contains(y_sparse)


def _derived_indices(algebra: GradedLieAlgebra) -> list:
    return [i for i in range(algebra.n) if algebra.degrees[i] >= 2]


def _graded_obstruction(algebra: GradedLieAlgebra, a1: int, a2: int) -> Subspace:
    derived = _derived_indices(algebra)
    rows = []
    for pos, i in enumerate(derived):
        for j in derived[pos + 1:]:
            terms = algebra.bracket_basis(i, j)
            if terms:
                rows.append(terms)
    for a in (a1, a2):
        for j in derived:
            terms = algebra.bracket_basis(a, j)
            if terms:
                rows.append(terms)
    return Subspace(algebra.n, rows)


def certify_2step_witness(algebra: LieAlgebra, v, w):
    """For an at most 2-step algebra: if [v,w] = 0 and [v,g] + [w,g] misses
    part of the center, return the first central basis vector outside the
    span, else None. v and w must be independent modulo the center."""
    if not is_at_most_two_step(algebra):
        raise ValueError("two-step witnesses need an at most 2-step algebra")
    n = algebra.n
    if len(v) != n or len(w) != n:
        raise ValueError("witness vectors must match the algebra dimension")
    v_sparse, w_sparse = vec_to_dict(v), vec_to_dict(w)
    z_sub = center(algebra)
    mod_center = Subspace(n, z_sub.basis_rows() + [v_sparse, w_sparse])
    if mod_center.dim != z_sub.dim + 2:
        raise ValueError("witness vectors are dependent modulo the center")
    if algebra.bracket_sparse(v_sparse, w_sparse):
        return None
    rows = []
    for i in range(n):
        for x in (v_sparse, w_sparse):
            out = algebra.bracket_sparse(x, {i: ONE})
            if out:
                rows.append(out)
    span = Subspace(n, rows)
    for row in span.basis_rows():
        if not z_sub.contains(row):
            raise InternalInvariantError("bracket image escapes the center")
    if span.dim >= z_sub.dim:
        return None
    for row in z_sub.basis_rows():
        if not span.contains(row):
            return [row.get(i, ZERO) for i in range(n)]
    raise InternalInvariantError("proper subspace contains every basis vector")


def _unit(n: int, i: int) -> list:
    out = [ZERO] * n
    out[i] = ONE
    return out


def find_witness(graph: SimpleGraph, algebra: GradedLieAlgebra, k: int):
    """Deterministic search over non-adjacent vertex pairs; returns a
    certificate dict or None. For k >= 3 the degree-k candidates with
    multidegree (k-1, 1, 0, ...) up to order are tried for every pair
    before any other candidate is considered."""
    if k != len(algebra.grading):
        raise ValueError("k does not match the algebra grading")
    nonadj = sorted(graph.nonedges())
    if not nonadj:
        return None
    n = algebra.n
    if k >= 3:
        top = list(algebra.degree_block(k))
        shaped = [
            i for i in top
            if sorted(algebra.labels[i].multidegree, reverse=True)[:2] == [k - 1, 1]
        ]
        others = [i for i in top if i not in set(shaped)]
        obstructions: dict = {}
        for candidates in (shaped, others):
            for (u, w) in nonadj:
                a1, a2 = u - 1, w - 1
                key = (a1, a2)
                if key not in obstructions:
                    obstructions[key] = _graded_obstruction(algebra, a1, a2)
                blocked = obstructions[key]
                if algebra.bracket_basis(a1, a2):
                    continue
                for y_idx in candidates:
                    if blocked.contains({y_idx: ONE}):
                        continue
                    y = _unit(n, y_idx)
                    if not certify_graded_witness(algebra, a1, a2, y):
                        raise InternalInvariantError(
                            "witness search and certifier disagree"
                        )
                    return {
                        "kind": "graded_witness",
                        "a1": f"v{u}",
                        "a2": f"v{w}",
                        "a1_index": a1,
                        "a2_index": a2,
                        "y_index": y_idx,
                        "y_label": algebra.labels[y_idx].label,
                        "y_multidegree": list(algebra.labels[y_idx].multidegree),
                        "y": [frac_str(c) for c in y],
                    }
        return None
    if k == 2:
        if not graph.edges:
            return None
        for (u, w) in nonadj:
            v_vec = _unit(n, u - 1)
            w_vec = _unit(n, w - 1)
            z = certify_2step_witness(algebra, v_vec, w_vec)
            if z is not None:
                z_sparse = vec_to_dict(z)
                z_label = None
                if len(z_sparse) == 1:
                    (idx, coef), = z_sparse.items()
                    if coef == ONE and algebra.labels is not None:
                        z_label = algebra.labels[idx].label
                return {
                    "kind": "two_step_witness",
                    "v": f"v{u}",
                    "w": f"v{w}",
                    "v_index": u - 1,
                    "w_index": w - 1,
                    "z_label": z_label,
                    "z": [frac_str(c) for c in z],
                }
        return None
    raise ValueError("witness search needs k >= 2")


@dataclass(frozen=True)
class RigidityVerdict:
    verdict: str  # "rigid" | "not_rigid" | "unknown"
    certificate: dict
    h2: H2Report | None = None

    def to_json_dict(self) -> dict:
        out = {"verdict": self.verdict, "certificate": dict(self.certificate)}
        if self.h2 is not None:
            out["h2"] = self.h2.to_json_dict()
        return out


def classify(graph: SimpleGraph, k: int, with_cohomology: bool = False) -> RigidityVerdict:
    """Rigidity verdict for the k-step algebra of a graph with at least 2 vertices."""
    if graph.m < 2:
        raise ValueError("classification needs at least two vertices")
    if k < 2:
        raise ValueError("classification needs k >= 2")
    if not graph.edges:
        if graph.m == 2:
            return RigidityVerdict(
                "rigid",
                {"kind": "cited_result", "name": "abelian plane, low-dimensional classification"},
            )
        return RigidityVerdict("not_rigid", {"kind": "abelian", "m": graph.m})
    info = analyze(graph)
    if info.isolated:
        if k == 2 and graph.m == 3 and len(graph.edges) == 1:
            return RigidityVerdict(
                "rigid",
                {"kind": "cited_result", "name": "heisenberg plus line exception"},
            )
        return RigidityVerdict(
            "not_rigid",
            {"kind": "abelian_factor", "isolated": sorted(info.isolated)},
        )
    algebra = structure_constants(graph, k)
    witness = find_witness(graph, algebra, k)
    h2 = None
    if k == 2 and (with_cohomology or witness is None):
        h2 = h2_nil(algebra)
    if witness is not None:
        if h2 is not None and h2.h2_dim == 0:
            raise InternalInvariantError(
                "a deformation witness and vanishing h2 cannot both hold"
            )
        return RigidityVerdict("not_rigid", witness, h2)
    if h2 is not None and h2.h2_dim == 0:
        return RigidityVerdict("rigid", {"kind": "h2_nil_zero"}, h2)
    if graph.is_complete():
        return RigidityVerdict(
            "rigid", {"kind": "cited_result", "name": "free k-step nilpotent"}, h2
        )
    return RigidityVerdict("unknown", {"kind": "none"}, h2)


def algebra_dim(graph: SimpleGraph, k: int) -> int:
    from .basis import dimension_oracle

    return sum(dimension_oracle(graph, k))


def sweep(n_max: int, k: int, record_h2: bool | None = None) -> list:
    """Classify every isomorphism class on 2..n_max vertices.

    For k = 2 the cohomology report is attached to every entry whose
    algebra is at most 2-step (record_h2 defaults to True there), which
    also cross-checks every witness against h2 = 0.
    """
    if not 2 <= n_max <= 5:
        raise ValueError("sweep supports 2..5 vertices")
    if k < 2:
        raise ValueError("sweep needs k >= 2")
    if record_h2 is None:
        record_h2 = k == 2
    rows = []
    for m in range(2, n_max + 1):
        for graph in enumerate_graphs(m):
            verdict = classify(graph, k, with_cohomology=record_h2 and k == 2)
            h2 = verdict.h2
            if record_h2 and k == 2 and h2 is None:
                h2 = h2_nil(structure_constants(graph, k))
                if verdict.verdict == "not_rigid" and h2.h2_dim == 0:
                    raise InternalInvariantError(
                        "a deformation witness and vanishing h2 cannot both hold"
                    )
            row = {
                "graph6": to_graph6(graph),
                "m": m,
                "k": k,
                "dim": algebra_dim(graph, k),
                "verdict": verdict.verdict,
                "certificate": dict(verdict.certificate),
            }
            if h2 is not None:
                row["h2"] = h2.to_json_dict()
            rows.append(row)
    return rows
