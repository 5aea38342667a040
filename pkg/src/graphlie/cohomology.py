"""Cochain spaces and the 2-step nil-cohomology in slot two.

Coordinate conventions, fixed once for the whole package:

  Hom(V, V)        f_{a,b} = coefficient of e_b in f(e_a), index a*n + b.
  Hom(L^2 V, V)    sigma_{(a<b),c}, pairs enumerated lexicographically,
                   index pair_index*n + c.
  delta1 rows      (pair a<b, output d), index pair_index*n + d.
  delta2 rows      (triple a<b<c, output d), index triple_index*n + d.
  eta2 rows        (pair a<b, argument c, output d); the codomain is
                   alternating in the first two arguments only, since the
                   defining formula is not symmetrized over the third.

Differentials of the adjoint complex:

  delta1 f (x,y)   = [f(x),y] + [x,f(y)] - f([x,y])
  delta2 s (x,y,z) = [x,s(y,z)] - [y,s(x,z)] + [z,s(x,y)]
                     - s([x,y],z) + s([x,z],y) - s([y,z],x)
  eta2 s (x,y,z)   = [s(x,y),z] + s([x,y],z)

The slot-two nil-cohomology of an at most 2-step algebra is
(ker delta2 intersect ker eta2) / im delta1. The inclusion
im delta1 <= ker eta2 is asserted at runtime; whether ker eta2 is already
contained in ker delta2 is only recorded as a flag, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InternalInvariantError
from .liealg import LieAlgebra, lower_central_series
from .linalg import ONE, ZERO, RatMatrix, RowReducer


class CochainCoordinates:
    """Index bookkeeping for 1- and 2-cochains on an n-dimensional algebra."""

    def __init__(self, n: int):
        self.n = n
        self.pairs = list(combinations(range(n), 2))
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}
        self.triples = list(combinations(range(n), 3))
        self.triple_index = {t: i for i, t in enumerate(self.triples)}

    @property
    def dim_hom(self) -> int:
        return self.n * self.n

    @property
    def dim_two_cochains(self) -> int:
        return len(self.pairs) * self.n

    def f_coord(self, a: int, b: int) -> int:
        return a * self.n + b

    def sigma_coord(self, a: int, b: int, c: int):
        """Column index and sign of sigma(e_a, e_b) component c; None when a == b."""
        if a == b:
            return None, 0
        if a < b:
            return self.pair_index[(a, b)] * self.n + c, 1
        return self.pair_index[(b, a)] * self.n + c, -1

    def sigma_vector(self, values: dict) -> list:
        """Dense coordinates of a 2-cochain given as {(a<b): sparse image}."""
        out = [ZERO] * self.dim_two_cochains
        for (a, b), image in values.items():
            for c, coef in image.items():
                col, sign = self.sigma_coord(a, b, c)
                out[col] += sign * coef
        return out


def delta1_matrix(algebra: LieAlgebra, coords: CochainCoordinates | None = None) -> RatMatrix:
    n = algebra.n
    coords = coords or CochainCoordinates(n)
    entries: dict = {}

    def put(row, col, val):
        s = entries.get((row, col), ZERO) + val
        if s:
            entries[(row, col)] = s
        else:
            entries.pop((row, col), None)

    for p, (a, b) in enumerate(coords.pairs):
        base = p * n
        # [f(e_a), e_b]: f_{a,c} times [e_c, e_b]
        for c in range(n):
            for d, v in algebra.bracket_basis(c, b).items():
                put(base + d, coords.f_coord(a, c), v)
        # [e_a, f(e_b)]
        for c in range(n):
            for d, v in algebra.bracket_basis(a, c).items():
                put(base + d, coords.f_coord(b, c), v)
        # -f([e_a, e_b])
        for l, v in algebra.bracket_basis(a, b).items():
            for d in range(n):
                put(base + d, coords.f_coord(l, d), -v)
    return RatMatrix(len(coords.pairs) * n, coords.dim_hom, entries)


def delta2_matrix(algebra: LieAlgebra, coords: CochainCoordinates | None = None) -> RatMatrix:
    n = algebra.n
    coords = coords or CochainCoordinates(n)
    entries: dict = {}

    def put(row, col, val):
        s = entries.get((row, col), ZERO) + val
        if s:
            entries[(row, col)] = s
        else:
            entries.pop((row, col), None)

    for t, (x, y, z) in enumerate(coords.triples):
        base = t * n
        # adjoint terms [x, s(y,z)] - [y, s(x,z)] + [z, s(x,y)]
        for lead, pair, sign in ((x, (y, z), 1), (y, (x, z), -1), (z, (x, y), 1)):
            for u in range(n):
                col, s_sign = coords.sigma_coord(pair[0], pair[1], u)
                if col is None:
                    continue
                for d, v in algebra.bracket_basis(lead, u).items():
                    put(base + d, col, sign * s_sign * v)
        # substitution terms -s([x,y],z) + s([x,z],y) - s([y,z],x)
        for pair, arg, sign in (((x, y), z, -1), ((x, z), y, 1), ((y, z), x, -1)):
            for l, v in algebra.bracket_basis(pair[0], pair[1]).items():
                for d in range(n):
                    col, s_sign = coords.sigma_coord(l, arg, d)
                    if col is None:
                        continue
                    put(base + d, col, sign * s_sign * v)
    return RatMatrix(len(coords.triples) * n, coords.dim_two_cochains, entries)


def eta2_matrix(algebra: LieAlgebra, coords: CochainCoordinates | None = None) -> RatMatrix:
    if not is_at_most_two_step(algebra):
        raise ValueError("eta2 is only defined for at most 2-step algebras")
    n = algebra.n
    coords = coords or CochainCoordinates(n)
    entries: dict = {}

    def put(row, col, val):
        s = entries.get((row, col), ZERO) + val
        if s:
            entries[(row, col)] = s
        else:
            entries.pop((row, col), None)

    for p, (a, b) in enumerate(coords.pairs):
        for c in range(n):
            base = (p * n + c) * n
            # [s(e_a, e_b), e_c]
            for u in range(n):
                col, s_sign = coords.sigma_coord(a, b, u)
                for d, v in algebra.bracket_basis(u, c).items():
                    put(base + d, col, s_sign * v)
            # s([e_a, e_b], e_c)
            for l, v in algebra.bracket_basis(a, b).items():
                for d in range(n):
                    col, s_sign = coords.sigma_coord(l, c, d)
                    if col is None:
                        continue
                    put(base + d, col, s_sign * v)
    return RatMatrix(len(coords.pairs) * n * n, coords.dim_two_cochains, entries)


def is_at_most_two_step(algebra: LieAlgebra) -> bool:
    chain = lower_central_series(algebra)
    return chain[-1].dim == 0 and len(chain) <= 3


def _rank(matrix: RatMatrix) -> int:
    red = RowReducer(full=False)
    for row in matrix.row_dicts():
        if row:
            red.add(row)
    return red.rank


def _stacked_rank(first: RatMatrix, second: RatMatrix) -> int:
    red = RowReducer(full=False)
    for matrix in (first, second):
        for row in matrix.row_dicts():
            if row:
                red.add(row)
    return red.rank


@dataclass(frozen=True)
class H2Report:
    dim_ker_eta2: int
    dim_ker_delta2: int
    dim_intersection: int
    dim_im_delta1: int
    h2_dim: int
    eta2_subset_delta2: bool

    def to_json_dict(self) -> dict:
        return {
            "dim_ker_eta2": self.dim_ker_eta2,
            "dim_ker_delta2": self.dim_ker_delta2,
            "dim_intersection": self.dim_intersection,
            "dim_im_delta1": self.dim_im_delta1,
            "h2_dim": self.h2_dim,
            "eta2_subset_delta2": self.eta2_subset_delta2,
        }


def h2_nil(algebra: LieAlgebra) -> H2Report:
    """Dimension data of (ker delta2 intersect ker eta2) / im delta1.

    Raises InternalInvariantError if im delta1 is not inside ker eta2; for an
    at most 2-step algebra that containment is a theorem, so a violation can
    only mean the matrices are wrong.
    """
    if not is_at_most_two_step(algebra):
        raise ValueError("2-step nil-cohomology needs an at most 2-step algebra")
    coords = CochainCoordinates(algebra.n)
    d1 = delta1_matrix(algebra, coords)
    d2 = delta2_matrix(algebra, coords)
    e2 = eta2_matrix(algebra, coords)
    if not e2.matmul(d1).is_zero():
        raise InternalInvariantError("im delta1 is not contained in ker eta2")
    cols = coords.dim_two_cochains
    dim_ker_eta2 = cols - _rank(e2)
    dim_ker_delta2 = cols - _rank(d2)
    dim_intersection = cols - _stacked_rank(d2, e2)
    dim_im_delta1 = _rank(d1)
    return H2Report(
        dim_ker_eta2=dim_ker_eta2,
        dim_ker_delta2=dim_ker_delta2,
        dim_intersection=dim_intersection,
        dim_im_delta1=dim_im_delta1,
        h2_dim=dim_intersection - dim_im_delta1,
        eta2_subset_delta2=dim_intersection == dim_ker_eta2,
    )


def complex_identity_holds(algebra: LieAlgebra) -> bool:
    """delta2 composed with delta1 vanishes (true for any Lie algebra)."""
    coords = CochainCoordinates(algebra.n)
    return delta2_matrix(algebra, coords).matmul(delta1_matrix(algebra, coords)).is_zero()
