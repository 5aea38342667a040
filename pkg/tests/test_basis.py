import random
from fractions import Fraction
from itertools import combinations, product

import pytest

from graphlie.basis import (
    bracket_word_label,
    bracket_word_leaves,
    clique_polynomial,
    dimension_oracle,
    expand_bracket_word,
    graded_basis,
    lyndon_words,
    multidegree_of_leaves,
    standard_bracketing,
    structure_constants,
    trace_normal_form,
)
from graphlie.graphs import SimpleGraph, enumerate_graphs
from graphlie.liealg import grading_support_check, jacobi_report

STAR = SimpleGraph.make(3, [(1, 2), (1, 3)])
K2 = SimpleGraph.make(2, [(1, 2)])
PATH3 = SimpleGraph.make(3, [(1, 2), (2, 3)])
EDGELESS3 = SimpleGraph.make(3, [])
K3 = SimpleGraph.make(3, [(1, 2), (1, 3), (2, 3)])


def _trace_class(word, graph):
    """Brute-force orbit of a word under adjacent commuting swaps."""
    seen = {tuple(word)}
    frontier = [tuple(word)]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(len(w) - 1):
                a, b = w[i], w[i + 1]
                if a != b and not graph.adjacent(a, b):
                    swapped = w[:i] + (b, a) + w[i + 2:]
                    if swapped not in seen:
                        seen.add(swapped)
                        nxt.append(swapped)
        frontier = nxt
    return seen


def _random_graph(rng, m):
    pairs = [p for p in combinations(range(1, m + 1), 2) if rng.random() < 0.5]
    return SimpleGraph.make(m, pairs)


def test_normal_form_fixed_cases():
    # in STAR the leaves 2 and 3 commute, nothing commutes with the hub 1
    assert trace_normal_form((3, 2), STAR) == (2, 3)
    assert trace_normal_form((3, 2, 1), STAR) == (2, 3, 1)
    assert trace_normal_form((2, 3, 1), STAR) == (2, 3, 1)
    assert trace_normal_form((3, 1, 2), STAR) == (3, 1, 2)
    assert trace_normal_form((3, 1, 2, 1), EDGELESS3) == (1, 1, 2, 3)
    assert trace_normal_form((3, 1, 2), K3) == (3, 1, 2)
    assert trace_normal_form((), STAR) == ()


def test_normal_form_rejects_foreign_letters():
    with pytest.raises(ValueError):
        trace_normal_form((1, 4), STAR)
    with pytest.raises(ValueError):
        trace_normal_form((0,), STAR)


def test_normal_form_is_class_minimum():
    rng = random.Random(101)
    for _ in range(200):
        m = rng.randint(1, 5)
        graph = _random_graph(rng, m)
        word = tuple(rng.randint(1, m) for _ in range(rng.randint(0, 6)))
        cls = _trace_class(word, graph)
        nf = trace_normal_form(word, graph)
        assert nf == min(cls)
        assert trace_normal_form(nf, graph) == nf


def test_normal_form_constant_on_classes():
    rng = random.Random(55)
    for _ in range(100):
        m = rng.randint(2, 5)
        graph = _random_graph(rng, m)
        word = tuple(rng.randint(1, m) for _ in range(rng.randint(2, 6)))
        other = rng.choice(sorted(_trace_class(word, graph)))
        assert trace_normal_form(word, graph) == trace_normal_form(other, graph)


def test_lyndon_words_rank_two():
    words = lyndon_words(2, 4)
    assert set(words) == {
        (1,), (2,), (1, 2), (1, 1, 2), (1, 2, 2),
        (1, 1, 1, 2), (1, 1, 2, 2), (1, 2, 2, 2),
    }
    assert words == sorted(words)


@pytest.mark.parametrize("m,counts", [(2, [2, 1, 2, 3]), (3, [3, 3, 8, 18])])
def test_lyndon_word_counts(m, counts):
    words = lyndon_words(m, 4)
    for length, expected in enumerate(counts, start=1):
        assert sum(1 for w in words if len(w) == length) == expected


def test_lyndon_words_are_lyndon():
    for w in lyndon_words(3, 4):
        for s in range(1, len(w)):
            assert w < w[s:]


def test_lyndon_words_trivial_ranges():
    assert lyndon_words(0, 3) == []
    assert lyndon_words(2, 0) == []


def test_standard_bracketing():
    assert standard_bracketing((1,)) == 1
    assert standard_bracketing((1, 2)) == (1, 2)
    assert standard_bracketing((1, 1, 2)) == (1, (1, 2))
    assert standard_bracketing((1, 2, 2)) == ((1, 2), 2)
    assert standard_bracketing((1, 2, 3)) == (1, (2, 3))
    assert standard_bracketing((1, 3, 2)) == ((1, 3), 2)


def test_bracketing_preserves_leaves():
    for w in lyndon_words(3, 4):
        tree = standard_bracketing(w)
        assert bracket_word_leaves(tree) == w


def test_bracket_word_label():
    assert bracket_word_label((1, (1, 2))) == "[v1,[v1,v2]]"
    assert bracket_word_label(3) == "v3"


def test_multidegree_of_leaves():
    assert multidegree_of_leaves((1, 1, 2), 3) == (2, 1, 0)


def test_expand_commuting_pair_vanishes():
    assert expand_bracket_word((2, 3), STAR, 2) == {}


def test_expand_fixed_cases():
    one = Fraction(1)
    assert expand_bracket_word((1, 2), STAR, 2) == {(1, 2): one, (2, 1): -one}
    assert expand_bracket_word((1, (1, 2)), K2, 3) == {
        (1, 1, 2): one, (1, 2, 1): -2 * one, (2, 1, 1): one,
    }


def test_expand_antisymmetry():
    lhs = expand_bracket_word((1, 2), STAR, 2)
    rhs = expand_bracket_word((2, 1), STAR, 2)
    assert lhs == {w: -c for w, c in rhs.items()}


def test_expand_degree_and_leaf_errors():
    with pytest.raises(ValueError):
        expand_bracket_word((1, (1, 2)), K2, 2)
    with pytest.raises(ValueError):
        expand_bracket_word((1, 9), STAR, 4)


def test_expand_homogeneous_content():
    for w in lyndon_words(3, 4):
        expansion = expand_bracket_word(standard_bracketing(w), STAR, 4)
        for word in expansion:
            assert sorted(word) == sorted(w)


def test_clique_polynomial():
    assert clique_polynomial(K3) == [1, 3, 3, 1]
    assert clique_polynomial(STAR) == [1, 3, 2]
    assert clique_polynomial(EDGELESS3) == [1, 3]
    assert clique_polynomial(SimpleGraph.make(1, [])) == [1, 1]


def test_series_counts_trace_classes():
    # the word count of the trace monoid in each length is the coefficient
    # of 1 / C(-t) for the clique polynomial of the complement
    for graph in (STAR, PATH3, SimpleGraph.make(4, [(1, 2), (3, 4)])):
        cpoly = clique_polynomial(graph.complement())
        a = [(-1) ** i * c for i, c in enumerate(cpoly)]
        s = [1]
        for n in range(1, 5):
            s.append(-sum(a[i] * s[n - i] for i in range(1, min(n, len(a) - 1) + 1)))
        for n in range(1, 5):
            letters = range(1, graph.m + 1)
            brute = len({trace_normal_form(w, graph) for w in product(letters, repeat=n)})
            assert brute == s[n]


def test_dimension_oracle_fixed_cases():
    assert dimension_oracle(STAR, 4) == [3, 2, 5, 10]
    assert dimension_oracle(K2, 4) == [2, 1, 2, 3]
    assert dimension_oracle(EDGELESS3, 3) == [3, 0, 0]
    assert dimension_oracle(SimpleGraph.make(4, [(1, 2), (2, 3), (3, 4), (1, 4)]), 2) == [4, 4]
    with pytest.raises(ValueError):
        dimension_oracle(STAR, 0)


def _mobius_local(n):
    factors = 0
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            factors += 1
        else:
            d += 1
    if n > 1:
        factors += 1
    return -1 if factors % 2 else 1


def test_dimension_oracle_complete_graphs_match_necklaces():
    for m in (2, 3, 4):
        pairs = list(combinations(range(1, m + 1), 2))
        km = SimpleGraph.make(m, pairs)
        expected = []
        for d in range(1, 5):
            total = sum(_mobius_local(d // e) * m**e for e in range(1, d + 1) if d % e == 0)
            expected.append(total // d)
        assert dimension_oracle(km, 4) == expected


def _rank_of_rows(rows):
    pivots = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = Fraction(1) / row[c]
                pivots[c] = {cc: vv * inv for cc, vv in row.items()}
                rank += 1
                break
            coef = row[c]
            for cc, vv in piv.items():
                s = row.get(cc, Fraction(0)) - coef * vv
                if s:
                    row[cc] = s
                else:
                    row.pop(cc, None)
    return rank


def _all_trees(m, degree):
    if degree == 1:
        return list(range(1, m + 1))
    out = []
    for left_deg in range(1, degree):
        for lt in _all_trees(m, left_deg):
            for rt in _all_trees(m, degree - left_deg):
                out.append((lt, rt))
    return out


def _expand_local(tree, graph):
    if isinstance(tree, int):
        return {(tree,): Fraction(1)}
    left = _expand_local(tree[0], graph)
    right = _expand_local(tree[1], graph)
    out = {}
    for w1, c1 in left.items():
        for w2, c2 in right.items():
            for w, c in ((w1 + w2, c1 * c2), (w2 + w1, -c1 * c2)):
                key = min(_trace_class(w, graph))
                s = out.get(key, Fraction(0)) + c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
    return out


def test_dimensions_equal_rank_of_all_bracket_words():
    # every bracket word, not only the chosen ones, expanded by an
    # independent evaluator; the span per degree must have the basis size
    graphs = list(enumerate_graphs(3))
    graphs.append(SimpleGraph.make(4, [(1, 2), (2, 3), (3, 4), (1, 4)]))
    for graph in graphs:
        dims = graded_basis(graph, 3).dims
        for degree in (1, 2, 3):
            rows = [_expand_local(t, graph) for t in _all_trees(graph.m, degree)]
            assert _rank_of_rows(rows) == dims[degree - 1]


def test_graded_basis_running_example():
    gb = graded_basis(STAR, 4)
    assert gb.dims == (3, 2, 5, 10)
    assert [e.label for e in gb.elements_of_degree(1)] == ["v1", "v2", "v3"]
    assert [e.label for e in gb.elements_of_degree(2)] == ["[v1,v2]", "[v1,v3]"]
    assert gb.multidegrees_of_degree(4) == sorted([
        (3, 1, 0), (3, 0, 1), (1, 3, 0), (1, 2, 1), (1, 1, 2),
        (1, 0, 3), (2, 2, 0), (2, 1, 1), (2, 1, 1), (2, 0, 2),
    ])


def test_graded_basis_element_invariants():
    gb = graded_basis(STAR, 4)
    for idx, e in enumerate(gb.elements):
        assert e.index == idx
        assert e.degree == len(e.word)
        assert bracket_word_leaves(e.tree) == e.word
        assert e.multidegree == multidegree_of_leaves(e.word, 3)
        assert e.expansion


def test_structure_constants_heisenberg():
    alg = structure_constants(K2, 2)
    assert alg.n == 3
    assert alg.grading == (2, 1)
    assert alg.sc == {(0, 1): {2: Fraction(1)}}
    assert [lab.label for lab in alg.labels] == ["v1", "v2", "[v1,v2]"]


def test_structure_constants_path():
    alg = structure_constants(PATH3, 2)
    assert alg.n == 5
    assert alg.sc == {(0, 1): {3: Fraction(1)}, (1, 2): {4: Fraction(1)}}


def test_structure_constants_free_three_step():
    alg = structure_constants(K2, 3)
    assert alg.grading == (2, 1, 2)
    labels = [lab.label for lab in alg.labels]
    assert labels == ["v1", "v2", "[v1,v2]", "[v1,[v1,v2]]", "[[v1,v2],v2]"]
    assert alg.sc == {
        (0, 1): {2: Fraction(1)},
        (0, 2): {3: Fraction(1)},
        (1, 2): {4: Fraction(-1)},
    }


def test_structure_constants_cached():
    assert structure_constants(K2, 2) is structure_constants(K2, 2)
    with pytest.raises(ValueError):
        structure_constants(K2, 0)


def test_structure_constants_small_classes_are_lie_algebras():
    for m in (2, 3, 4):
        for graph in enumerate_graphs(m):
            for k in (1, 2, 3):
                alg = structure_constants(graph, k)
                assert alg.grading == tuple(dimension_oracle(graph, k))
                assert jacobi_report(alg) == []
                assert grading_support_check(alg)
