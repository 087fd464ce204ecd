"""Quiver structure, relation families, and graded ideal dimensions."""

import pytest

from kq.quiver import (
    Arrow,
    BadNError,
    Path,
    PathSpaceTooLargeError,
    SparseEchelon,
    TiltingQuiver,
    build_quiver,
    containment_pairs,
    enumerate_paths,
    graded_ideal_basis,
    graded_ideal_dim,
    kernel_report,
    p2_pairs,
    path_count,
    quotient_dim,
    relation_set_for,
    relation_sets,
    square_coefficients,
)


def test_quiver_counts_n4():
    q = build_quiver(4)
    assert len(q.vertices) == 6
    assert [q.vertex_dim(v) for v in q.vertices] == [1, 2, 3, 1, 2, 1]
    assert len(q.arrows) == 24
    bundles = {(a.tail, a.head) for a in q.arrows}
    assert bundles == {
        ((0, 0), (1, 0)),
        ((1, 0), (2, 0)),
        ((1, 0), (1, 1)),
        ((1, 1), (2, 1)),
        ((2, 0), (2, 1)),
        ((2, 1), (2, 2)),
    }


def test_quiver_counts_n5():
    q = build_quiver(5)
    assert len(q.vertices) == 10
    # n arrows for every adjacent pair of staircase weights: 12 pairs here
    assert len(q.arrows) == 12 * 5


def test_quiver_vertex_count_formula():
    for n in range(4, 9):
        assert len(build_quiver(n).vertices) == (n - 1) * n // 2


def test_bad_n():
    with pytest.raises(BadNError):
        TiltingQuiver(3)


def test_restriction_to_smaller_quiver():
    for n in (5, 6):
        big = build_quiver(n)
        small = build_quiver(n - 1)
        kept = [
            a
            for a in big.arrows
            if a.rho <= n - 1
            and max(a.tail[0], a.head[0]) <= n - 3
        ]
        assert sorted(kept) == sorted(small.arrows)


def test_path_composition_rules():
    q = build_quiver(4)
    a = q.arrow((0, 0), 1, 2)
    b = q.arrow((1, 0), 2, 3)
    p = Path((a, b))
    assert p.tail == (0, 0) and p.head == (1, 1) and len(p) == 2
    with pytest.raises(ValueError):
        Path((b, a))
    with pytest.raises(ValueError):
        Arrow((1, 0), (2, 1), 1, 1)


def test_enumerate_paths_counts():
    q = build_quiver(4)
    assert len(enumerate_paths(q, (0, 0), (1, 1))) == 16
    assert len(enumerate_paths(q, (1, 0), (2, 1))) == 32
    assert enumerate_paths(q, (1, 1), (1, 1)) == [Path()]
    assert enumerate_paths(q, (1, 1), (1, 0)) == []


def test_path_space_guardrail(monkeypatch):
    q = TiltingQuiver(6)  # fresh instance, avoids the shared cache
    monkeypatch.setenv("KQ_MAX_PATHS", "10")
    with pytest.raises(PathSpaceTooLargeError):
        enumerate_paths(q, (0, 0), (2, 0))
    monkeypatch.setenv("KQ_MAX_PATHS", "1000000")
    assert len(enumerate_paths(q, (0, 0), (2, 0))) == 36


def test_p2_families_n5():
    q = build_quiver(5)
    fams = {(lam, mu): fam for lam, mu, fam in p2_pairs(q)}
    assert fams[((0, 0), (2, 0))] == "ff"
    assert fams[((2, 0), (2, 2))] == "gg"
    assert fams[((0, 0), (1, 1))] == "diag"
    assert fams[((1, 0), (2, 1))] == "square"
    assert len(fams) == 12


def test_relation_counts_and_coefficients():
    q = build_quiver(5)
    assert len(relation_set_for(q, (0, 0), (2, 0))) == 10
    assert len(relation_set_for(q, (2, 0), (2, 2))) == 10
    assert len(relation_set_for(q, (0, 0), (1, 1))) == 15
    assert len(relation_set_for(q, (1, 0), (2, 1))) == 25
    assert square_coefficients((1, 0)) == (1, -2, 1)
    assert square_coefficients((2, 0)) == (2, -3, 1)
    assert square_coefficients((2, 1)) == (1, -2, 1)


def test_diagonal_relation_terms_n4():
    q = build_quiver(4)
    rels = relation_set_for(q, (0, 0), (1, 1))
    by_idx = {r.indices: r for r in rels}
    r = by_idx[(1, 2)]
    f1 = q.arrow((0, 0), 1, 1)
    f2 = q.arrow((0, 0), 1, 2)
    g1 = q.arrow((1, 0), 2, 1)
    g2 = q.arrow((1, 0), 2, 2)
    assert r.terms == {Path((f1, g2)): 1, Path((f2, g1)): 1}
    rii = by_idx[(3, 3)]
    f3 = q.arrow((0, 0), 1, 3)
    g3 = q.arrow((1, 0), 2, 3)
    assert rii.terms == {Path((f3, g3)): 2}


def test_square_relation_terms():
    q = build_quiver(5)
    rels = {r.indices: r for r in relation_set_for(q, (2, 0), (3, 1))}
    r = rels[(1, 2)]
    gf = Path((q.arrow((2, 0), 1, 1), q.arrow((3, 0), 2, 2)))
    fg_swapped = Path((q.arrow((2, 0), 2, 2), q.arrow((2, 1), 1, 1)))
    fg = Path((q.arrow((2, 0), 2, 1), q.arrow((2, 1), 1, 2)))
    assert r.terms == {gf: 2, fg_swapped: -3, fg: 1}


def test_graded_ideal_dims_n4():
    q = build_quiver(4)
    assert graded_ideal_dim(q, (0, 0), (1, 1)) == 10
    assert graded_ideal_dim(q, (0, 0), (2, 0)) == 6
    for lam, mu in containment_pairs(q, 1):
        assert graded_ideal_dim(q, lam, mu) == 0


def test_quotient_dims():
    q4 = build_quiver(4)
    assert quotient_dim(q4, (0, 0), (1, 1)) == 6
    assert quotient_dim(q4, (0, 0), (2, 0)) == 10
    q5 = build_quiver(5)
    assert path_count(q5, (1, 0), (2, 1)) == 50
    assert quotient_dim(q5, (1, 0), (2, 1)) == 25


def test_kernel_matches_hom_dims_n4_all_degrees():
    q = build_quiver(4)
    for lam, mu in containment_pairs(q, 4):
        r = kernel_report(q, lam, mu)
        assert r["ok"], r


def _direct_ideal_dim(q, lam, mu):
    """Oracle: span of all products path * relation * path, enumerated
    outright rather than grown degree by degree."""
    paths = enumerate_paths(q, lam, mu)
    index = {p: i for i, p in enumerate(paths)}
    ech = SparseEchelon()
    for alpha, beta, _fam in p2_pairs(q):
        if not (
            lam[0] <= alpha[0]
            and lam[1] <= alpha[1]
            and beta[0] <= mu[0]
            and beta[1] <= mu[1]
        ):
            continue
        lefts = enumerate_paths(q, beta, mu)
        rights = enumerate_paths(q, lam, alpha)
        for rel in relation_set_for(q, alpha, beta):
            for s in rights:
                for p in lefts:
                    vec = {}
                    for mid, c in rel.terms.items():
                        full = Path(s.arrows + mid.arrows + p.arrows)
                        i = index[full]
                        vec[i] = vec.get(i, 0) + int(c)
                    ech.insert(vec)
    return ech.rank


def test_lazy_ideal_matches_direct_enumeration_at_degree_three():
    for n in (4, 5):
        q = build_quiver(n)
        for lam, mu in containment_pairs(q, 3, min_degree=3):
            assert graded_ideal_dim(q, lam, mu) == _direct_ideal_dim(q, lam, mu)


def test_staircase_normal_paths_span_the_quotient():
    """Any wedge-then-append pair rewrites into append-then-wedge mod the
    ideal: unit vectors on horizontal-first paths plus the ideal fill the
    whole path space."""
    for n, pairs in ((4, [((0, 0), (2, 1)), ((1, 0), (2, 2)), ((0, 0), (2, 2))]),
                     (5, [((1, 0), (3, 1)), ((0, 0), (2, 2))])):
        q = build_quiver(n)
        for lam, mu in pairs:
            basis, paths = graded_ideal_basis(q, lam, mu)
            index = {p: i for i, p in enumerate(paths)}
            ech = SparseEchelon()
            for row in basis:
                assert ech.insert(dict(row))
            added = 0
            for p in paths:
                directions = [a.direction for a in p.arrows]
                if directions == sorted(directions):  # horizontal steps first
                    if ech.insert({index[p]: 1}):
                        added += 1
            assert ech.rank == len(paths)
            assert added == quotient_dim(q, lam, mu)


def test_relation_sets_cover_all_p2_pairs():
    q = build_quiver(4)
    rels = relation_sets(q)
    pair_count = {}
    for r in rels:
        pair_count[(r.tail, r.head)] = pair_count.get((r.tail, r.head), 0) + 1
    assert set(pair_count) == {(lam, mu) for lam, mu, _ in p2_pairs(q)}


def test_relation_element_rejects_mismatched_paths():
    from kq.quiver import RelationElement

    q = build_quiver(4)
    p = Path((q.arrow((0, 0), 1, 1), q.arrow((1, 0), 1, 2)))
    with pytest.raises(ValueError):
        RelationElement((0, 0), (1, 1), {p: 1})


def test_sparse_echelon_is_exact():
    ech = SparseEchelon()
    assert ech.insert({0: 2, 1: 4})
    assert not ech.insert({0: 1, 1: 2})
    assert ech.insert({1: 1})
    assert not ech.insert({0: 3, 1: 5})
    assert ech.rank == 2
