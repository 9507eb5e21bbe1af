from fractions import Fraction

import pytest

from graphfp import (DiagonalElement, FourierExpr, Freeness, Letter, Model,
                     OperatorSum, SameVertexError, UnknownVertexError,
                     VertexSet, check_offdiag_vanishing,
                     closed_form_first_cumulant, cumulant,
                     cumulant_equality_check, diagonal_compress,
                     diagonal_compression_freeness, expectation,
                     freeness_sufficient, mixed_cumulants_vanish, multiply,
                     off_diagonal_compress, projection_compress,
                     projection_compression_freeness,
                     same_element_compression_freeness, support)
from graphfp.verify import random_expr, standard_graphs

CK, TO = Model.CK, Model.TOEPLITZ


@pytest.fixture(scope="module")
def disjoint_union():
    """Loop component plus edge component in one graph."""
    from graphfp import DirectedGraph
    return DirectedGraph(["v", "v1", "v2"],
                         [("l", "v", "v"), ("e", "v1", "v2")])


def test_diagonal_compress_examples(disjoint_union):
    g = disjoint_union
    a = (FourierExpr.vertex(g, "v", 2) + FourierExpr.creation(g.path(["l"]))
         + FourierExpr.creation(g.path(["e"]))
         + FourierExpr.annihilation(g.path(["e"])))
    out = diagonal_compress(a, ["v"])
    assert out == FourierExpr.vertex(g, "v", 2) + \
        FourierExpr.creation(g.path(["l"]))
    everything = diagonal_compress(a, list(g.vertices))
    # non-loop terms die even when every vertex is kept
    assert everything == FourierExpr.vertex(g, "v", 2) + \
        FourierExpr.creation(g.path(["l"]))
    noloops = FourierExpr.creation(g.path(["e"]))
    assert diagonal_compress(noloops, ["v1"]).is_zero


def test_diagonal_compress_matches_products(graphs, rng):
    # the term filter equals the literal sum of corner products
    for gname in ("tri", "quad"):
        g = graphs[gname]
        for _ in range(15):
            a = random_expr(g, rng)
            size = rng.randint(1, len(g.vertices))
            vs = VertexSet(g, tuple(rng.sample(list(g.vertices), size)))
            filtered = OperatorSum.from_expr(diagonal_compress(a, vs))
            total = OperatorSum(g, {})
            for v in vs.vertices:
                corner = FourierExpr.vertex(g, v)
                total = total + multiply(multiply(corner, a, CK), corner, CK)
            assert filtered == total


def test_off_diagonal_compress_examples(g2):
    e = g2.path(["e"])
    a = (FourierExpr.creation(e) + FourierExpr.annihilation(e)
         + FourierExpr.vertex(g2, "v1"))
    assert off_diagonal_compress(a, "v1", "v2") == FourierExpr.creation(e)
    assert off_diagonal_compress(a, "v2", "v1") == FourierExpr.annihilation(e)
    with pytest.raises(SameVertexError):
        off_diagonal_compress(a, "v1", "v1")
    with pytest.raises(UnknownVertexError):
        off_diagonal_compress(a, "v1", "zzz")


def test_off_diagonal_compress_kills_loops(g1):
    a = FourierExpr.creation(g1.path(["l"]))
    g = standard_graphs()["loops_plus_edge"]
    loops_only = (FourierExpr.creation(g.path(["l1"]))
                  + FourierExpr.annihilation(g.path(["l2", "l1"])))
    assert off_diagonal_compress(loops_only, "v1", "v2").is_zero


def test_off_diagonal_compress_matches_products(graphs, rng):
    g = graphs["quad"]
    for _ in range(15):
        a = random_expr(g, rng)
        v1, v2 = rng.sample(list(g.vertices), 2)
        filtered = OperatorSum.from_expr(off_diagonal_compress(a, v1, v2))
        left = FourierExpr.vertex(g, v1)
        right = FourierExpr.vertex(g, v2)
        assert filtered == multiply(multiply(left, a, CK), right, CK)


def test_projection_compress_split(g2, rng):
    e = g2.path(["e"])
    a = (FourierExpr.vertex(g2, "v1") + FourierExpr.creation(e)
         + FourierExpr.annihilation(e))
    full, diag, off = projection_compress(a, ["v1", "v2"])
    assert full == a
    assert diag == FourierExpr.vertex(g2, "v1")
    assert off == FourierExpr.creation(e) + FourierExpr.annihilation(e)
    only_v1 = projection_compress(a, ["v1"])
    assert only_v1.full == FourierExpr.vertex(g2, "v1")
    assert only_v1.off_diagonal.is_zero
    zero = projection_compress(FourierExpr.zero(g2), ["v1"])
    assert zero.full.is_zero and zero.diagonal.is_zero \
        and zero.off_diagonal.is_zero


def test_projection_split_is_exact_on_random_data(graphs, rng):
    for gname in ("tri", "quad", "loops_plus_edge"):
        g = graphs[gname]
        for _ in range(20):
            a = random_expr(g, rng)
            size = rng.randint(1, len(g.vertices))
            vs = tuple(rng.sample(list(g.vertices), size))
            full, diag, off = projection_compress(a, vs)
            assert full == diag + off
            # idempotence of the corner
            again = projection_compress(full, vs)
            assert again.full == full


def test_support_formulas_for_diagonal_compression(graphs, rng):
    # vertices: intersection; paths: loops based at the set, side intact
    for gname in ("tri", "loops_plus_edge"):
        g = graphs[gname]
        for _ in range(20):
            a = random_expr(g, rng)
            size = rng.randint(1, len(g.vertices))
            vs = set(rng.sample(list(g.vertices), size))
            sup_a, sup_c = support(a), support(diagonal_compress(a, tuple(vs)))
            assert sup_c.vertices == sup_a.vertices & vs
            assert sup_c.paired_paths == {
                p for p in sup_a.paired_paths
                if p.src == p.rng and p.src in vs}
            assert sup_c.unpaired_paths == {
                p for p in sup_a.unpaired_paths
                if p.src == p.rng and p.src in vs}


@pytest.mark.parametrize("model", [CK, TO])
def test_offdiag_vanishing_on_random_data(graphs, rng, model):
    for gname in ("edge", "tri"):
        g = graphs[gname]
        for _ in range(10):
            a = random_expr(g, rng)
            for v1 in g.vertices:
                for v2 in g.vertices:
                    if v1 != v2:
                        assert check_offdiag_vanishing(a, v1, v2, 4, model)


def test_offdiag_vanishing_vacuous_case(g2):
    a = FourierExpr.vertex(g2, "v1")
    assert off_diagonal_compress(a, "v1", "v2").is_zero
    assert check_offdiag_vanishing(a, "v1", "v2", 4, CK)


def test_freeness_sufficient_examples(two_loops, g1):
    l1 = FourierExpr.creation(two_loops.path(["l1"]))
    l2 = FourierExpr.creation(two_loops.path(["l2"]))
    assert freeness_sufficient(l1, l2).is_free
    a = FourierExpr.creation(g1.path(["l"]))
    b = FourierExpr.creation(g1.path(["l", "l"]))
    verdict = freeness_sufficient(a, b)
    assert verdict.status is Freeness.UNKNOWN
    # prefix-comparable pairs are never certified even with distinct
    # diagrams: the generators are multiplicatively dependent
    g = standard_graphs()["loops_plus_edge"]
    x = FourierExpr.creation(g.path(["l1"]))
    y = FourierExpr.creation(g.path(["l1", "e"]))
    assert not freeness_sufficient(x, y).is_free


def test_freeness_sufficient_is_sound(graphs, rng):
    # whenever the support test certifies freeness, no mixed cumulant
    # witness exists at order four in the shift model
    certified = 0
    for gname in ("two_loops", "loops_plus_edge", "tri"):
        g = graphs[gname]
        for _ in range(12):
            a = random_expr(g, rng, max_terms=2)
            b = random_expr(g, rng, max_terms=2)
            if freeness_sufficient(a, b).is_free:
                ok, witness = mixed_cumulants_vanish(a, b, 4, model=TO)
                assert ok, witness
                certified += 1
    assert certified >= 4


def test_split_parts_certified_free_when_supports_allow(graphs, rng):
    # the diagonal and off-diagonal parts of a corner live on loops versus
    # non-loops; when additionally no prefix interference occurs the
    # support test certifies them free
    g = graphs["tri"]
    certified = 0
    for _ in range(40):
        a = random_expr(g, rng)
        size = rng.randint(1, len(g.vertices))
        vs = tuple(rng.sample(list(g.vertices), size))
        _, diag, off = projection_compress(a, vs)
        if diag.is_zero or off.is_zero:
            continue
        verdict = freeness_sufficient(diag, off)
        if verdict.is_free:
            certified += 1
            ok, witness = mixed_cumulants_vanish(diag, off, 3, model=TO)
            assert ok, witness
    assert certified >= 3


def test_compression_condition_checkers(disjoint_union):
    g = disjoint_union
    a = FourierExpr.creation(g.path(["l"])) + FourierExpr.vertex(g, "v")
    b = FourierExpr.creation(g.path(["e"]))
    assert diagonal_compression_freeness(a, b, ["v", "v1"]).is_free
    assert not diagonal_compression_freeness(a, a, ["v"]).is_free
    assert projection_compression_freeness(a, b, ["v", "v1"]).is_free
    both = a + b
    assert not projection_compression_freeness(both, both, ["v"]).is_free
    assert same_element_compression_freeness(a, ["v"], ["v1", "v2"]).is_free
    assert not same_element_compression_freeness(a, ["v"], ["v"]).is_free


def test_closed_form_first_cumulant(g2):
    a = FourierExpr.vertex(g2, "v1", 3) + FourierExpr.creation(g2.path(["e"]))
    d = DiagonalElement.vertex_projection(g2, "v1")
    assert closed_form_first_cumulant(d, a, ["v1"]) == \
        DiagonalElement(g2, {"v1": 3})
    assert closed_form_first_cumulant(d, a, ["v2"]).is_zero
    full, _, _ = projection_compress(a, ["v1"])
    assert cumulant(((d, full),), CK) == DiagonalElement(g2, {"v1": 3})


@pytest.mark.parametrize("model", [CK, TO])
def test_cumulant_equality_composite_graph(disjoint_union, rng, model):
    # vertex sets mixing the two components never connect distinct set
    # vertices, so the corner equals its diagonal part in distribution
    g = disjoint_union
    for _ in range(12):
        a = random_expr(g, rng)
        vs = ("v", "v1") if rng.random() < 0.5 else ("v", "v2")
        ok, witness = cumulant_equality_check(a, vs, 4, model=model)
        assert ok, witness


def test_cumulant_equality_single_sided_corners(graphs, rng):
    # on an arbitrary graph the identity needs the off-diagonal part to be
    # single-sided; such draws must pass exactly
    g = graphs["tri"]
    passed = 0
    for _ in range(40):
        a = random_expr(g, rng)
        size = rng.randint(1, len(g.vertices))
        vs = tuple(rng.sample(list(g.vertices), size))
        members = set(vs)
        two_sided = [p for p in support(a).paired_paths
                     if p.src != p.rng and p.src in members
                     and p.rng in members]
        if two_sided:
            continue
        for model in (CK, TO):
            ok, witness = cumulant_equality_check(a, vs, 4, model=model)
            assert ok, witness
        passed += 1
    assert passed >= 10


def test_cumulant_equality_fails_on_two_sided_corner(g2):
    # a path with both stars between two compressed vertices gives the
    # corner a genuinely nonzero second cumulant, so the identity with the
    # diagonal part breaks; pinned in both models
    e = g2.path(["e"])
    a = FourierExpr.creation(e) + FourierExpr.annihilation(e)
    ok, witness = cumulant_equality_check(a, ["v1", "v2"], 2, model=CK)
    assert not ok
    assert witness.order == 2
    assert witness.compressed == DiagonalElement(g2, {"v1": 1, "v2": 1})
    assert witness.diagonal_only.is_zero
    ok, witness = cumulant_equality_check(a, ["v1", "v2"], 2, model=TO)
    assert not ok
    assert witness.compressed == DiagonalElement(g2, {"v2": 1})
