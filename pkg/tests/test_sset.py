"""Core simplicial machinery against the dense-model oracle.

Expected counts and map enumerations below were computed by tests/oracle.py
(full simplex tables, no normal forms) and frozen.
"""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracle
from symspec import sset


def nonbase_counts(space):
    out = {}
    for k, ids in space.cells.items():
        n = len(ids) - (1 if k == 0 else 0)
        if n:
            out[k] = n
    return out


# --- word calculus against the dense model -------------------------------


def dense_of_form(D, n, form):
    """Interpret a normal form over Delta[n]+ as a dense-model label."""
    word, cell = form
    # package ids for delta_plus(n): 0 = base, then subsets by (len, tuple)
    subsets = []
    for k in range(n + 1):
        subsets.extend(itertools.combinations(range(n + 1), k + 1))
    label = oracle.BASE if cell == 0 else subsets[cell - 1]
    k = 0 if label == oracle.BASE else len(label) - 1
    for j in reversed(word):
        label = D.degen[(k, j)][label]
        k += 1
    return label


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_face_calculus_matches_dense_model(data):
    n = data.draw(st.integers(0, 3))
    A = sset.delta_plus(n)
    D = oracle.delta_dense(n, n + 4)
    k = data.draw(st.integers(1, n + 3))
    forms = A.forms(k)
    form = data.draw(st.sampled_from(forms))
    i = data.draw(st.integers(0, k))
    got = dense_of_form(D, n, A.face(i, form))
    want = D.face[(k, i)][dense_of_form(D, n, form)]
    assert got == want


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_degeneracy_calculus_matches_dense_model(data):
    n = data.draw(st.integers(0, 3))
    A = sset.delta_plus(n)
    D = oracle.delta_dense(n, n + 5)
    k = data.draw(st.integers(0, n + 3))
    form = data.draw(st.sampled_from(A.forms(k)))
    j = data.draw(st.integers(0, k))
    got = dense_of_form(D, n, A.degenerate(j, form))
    want = D.degen[(k, j)][dense_of_form(D, n, form)]
    assert got == want


def test_degenerate_image_criterion():
    # s_U x lies in the image of s_j exactly when j is a letter of U
    A = sset.delta_plus(2)
    for k in range(1, 5):
        for form in A.forms(k):
            for j in range(k):
                in_image = form == A.degenerate(j, A.face(j, form))
                assert in_image == (j in form[0])


# --- standard spaces -------------------------------------------------------


def test_standard_spaces_validate():
    spaces = [
        sset.point(),
        sset.zero_sphere(),
        sset.circle(),
        sset.delta_plus(0),
        sset.delta_plus(1),
        sset.delta_plus(2),
        sset.delta_plus(3),
        sset.boundary_plus(1),
        sset.boundary_plus(2),
        sset.boundary_plus(3),
        sset.horn_plus(1, 0),
        sset.horn_plus(2, 0),
        sset.horn_plus(2, 1),
        sset.horn_plus(3, 2),
    ]
    for X in spaces:
        assert X.validate()


def test_standard_space_counts():
    assert nonbase_counts(sset.delta_plus(2)) == {0: 3, 1: 3, 2: 1}
    assert nonbase_counts(sset.boundary_plus(2)) == {0: 3, 1: 3}
    assert nonbase_counts(sset.horn_plus(2, 1)) == {0: 3, 1: 2}
    assert nonbase_counts(sset.circle()) == {1: 1}
    assert nonbase_counts(sset.zero_sphere()) == {0: 1}


# --- product ---------------------------------------------------------------


def test_product_circle_circle():
    pr = sset.product(sset.circle(), sset.circle())
    pr.space.validate()
    assert nonbase_counts(pr.space) == {1: 3, 2: 2}
    assert pr.proj1.is_valid() and pr.proj2.is_valid()


def test_product_counts_match_dense():
    cases = [
        (sset.delta_plus(1), sset.delta_plus(1), oracle.delta_dense(1, 4), oracle.delta_dense(1, 4)),
        (sset.delta_plus(2), sset.delta_plus(1), oracle.delta_dense(2, 5), oracle.delta_dense(1, 5)),
        (sset.circle(), sset.delta_plus(1), oracle.circle_dense(4), oracle.delta_dense(1, 4)),
    ]
    for A, B, DA, DB in cases:
        pr = sset.product(A, B)
        pr.space.validate()
        got = nonbase_counts(pr.space)
        want = oracle.product_dense(DA, DB).counts()
        # dense product tables stop at the cap; compare through the true top dim
        top = A.dim + B.dim
        assert {k: v for k, v in got.items() if k <= top} == want


def test_product_projections_are_product_cone():
    # cells of the product biject with pairs of equal-dimension forms
    A, B = sset.delta_plus(1), sset.circle()
    pr = sset.product(A, B)
    seen = set()
    for c in pr.space.cell_ids():
        fa, fb = pr.pair_of[c]
        assert pr.proj1.apply(((), c)) == fa
        assert pr.proj2.apply(((), c)) == fb
        assert not (set(fa[0]) & set(fb[0]))
        seen.add((fa, fb))
    assert len(seen) == len(list(pr.space.cell_ids()))


# --- smash -----------------------------------------------------------------


def test_smash_circle_circle():
    sm = sset.smash(sset.circle(), sset.circle())
    sm.space.validate()
    assert nonbase_counts(sm.space) == {1: 1, 2: 2}
    assert sm.quot.projection.is_valid()


def test_smash_counts_match_dense():
    S1d = oracle.circle_dense(5)
    S2d = oracle.smash_dense(S1d, S1d)
    S1 = sset.circle()
    sm2 = sset.smash(S1, S1)
    assert nonbase_counts(sm2.space) == S2d.counts()
    sm3 = sset.smash(sm2.space, S1)
    assert nonbase_counts(sm3.space) == oracle.smash_dense(S2d, S1d).counts()
    assert nonbase_counts(sm3.space) == {1: 1, 2: 6, 3: 6}


def test_smash_unit_isos():
    S0 = sset.zero_sphere()
    B = sset.smash(sset.circle(), sset.circle()).space
    left = sset.smash(S0, B)
    to_B, from_B = sset.smash_lunit(left)
    assert to_B.is_valid() and from_B.is_valid()
    assert to_B.compose(from_B) == sset.identity_map(B)
    assert from_B.compose(to_B) == sset.identity_map(left.space)
    right = sset.smash(B, S0)
    to_B2, from_B2 = sset.smash_runit(right)
    assert to_B2.is_valid() and from_B2.is_valid()
    assert to_B2.compose(from_B2) == sset.identity_map(B)
    assert from_B2.compose(to_B2) == sset.identity_map(right.space)


def test_smash_swap_and_assoc_are_isos():
    A, B, C = sset.circle(), sset.zero_sphere(), sset.delta_plus(1)
    ab = sset.smash(A, B)
    ba = sset.smash(B, A)
    swap = sset.smash_swap(ab, ba)
    assert swap.is_valid() and swap.is_isomorphism()
    back = sset.smash_swap(ba, ab)
    assert back.compose(swap) == sset.identity_map(ab.space)

    ab_c = sset.smash(ab.space, C)
    bc = sset.smash(B, C)
    a_bc = sset.smash(A, bc.space)
    assoc = sset.smash_assoc(ab, ab_c, bc, a_bc)
    assert assoc.is_valid() and assoc.is_isomorphism()


# --- quotient and pushout --------------------------------------------------


def test_quotient_interval_by_boundary_is_circle():
    D1 = sset.delta_plus(1)
    B1 = sset.boundary_plus(1)
    incl = sset.all_maps(B1, D1)
    # the only monomorphisms send the two points to the two ends
    monos = [m for m in incl if m.is_monomorphism()]
    assert len(monos) == 2
    q = sset.quotient(D1, monos[0])
    q.space.validate()
    assert nonbase_counts(q.space) == {1: 1}
    iso = sset.find_isomorphism(q.space, sset.circle())
    assert iso is not None and iso.is_valid()


def test_quotient_collapse_whole_space_is_point():
    D2 = sset.delta_plus(2)
    q = sset.quotient(D2, sset.identity_map(D2))
    assert sset.is_pointlike(q.space)


def test_pushout_two_intervals_circle():
    # glue both endpoints of two intervals: a circle with two vertices
    D1a, D1b = sset.delta_plus(1), sset.delta_plus(1)
    B1 = sset.boundary_plus(1)
    f = [m for m in sset.all_maps(B1, D1a) if m.is_monomorphism()][0]
    g = [m for m in sset.all_maps(B1, D1b) if m.is_monomorphism()][0]
    po = sset.pushout(f, g)
    po.space.validate()
    assert po.leg1.is_valid() and po.leg2.is_valid()
    assert nonbase_counts(po.space) == {0: 2, 1: 2}
    assert po.leg1.compose(f) == po.leg2.compose(g)


def test_pushout_collapsing_leg():
    # pushing out along a collapse: Delta[2] with one edge crushed
    D2 = sset.delta_plus(2)
    D1 = sset.delta_plus(1)
    edge_maps = [m for m in sset.all_maps(D1, D2) if m.is_monomorphism()]
    assert len(edge_maps) == 3  # one per edge; vertex order is preserved
    incl = edge_maps[0]
    crush = sset.constant_map(D1, sset.point())
    po = sset.pushout(incl, crush)
    po.space.validate()
    assert po.leg1.compose(incl) == po.leg2.compose(crush)


# --- map enumeration -------------------------------------------------------


def test_all_maps_counts():
    S1 = sset.circle()
    S0 = sset.zero_sphere()
    assert len(sset.all_maps(sset.delta_plus(1), S1)) == 2
    assert len(sset.all_maps(S0, S0)) == 2
    assert len(sset.all_maps(S1, S1)) == 2
    assert len(sset.all_maps(S1, sset.point())) == 1
    for m in sset.all_maps(sset.delta_plus(1), S1):
        assert m.is_valid()


def test_all_maps_counts_match_dense():
    pairs = [
        (sset.delta_plus(1), sset.circle(), oracle.delta_dense(1, 3), oracle.circle_dense(3), 2),
        (sset.boundary_plus(2), sset.circle(), oracle.subspace_dense(oracle.delta_dense(2, 3), lambda k, x: len(set(x)) <= 2), oracle.circle_dense(3), 3),
    ]
    for A, X, DA, DX, cap in pairs:
        got = len(sset.all_maps(A, X))
        want = oracle.all_maps_dense(DA, DX, cap)
        assert got == want


def test_all_maps_budget():
    with pytest.raises(RuntimeError):
        sset.all_maps(sset.boundary_plus(2), sset.delta_plus(2), budget=3)


def test_monomorphism_detection():
    D1, S1 = sset.delta_plus(1), sset.circle()
    maps = sset.all_maps(D1, S1)
    # the collapse is not mono, the edge embedding is not mono either
    # (both endpoints land on the same vertex)
    assert [m.is_monomorphism() for m in maps] == [False, False]
    B1 = sset.boundary_plus(1)
    incl = [m for m in sset.all_maps(B1, D1) if m.is_monomorphism()]
    assert len(incl) == 2


# --- quotient engine, randomized -------------------------------------------


@st.composite
def random_two_dim_space(draw):
    """A small random pointed graph: a vertex pool plus random edges."""
    nv = draw(st.integers(1, 3))
    ne = draw(st.integers(0, 4))
    cells = {0: tuple(range(nv))}
    faces = {}
    edges = []
    for e in range(nv, nv + ne):
        a = draw(st.integers(0, nv - 1))
        b = draw(st.integers(0, nv - 1))
        faces[e] = (((), a), ((), b))
        edges.append(e)
    if edges:
        cells[1] = tuple(edges)
    space = sset.PointedSimplicialSet(cells, faces, 0)
    space.validate()
    return space


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_random_edge_identifications_validate(data):
    space = data.draw(random_two_dim_space())
    forms1 = [f for f in space.forms(1)]
    n = data.draw(st.integers(0, 3))
    pairs = [
        (data.draw(st.sampled_from(forms1)), data.draw(st.sampled_from(forms1)))
        for _ in range(n)
    ]
    q = sset.quotient_by_pairs(space, pairs)
    assert q.space.validate()
    assert q.projection.is_valid()
    for a, b in pairs:
        assert q.projection.apply(a) == q.projection.apply(b)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_random_collapse_matches_dense(data):
    # collapse a random set of edges of Delta[2] x Delta[1] and compare counts
    A = sset.delta_plus(2)
    B = sset.delta_plus(1)
    pr = sset.product(A, B)
    edges = [c for c in pr.space.cells[1]]
    chosen = data.draw(st.sets(st.sampled_from(edges), max_size=2))
    # close the chosen edges into a subcomplex: add their endpoints
    collapse = set()
    for e in sorted(chosen):
        collapse.add((1, e))
        for i in range(2):
            w, t = pr.space.face(i, ((), e))
            collapse.add((0, t))
    pairs = []
    for k, c in sorted(collapse):
        pairs.append((((), c), pr.space.base(k)))
    q = sset.quotient_by_pairs(pr.space, pairs)
    assert q.space.validate()
    assert q.projection.is_valid()

    DA, DB = oracle.delta_dense(2, 4), oracle.delta_dense(1, 4)
    DP = oracle.product_dense(DA, DB)
    # name the chosen edges in the dense model through the pair bookkeeping
    def dense_label(k, c):
        fa, fb = pr.pair_of[c]
        da = dense_of_form(DA, 2, fa)
        db = dense_of_form(DB, 1, fb)
        if da == oracle.BASE and db == oracle.BASE:
            return oracle.BASE
        return (da, db)

    hits = {(k, dense_label(k, c)) for k, c in collapse}
    for k in range(DP.cap):
        for kk, x in sorted(hits, key=repr):
            if kk == k:
                for j in range(k + 1):
                    hits.add((k + 1, DP.degen[(k, j)][x]))
    DQ = oracle.collapse_dense(DP, lambda k, x: (k, x) in hits)
    got = {k: v for k, v in nonbase_counts(q.space).items() if k <= 3}
    assert got == DQ.counts()


def test_sphere_cell_counts():
    s0 = sset.sphere(0)
    assert s0.n_cells(0) == 2
    s1 = sset.sphere(1)
    assert s1.n_cells(0) == 1 and s1.n_cells(1) == 1
    s2 = sset.sphere(2)
    counts = {
        k: len([c for c in s2.cells[k] if c != s2.basepoint])
        for k in s2.cells
        if k
    }
    assert counts == {1: 1, 2: 2}


def test_interval_plus_is_the_one_simplex():
    iv = sset.interval_plus()
    assert iv.subset_ids == sset.delta_plus(1).subset_ids
    assert sset.find_isomorphism(iv, sset.delta_plus(1)) is not None
