"""Permutation calculus and group actions."""

import itertools

from hypothesis import given, settings, strategies as st

from symspec import equivariant as eq
from symspec import sset


perms = st.integers(2, 5).flatmap(
    lambda n: st.permutations(list(range(n))).map(tuple)
)


@settings(max_examples=150, deadline=None)
@given(perms)
def test_inverse_and_sign(a):
    n = len(a)
    assert eq.compose_perm(a, eq.inverse_perm(a)) == eq.identity_perm(n)
    assert eq.compose_perm(eq.inverse_perm(a), a) == eq.identity_perm(n)
    assert eq.perm_sign(a) * eq.perm_sign(eq.inverse_perm(a)) == 1


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_compose_is_function_composition(data):
    n = data.draw(st.integers(2, 5))
    a = tuple(data.draw(st.permutations(list(range(n)))))
    b = tuple(data.draw(st.permutations(list(range(n)))))
    c = eq.compose_perm(a, b)
    for i in range(n):
        assert c[i] == a[b[i]]
    assert eq.perm_sign(c) == eq.perm_sign(a) * eq.perm_sign(b)


@settings(max_examples=150, deadline=None)
@given(perms)
def test_reduced_word_rebuilds_permutation(a):
    n = len(a)
    out = eq.identity_perm(n)
    for i in eq.reduced_word(a):
        out = eq.compose_perm(eq.transposition(n, i), out)
    assert out == a
    assert len(eq.reduced_word(a)) % 2 == (0 if eq.perm_sign(a) == 1 else 1)


def test_block_operations():
    assert eq.block_embed((1, 0), 4) == (1, 0, 2, 3)
    assert eq.block_sum((1, 0), (0, 2, 1)) == (1, 0, 2, 4, 3)
    # the (q, p) block rotation, q = 2, p = 1
    assert eq.shuffle_rho(2, 1) == (1, 2, 0)
    assert eq.shuffle_rho(1, 2) == (2, 0, 1)
    assert eq.shuffle_rho(0, 3) == (0, 1, 2)


def test_shuffles_are_coset_representatives():
    for p, q in [(1, 1), (2, 1), (2, 2), (3, 1)]:
        mus = eq.all_shuffles(p, q)
        assert len(mus) == len(set(mus))
        import math

        assert len(mus) == math.comb(p + q, p)
        reps = {eq.shuffle_perm(mu, p, q) for mu in mus}
        # distinct shuffles represent distinct left cosets of Sigma_p x Sigma_q
        seen = set()
        for m in reps:
            coset = frozenset(
                eq.compose_perm(m, eq.block_sum(b, g))
                for b in itertools.permutations(range(p))
                for g in itertools.permutations(range(q))
            )
            assert coset not in seen
            seen.add(coset)
        assert len(set().union(*seen)) == math.factorial(p + q)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_coset_factorization(data):
    p = data.draw(st.integers(1, 3))
    q = data.draw(st.integers(1, 3))
    alpha = tuple(data.draw(st.permutations(list(range(p + q)))))
    mu = data.draw(st.sampled_from(eq.all_shuffles(p, q)))
    mu2, beta, gamma = eq.coset_factor(alpha, mu, p, q)
    lhs = eq.compose_perm(alpha, eq.shuffle_perm(mu, p, q))
    rhs = eq.compose_perm(
        eq.shuffle_perm(mu2, p, q), eq.block_sum(beta, gamma)
    )
    assert lhs == rhs
    assert mu2 in eq.all_shuffles(p, q)


def test_action_homomorphism_on_free_orbit():
    K = sset.circle()
    act = eq.free_orbit(3, K)
    act.validate()
    for a in itertools.permutations(range(3)):
        for b in itertools.permutations(range(3)):
            assert act.act(eq.compose_perm(a, b)) == act.act(a).compose(act.act(b))


def test_free_orbit_moves_copies():
    K = sset.zero_sphere()
    act = eq.free_orbit(2, K)
    act.validate()
    assert eq.acts_freely_off(act, [])
    other = act.act((1, 0))
    pt = [c for c in act.space.cell_ids() if c != act.space.basepoint]
    assert len(pt) == 2
    assert other.assign[pt[0]] == ((), pt[1])


def test_trivial_action_not_free():
    K = sset.circle()
    act = eq.trivial_action(K, 2)
    act.validate()
    assert not eq.acts_freely_off(act, [])
    assert eq.acts_freely_off(act, [c for c in K.cell_ids()])


def test_sphere_action_validates():
    tower = eq.SphereTower()
    for n in [2, 3]:
        act = tower.action(n)
        assert act.validate()


def test_sphere_action_transposition_swaps_triangles():
    # on S^2 = S^1 ^ S^1 the swap exchanges the two triangles and fixes
    # the diagonal edge
    tower = eq.SphereTower()
    act = tower.action(2)
    S2 = tower.space(2)
    swap = act.act((1, 0))
    (edge,) = [c for c in S2.cells[1]]
    t1, t2 = S2.cells[2]
    assert swap.assign[edge] == ((), edge)
    assert swap.assign[t1] == ((), t2)
    assert swap.assign[t2] == ((), t1)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_flatten_unflatten_roundtrip(data):
    tower = eq.SphereTower()
    n = data.draw(st.integers(1, 3))
    space = tower.space(n)
    k = data.draw(st.integers(0, n + 1))
    form = data.draw(st.sampled_from(space.forms(k)))
    coords = tower.flatten(n, form)
    assert len(coords) == n
    assert tower.unflatten(n, coords) == form


def test_concat_map_is_simplicial():
    tower = eq.SphereTower()
    sm = sset.smash(tower.space(1), tower.space(2))
    m = tower.concat_map(sm, 1, 2)
    assert m.is_valid()
    # concatenation hits every nondegenerate simplex of S^3
    assert {m.assign[c] for c in sm.space.cell_ids() if not m.assign[c][0]} >= {
        ((), c) for c in tower.space(3).cell_ids()
    }


def test_sphere_action_orbit_sizes():
    # Sigma_3 on the six top cells of S^3 is simply transitive
    tower = eq.SphereTower()
    act = tower.action(3)
    S3 = tower.space(3)
    top = S3.cells[3]
    orbit = act.orbit(((), top[0]))
    assert orbit == {((), c) for c in top}
    # the diagonal 1-cell is fixed by everything, so only the top is free
    assert not eq.acts_freely_off(act, [])
    lower = [c for c in S3.cell_ids() if S3.dim_of[c] < 3]
    assert eq.acts_freely_off(act, lower)


def test_coset_factorization_exhaustive_small():
    for n in range(2, 5):
        for p in range(1, n):
            q = n - p
            for alpha in itertools.permutations(range(n)):
                for mu in eq.all_shuffles(p, q):
                    mu2, beta, gamma = eq.coset_factor(alpha, mu, p, q)
                    lhs = eq.compose_perm(alpha, eq.shuffle_perm(mu, p, q))
                    rhs = eq.compose_perm(
                        eq.shuffle_perm(mu2, p, q), eq.block_sum(beta, gamma)
                    )
                    assert lhs == rhs


def trivial_biaction(space, p, q):
    ident = sset.identity_map(space)
    return eq.BiAction(
        space, p, q, [ident] * max(0, p - 1), [ident] * max(0, q - 1)
    )


def test_balanced_smash_summand_count():
    import math

    K = sset.zero_sphere()
    for n in range(1, 6):
        for p in range(n + 1):
            q = n - p
            bs = eq.balanced_smash(n, p, q, trivial_biaction(K, p, q))
            assert len(bs.shuffles) == math.comb(n, p)
            assert K.n_cells(0) - 1 == 1
            nonbase = [
                c for c in bs.space.cell_ids() if c != bs.space.basepoint
            ]
            assert len(nonbase) == math.comb(n, p)
            if n <= 4:
                bs.validate()


def test_balanced_smash_degree_mismatch():
    import pytest

    with pytest.raises(ValueError):
        eq.balanced_smash(3, 1, 1, trivial_biaction(sset.zero_sphere(), 1, 1))


def test_balanced_smash_full_block_recovers_the_left_action():
    fo = eq.free_orbit(2, sset.circle())
    A = eq.BiAction(fo.space, 2, 0, fo.generators, [])
    bs = eq.balanced_smash(2, 2, 0, A)
    assert len(bs.shuffles) == 1
    w = bs.wedge
    incl = w.inclusions[0]
    for c in w.space.cell_ids():
        if c == w.space.basepoint:
            continue
        _, orig = w.part_of[c]
        want = incl.apply(fo.generators[0].apply(((), orig)))
        assert bs.generators[0].assign[c] == want


def test_balanced_smash_of_two_singletons_swaps_summands():
    core = sset.circle()
    bs = eq.balanced_smash(2, 1, 1, trivial_biaction(core, 1, 1))
    w = bs.wedge
    for c in w.space.cell_ids():
        if c == w.space.basepoint:
            continue
        idx, orig = w.part_of[c]
        assert bs.generators[0].assign[c] == w.inclusions[1 - idx].apply(
            ((), orig)
        )


def test_balanced_smash_of_a_point_is_a_point():
    bs = eq.balanced_smash(3, 1, 2, trivial_biaction(sset.point(), 1, 2))
    assert sset.is_pointlike(bs.space)


def test_balanced_smash_map_is_equivariant():
    f = sset.constant_map(sset.circle(), sset.zero_sphere())
    A = trivial_biaction(f.source, 1, 1)
    B = trivial_biaction(f.target, 1, 1)
    bsA = eq.balanced_smash(2, 1, 1, A)
    bsB = eq.balanced_smash(2, 1, 1, B)
    F = eq.balanced_smash_map(bsA, bsB, f)
    assert F.is_valid()
    assert eq.is_equivariant(bsA, bsB, F)


def test_fold_of_the_balanced_square_is_equivariant():
    tower = eq.SphereTower()
    S2 = tower.space(2)
    twist = tower.action(2).generators[0]
    bs = eq.balanced_smash(2, 1, 1, trivial_biaction(S2, 1, 1))
    w = bs.wedge
    legs = (sset.identity_map(S2), twist)
    assign = {w.space.basepoint: ((), S2.basepoint)}
    for c in w.space.cell_ids():
        if c == w.space.basepoint:
            continue
        idx, orig = w.part_of[c]
        assign[c] = legs[idx].apply(((), orig))
    fold = sset.SimplicialMap(w.space, S2, assign)
    assert fold.is_valid()
    assert eq.is_equivariant(bs, eq.sphere_action(2, tower), fold)
    # folding without the twist on the second copy is not equivariant
    naive = {w.space.basepoint: ((), S2.basepoint)}
    for c in w.space.cell_ids():
        if c == w.space.basepoint:
            continue
        naive[c] = ((), w.part_of[c][1])
    assert not eq.is_equivariant(
        bs, eq.sphere_action(2, tower), sset.SimplicialMap(w.space, S2, naive)
    )


def test_is_equivariant_between_actions_on_the_sphere():
    tower = eq.SphereTower()
    S2 = tower.space(2)
    act = tower.action(2)
    triv = eq.trivial_action(S2, 2)
    ident = sset.identity_map(S2)
    assert eq.is_equivariant(act, act, ident)
    assert eq.is_equivariant(triv, triv, ident)
    # the identity does not intertwine the swap with the trivial action
    assert not eq.is_equivariant(act, triv, ident)
    assert not eq.is_equivariant(triv, act, ident)
    # but the swap map itself does intertwine the genuine action
    assert eq.is_equivariant(act, act, act.generators[0])


def test_is_equivariant_degree_mismatch():
    import pytest

    K = sset.circle()
    with pytest.raises(ValueError):
        eq.is_equivariant(
            eq.trivial_action(K, 2), eq.trivial_action(K, 3),
            sset.identity_map(K),
        )


def test_acts_freely_off_image():
    import pytest

    fo = eq.free_orbit(2, sset.zero_sphere())
    triv = eq.trivial_action(sset.zero_sphere(), 2)
    # the identity exempts everything
    circ = sset.circle()
    assert eq.acts_freely_off_image(
        eq.trivial_action(circ, 2), sset.identity_map(circ)
    )
    pt = sset.point()
    base_in = sset.SimplicialMap(
        pt, fo.space, {pt.basepoint: ((), fo.space.basepoint)}
    )
    assert eq.acts_freely_off_image(fo, base_in)
    base_in2 = sset.SimplicialMap(
        pt, triv.space, {pt.basepoint: ((), triv.space.basepoint)}
    )
    assert not eq.acts_freely_off_image(triv, base_in2)
    collapse = sset.constant_map(sset.circle(), fo.space)
    with pytest.raises(ValueError):
        eq.acts_freely_off_image(fo, collapse)
