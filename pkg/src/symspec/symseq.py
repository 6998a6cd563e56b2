"""Truncated symmetric sequences and their tensor product.

A sequence holds one EquivariantSpace per degree 0..bound.  The tensor
product at degree n is the wedge, over p+q = n and over (p, q)-shuffles mu,
of copies of X_p ^ Y_q; a permutation moves a (p, q, mu) summand to the
(p, q, mu') summand found by factoring alpha . m_mu = m_mu' . (beta (+) gamma)
and letting beta, gamma act inside the smash factors.  Degree n of a tensor
depends only on degrees <= n of the inputs, so truncation is exact.
"""

import itertools

from . import equivariant as eq
from . import sset


class SymmetricSequence:
    def __init__(self, levels, name=None):
        for n, lv in enumerate(levels):
            assert lv.n == n, "level n needs a degree-n action"
        self._levels = list(levels)
        self.name = name

    def __repr__(self):
        return f"<seq {self.name or '?'} bound={self.bound}>"

    @property
    def bound(self):
        return len(self._levels) - 1

    def level(self, n):
        if not 0 <= n <= self.bound:
            raise IndexError(f"level {n} outside bound {self.bound}")
        return self._levels[n]

    def space(self, n):
        return self.level(n).space


def eval_level(X, n):
    """The degree-n equivariant space (evaluation at n)."""
    return X.level(n)


def truncate(X, bound):
    assert bound <= X.bound
    return SymmetricSequence([X.level(n) for n in range(bound + 1)], name=X.name)


class SequenceMap:
    def __init__(self, source, target, components):
        assert source.bound == target.bound == len(components) - 1
        self.source = source
        self.target = target
        self.components = list(components)

    def level(self, n):
        return self.components[n]

    def __eq__(self, other):
        return (
            isinstance(other, SequenceMap)
            and self.source is other.source
            and self.target is other.target
            and self.components == other.components
        )

    def __hash__(self):
        return hash(tuple(map(hash, self.components)))

    def compose(self, other):
        assert other.target is self.source
        return SequenceMap(
            other.source,
            self.target,
            [f.compose(g) for f, g in zip(self.components, other.components)],
        )

    def validate(self):
        for n, f in enumerate(self.components):
            assert f.source is self.source.space(n)
            assert f.target is self.target.space(n)
            assert f.is_valid()
            src, tgt = self.source.level(n), self.target.level(n)
            for i in range(n - 1):
                left = f.compose(src.generators[i])
                right = tgt.generators[i].compose(f)
                assert left == right, (n, i)
        return True

    def is_isomorphism(self):
        return all(f.is_isomorphism() for f in self.components)

    def is_monomorphism(self):
        return all(f.is_monomorphism() for f in self.components)


def identity_seq_map(X):
    return SequenceMap(
        X, X, [sset.identity_map(X.space(n)) for n in range(X.bound + 1)]
    )


def point_sequence(bound):
    return SymmetricSequence(
        [eq.trivial_action(sset.point(), n) for n in range(bound + 1)],
        name="pt",
    )


def free_G(n, K, bound):
    """The sequence with Sigma_n+ ^ K in degree n and points elsewhere."""
    if n > bound:
        raise IndexError(f"free degree {n} above bound {bound}")
    levels = []
    for m in range(bound + 1):
        if m == n:
            levels.append(eq.free_orbit(n, K))
        else:
            levels.append(eq.trivial_action(sset.point(), m))
    seq = SymmetricSequence(levels, name=f"G{n}({K.name})")
    seq.free_degree = n
    seq.free_K = K
    return seq


def unit_sequence(bound):
    """The tensor unit: S^0 in degree 0, points above."""
    seq = free_G(0, sset.zero_sphere(), bound)
    seq.name = "unit"
    return seq


def free_G_map(src, tgt, f):
    """G_n(f) for a map f of pointed spaces, copywise on the orbit wedge."""
    assert src.free_degree == tgt.free_degree
    n = src.free_degree
    components = []
    for m in range(src.bound + 1):
        space = src.space(m)
        if m != n:
            components.append(sset.constant_map(space, tgt.space(m)))
            continue
        lv_s, lv_t = src.level(n), tgt.level(n)
        assign = {space.basepoint: ((), tgt.space(n).basepoint)}
        for c in space.cell_ids():
            if c == space.basepoint:
                continue
            perm, orig = lv_s.cell_coords(c)
            assign[c] = lv_t.copies[perm].apply(f.apply(((), orig)))
        components.append(sset.SimplicialMap(space, tgt.space(n), assign))
    return SequenceMap(src, tgt, components)


class TensorSequence(SymmetricSequence):
    """X (x) Y with the summand bookkeeping needed to map in and out.

    parts[n] lists the (p, q, mu) summands in wedge order; smashes[(p, q)]
    is the one smash object shared by all mu-copies at that bidegree.
    """

    def __init__(self, X, Y, name=None):
        assert X.bound == Y.bound, "tensor needs equal bounds"
        self.X = X
        self.Y = Y
        N = X.bound
        self.smashes = {}
        self.parts = {}
        self.part_index = {}
        self.wedges = {}
        levels = []
        for n in range(N + 1):
            parts = []
            spaces = []
            for p in range(n + 1):
                q = n - p
                if (p, q) not in self.smashes:
                    self.smashes[(p, q)] = sset.smash(X.space(p), Y.space(q))
                for mu in eq.all_shuffles(p, q):
                    parts.append((p, q, mu))
                    spaces.append(self.smashes[(p, q)].space)
            w = sset.wedge(spaces, name=f"({X.name}(x){Y.name})_{n}")
            self.parts[n] = parts
            self.part_index[n] = {t: i for i, t in enumerate(parts)}
            self.wedges[n] = w
            gens = [self._generator(n, i) for i in range(n - 1)]
            levels.append(eq.EquivariantSpace(w.space, n, gens))
        super().__init__(levels, name=name or f"({X.name}(x){Y.name})")

    def include(self, n, p, q, mu, form):
        """Push a form of the smash X_p ^ Y_q into the mu-copy at degree n."""
        idx = self.part_index[n][(p, q, mu)]
        return self.wedges[n].inclusions[idx].apply(form)

    def summand_of(self, n, cell):
        """((p, q, mu), original smash cell) of a wedge cell; None at base."""
        loc = self.wedges[n].part_of[cell]
        if loc is None:
            return None
        idx, orig = loc
        return self.parts[n][idx], orig

    def coordinates(self, n, cell):
        """((p, q, mu), form in X_p, form in Y_q) of a non-base wedge cell."""
        (p, q, mu), orig = self.summand_of(n, cell)
        fa, fb = self.smashes[(p, q)].pair_rep[orig]
        return (p, q, mu), fa, fb

    def _generator(self, n, i):
        t = eq.transposition(n, i)
        w = self.wedges[n]
        assign = {w.space.basepoint: ((), w.space.basepoint)}
        for c in w.space.cell_ids():
            if c == w.space.basepoint:
                continue
            (p, q, mu), fa, fb = self.coordinates(n, c)
            mu2, beta, gamma = eq.coset_factor(t, mu, p, q)
            sm = self.smashes[(p, q)]
            moved = sm.form_of_pair(
                self.X.level(p).acted(beta, fa),
                self.Y.level(q).acted(gamma, fb),
            )
            assign[c] = self.include(n, p, q, mu2, moved)
        return sset.SimplicialMap(w.space, w.space, assign)


def tensor(X, Y, name=None):
    return TensorSequence(X, Y, name=name)


def tensor_map(T_src, T_tgt, f, g):
    """f (x) g: tensor(f.source, g.source) -> tensor(f.target, g.target)."""
    assert T_src.X is f.source and T_src.Y is g.source
    assert T_tgt.X is f.target and T_tgt.Y is g.target
    components = []
    for n in range(T_src.bound + 1):
        space = T_src.space(n)
        assign = {space.basepoint: ((), T_tgt.space(n).basepoint)}
        for c in space.cell_ids():
            if c == space.basepoint:
                continue
            (p, q, mu), fa, fb = T_src.coordinates(n, c)
            sm = T_tgt.smashes[(p, q)]
            moved = sm.form_of_pair(f.level(p).apply(fa), g.level(q).apply(fb))
            assign[c] = T_tgt.include(n, p, q, mu, moved)
        components.append(sset.SimplicialMap(space, T_tgt.space(n), assign))
    return SequenceMap(T_src, T_tgt, components)


def twist_iso(T_xy, T_yx):
    """The symmetry X (x) Y -> Y (x) X.

    A (p, q, mu) summand lands in the (q, p) summand named by the normal
    form of m_mu . rho_{q,p}, swapping the smash factors and letting the
    block parts act.
    """
    assert T_xy.X is T_yx.Y and T_xy.Y is T_yx.X
    X, Y = T_xy.X, T_xy.Y
    components = []
    for n in range(T_xy.bound + 1):
        space = T_xy.space(n)
        assign = {space.basepoint: ((), T_yx.space(n).basepoint)}
        for c in space.cell_ids():
            if c == space.basepoint:
                continue
            (p, q, mu), fa, fb = T_xy.coordinates(n, c)
            delta = eq.compose_perm(
                eq.shuffle_perm(mu, p, q), eq.shuffle_rho(q, p)
            )
            mu2, beta, gamma = eq.coset_factor(
                delta, tuple(range(q)), q, p
            )
            sm = T_yx.smashes[(q, p)]
            moved = sm.form_of_pair(
                Y.level(q).act(beta).apply(fb),
                X.level(p).act(gamma).apply(fa),
            )
            assign[c] = T_yx.include(n, q, p, mu2, moved)
        components.append(sset.SimplicialMap(space, T_yx.space(n), assign))
    return SequenceMap(T_xy, T_yx, components)


def assoc_iso(T_xy, T_xy_z, T_yz, T_x_yz):
    """The associator (X (x) Y) (x) Z -> X (x) (Y (x) Z).

    Both sides are wedges over the three-fold shuffle normal form; a cell's
    total coset m_nu . (m_mu (+) 1) is refactored as m_nu' . (1 (+) m_mu')
    with block remainders acting inside the smash factors.
    """
    X, Y, Z = T_xy.X, T_xy.Y, T_xy_z.Y
    assert T_xy_z.X is T_xy and T_x_yz.Y is T_yz
    assert T_x_yz.X is X and T_yz.X is Y and T_yz.Y is Z
    components = []
    for n in range(T_xy_z.bound + 1):
        space = T_xy_z.space(n)
        assign = {space.basepoint: ((), T_x_yz.space(n).basepoint)}
        for c in space.cell_ids():
            if c == space.basepoint:
                continue
            (s, r, nu), fab, fz = T_xy_z.coordinates(n, c)
            w, abcell = fab
            (p, q, mu), fx0, fy0 = T_xy.coordinates(s, abcell)
            fx = sset.word_compose(w, fx0)
            fy = sset.word_compose(w, fy0)
            delta = eq.compose_perm(
                eq.shuffle_perm(nu, s, r),
                eq.block_sum(eq.shuffle_perm(mu, p, q), eq.identity_perm(r)),
            )
            nu2, beta, rest = eq.coset_factor(
                delta, tuple(range(p)), p, q + r
            )
            mu2, gamma, eps = eq.coset_factor(
                rest, tuple(range(q)), q, r
            )
            inner = T_x_yz.Y.include(
                q + r,
                q,
                r,
                mu2,
                T_yz.smashes[(q, r)].form_of_pair(
                    Y.level(q).act(gamma).apply(fy),
                    Z.level(r).act(eps).apply(fz),
                ),
            )
            outer = T_x_yz.smashes[(p, q + r)].form_of_pair(
                X.level(p).act(beta).apply(fx), inner
            )
            assign[c] = T_x_yz.include(n, p, q + r, nu2, outer)
        components.append(sset.SimplicialMap(space, T_x_yz.space(n), assign))
    return SequenceMap(T_xy_z, T_x_yz, components)


def runit_iso(T):
    """(X (x) unit) -> X, collapsing the (n, 0) summands."""
    X, U = T.X, T.Y
    assert U.space(0).n_cells(0) == 2 and all(
        sset.is_pointlike(U.space(m)) for m in range(1, U.bound + 1)
    )
    components = []
    for n in range(T.bound + 1):
        space = T.space(n)
        assign = {space.basepoint: ((), X.space(n).basepoint)}
        for c in space.cell_ids():
            if c == space.basepoint:
                continue
            (p, q, mu), fa, fb = T.coordinates(n, c)
            if q:
                assign[c] = X.space(n).base(space.dim_of[c])
            else:
                assign[c] = fa
        components.append(sset.SimplicialMap(space, X.space(n), assign))
    return SequenceMap(T, X, components)


def runit_iso_inverse(T):
    X, U = T.X, T.Y
    pt = next(v for v in U.space(0).cells[0] if v != U.space(0).basepoint)
    components = []
    for n in range(T.bound + 1):
        mu = tuple(range(n))
        sm = T.smashes[(n, 0)]
        assign = {}
        for c in X.space(n).cell_ids():
            k = X.space(n).dim_of[c]
            moved = sm.form_of_pair(((), c), sset.base_form(pt, k))
            assign[c] = T.include(n, n, 0, mu, moved)
        components.append(sset.SimplicialMap(X.space(n), T.space(n), assign))
    return SequenceMap(X, T, components)


def lunit_iso(T):
    """(unit (x) X) -> X, collapsing the (0, n) summands."""
    U, X = T.X, T.Y
    assert U.space(0).n_cells(0) == 2 and all(
        sset.is_pointlike(U.space(m)) for m in range(1, U.bound + 1)
    )
    components = []
    for n in range(T.bound + 1):
        space = T.space(n)
        assign = {space.basepoint: ((), X.space(n).basepoint)}
        for c in space.cell_ids():
            if c == space.basepoint:
                continue
            (p, q, mu), fa, fb = T.coordinates(n, c)
            if p:
                assign[c] = X.space(n).base(space.dim_of[c])
            else:
                assign[c] = fb
        components.append(sset.SimplicialMap(space, X.space(n), assign))
    return SequenceMap(T, X, components)


def lunit_iso_inverse(T):
    U, X = T.X, T.Y
    pt = next(v for v in U.space(0).cells[0] if v != U.space(0).basepoint)
    components = []
    for n in range(T.bound + 1):
        mu = ()
        sm = T.smashes[(0, n)]
        assign = {}
        for c in X.space(n).cell_ids():
            k = X.space(n).dim_of[c]
            moved = sm.form_of_pair(sset.base_form(pt, k), ((), c))
            assign[c] = T.include(n, 0, n, mu, moved)
        components.append(sset.SimplicialMap(X.space(n), T.space(n), assign))
    return SequenceMap(X, T, components)


def free_tensor_iso(T, target, sm_kl):
    """The isomorphism G_p K (x) G_q L -> G_{p+q}(K ^ L).

    The (p, q, mu) copy holding (rho, k) ^ (tau, l) goes to the copy of
    K ^ L indexed by m_mu . (rho (+) tau).
    """
    Gp, Gq = T.X, T.Y
    p, q = Gp.free_degree, Gq.free_degree
    free = target.level(p + q)
    components = []
    for n in range(T.bound + 1):
        space = T.space(n)
        assign = {space.basepoint: ((), target.space(n).basepoint)}
        for c in space.cell_ids():
            if c == space.basepoint:
                continue
            # every other level is a wedge of smashes with a point factor
            assert n == p + q
            (a, b, mu), fa, fb = T.coordinates(n, c)
            wa, ca = fa
            wb, cb = fb
            rho, ka = Gp.level(a).cell_coords(ca)
            tau, lb = Gq.level(b).cell_coords(cb)
            pair = sm_kl.form_of_pair(
                sset.word_compose(wa, ((), ka)), sset.word_compose(wb, ((), lb))
            )
            total = eq.compose_perm(
                eq.shuffle_perm(mu, a, b), eq.block_sum(rho, tau)
            )
            assign[c] = free.copies[total].apply(pair)
        components.append(sset.SimplicialMap(space, target.space(n), assign))
    return SequenceMap(T, target, components)


class SmashSpaceSequence(SymmetricSequence):
    """X ^ K levelwise, the action diagonal and trivial on K."""

    def __init__(self, X, K):
        self.base_seq = X
        self.K = K
        self.smashes = []
        levels = []
        for n in range(X.bound + 1):
            sm = sset.smash(X.space(n), K)
            self.smashes.append(sm)
            act = X.level(n)
            gens = [
                sset.smash_map(sm, sm, g, sset.identity_map(K))
                for g in act.generators
            ]
            levels.append(eq.EquivariantSpace(sm.space, n, gens))
        super().__init__(levels, name=f"({X.name}^{K.name})")


def smash_space(X, K):
    return SmashSpaceSequence(X, K)


def smash_space_iso(S, T):
    """The natural isomorphism X ^ K -> X (x) G_0 K."""
    X, K = S.base_seq, S.K
    G = T.Y
    assert T.X is X
    copy = G.level(0).copies[()]  # K onto its wedge copy in degree 0
    components = []
    for n in range(S.bound + 1):
        space = S.space(n)
        sm_t = T.smashes[(n, 0)]
        mu = tuple(range(n))
        assign = {space.basepoint: ((), T.space(n).basepoint)}
        for c in space.cell_ids():
            if c == space.basepoint:
                continue
            fx, fk = S.smashes[n].pair_rep[c]
            moved = sm_t.form_of_pair(fx, copy.apply(fk))
            assign[c] = T.include(n, n, 0, mu, moved)
        components.append(sset.SimplicialMap(space, T.space(n), assign))
    return SequenceMap(S, T, components)
