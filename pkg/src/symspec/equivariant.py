"""Symmetric group actions on pointed simplicial sets.

Permutations are tuples of 0-indexed images: ``perm[i]`` is where letter i
goes, and composition is function composition, ``compose(a, b)(i) = a[b[i]]``.
An action is stored on the Coxeter generators (i, i+1) only; the map for an
arbitrary permutation is assembled along a bubble-sort reduced word, so
storing and validating the generators pins the whole action.
"""

import functools
import itertools

from . import sset


# ---------------------------------------------------------------------------
# permutations as image tuples


def identity_perm(n):
    return tuple(range(n))


def compose_perm(a, b):
    assert len(a) == len(b)
    return tuple(a[b[i]] for i in range(len(b)))


def inverse_perm(a):
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v] = i
    return tuple(out)


def transposition(n, i):
    """The adjacent transposition (i, i+1) in Sigma_n."""
    out = list(range(n))
    out[i], out[i + 1] = out[i + 1], out[i]
    return tuple(out)


def perm_sign(a):
    inv = sum(
        1
        for i in range(len(a))
        for j in range(i + 1, len(a))
        if a[i] > a[j]
    )
    return -1 if inv % 2 else 1


def reduced_word(perm):
    """Adjacent-transposition indices with perm = t[w[-1]] ... t[w[0]]."""
    w = list(perm)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                word.append(i)
                changed = True
    return word


def block_embed(a, n):
    """Sigma_p included in Sigma_n on the first p letters."""
    assert len(a) <= n
    return tuple(a) + tuple(range(len(a), n))


def block_sum(a, b):
    """a acting on the first block, b on the second."""
    p = len(a)
    return tuple(a) + tuple(p + v for v in b)


def shuffle_rho(q, p):
    """The block rotation in Sigma_{q+p} moving the first q letters past p."""
    return tuple(i + p for i in range(q)) + tuple(range(p))


def all_shuffles(p, q):
    """(p, q)-shuffles as sorted p-subsets of range(p + q), sorted."""
    return list(itertools.combinations(range(p + q), p))


def shuffle_perm(mu, p, q):
    """The minimal coset representative sending the first block onto mu."""
    rest = [i for i in range(p + q) if i not in mu]
    return tuple(mu) + tuple(rest)


# Cached: the argument space is bounded by the symmetric groups in play, and
# balanced products refactor the same cosets once per simplex.
@functools.lru_cache(maxsize=None)
def coset_factor(alpha, mu, p, q):
    """Factor alpha . m_mu as m_mu2 . (beta (+) gamma).

    Returns (mu2, beta, gamma) with beta in Sigma_p, gamma in Sigma_q.
    """
    delta = compose_perm(alpha, shuffle_perm(mu, p, q))
    mu2 = tuple(sorted(delta[:p]))
    m2inv = inverse_perm(shuffle_perm(mu2, p, q))
    rho = compose_perm(m2inv, delta)
    beta = rho[:p]
    gamma = tuple(v - p for v in rho[p:])
    assert all(v < p for v in beta) and all(0 <= v < q for v in gamma)
    return mu2, beta, gamma


# ---------------------------------------------------------------------------
# actions


class EquivariantSpace:
    """A pointed simplicial set with a Sigma_n action given on generators.

    generators[i] is the map for the transposition (i, i+1); for n <= 1 the
    list is empty.
    """

    def __init__(self, space, n, generators):
        assert len(generators) == max(n - 1, 0)
        self.space = space
        self.n = n
        self.generators = list(generators)
        self._acts = {identity_perm(n): sset.identity_map(space)}
        self._acted = {}

    def __repr__(self):
        return f"<Sigma_{self.n} on {self.space!r}>"

    def act(self, perm):
        """The simplicial map of a permutation, assembled from generators."""
        assert len(perm) == self.n
        if perm not in self._acts:
            out = sset.identity_map(self.space)
            for i in reduced_word(perm):
                out = self.generators[i].compose(out)
            self._acts[perm] = out
        return self._acts[perm]

    def acted(self, perm, form):
        """act(perm) applied to one form, memoized; hot in tensor assembly."""
        key = (perm, form)
        hit = self._acted.get(key)
        if hit is None:
            hit = self.act(perm).apply(form)
            self._acted[key] = hit
        return hit

    def validate(self):
        """Generator sanity plus the Coxeter relations, as map equalities."""
        ident = sset.identity_map(self.space)
        for g in self.generators:
            assert g.source is self.space and g.target is self.space
            assert g.is_valid()
            assert g.compose(g) == ident
        for i, g in enumerate(self.generators):
            for j in range(i + 2, len(self.generators)):
                h = self.generators[j]
                assert g.compose(h) == h.compose(g)
        for i in range(len(self.generators) - 1):
            g, h = self.generators[i], self.generators[i + 1]
            assert g.compose(h).compose(g) == h.compose(g).compose(h)
        return True

    def orbit(self, form):
        return {self.act(p).apply(form) for p in itertools.permutations(range(self.n))}


def trivial_action(space, n):
    ident = sset.identity_map(space)
    return EquivariantSpace(space, n, [ident] * max(n - 1, 0))


class FreeOrbitSpace(EquivariantSpace):
    """Sigma_n+ ^ K: one copy of K per permutation, permuted by left action.

    copies[perm] is the inclusion of K onto that copy.
    """

    def __init__(self, n, K):
        perms = sorted(itertools.permutations(range(n)))
        w = sset.wedge([K] * len(perms), name=f"Sigma_{n}+^{K.name}")
        self.K = K
        self.perm_index = {p: i for i, p in enumerate(perms)}
        self.copies = {p: w.inclusions[i] for i, p in enumerate(perms)}
        self.wedge = w
        gens = []
        for i in range(n - 1):
            t = transposition(n, i)
            assign = {}
            for c in w.space.cell_ids():
                if w.part_of[c] is None:
                    assign[c] = ((), w.space.basepoint)
                else:
                    idx, orig = w.part_of[c]
                    target = compose_perm(t, perms[idx])
                    assign[c] = self.copies[target].assign[orig]
            gens.append(sset.SimplicialMap(w.space, w.space, assign))
        super().__init__(w.space, n, gens)

    def cell_coords(self, c):
        """(perm, original K cell) of a wedge cell, None at the basepoint."""
        loc = self.wedge.part_of[c]
        if loc is None:
            return None
        idx, orig = loc
        return sorted(self.perm_index)[idx], orig


def free_orbit(n, K):
    return FreeOrbitSpace(n, K)


# ---------------------------------------------------------------------------
# spheres with coordinate bookkeeping


class SphereTower:
    """S^n built as S^1 ^ S^(n-1), sharing one circle across all levels.

    flatten/unflatten convert between a form over S^n and an n-tuple of
    forms over the circle, which makes coordinate permutations and the
    concatenation pairings S^p ^ S^q -> S^(p+q) one-liners.
    """

    def __init__(self):
        self.s1 = sset.circle()
        self.spaces = {0: sset.zero_sphere(), 1: self.s1}
        self.smashes = {}
        self._actions = {}

    def space(self, n):
        while n not in self.spaces:
            m = 1 + max(self.spaces)
            sm = sset.smash(self.s1, self.spaces[m - 1], name=f"S{m}")
            self.smashes[m] = sm
            self.spaces[m] = sm.space
        return self.spaces[n]

    def flatten(self, n, form):
        """Circle-coordinate forms of a simplex of S^n (n >= 1)."""
        if n == 1:
            return (form,)
        self.space(n)
        w, c = form
        f1, frest = self.smashes[n].pair_rep[c]
        return (sset.word_compose(w, f1),) + self.flatten(
            n - 1, sset.word_compose(w, frest)
        )

    def unflatten(self, n, coords):
        assert len(coords) == n and n >= 1
        if n == 1:
            return coords[0]
        self.space(n)
        return self.smashes[n].form_of_pair(
            coords[0], self.unflatten(n - 1, coords[1:])
        )

    def action(self, n):
        """Sigma_n permuting the smash coordinates of S^n."""
        if n not in self._actions:
            space = self.space(n)
            gens = []
            for i in range(n - 1):
                assign = {}
                for c in space.cell_ids():
                    coords = list(self.flatten(n, ((), c)))
                    coords[i], coords[i + 1] = coords[i + 1], coords[i]
                    assign[c] = self.unflatten(n, coords)
                gens.append(sset.SimplicialMap(space, space, assign))
            self._actions[n] = EquivariantSpace(space, n, gens)
        return self._actions[n]

    def concat_map(self, sm, p, q):
        """S^p ^ S^q -> S^(p+q) by coordinate concatenation; p, q >= 1."""
        assert sm.A is self.space(p) and sm.B is self.space(q)
        target = self.space(p + q)
        assign = {}
        for c in sm.space.cell_ids():
            fp, fq = sm.pair_rep[c]
            if fp[1] == sm.A.basepoint or fq[1] == sm.B.basepoint:
                assign[c] = target.base(sm.space.dim_of[c])
            else:
                coords = self.flatten(p, fp) + self.flatten(q, fq)
                assign[c] = self.unflatten(p + q, coords)
        return sset.SimplicialMap(sm.space, target, assign)


def sphere_action(n, tower=None):
    """S^n with Sigma_n permuting the smash coordinates."""
    return (tower or SphereTower()).action(n)


class BiAction:
    """A pointed simplicial set with commuting Sigma_p and Sigma_q actions."""

    def __init__(self, space, p, q, left_gens, right_gens):
        self.space = space
        self.p = p
        self.q = q
        self.left = EquivariantSpace(space, p, left_gens)
        self.right = EquivariantSpace(space, q, right_gens)

    def act(self, beta, gamma):
        return self.left.act(beta).compose(self.right.act(gamma))


def balanced_smash(n, p, q, A):
    """(Sigma_n)+ ^_{Sigma_p x Sigma_q} A, a wedge over the (p, q)-shuffles.

    A generator t sends the mu-copy of z to the mu'-copy of (beta x gamma)z,
    where t . m_mu = m_mu' . (beta (+) gamma).
    """
    if p + q != n:
        raise ValueError(f"balanced smash needs p+q=n, got {p}+{q} != {n}")
    assert A.p == p and A.q == q
    shuffles = all_shuffles(p, q)
    w = sset.wedge([A.space] * len(shuffles), name=f"bal({A.space.name})")
    index = {mu: i for i, mu in enumerate(shuffles)}
    gens = []
    for i in range(n - 1):
        t = transposition(n, i)
        assign = {w.space.basepoint: ((), w.space.basepoint)}
        for c in w.space.cell_ids():
            if c == w.space.basepoint:
                continue
            idx, orig = w.part_of[c]
            mu2, beta, gamma = coset_factor(t, shuffles[idx], p, q)
            moved = A.act(beta, gamma).apply(((), orig))
            assign[c] = w.inclusions[index[mu2]].apply(moved)
        gens.append(sset.SimplicialMap(w.space, w.space, assign))
    out = EquivariantSpace(w.space, n, gens)
    out.wedge = w
    out.shuffles = shuffles
    return out


def balanced_smash_map(bs_src, bs_tgt, f):
    """The copywise map of balanced smashes induced by a map of the cores."""
    w_s, w_t = bs_src.wedge, bs_tgt.wedge
    assert bs_src.shuffles == bs_tgt.shuffles
    assign = {w_s.space.basepoint: ((), w_t.space.basepoint)}
    for c in w_s.space.cell_ids():
        if c == w_s.space.basepoint:
            continue
        idx, orig = w_s.part_of[c]
        assign[c] = w_t.inclusions[idx].apply(f.apply(((), orig)))
    return sset.SimplicialMap(w_s.space, w_t.space, assign)


def is_equivariant(src, tgt, f):
    """True iff f intertwines the generator actions; degrees must match."""
    if src.n != tgt.n:
        raise ValueError("degree mismatch")
    assert f.source is src.space and f.target is tgt.space
    return all(
        f.compose(g) == h.compose(f)
        for g, h in zip(src.generators, tgt.generators)
    )


def acts_freely_off_image(action, f):
    """Freeness of the action away from the image of a monomorphism."""
    if not f.is_monomorphism():
        raise ValueError("freeness check needs a monomorphism")
    assert f.target is action.space
    return acts_freely_off(action, {form[1] for form in f.assign.values()})


def acts_freely_off(action, image_cells):
    """True when every nontrivial permutation moves every cell off the set.

    image_cells: the nondegenerate cell ids exempt from the freeness demand
    (the basepoint is always exempt).
    """
    space = action.space
    exempt = set(image_cells) | {space.basepoint}
    for perm in itertools.permutations(range(action.n)):
        if perm == identity_perm(action.n):
            continue
        m = action.act(perm)
        for c in space.cell_ids():
            if c in exempt:
                continue
            if m.assign[c] == ((), c):
                return False
    return True
