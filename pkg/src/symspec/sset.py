"""Finite pointed simplicial sets in Eilenberg-Zilber normal form.

Only nondegenerate simplices are stored.  Every simplex is represented by a
*form* ``(word, cell)`` where ``cell`` is the id of a nondegenerate simplex
and ``word`` is a strictly decreasing tuple of degeneracy indices, read as
``s_{word[0]} s_{word[1]} ... s_{word[-1]} cell`` (rightmost applied first).
The simplicial identities then run entirely on words:

    s_i s_j = s_{j+1} s_i          (i <= j)
    d_i s_a = s_{a-1} d_i          (i < a)
    d_i s_a = id                   (i in {a, a+1})
    d_i s_a = s_a d_{i-1}          (i > a+1)

A simplex ``s_U x`` lies in the image of ``s_j`` exactly when ``j in U``.

Products are built on pairs of forms of equal dimension with disjoint words,
quotients by a congruence-closure pass over such forms.  All constructions
assign fresh ids deterministically, so equal inputs give identical outputs.
"""

import functools
import itertools
from collections import deque


# ---------------------------------------------------------------------------
# word calculus


# The word functions are pure and their argument space is tiny (strictly
# decreasing tuples over a small range), so unbounded memoization is safe
# and pays off: smash and quotient constructions hit them millions of times.


@functools.lru_cache(maxsize=None)
def degeneracy_insert(j, word):
    """Canonical word for s_j composed with s_word (word strictly decreasing)."""
    out = []
    i = 0
    while i < len(word) and j <= word[i]:
        out.append(word[i] + 1)
        i += 1
    out.append(j)
    out.extend(word[i:])
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _word_merge(outer, word):
    for j in reversed(outer):
        word = degeneracy_insert(j, word)
    return word


def word_compose(outer, form):
    """Apply the degeneracy word ``outer`` to a form, renormalizing."""
    return (_word_merge(outer, form[0]), form[1])


@functools.lru_cache(maxsize=None)
def face_word(i, word):
    """Push d_i through s_word.

    Returns ``(word2, i2)`` meaning ``d_i s_word = s_word2 d_i2``; ``i2`` is
    None when the face is absorbed by a degeneracy.
    """
    if not word:
        return (), i
    a, rest = word[0], word[1:]
    if i == a or i == a + 1:
        return rest, None
    if i < a:
        w2, i2 = face_word(i, rest)
        return degeneracy_insert(a - 1, w2), i2
    w2, i2 = face_word(i - 1, rest)
    return degeneracy_insert(a, w2), i2


def word_extract(j, word):
    """Remove s_j from a canonical word (j must occur), renumbering the rest."""
    assert j in word
    return tuple(a - 1 if a > j else a for a in word if a != j)


def base_form(basepoint, dim):
    """The dim-fold degenerate basepoint."""
    return (tuple(range(dim - 1, -1, -1)), basepoint)


class PointedSimplicialSet:
    """A finite pointed simplicial set.

    cells: dict dim -> sorted tuple of nondegenerate simplex ids
    faces: dict id -> tuple of forms, entry i being d_i of that simplex
    basepoint: id of the base vertex
    """

    def __init__(self, cells, faces, basepoint, name=None):
        self.cells = {k: tuple(sorted(v)) for k, v in sorted(cells.items()) if v}
        self.faces = faces
        self.basepoint = basepoint
        self.name = name
        self.dim_of = {}
        for k, ids in self.cells.items():
            for c in ids:
                self.dim_of[c] = k
        self._forms_by_dim = {}

    def __repr__(self):
        counts = ",".join(f"{k}:{len(v)}" for k, v in self.cells.items())
        label = self.name or "sset"
        return f"<{label} [{counts}]>"

    @property
    def dim(self):
        return max(self.cells)

    def cell_ids(self):
        for k in sorted(self.cells):
            yield from self.cells[k]

    def n_cells(self, k):
        return len(self.cells.get(k, ()))

    def form_dim(self, form):
        return len(form[0]) + self.dim_of[form[1]]

    def face(self, i, form):
        """d_i applied to a form, returned in normal form."""
        word, cell = form
        w2, i2 = face_word(i, word)
        if i2 is None:
            return (w2, cell)
        return word_compose(w2, self.faces[cell][i2])

    def degenerate(self, j, form):
        return (degeneracy_insert(j, form[0]), form[1])

    def forms(self, k):
        """All k-dimensional forms (degenerate ones included), fixed order."""
        if k not in self._forms_by_dim:
            out = []
            for p in sorted(self.cells):
                if p > k:
                    break
                for cell in self.cells[p]:
                    for comb in itertools.combinations(range(k), k - p):
                        out.append((tuple(reversed(comb)), cell))
            self._forms_by_dim[k] = tuple(out)
        return self._forms_by_dim[k]

    def base(self, dim=0):
        return base_form(self.basepoint, dim)

    def is_base(self, form):
        return form[1] == self.basepoint

    def validate(self):
        """Check the stored data satisfies the simplicial identities."""
        assert self.dim_of[self.basepoint] == 0
        for k, ids in self.cells.items():
            for c in ids:
                if k == 0:
                    assert c not in self.faces or not self.faces[c]
                    continue
                fs = self.faces[c]
                assert len(fs) == k + 1, (c, fs)
                for w, t in fs:
                    assert all(w[a] > w[a + 1] for a in range(len(w) - 1))
                    assert len(w) + self.dim_of[t] == k - 1
        for k, ids in self.cells.items():
            if k < 2:
                continue
            for c in ids:
                form = ((), c)
                for j in range(k + 1):
                    for i in range(j):
                        left = self.face(i, self.face(j, form))
                        right = self.face(j - 1, self.face(i, form))
                        assert left == right, (c, i, j, left, right)
        return True


def is_pointlike(space):
    return space.dim == 0 and space.n_cells(0) == 1


# ---------------------------------------------------------------------------
# maps


class SimplicialMap:
    """A pointed simplicial map, stored on nondegenerate simplices.

    assign: dict source cell id -> form in target
    """

    def __init__(self, source, target, assign):
        self.source = source
        self.target = target
        self.assign = dict(assign)

    def __repr__(self):
        return f"<map {self.source!r} -> {self.target!r}>"

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialMap)
            and self.source is other.source
            and self.target is other.target
            and self.assign == other.assign
        )

    def __hash__(self):
        return hash((id(self.source), id(self.target), tuple(sorted(self.assign.items()))))

    def apply(self, form):
        word, cell = form
        return word_compose(word, self.assign[cell])

    def compose(self, other):
        """self after other."""
        assert other.target is self.source
        assign = {c: self.apply(f) for c, f in other.assign.items()}
        return SimplicialMap(other.source, self.target, assign)

    def is_valid(self):
        if self.assign[self.source.basepoint] != ((), self.target.basepoint):
            return False
        for c in self.source.cell_ids():
            k = self.source.dim_of[c]
            f = self.assign[c]
            if self.target.form_dim(f) != k:
                return False
            for i in range(k + 1 if k else 0):
                if self.apply(self.source.face(i, ((), c))) != self.target.face(i, f):
                    return False
        return True

    def is_monomorphism(self):
        seen = set()
        for c in self.source.cell_ids():
            f = self.assign[c]
            if f[0]:
                # a nondegenerate simplex hitting a degenerate one kills injectivity
                return False
            if f in seen:
                return False
            seen.add(f)
        return True

    def is_isomorphism(self):
        if not self.is_monomorphism():
            return False
        return all(
            self.source.n_cells(k) == self.target.n_cells(k)
            for k in set(self.source.cells) | set(self.target.cells)
        )

    def inverse(self):
        assert self.is_isomorphism()
        back = {f[1]: ((), c) for c, f in self.assign.items()}
        return SimplicialMap(self.target, self.source, back)


def identity_map(space):
    return SimplicialMap(space, space, {c: ((), c) for c in space.cell_ids()})


def constant_map(source, target):
    return SimplicialMap(
        source, target, {c: target.base(source.dim_of[c]) for c in source.cell_ids()}
    )


# ---------------------------------------------------------------------------
# standard spaces


def point():
    return PointedSimplicialSet({0: (0,)}, {}, 0, name="pt")


def _subset_spaces(n, keep, name):
    # cells of a subcomplex of Delta[n]_+: nonempty vertex subsets passing `keep`,
    # plus a disjoint basepoint (id 0)
    subsets = []
    for k in range(n + 1):
        for comb in itertools.combinations(range(n + 1), k + 1):
            if keep(comb):
                subsets.append(comb)
    ids = {comb: i + 1 for i, comb in enumerate(subsets)}
    cells = {0: [0]}
    faces = {}
    for comb, c in ids.items():
        k = len(comb) - 1
        cells.setdefault(k, []).append(c)
        if k:
            faces[c] = tuple(
                ((), ids[comb[:i] + comb[i + 1 :]]) for i in range(k + 1)
            )
    space = PointedSimplicialSet(cells, faces, 0, name=name)
    space.subset_ids = ids
    return space


def subset_inclusion(A, B):
    """Canonical inclusion between subcomplexes of the same Delta[n]_+."""
    assign = {A.basepoint: ((), B.basepoint)}
    for comb, c in A.subset_ids.items():
        assign[c] = ((), B.subset_ids[comb])
    return SimplicialMap(A, B, assign)


def delta_plus(n):
    """The standard n-simplex with a disjoint basepoint adjoined."""
    return _subset_spaces(n, lambda comb: True, f"Delta[{n}]+")


def boundary_plus(n):
    """Boundary of the n-simplex, disjoint basepoint adjoined.

    For n = 0 the boundary is empty, so the result is just the basepoint.
    """
    return _subset_spaces(n, lambda comb: len(comb) <= n, f"dDelta[{n}]+")


def horn_plus(n, i):
    """The horn missing the face opposite vertex i, disjoint basepoint adjoined."""
    assert n >= 1 and 0 <= i <= n
    full = tuple(range(n + 1))
    opp = full[:i] + full[i + 1 :]
    return _subset_spaces(
        n, lambda comb: comb != full and comb != opp, f"Horn[{n},{i}]+"
    )


def interval_plus():
    return delta_plus(1)


def sphere(n):
    """The n-fold smash power of the circle; sphere(0) is Delta[0]_+."""
    assert n >= 0
    if n == 0:
        return zero_sphere()
    space = circle()
    for m in range(2, n + 1):
        space = smash(circle(), space, name=f"S{m}").space
    return space


def zero_sphere():
    """Two points, one of them the base."""
    return PointedSimplicialSet({0: (0, 1)}, {}, 0, name="S0")


def circle():
    """Delta[1] with both ends at the basepoint: one vertex, one edge."""
    return PointedSimplicialSet(
        {0: (0,), 1: (1,)}, {1: (((), 0), ((), 0))}, 0, name="S1"
    )


# ---------------------------------------------------------------------------
# product


def pair_normalize(fa, fb):
    """Normal form of a pair of forms: extract shared degeneracies outward.

    Returns ``(outer_word, (fa', fb'))`` with the residual words disjoint.
    """
    (wa, ta), (wb, tb) = fa, fb
    outer = []
    common = set(wa) & set(wb)
    while common:
        j = max(common)
        wa = word_extract(j, wa)
        wb = word_extract(j, wb)
        outer.append(j)
        common = set(wa) & set(wb)
    acc = ()
    for j in reversed(outer):
        acc = degeneracy_insert(j, acc)
    return acc, ((wa, ta), (wb, tb))


class ProductResult:
    """A product space together with its pair bookkeeping."""

    def __init__(self, space, proj1, proj2, pair_of, id_of):
        self.space = space
        self.proj1 = proj1
        self.proj2 = proj2
        self.pair_of = pair_of  # product cell id -> (form in A, form in B)
        self.id_of = id_of  # disjoint-word pair -> product cell id

    def pair_form(self, fa, fb):
        """The product form with the given coordinate forms (equal dims)."""
        outer, key = pair_normalize(fa, fb)
        return word_compose(outer, ((), self.id_of[key]))


def product(A, B):
    """Categorical product of pointed simplicial sets, with projections."""
    id_of = {}
    pair_of = {}
    cells = {}
    faces = {}
    fresh = itertools.count()
    top = A.dim + B.dim
    b_by_dim = [(q, tuple(B.cells[q])) for q in sorted(B.cells)]
    # Enumerate only the jointly nondegenerate pairs: for each A-form pick
    # the B-word directly from the letters A leaves free.  Order matches the
    # filtered forms(k) x forms(k) sweep, so ids are reproducible.
    for k in range(top + 1):
        for fa in A.forms(k):
            free = [j for j in range(k) if j not in set(fa[0])]
            for q, ids in b_by_dim:
                if q > k:
                    break
                need = k - q
                if need > len(free):
                    continue
                for y in ids:
                    for comb in itertools.combinations(free, need):
                        fb = (tuple(reversed(comb)), y)
                        c = next(fresh)
                        id_of[(fa, fb)] = c
                        pair_of[c] = (fa, fb)
                        cells.setdefault(k, []).append(c)
    bp = id_of[(((), A.basepoint), ((), B.basepoint))]
    space = PointedSimplicialSet(cells, faces, bp, name=f"({A.name}x{B.name})")
    result = ProductResult(space, None, None, pair_of, id_of)
    for k in sorted(cells):
        if k == 0:
            continue
        for c in cells[k]:
            fa, fb = pair_of[c]
            entry = []
            for i in range(k + 1):
                entry.append(result.pair_form(A.face(i, fa), B.face(i, fb)))
            faces[c] = tuple(entry)
    # faces dict is shared with the space; rebuild caches that care about it
    result.proj1 = SimplicialMap(
        space, A, {c: pair_of[c][0] for c in space.cell_ids()}
    )
    result.proj2 = SimplicialMap(
        space, B, {c: pair_of[c][1] for c in space.cell_ids()}
    )
    return result


# ---------------------------------------------------------------------------
# wedge


class WedgeResult:
    def __init__(self, space, inclusions, part_of):
        self.space = space
        self.inclusions = inclusions
        self.part_of = part_of  # wedge cell id -> (part index, original id)


def wedge(parts, name=None):
    """Wedge of pointed simplicial sets along their basepoints."""
    cells = {0: [0]}
    faces = {}
    part_of = {0: None}
    rename = []
    fresh = itertools.count(1)
    for idx, X in enumerate(parts):
        table = {X.basepoint: 0}
        for c in X.cell_ids():
            if c == X.basepoint:
                continue
            table[c] = next(fresh)
            part_of[table[c]] = (idx, c)
            cells.setdefault(X.dim_of[c], []).append(table[c])
        rename.append(table)
    for idx, X in enumerate(parts):
        table = rename[idx]
        for c in X.cell_ids():
            if c == X.basepoint or X.dim_of[c] == 0:
                continue
            faces[table[c]] = tuple((w, table[t]) for w, t in X.faces[c])
    space = PointedSimplicialSet(
        cells, faces, 0, name=name or "v".join(X.name or "?" for X in parts)
    )
    inclusions = [
        SimplicialMap(X, space, {c: ((), rename[idx][c]) for c in X.cell_ids()})
        for idx, X in enumerate(parts)
    ]
    return WedgeResult(space, inclusions, part_of)


# ---------------------------------------------------------------------------
# quotient by a congruence


class QuotientResult:
    def __init__(self, space, projection, class_of):
        self.space = space
        self.projection = projection
        self.class_of = class_of  # old cell id -> form over new ids


def quotient_by_pairs(X, pairs, name=None):
    """Identify the listed pairs of forms and close under the face maps.

    Runs a worklist congruence closure over normal forms.  Two nondegenerate
    simplices merge to the smaller id; a nondegenerate simplex equated with a
    degenerate form is redirected onto it (always toward lower dimension, so
    redirects cannot cycle).  A pair degenerate on both sides with different
    words carries no direct rewrite; its face pairs are pushed instead and the
    pair is retried once they have been absorbed, which is enough because the
    congruence is generated by face-closure (degeneracy-closure is automatic
    on normal forms).
    """
    rep = {c: ((), c) for c in X.cell_ids()}

    def resolve_cell(c):
        w, t = rep[c]
        if not w and t == c:
            return rep[c]
        out = word_compose(w, resolve_cell(t))
        rep[c] = out
        return out

    def resolve(form):
        return word_compose(form[0], resolve_cell(form[1]))

    for a, b in pairs:
        assert X.form_dim(a) == X.form_dim(b), (a, b)
    queue = deque(pairs)
    queued = set()
    idle = 0

    def push(a, b):
        key = (a, b) if a <= b else (b, a)
        if key not in queued:
            queued.add(key)
            queue.append(key)

    while queue:
        pair = queue.popleft()
        queued.discard(pair)
        a, b = resolve(pair[0]), resolve(pair[1])
        if a == b:
            continue
        (wa, ta), (wb, tb) = a, b
        if wa == wb:
            # same word both sides: degeneracies are injective, merge targets
            keep, drop = (ta, tb) if ta < tb else (tb, ta)
            rep[drop] = ((), keep)
            idle = 0
            if X.dim_of[drop]:
                for i in range(X.dim_of[drop] + 1):
                    push(X.face(i, ((), drop)), X.face(i, ((), keep)))
        elif not wa or not wb:
            if wa:
                (wa, ta), b = (wb, tb), a
            rep[ta] = b
            idle = 0
            for i in range(X.dim_of[ta] + 1):
                push(X.face(i, ((), ta)), X.face(i, b))
        else:
            k = len(wa) + X.dim_of[ta]
            for i in range(k + 1):
                push(X.face(i, a), X.face(i, b))
            push(a, b)
            idle += 1
            if idle > 10 * (len(queue) + len(rep)) + 100:
                raise RuntimeError("quotient closure stalled")

    live = [c for c in X.cell_ids() if rep[c] == ((), c)]
    live.sort(key=lambda c: (X.dim_of[c], c))
    new_id = {c: i for i, c in enumerate(live)}
    cells = {}
    for c in live:
        cells.setdefault(X.dim_of[c], []).append(new_id[c])

    def to_new(form):
        w, t = resolve(form)
        return (w, new_id[t])

    faces = {}
    for c in live:
        k = X.dim_of[c]
        if k:
            faces[new_id[c]] = tuple(to_new(X.face(i, ((), c))) for i in range(k + 1))
    base = to_new(((), X.basepoint))
    assert not base[0]
    space = PointedSimplicialSet(cells, faces, base[1], name=name or f"{X.name}/~")
    class_of = {c: to_new(((), c)) for c in X.cell_ids()}
    projection = SimplicialMap(X, space, class_of)
    space.validate()
    return QuotientResult(space, projection, class_of)


def quotient(X, inclusion, name=None):
    """Collapse the image of a monomorphism to the basepoint."""
    assert inclusion.target is X and inclusion.is_monomorphism()
    A = inclusion.source
    pairs = []
    for c in A.cell_ids():
        k = A.dim_of[c]
        pairs.append((inclusion.assign[c], X.base(k)))
    return quotient_by_pairs(X, pairs, name=name)


# ---------------------------------------------------------------------------
# smash


class SmashResult:
    """Smash product with the pair bookkeeping needed to map out of it."""

    def __init__(self, A, B, prod, quot):
        self.A = A
        self.B = B
        self.prod = prod
        self.quot = quot
        self.space = quot.space
        self._classes = {}
        # representative coordinate pair for each nondegenerate smash cell
        self.pair_rep = {}
        for c in prod.space.cell_ids():
            form = quot.class_of[c]
            if not form[0] and form[1] not in self.pair_rep:
                self.pair_rep[form[1]] = prod.pair_of[c]

    def form_of_pair(self, fa, fb):
        """Smash class of a coordinate pair (forms of equal dimension)."""
        key = (fa, fb)
        hit = self._classes.get(key)
        if hit is not None:
            return hit
        if fa[1] == self.A.basepoint or fb[1] == self.B.basepoint:
            out = self.space.base(self.A.form_dim(fa))
        else:
            out = self.quot.projection.apply(self.prod.pair_form(fa, fb))
        self._classes[key] = out
        return out


def smash(A, B, name=None):
    """Smash product, carrying the quotient map from the product."""
    prod = product(A, B)
    pairs = []
    for c in prod.space.cell_ids():
        fa, fb = prod.pair_of[c]
        if fa[1] == A.basepoint or fb[1] == B.basepoint:
            k = prod.space.dim_of[c]
            pairs.append((((), c), prod.space.base(k)))
    quot = quotient_by_pairs(
        prod.space, pairs, name=name or f"({A.name}^{B.name})"
    )
    return SmashResult(A, B, prod, quot)


def smash_map(sm_src, sm_tgt, f, g):
    """f ^ g between smash products; f: A -> A', g: B -> B'."""
    assert sm_src.A is f.source and sm_tgt.A is f.target
    assert sm_src.B is g.source and sm_tgt.B is g.target
    assign = {}
    for c in sm_src.space.cell_ids():
        fa, fb = sm_src.pair_rep[c]
        assign[c] = sm_tgt.form_of_pair(f.apply(fa), g.apply(fb))
    return SimplicialMap(sm_src.space, sm_tgt.space, assign)


def smash_swap(sm_ab, sm_ba):
    """The symmetry A ^ B -> B ^ A."""
    assign = {}
    for c in sm_ab.space.cell_ids():
        fa, fb = sm_ab.pair_rep[c]
        assign[c] = sm_ba.form_of_pair(fb, fa)
    return SimplicialMap(sm_ab.space, sm_ba.space, assign)


def smash_assoc(sm_ab, sm_ab_c, sm_bc, sm_a_bc):
    """The associator (A ^ B) ^ C -> A ^ (B ^ C)."""
    assign = {}
    for c in sm_ab_c.space.cell_ids():
        fab, fc = sm_ab_c.pair_rep[c]
        w, t = fab
        fa0, fb0 = sm_ab.pair_rep[t]
        fa = word_compose(w, fa0)
        fb = word_compose(w, fb0)
        inner = sm_bc.form_of_pair(fb, fc)
        assign[c] = sm_a_bc.form_of_pair(fa, inner)
    return SimplicialMap(sm_ab_c.space, sm_a_bc.space, assign)


def _sole_point(space):
    # the unique non-base vertex of a two-point space
    return next(v for v in space.cells[0] if v != space.basepoint)


def smash_lunit(sm):
    """For S^0 ^ B: the isomorphism to B and its inverse."""
    B = sm.B
    to_B = SimplicialMap(
        sm.space, B, {c: sm.pair_rep[c][1] for c in sm.space.cell_ids()}
    )
    pt = _sole_point(sm.A)
    back = {}
    for c in B.cell_ids():
        k = B.dim_of[c]
        back[c] = sm.form_of_pair(base_form(pt, k), ((), c))
    return to_B, SimplicialMap(B, sm.space, back)


def smash_runit(sm):
    """For B ^ S^0: the isomorphism to B and its inverse."""
    B = sm.A
    to_B = SimplicialMap(
        sm.space, B, {c: sm.pair_rep[c][0] for c in sm.space.cell_ids()}
    )
    pt = _sole_point(sm.B)
    back = {}
    for c in B.cell_ids():
        k = B.dim_of[c]
        back[c] = sm.form_of_pair(((), c), base_form(pt, k))
    return to_B, SimplicialMap(B, sm.space, back)


# ---------------------------------------------------------------------------
# pushout


class PushoutResult:
    def __init__(self, space, leg1, leg2, collapse):
        self.space = space
        self.leg1 = leg1  # from f.target
        self.leg2 = leg2  # from g.target
        self.collapse = collapse  # from the wedge


def pushout(f, g, name=None):
    """Pushout of B <-f- A -g-> C in pointed simplicial sets."""
    assert f.source is g.source
    A = f.source
    w = wedge([f.target, g.target], name="pw")
    pairs = []
    for c in A.cell_ids():
        pairs.append(
            (w.inclusions[0].apply(f.assign[c]), w.inclusions[1].apply(g.assign[c]))
        )
    quot = quotient_by_pairs(w.space, pairs, name=name or "pushout")
    leg1 = quot.projection.compose(w.inclusions[0])
    leg2 = quot.projection.compose(w.inclusions[1])
    res = PushoutResult(quot.space, leg1, leg2, quot.projection)
    res.wedge = w
    return res


# ---------------------------------------------------------------------------
# map enumeration


def all_maps(A, X, budget=None):
    """All pointed simplicial maps A -> X, in a fixed deterministic order.

    Backtracking over nondegenerate simplices of A in (dim, id) order; a
    candidate form must match the images of all previously assigned faces.
    ``budget`` bounds the number of candidate extensions tried; when it runs
    out a RuntimeError is raised.
    """
    order = [c for c in A.cell_ids()]
    order.sort(key=lambda c: (A.dim_of[c], c))
    tried = [0]
    out = []
    assign = {}

    def candidates(c):
        k = A.dim_of[c]
        if c == A.basepoint:
            return [((), X.basepoint)]
        return list(X.forms(k))

    def consistent(c, form):
        k = A.dim_of[c]
        for i in range(k + 1 if k else 0):
            fw, ft = A.face(i, ((), c))
            if ft in assign:
                img = word_compose(fw, assign[ft])
                if X.face(i, form) != img:
                    return False
        return True

    def rec(pos):
        if pos == len(order):
            out.append(SimplicialMap(A, X, dict(assign)))
            return
        c = order[pos]
        for form in candidates(c):
            if budget is not None:
                tried[0] += 1
                if tried[0] > budget:
                    raise RuntimeError("map enumeration budget exhausted")
            if consistent(c, form):
                assign[c] = form
                rec(pos + 1)
                del assign[c]

    rec(0)
    return out


def find_isomorphism(A, X):
    """An isomorphism A -> X if one exists, else None.

    Isomorphisms send nondegenerate simplices to nondegenerate simplices
    bijectively in each dimension, which cuts the search to permutations.
    """
    dims = set(A.cells) | set(X.cells)
    if any(A.n_cells(k) != X.n_cells(k) for k in dims):
        return None
    order = [c for c in A.cell_ids()]
    order.sort(key=lambda c: (A.dim_of[c], c))
    assign = {}
    used = set()

    def consistent(c, form):
        k = A.dim_of[c]
        for i in range(k + 1 if k else 0):
            fw, ft = A.face(i, ((), c))
            if ft in assign:
                if X.face(i, form) != word_compose(fw, assign[ft]):
                    return False
        return True

    def rec(pos):
        if pos == len(order):
            return SimplicialMap(A, X, dict(assign))
        c = order[pos]
        if c == A.basepoint:
            cands = [X.basepoint]
        else:
            cands = [t for t in X.cells[A.dim_of[c]] if t != X.basepoint]
        for t in cands:
            if t in used:
                continue
            form = ((), t)
            if consistent(c, form):
                assign[c] = form
                used.add(t)
                found = rec(pos + 1)
                if found is not None:
                    return found
                del assign[c]
                used.remove(t)
        return None

    return rec(0)
