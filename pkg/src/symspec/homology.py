"""Exact integral invariants: normalized chains, Smith form, stable colimits.

Everything here is arbitrary-precision integer linear algebra.  Boundary
matrices are kept column-sparse (dict row -> coefficient per generator);
kernels come from an integer column reduction, torsion from Smith normal
form of the boundary written in kernel coordinates.
"""

import itertools
from fractions import Fraction

from . import sset


# ---------------------------------------------------------------------------
# dense integer matrices (lists of rows)


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    n = len(B)
    out = []
    for row in A:
        acc = [0] * len(B[0])
        for t, a in enumerate(row):
            if a:
                brow = B[t]
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def mat_eq(A, B):
    return A == B


class SNFResult:
    """D = U . M . V with U, V unimodular, D diagonal, d_i >= 0, d_i | d_{i+1}."""

    def __init__(self, D, U, V, U_inv, V_inv):
        self.D = D
        self.U = U
        self.V = V
        self.U_inv = U_inv
        self.V_inv = V_inv

    @property
    def diagonal(self):
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(M):
    """Smith normal form over the integers.

    Pivot rule: smallest nonzero absolute value, earliest (row, column)
    position on ties, which makes the reduction deterministic.
    """
    A = [[int(v) for v in row] for row in M]
    m = len(A)
    n = len(A[0]) if A else 0
    U = identity_matrix(m)
    U_inv = identity_matrix(m)
    V = identity_matrix(n)
    V_inv = identity_matrix(n)

    def row_swap(r1, r2):
        A[r1], A[r2] = A[r2], A[r1]
        U[r1], U[r2] = U[r2], U[r1]
        for row in U_inv:
            row[r1], row[r2] = row[r2], row[r1]

    def row_add(r1, r2, q):
        # row r1 += q * row r2
        a1, a2 = A[r1], A[r2]
        for j in range(n):
            a1[j] += q * a2[j]
        u1, u2 = U[r1], U[r2]
        for j in range(m):
            u1[j] += q * u2[j]
        for row in U_inv:
            row[r2] -= q * row[r1]

    def row_negate(r):
        A[r] = [-v for v in A[r]]
        U[r] = [-v for v in U[r]]
        for row in U_inv:
            row[r] = -row[r]

    def col_swap(c1, c2):
        for row in A:
            row[c1], row[c2] = row[c2], row[c1]
        for row in V:
            row[c1], row[c2] = row[c2], row[c1]
        V_inv[c1], V_inv[c2] = V_inv[c2], V_inv[c1]

    def col_add(c1, c2, q):
        # col c1 += q * col c2
        for row in A:
            row[c1] += q * row[c2]
        for row in V:
            row[c1] += q * row[c2]
        v1, v2 = V_inv[c1], V_inv[c2]
        for j in range(n):
            v2[j] -= q * v1[j]

    t = 0
    limit = min(m, n)
    while t < limit:
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or (abs(v), i, j) < best):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        if A[t][t] < 0:
            row_negate(t)
        piv = A[t][t]
        dirty = False
        for i in range(t + 1, m):
            if A[i][t]:
                row_add(i, t, -(A[i][t] // piv))
                if A[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if A[t][j]:
                col_add(j, t, -(A[t][j] // piv))
                if A[t][j]:
                    dirty = True
        if dirty:
            continue
        bad = None
        for i in range(t + 1, m):
            row = A[i]
            for j in range(t + 1, n):
                if row[j] % piv:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_add(t, bad, 1)
            continue
        t += 1
    return SNFResult(A, U, V, U_inv, V_inv)


# ---------------------------------------------------------------------------
# sparse integer column reduction


def _axpy(c, other, q):
    # c += q * other, dropping zeros
    for i, v in other.items():
        nv = c.get(i, 0) + q * v
        if nv:
            c[i] = nv
        else:
            c.pop(i, None)


def _combine(a, ca, b, cb):
    out = {}
    for i, v in a.items():
        nv = ca * v
        if nv:
            out[i] = nv
    for i, v in b.items():
        nv = out.get(i, 0) + cb * v
        if nv:
            out[i] = nv
        else:
            out.pop(i, None)
    return out


def _ext_gcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def kernel_of_columns(cols):
    """Integer kernel basis of a column-sparse matrix.

    Returns (kernel, rank) where kernel is a list of sparse coordinate
    vectors over the column index set.  The vectors are the zero columns of
    a unimodular right transform, so they form a basis of the kernel as a
    direct summand.
    """
    work = [dict(c) for c in cols]
    V = [{j: 1} for j in range(len(cols))]
    pivot_at = {}
    kernel = []
    for j in range(len(cols)):
        c = work[j]
        vj = V[j]
        while c:
            low = max(c)
            p = pivot_at.get(low)
            if p is None:
                pivot_at[low] = j
                break
            d = work[p][low]
            a = c[low]
            if a % d == 0:
                q = a // d
                _axpy(c, work[p], -q)
                _axpy(vj, V[p], -q)
            else:
                g, x, y = _ext_gcd(d, a)
                dp, aj = d // g, a // g
                work[p], work[j] = (
                    _combine(work[p], x, c, y),
                    _combine(work[p], -aj, c, dp),
                )
                V[p], V[j] = (
                    _combine(V[p], x, vj, y),
                    _combine(V[p], -aj, vj, dp),
                )
                c = work[j]
                vj = V[j]
        if not c:
            kernel.append(vj)
    return kernel, len(pivot_at)


class _KernelSolver:
    """Solves K . c = x for sparse x, with full verification."""

    def __init__(self, kernel):
        self.kernel = kernel
        z = len(kernel)
        self.z = z
        self.sel_rows = []
        if z == 0:
            self.inverse = []
            return
        echelon = []
        seen = sorted(set().union(*[k.keys() for k in kernel]))
        for r in seen:
            vec = [Fraction(kernel[j].get(r, 0)) for j in range(z)]
            red = vec[:]
            for prow in echelon:
                lead = next(i for i, v in enumerate(prow) if v)
                if red[lead]:
                    f = red[lead] / prow[lead]
                    red = [a - f * b for a, b in zip(red, prow)]
            if any(red):
                echelon.append(red)
                self.sel_rows.append(r)
                if len(self.sel_rows) == z:
                    break
        assert len(self.sel_rows) == z, "kernel columns are dependent"
        # invert the selected square submatrix over the rationals
        M = [
            [Fraction(kernel[j].get(r, 0)) for j in range(z)]
            for r in self.sel_rows
        ]
        aug = [row[:] + [Fraction(int(i == k)) for k in range(z)]
               for i, row in enumerate(M)]
        for col in range(z):
            piv = next(i for i in range(col, z) if aug[i][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            f = aug[col][col]
            aug[col] = [v / f for v in aug[col]]
            for i in range(z):
                if i != col and aug[i][col]:
                    g = aug[i][col]
                    aug[i] = [a - g * b for a, b in zip(aug[i], aug[col])]
        self.inverse = [row[z:] for row in aug]

    def solve(self, x):
        """Coordinates of the sparse vector x in the kernel basis."""
        if self.z == 0:
            if x:
                raise ValueError("chain is not a cycle")
            return []
        rhs = [x.get(r, 0) for r in self.sel_rows]
        c = []
        for row in self.inverse:
            acc = Fraction(0)
            for v, b in zip(row, rhs):
                if b:
                    acc += v * b
            if acc.denominator != 1:
                raise ValueError("chain is not a cycle")
            c.append(int(acc))
        check = {}
        for j, cj in enumerate(c):
            if cj:
                _axpy(check, self.kernel[j], cj)
        if check != {i: v for i, v in x.items() if v}:
            raise ValueError("chain is not a cycle")
        return c


# ---------------------------------------------------------------------------
# chain complexes


class HomologyGroup:
    """A finitely generated abelian group: free rank plus torsion chain."""

    def __init__(self, free_rank, torsion=()):
        self.free_rank = free_rank
        self.torsion = tuple(int(d) for d in torsion)
        assert free_rank >= 0
        for d in self.torsion:
            assert d > 1
        for a, b in zip(self.torsion, self.torsion[1:]):
            assert b % a == 0, "torsion coefficients must form a divisor chain"

    def __eq__(self, other):
        return (
            isinstance(other, HomologyGroup)
            and self.free_rank == other.free_rank
            and self.torsion == other.torsion
        )

    def __hash__(self):
        return hash((self.free_rank, self.torsion))

    @property
    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    def __repr__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return "0" if not parts else " + ".join(parts)

    def to_json(self):
        return {"rank": self.free_rank, "torsion": list(self.torsion)}


class _DegreeData:
    """Cycle/boundary bookkeeping of one degree of a complex."""

    def __init__(self, C, k):
        if k == 0:
            kernel = [{j: 1} for j in range(C.rank(0))]
            rank_out = 0
        else:
            kernel, rank_out = kernel_of_columns(C.boundary_columns(k))
        self.kernel = kernel
        self.rank_out = rank_out
        self.solver = _KernelSolver(kernel)
        z = len(kernel)
        bcols = C.boundary_columns(k + 1)
        Y = [[0] * len(bcols) for _ in range(z)]
        for j, col in enumerate(bcols):
            for i, v in enumerate(self.solver.solve(col)):
                Y[i][j] = v
        snf = smith_normal_form(Y)
        diag = snf.diagonal
        self.ediag = [d for d in diag if d]
        self.t = len(self.ediag)
        self.Uprime = snf.U
        self.Uprime_inv = snf.U_inv
        self.group = HomologyGroup(
            z - self.t, [d for d in self.ediag if d > 1]
        )

    def _kernel_chain(self, coords):
        out = {}
        for j, v in enumerate(coords):
            if v:
                _axpy(out, self.kernel[j], v)
        return out

    @property
    def free_gen_chains(self):
        z = len(self.kernel)
        return [
            self._kernel_chain([self.Uprime_inv[i][j] for i in range(z)])
            for j in range(self.t, z)
        ]

    @property
    def torsion_gen_chains(self):
        z = len(self.kernel)
        return [
            self._kernel_chain([self.Uprime_inv[i][j] for i in range(z)])
            for j in range(self.t)
            if self.ediag[j] > 1
        ]

    def class_of(self, x):
        """Coordinates of a cycle's homology class: (free tuple, torsion tuple)."""
        c = self.solver.solve(x)
        z = len(self.kernel)
        w = [
            sum(self.Uprime[i][j] * c[j] for j in range(z))
            for i in range(z)
        ]
        free = tuple(w[self.t:])
        torsion = tuple(
            w[i] % self.ediag[i]
            for i in range(self.t)
            if self.ediag[i] > 1
        )
        return free, torsion


class ChainComplex:
    """Nonnegatively graded free complex with column-sparse boundaries.

    columns[k][j] is the boundary of the j-th degree-k generator as a
    sparse vector over the degree-(k-1) generators.
    """

    def __init__(self, ranks, columns, basis=None, name=None):
        self.ranks = {k: r for k, r in ranks.items()}
        self.columns = columns
        self.basis = basis or {}
        self.name = name
        self._degree_cache = {}
        for k, cols in columns.items():
            assert len(cols) == self.rank(k)

    def rank(self, k):
        return self.ranks.get(k, 0)

    def degrees(self):
        return sorted(k for k, r in self.ranks.items() if r)

    @property
    def top_degree(self):
        ks = self.degrees()
        return ks[-1] if ks else -1

    def boundary_columns(self, k):
        if k in self.columns:
            return self.columns[k]
        return [{} for _ in range(self.rank(k))]

    def boundary_matrix(self, k):
        rows = self.rank(k - 1) if k >= 1 else 0
        cols = self.boundary_columns(k)
        out = [[0] * len(cols) for _ in range(rows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def validate(self):
        for k in self.degrees():
            if k < 2:
                continue
            below = self.boundary_columns(k - 1)
            for col in self.boundary_columns(k):
                acc = {}
                for i, a in col.items():
                    _axpy(acc, below[i], a)
                assert not acc, f"boundary squared is nonzero in degree {k}"
        return True

    def degree_data(self, k):
        if k not in self._degree_cache:
            self._degree_cache[k] = _DegreeData(self, k)
        return self._degree_cache[k]

    def __repr__(self):
        ranks = ",".join(f"{k}:{r}" for k, r in sorted(self.ranks.items()) if r)
        return f"<complex {self.name or ''} [{ranks}]>"


def normalized_chains(X):
    """Reduced normalized chains: one generator per nondegenerate non-base cell.

    The boundary is the alternating face sum; faces that are degenerate or
    land on the basepoint contribute nothing.
    """
    cached = getattr(X, "_normalized_chains", None)
    if cached is not None:
        return cached
    basis = {}
    index = {}
    for k, ids in X.cells.items():
        gens = [c for c in ids if c != X.basepoint]
        if gens:
            basis[k] = gens
            index[k] = {c: i for i, c in enumerate(gens)}
    ranks = {k: len(v) for k, v in basis.items()}
    columns = {}
    for k, gens in basis.items():
        cols = []
        for c in gens:
            col = {}
            if k > 0:
                for i, (word, t) in enumerate(X.faces[c]):
                    if word or t == X.basepoint:
                        continue
                    row = index[k - 1][t]
                    col[row] = col.get(row, 0) + (-1) ** i
            cols.append({i: v for i, v in col.items() if v})
        columns[k] = cols
    C = ChainComplex(ranks, columns, basis=basis, name=X.name)
    C.space = X
    C.index = index
    X._normalized_chains = C
    return C


def homology(C, k):
    """H_k of the complex as an explicit abelian group."""
    if k < 0 or C.rank(k) == 0:
        return HomologyGroup(0)
    return C.degree_data(k).group


# ---------------------------------------------------------------------------
# induced maps


def chain_push(f, k, x, C_src=None, C_tgt=None):
    """Push a degree-k chain through a simplicial map (degenerate hits die)."""
    C_src = C_src or normalized_chains(f.source)
    C_tgt = C_tgt or normalized_chains(f.target)
    out = {}
    src_basis = C_src.basis.get(k, [])
    tgt_index = C_tgt.index.get(k, {})
    for i, v in x.items():
        word, t = f.assign[src_basis[i]]
        if word or t == f.target.basepoint:
            continue
        row = tgt_index[t]
        nv = out.get(row, 0) + v
        if nv:
            out[row] = nv
        else:
            out.pop(row, None)
    return out


def _unimodular(M):
    if len(M) != (len(M[0]) if M else 0):
        return len(M) == 0 and (not M or not M[0])
    if not M:
        return True
    snf = smith_normal_form(M)
    return all(d == 1 for d in snf.diagonal)


def _torsion_iso(src_torsion, tgt_torsion, residues):
    import math

    if math.prod(src_torsion) != math.prod(tgt_torsion):
        return False
    if not tgt_torsion:
        return True
    s, t = len(src_torsion), len(tgt_torsion)
    M = [[0] * (s + t) for _ in range(t)]
    for j in range(s):
        for i in range(t):
            M[i][j] = residues[i][j]
    for i in range(t):
        M[i][s + i] = tgt_torsion[i]
    snf = smith_normal_form(M)
    return all(d == 1 for d in snf.diagonal[:t])


class InducedMap:
    """A simplicial map pushed to degree-k homology.

    matrix: free-part matrix, one column per source free generator.
    torsion_matrix: residues of the torsion generators' images.
    """

    def __init__(self, f, k):
        self.f = f
        self.k = k
        C = normalized_chains(f.source)
        D = normalized_chains(f.target)
        self.source_complex = C
        self.target_complex = D
        src = C.degree_data(k) if C.rank(k) else None
        tgt = D.degree_data(k) if D.rank(k) else None
        self.source_group = src.group if src else HomologyGroup(0)
        self.target_group = tgt.group if tgt else HomologyGroup(0)

        def classify(chain):
            if tgt is None:
                assert not chain
                return (), ()
            return tgt.class_of(chain)

        fr = self.target_group.free_rank
        cols = []
        tors_cols = []
        if src is not None:
            for g in src.free_gen_chains:
                free, tors = classify(chain_push(f, k, g, C, D))
                cols.append((free, tors))
            for g in src.torsion_gen_chains:
                free, tors = classify(chain_push(f, k, g, C, D))
                assert not any(free), "torsion generator mapped to free part"
                tors_cols.append(tors)
        self.matrix = [
            [cols[j][0][i] for j in range(len(cols))] for i in range(fr)
        ]
        self.free_to_torsion = [c[1] for c in cols]
        self.torsion_matrix = [
            [tors_cols[j][i] for j in range(len(tors_cols))]
            for i in range(len(self.target_group.torsion))
        ]

    def is_isomorphism(self):
        if self.source_group.free_rank != self.target_group.free_rank:
            return False
        return _unimodular(self.matrix) and _torsion_iso(
            self.source_group.torsion,
            self.target_group.torsion,
            self.torsion_matrix,
        )

    def to_json(self):
        return {
            "k": self.k,
            "source": self.source_group.to_json(),
            "target": self.target_group.to_json(),
            "matrix": [list(r) for r in self.matrix],
            "torsion_matrix": [list(r) for r in self.torsion_matrix],
        }


def induced_map(f, k):
    return InducedMap(f, k)


# ---------------------------------------------------------------------------
# suspension


class SuspensionChainMap:
    """The degree +1 chain map X -> S^1 ^ X by shuffling in the circle edge.

    On a k-simplex x the value is sum_i (-1)^i (s_{complement} e) ^ (s_i x),
    the circle chain kept in the left slot.  Satisfies d E = -E d and
    induces isomorphisms on reduced homology.
    """

    def __init__(self, X, sm=None):
        if sm is None:
            sm = sset.smash(sset.circle(), X)
        assert sm.B is X
        circle = sm.A
        one_cells = [c for c in circle.cells.get(1, ()) if c != circle.basepoint]
        assert len(one_cells) == 1 and circle.n_cells(0) == 1
        self.edge = one_cells[0]
        self.smash = sm
        self.space = X
        self.source = normalized_chains(X)
        self.target = normalized_chains(sm.space)

    def cell_image(self, c):
        """The image chain of one nondegenerate non-base cell."""
        k = self.space.dim_of[c]
        out = {}
        for i in range(k + 1):
            wa = tuple(j for j in range(k, -1, -1) if j != i)
            form = self.smash.form_of_pair((wa, self.edge), ((i,), c))
            assert not form[0] and form[1] != self.smash.space.basepoint
            row = self.target.index[k + 1][form[1]]
            sign = -1 if i % 2 else 1
            nv = out.get(row, 0) + sign
            if nv:
                out[row] = nv
            else:
                out.pop(row, None)
        return out

    def apply_chain(self, k, x):
        out = {}
        basis = self.source.basis.get(k, [])
        for i, v in x.items():
            _axpy(out, self.cell_image(basis[i]), v)
        return out

    def validate(self):
        """d E = -E d on every generator, E injective on generators."""
        for k in self.source.degrees():
            for j in range(self.source.rank(k)):
                img = self.apply_chain(k, {j: 1})
                lhs = {}
                tcols = self.target.boundary_columns(k + 1)
                for i, v in img.items():
                    _axpy(lhs, tcols[i], v)
                rhs = self.apply_chain(
                    k - 1, self.source.boundary_columns(k)[j]
                ) if k >= 1 else {}
                neg = {i: -v for i, v in rhs.items()}
                assert lhs == neg, f"not a chain map at degree {k}"
        return True

    def induces_isomorphism(self, k):
        src = homology(self.source, k)
        tgt = homology(self.target, k + 1)
        if src != tgt:
            return False
        if src.is_zero:
            return True
        sd = self.source.degree_data(k)
        td = self.target.degree_data(k + 1)
        cols = []
        tors_cols = []
        for g in sd.free_gen_chains:
            free, _ = td.class_of(self.apply_chain(k, g))
            cols.append(free)
        for g in sd.torsion_gen_chains:
            _, tors = td.class_of(self.apply_chain(k, g))
            tors_cols.append(tors)
        matrix = [
            [cols[j][i] for j in range(len(cols))]
            for i in range(tgt.free_rank)
        ]
        residues = [
            [tors_cols[j][i] for j in range(len(tors_cols))]
            for i in range(len(tgt.torsion))
        ]
        return _unimodular(matrix) and _torsion_iso(
            src.torsion, tgt.torsion, residues
        )


def suspension_chain_map(X, sm=None):
    return SuspensionChainMap(X, sm)


def hz_level_complex(n):
    """Chains on S^n: the Moore complex of the free simplicial group Z(S^n)."""
    if n < 0:
        raise ValueError("level must be nonnegative")
    return normalized_chains(sset.sphere(n))


# ---------------------------------------------------------------------------
# stable colimits


class HurewiczGateError(ValueError):
    pass


def hurewicz_gate(space, d):
    """No nondegenerate non-base cells in dimensions 1..d-1."""
    for k in range(1, d):
        if any(c != space.basepoint for c in space.cells.get(k, ())):
            return False
    return True


def _transition(X, n, k, data_n, data_n1, C_n1):
    """Free/torsion matrices of H_{k+n}(X_n) -> H_{k+n+1}(X_{n+1})."""
    sm = X.structure_smash(n)
    E = SuspensionChainMap(X.space(n), sm)
    sig = X.sigma(n)
    C_mid = E.target

    def push(chain):
        mid = E.apply_chain(k + n, chain)
        return chain_push(sig, k + n + 1, mid, C_mid, C_n1)

    cols = [data_n1.class_of(push(g))[0] for g in data_n.free_gen_chains]
    tors = [data_n1.class_of(push(g))[1] for g in data_n.torsion_gen_chains]
    fr = data_n1.group.free_rank
    matrix = [[cols[j][i] for j in range(len(cols))] for i in range(fr)]
    residues = [
        [tors[j][i] for j in range(len(tors))]
        for i in range(len(data_n1.group.torsion))
    ]
    return matrix, residues


def _map_is_iso(src_group, tgt_group, matrix, residues):
    return (
        src_group.free_rank == tgt_group.free_rank
        and _unimodular(matrix)
        and _torsion_iso(src_group.torsion, tgt_group.torsion, residues)
    )


class StableColimitReport:
    def __init__(self, k, entries, maps, stabilized, stable_from,
                 stable_group, interpretation):
        self.k = k
        self.entries = entries          # list of (n, HomologyGroup)
        self.maps = maps                # list of (matrix, residues, iso flag)
        self.stabilized = stabilized
        self.stable_from = stable_from
        self.stable_group = stable_group
        self.interpretation = interpretation

    def to_json(self):
        return {
            "k": self.k,
            "levels": [
                {"n": n, "rank": g.free_rank, "torsion": list(g.torsion)}
                for n, g in self.entries
            ],
            "maps": [[list(r) for r in m] for m, _, _ in self.maps],
            "stabilized": self.stabilized,
            "interpretation": self.interpretation,
        }


def stable_colimit(X, k, require_homotopy=False):
    """Homology stand-in for the colimit of homotopy groups at weight k.

    Per level the group H_{k+n}(X_n); transitions suspend by the circle and
    push through the structure map.  The homotopy reading is only claimed
    when every level clears the Hurewicz gate.
    """
    first = max(0, -k)
    ns = list(range(first, X.bound + 1))
    data = {}
    entries = []
    gate_ok = True
    for n in ns:
        C = normalized_chains(X.space(n))
        d = C.degree_data(k + n) if C.rank(k + n) else None
        group = d.group if d else HomologyGroup(0)
        data[n] = (C, d)
        entries.append((n, group))
        if not hurewicz_gate(X.space(n), k + n):
            gate_ok = False
    interpretation = "homotopy" if gate_ok else "homology-only"
    if require_homotopy and not gate_ok:
        raise HurewiczGateError(
            "a level has cells below the stable range; homology-only"
        )
    maps = []
    for n in ns[:-1]:
        C_n, d_n = data[n]
        C_n1, d_n1 = data[n + 1]
        g_n = d_n.group if d_n else HomologyGroup(0)
        g_n1 = d_n1.group if d_n1 else HomologyGroup(0)
        if d_n is None or g_n.is_zero:
            matrix = [[] for _ in range(g_n1.free_rank)]
            residues = [[] for _ in range(len(g_n1.torsion))]
            iso = g_n1.is_zero
        else:
            matrix, residues = _transition(X, n, k, d_n, d_n1, C_n1)
            iso = _map_is_iso(g_n, g_n1, matrix, residues)
        maps.append((matrix, residues, iso))
    stabilized = len(maps) >= 2 and maps[-1][2] and maps[-2][2]
    stable_from = None
    if stabilized:
        stable_from = ns[0]
        for idx in range(len(maps) - 1, -1, -1):
            if not maps[idx][2]:
                stable_from = ns[idx + 1]
                break
        stable_group = entries[-1][1]
    else:
        stable_group = None
    return StableColimitReport(
        k, entries, maps, stabilized, stable_from, stable_group,
        interpretation,
    )


class StableMapReport:
    def __init__(self, k, levels, matrices, verdict, interpretation,
                 ladder_commutes):
        self.k = k
        self.levels = levels            # list of (n, src group, tgt group)
        self.matrices = matrices        # list of InducedMap
        self.verdict = verdict
        self.interpretation = interpretation
        self.ladder_commutes = ladder_commutes

    def to_json(self):
        return {
            "k": self.k,
            "levels": [
                {
                    "n": n,
                    "source": s.to_json(),
                    "target": t.to_json(),
                }
                for n, s, t in self.levels
            ],
            "maps": [[list(r) for r in im.matrix] for im in self.matrices],
            "verdict": self.verdict,
            "interpretation": self.interpretation,
        }


def stable_map_report(f, k, require_homotopy=False):
    """Per-level homology matrices of a spectrum map, with an iso verdict.

    The verdict covers the computed range only; "iso-at-all-computed-levels"
    never claims a stable equivalence by itself.
    """
    X, Y = f.source, f.target
    first = max(0, -k)
    ns = list(range(first, X.bound + 1))
    gate_ok = all(
        hurewicz_gate(X.space(n), k + n) and hurewicz_gate(Y.space(n), k + n)
        for n in ns
    )
    interpretation = "homotopy" if gate_ok else "homology-only"
    if require_homotopy and not gate_ok:
        raise HurewiczGateError(
            "a level has cells below the stable range; homology-only"
        )
    levels = []
    matrices = []
    for n in ns:
        im = InducedMap(f.level(n), k + n)
        matrices.append(im)
        levels.append((n, im.source_group, im.target_group))
    verdict = (
        "iso-at-all-computed-levels"
        if all(im.is_isomorphism() for im in matrices)
        else "not"
    )
    ladder = True
    for n in ns[:-1]:
        CX = normalized_chains(X.space(n))
        CX1 = normalized_chains(X.space(n + 1))
        CY1 = normalized_chains(Y.space(n + 1))
        sx = CX.degree_data(k + n) if CX.rank(k + n) else None
        sy1 = CY1.degree_data(k + n + 1) if CY1.rank(k + n + 1) else None
        if sx is None or sy1 is None:
            continue
        EX = SuspensionChainMap(X.space(n), X.structure_smash(n))
        EY = SuspensionChainMap(Y.space(n), Y.structure_smash(n))
        for g in sx.free_gen_chains:
            # around the top of the square
            top = EX.apply_chain(k + n, g)
            top = chain_push(X.sigma(n), k + n + 1, top, EX.target, CX1)
            top = chain_push(f.level(n + 1), k + n + 1, top, CX1, CY1)
            # around the bottom
            bot = chain_push(f.level(n), k + n, g, CX,
                             normalized_chains(Y.space(n)))
            bot = EY.apply_chain(k + n, bot)
            bot = chain_push(Y.sigma(n), k + n + 1, bot, EY.target, CY1)
            if sy1.class_of(top) != sy1.class_of(bot):
                ladder = False
    return StableMapReport(
        k, levels, matrices, verdict, interpretation, ladder,
    )
