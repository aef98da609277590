"""Exact integer matrix routines: Smith normal form, kernels, finite quotients.

Matrices are lists of lists of Python ints (rows), so nothing overflows.
This is all the linear algebra the cohomology of a finite category needs:
computing ker/im of maps between finite abelian groups presented as direct
sums of cyclic groups.
"""

from __future__ import annotations

from typing import Sequence


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    n, m, k = len(A), len(B), len(B[0])
    assert all(len(row) == m for row in A)
    return [[sum(A[i][t] * B[t][j] for t in range(m)) for j in range(k)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (D, U, V) with D = U * A * V, U and V unimodular, D in SNF.

    Row/column elimination with pivoting on the minimal nonzero entry; the
    divisibility chain d1 | d2 | ... is enforced at the end of each step.
    """
    D = [list(row) for row in A]
    rows = len(D)
    cols = len(D[0]) if rows else 0
    U = identity_matrix(rows)
    V = identity_matrix(cols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):
        for row in D:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < best):
                    best = abs(D[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        swap_rows(t, i)
        swap_cols(t, j)
        # clear row/column t, restarting whenever a smaller remainder appears
        while True:
            done = True
            for i in range(t + 1, rows):
                if D[i][t] != 0:
                    q = D[i][t] // D[t][t]
                    add_row(i, t, -q)
                    if D[i][t] != 0:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if D[t][j] != 0:
                    q = D[t][j] // D[t][t]
                    add_col(j, t, -q)
                    if D[t][j] != 0:
                        swap_cols(t, j)
                        done = False
            if done:
                break
        # divisibility: fold any non-multiple into the working corner
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if D[i][j] % D[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if D[t][t] < 0:
            negate_row(t)
        t += 1
        if t >= min(rows, cols):
            break
    return D, U, V


def diagonal_of(D: Sequence[Sequence[int]]) -> list[int]:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def kernel_basis(A: Sequence[Sequence[int]]) -> list[list[int]]:
    """A basis (as column vectors) of {x in Z^n : A x = 0}."""
    if not A or not A[0]:
        n = len(A[0]) if A else 0
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    D, _, V = smith_normal_form(A)
    n = len(A[0])
    diag = diagonal_of(D)
    rank = sum(1 for d in diag if d != 0)
    # columns of V past the rank span the kernel
    return [[V[i][j] for i in range(n)] for j in range(rank, n)]


class LatticeSolver:
    """Repeated coordinate solves against one fixed column basis."""

    def __init__(self, basis: Sequence[Sequence[int]]):
        self.basis = [list(col) for col in basis]
        self.m = len(self.basis)
        self.n = len(self.basis[0]) if self.basis else 0
        if self.basis:
            A = [[self.basis[j][i] for j in range(self.m)] for i in range(self.n)]
            self.D, self.U, self.V = smith_normal_form(A)
            self.diag = diagonal_of(self.D)

    def solve(self, target: Sequence[int]) -> list[int] | None:
        if not self.basis:
            return [] if all(t == 0 for t in target) else None
        b = [sum(self.U[i][k] * target[k] for k in range(self.n)) for i in range(self.n)]
        y = [0] * self.m
        for i in range(self.n):
            d = self.diag[i] if i < len(self.diag) else 0
            if d == 0:
                if b[i] != 0:
                    return None
            else:
                if b[i] % d != 0:
                    return None
                y[i] = b[i] // d
        return [sum(self.V[i][k] * y[k] for k in range(self.m)) for i in range(self.m)]


def solve_in_lattice(basis: Sequence[Sequence[int]], target: Sequence[int]) -> list[int] | None:
    """Coordinates of `target` in the integer span of `basis` columns, or None."""
    return LatticeSolver(basis).solve(target)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def kernel_mod(rows: Sequence[tuple[Sequence[int], int]], n: int, reduce_mod: int = 0) -> list[list[int]]:
    """A basis of {x in Z^n : r . x = 0 mod m for every (r, m) in rows}.

    Processes one congruence at a time, keeping a column basis of the lattice
    satisfied so far; each row costs O(n * len(basis)) via paired column gcd
    moves, which keeps large sparse systems (cochain differentials) cheap.
    When the kernel is known to contain reduce_mod * Z^n, entries may be kept
    reduced modulo reduce_mod, which bounds coefficient growth.
    """
    cols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    for r, m in rows:
        if m == 1:
            continue
        support = [i for i, val in enumerate(r) if val]
        if not support:
            continue
        v = [sum(r[i] * col[i] for i in support) % m for col in cols]
        pivot = next((j for j, val in enumerate(v) if val), None)
        if pivot is None:
            continue
        if pivot != 0:
            cols[0], cols[pivot] = cols[pivot], cols[0]
            v[0], v[pivot] = v[pivot], v[0]
        for j in range(1, len(cols)):
            if v[j] == 0:
                continue
            g, x, y = _ext_gcd(v[0], v[j])
            a0, aj = v[0] // g, v[j] // g
            c0, cj = cols[0], cols[j]
            cols[0] = [x * p + y * q for p, q in zip(c0, cj)]
            cols[j] = [aj * p - a0 * q for p, q in zip(c0, cj)]
            if reduce_mod:
                cols[j] = [p % reduce_mod for p in cols[j]]
            v[0], v[j] = g, 0
        t = m // _gcd_pair(v[0], m)
        if t != 1:
            cols[0] = [t * p for p in cols[0]]
        if reduce_mod:
            cols[0] = [p % reduce_mod for p in cols[0]]
    return cols


def _gcd_pair(a: int, b: int) -> int:
    a = abs(a)
    while b:
        a, b = b, a % b
    return a


def _lcm_all(values: Sequence[int]) -> int:
    m = 1
    for v in values:
        m = m * v // _gcd_pair(m, v)
    return m


def triangular_basis_mod(columns: Sequence[Sequence[int]], n: int, m: int) -> list[list[int]]:
    """Lower-triangular basis of the lattice spanned by `columns` + m * Z^n.

    Since m * Z^n sits inside the lattice, every entry can be reduced mod m
    throughout, so coefficients never grow.  The result has one column per
    row, with column i supported on rows >= i and diagonal dividing m.
    """
    work = [[c % m for c in col] for col in columns]
    out = []
    for i in range(n):
        # fold every column with a nonzero row-i entry into one pivot,
        # starting from the implicit lattice column m * e_i; each fold is a
        # unimodular move, so the leftover column must be kept
        pivot = [0] * n
        pivot[i] = m
        rest = []
        for col in work:
            if col[i] % m == 0:
                rest.append(col)
                continue
            g, x, y = _ext_gcd(pivot[i], col[i])
            new_pivot = [(x * p + y * q) % m for p, q in zip(pivot, col)]
            leftover = [(col[i] // g * p - pivot[i] // g * q) % m for p, q in zip(pivot, col)]
            new_pivot[i] = g
            pivot = new_pivot
            if any(leftover):
                rest.append(leftover)
        d = pivot[i] if pivot[i] else m
        pivot[i] = d
        out.append(pivot)
        # clear row i from the remaining columns
        work = []
        for col in rest:
            if col[i] % m:
                q = col[i] // d
                col = [(p - q * t) % m for p, t in zip(col, pivot)]
            if col[i] % m:
                raise ValueError("triangularization failed to clear a row")
            if any(col):
                work.append(col)
    return out


def solve_triangular_exact(T: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Exact coordinates of v in the lower-triangular basis T, or None.

    No modular shortcuts here: these coordinates become generators of a
    quotient lattice, and reducing a generator modulo the lattice it is about
    to generate would discard it.
    """
    n = len(v)
    rem = list(v)
    coords = []
    for i in range(n):
        d = T[i][i]
        if rem[i] % d != 0:
            return None
        c = rem[i] // d
        coords.append(c)
        rem = [p - c * t for p, t in zip(rem, T[i])]
    if any(rem):
        return None
    return coords


def snf_invariants_mod(A: Sequence[Sequence[int]], m: int) -> list[int]:
    """Invariant factors of Z^k / (columns of A + m * Z^k).

    Runs the usual elimination with every entry reduced mod m; valid because
    unimodular row and column operations both preserve the m * Z^k part.
    """
    D = [[v % m for v in row] for row in A]
    rows = len(D)
    cols = len(D[0]) if rows else 0
    invariants = []
    t = 0
    while t < rows:
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = D[i][j] % m
                if v and (best is None or _gcd_pair(v, m) < best):
                    best = _gcd_pair(v, m)
                    pivot = (i, j)
        if pivot is None:
            invariants.extend([m] * (rows - t))
            break
        i, j = pivot
        D[t], D[i] = D[i], D[t]
        for row in D:
            row[t], row[j] = row[j], row[t]
        # make the pivot entry the gcd with m, then clear its row and column
        g, x, _ = _ext_gcd(D[t][t], m)
        d = _gcd_pair(D[t][t], m)
        for row in D:
            row[t] = (row[t] * x) % m
        D[t][t] = d
        for i2 in range(rows):
            if i2 != t and D[i2][t] % m:
                q = D[i2][t] // d
                D[i2] = [(a - q * b) % m for a, b in zip(D[i2], D[t])]
        for j2 in range(t + 1, cols):
            if D[t][j2] % m:
                q = D[t][j2] // d
                for row in D:
                    row[j2] = (row[j2] - q * row[t]) % m
        invariants.append(d)
        t += 1
    # enforce the divisibility chain by pairwise gcd/lcm fixes
    changed = True
    while changed:
        changed = False
        for a in range(len(invariants)):
            for b in range(a + 1, len(invariants)):
                x, y = invariants[a], invariants[b]
                if y % x != 0:
                    g = _gcd_pair(x, y)
                    invariants[a], invariants[b] = g, x * y // g
                    changed = True
    return sorted(invariants)


class FiniteAbelian:
    """A finite abelian group Z/d1 x ... x Z/dk given by its invariant factors."""

    def __init__(self, invariants: Sequence[int]):
        self.invariants = tuple(int(d) for d in invariants if d != 1)
        if any(d <= 0 for d in self.invariants):
            raise ValueError(f"invariants must be positive and finite: {invariants}")

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariants:
            n *= d
        return n

    def is_trivial(self) -> bool:
        return not self.invariants

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteAbelian) and self.invariants == other.invariants

    def __hash__(self) -> int:
        return hash(self.invariants)

    def __repr__(self) -> str:
        if not self.invariants:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariants)


def quotient_group(span: Sequence[Sequence[int]], sub: Sequence[Sequence[int]]) -> FiniteAbelian:
    """The quotient (span of `span`) / (span of `sub`) as a finite abelian group.

    Both arguments are lists of integer column vectors; the sub-lattice must be
    finite-index in the span lattice (a ValueError reports a free factor).
    """
    solver = LatticeSolver(span)
    coords = []
    for v in sub:
        c = solver.solve(v)
        if c is None:
            raise ValueError("sub is not contained in span")
        coords.append(c)
    m = len(span)
    if m == 0:
        return FiniteAbelian([])
    if not coords:
        raise ValueError("quotient has free rank > 0")
    A = [[coords[j][i] for j in range(len(coords))] for i in range(m)]
    D, _, _ = smith_normal_form(A)
    diag = diagonal_of(D)
    if len(diag) < m or any(d == 0 for d in diag[:m]):
        raise ValueError("quotient has free rank > 0")
    return FiniteAbelian([d for d in diag[:m]])


def homology_of_pair(
    moduli_b: Sequence[int],
    f_matrix: Sequence[Sequence[int]],
    moduli_a: Sequence[int],
    g_matrix: Sequence[Sequence[int]],
    moduli_c: Sequence[int],
) -> FiniteAbelian:
    """ker(g)/im(f) for A --f--> B --g--> C between finite abelian groups.

    Each group is a product of cyclic groups with the given moduli; f and g
    are integer matrices acting on coordinate columns (entries reduced mod the
    target modulus implicitly).  Computed by lifting to free covers of the
    groups and comparing lattices.
    """
    nb = len(moduli_b)
    na = len(moduli_a)
    nc = len(moduli_c)
    if nb == 0:
        return FiniteAbelian([])
    # every lattice below contains m Z^nb, so all arithmetic reduces mod m
    m = _lcm_all(moduli_b)
    # K = {x in Z^nb : g(x) = 0 in C}, one congruence per C coordinate
    if nc:
        K = kernel_mod([(g_matrix[i], moduli_c[i]) for i in range(nc)], nb, reduce_mod=m)
    else:
        K = [[1 if i == j else 0 for i in range(nb)] for j in range(nb)]
    K = K + [[moduli_b[i] if k == i else 0 for k in range(nb)] for i in range(nb)]
    T = triangular_basis_mod(K, nb, m)
    # sub-lattice L = im(f) + diag(moduli_b) Z^nb, in T-coordinates
    L = [[f_matrix[i][j] for i in range(nb)] for j in range(na)]
    L += [[moduli_b[i] if k == i else 0 for k in range(nb)] for i in range(nb)]
    coords = []
    for v in L:
        c = solve_triangular_exact(T, v)
        if c is None:
            raise ValueError("image is not contained in the kernel; not a complex")
        coords.append(c)
    A = [[coords[j][i] for j in range(len(coords))] for i in range(nb)]
    invariants = snf_invariants_mod(A, m)
    return FiniteAbelian([d for d in invariants if d != 1])
