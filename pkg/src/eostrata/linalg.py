"""Dense linear algebra over a FieldSpec on lists of encoded ints."""
from __future__ import annotations

from typing import Sequence

from .ff import FieldSpec, NonInvertible

Matrix = list[list[int]]
Vector = list[int]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence[int]]) -> Matrix:
    return [list(r) for r in zip(*M)] if M else []


def matmul(F: FieldSpec, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    add, mul = F.addt, F.mult
    Bt = transpose(B)
    out = []
    for row in A:
        orow = []
        for col in Bt:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = add[acc][mul[x][y]]
            orow.append(acc)
        out.append(orow)
    return out


def matvec(F: FieldSpec, A: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    add, mul = F.addt, F.mult
    out = []
    for row in A:
        acc = 0
        for x, y in zip(row, v):
            if x and y:
                acc = add[acc][mul[x][y]]
        out.append(acc)
    return out


def dot(F: FieldSpec, u: Sequence[int], v: Sequence[int]) -> int:
    add, mul = F.addt, F.mult
    acc = 0
    for x, y in zip(u, v):
        if x and y:
            acc = add[acc][mul[x][y]]
    return acc


def frob_matrix(F: FieldSpec, M: Sequence[Sequence[int]], e: int) -> Matrix:
    """Apply sigma^e entrywise (e may be negative)."""
    e %= F.k
    out = [list(r) for r in M]
    for _ in range(e):
        fr = F.frob
        out = [[fr[x] for x in r] for r in out]
    return out


def frob_vec(F: FieldSpec, v: Sequence[int], e: int) -> Vector:
    return frob_matrix(F, [v], e)[0]


def scale_matrix(F: FieldSpec, M: Sequence[Sequence[int]], c: int) -> Matrix:
    row = F.mult[c]
    return [[row[x] for x in r] for r in M]


def add_matrix(F: FieldSpec, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    add = F.addt
    return [[add[x][y] for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def rref(F: FieldSpec, M: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    add, mul, neg, inv = F.addt, F.mult, F.neg, F.invt
    A = [list(r) for r in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pr = A[r]
        il = inv[pr[c]]
        if il != 1:
            m = mul[il]
            pr = A[r] = [m[x] for x in pr]
        for i in range(rows):
            if i != r:
                ri = A[i]
                f = ri[c]
                if f:
                    m = mul[neg[f]]
                    A[i] = [add[x][m[y]] if y else x for x, y in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(F: FieldSpec, M: Sequence[Sequence[int]]) -> int:
    if not M:
        return 0
    return len(rref(F, M)[1])


def nullspace(F: FieldSpec, M: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis (as row vectors) of {x : M x = 0}."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return identity(ncols)
    R, piv = rref(F, M)
    neg = F.neg
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(R, piv):
            v[pc] = neg[row[fc]]
        basis.append(v)
    return basis


def solve(F: FieldSpec, A: Sequence[Sequence[int]], b: Sequence[int]) -> Vector | None:
    """One solution of A x = b, or None."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(F, aug)
    if piv and piv[-1] == n:
        return None
    x = [0] * n
    for row, pc in zip(R, piv):
        x[pc] = row[n]
    return x


def inverse(F: FieldSpec, A: Sequence[Sequence[int]]) -> Matrix:
    n = len(A)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(A)]
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] != n - 1:
        raise NonInvertible("singular matrix")
    return [row[n:] for row in R]


def det(F: FieldSpec, A: Sequence[Sequence[int]]) -> int:
    add, mul, neg, inv = F.addt, F.mult, F.neg, F.invt
    M = [list(r) for r in A]
    n = len(M)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = neg[d]
        d = mul[d][M[c][c]]
        il = inv[M[c][c]]
        for i in range(c + 1, n):
            f = M[i][c]
            if f:
                m = mul[neg[mul[f][il]]]
                M[i] = [add[x][m[y]] for x, y in zip(M[i], M[c])]
    return d


# -- subspaces: canonical RREF bases as tuples of tuples -----------------------
Subspace = tuple


def span(F: FieldSpec, vectors: Sequence[Sequence[int]]) -> Subspace:
    vs = [v for v in vectors if any(v)]
    if not vs:
        return ()
    R, _ = rref(F, vs)
    return tuple(tuple(r) for r in R)


def subspace_sum(F: FieldSpec, A: Subspace, B: Subspace) -> Subspace:
    return span(F, list(A) + list(B))


def contains(F: FieldSpec, A: Subspace, B: Subspace) -> bool:
    """B is a subspace of A."""
    return len(subspace_sum(F, A, B)) == len(A)


def intersect(F: FieldSpec, A: Subspace, B: Subspace, n: int) -> Subspace:
    if not A or not B:
        return ()
    # x = sum a_i A_i = sum b_j B_j
    M = transpose([list(a) for a in A] + [[F.neg[x] for x in b] for b in B])
    ker = nullspace(F, M, len(A) + len(B))
    vecs = []
    for k in ker:
        v = [0] * n
        for coef, a in zip(k[: len(A)], A):
            if coef:
                row = F.mult[coef]
                v = [F.addt[x][row[y]] for x, y in zip(v, a)]
        vecs.append(v)
    return span(F, vecs)
