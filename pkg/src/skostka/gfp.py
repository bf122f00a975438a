"""Exact dense linear algebra over the prime field GF(p).

Matrices are numpy int64 arrays with entries reduced mod p, passed around
together with the modulus. Row reduction uses deterministic leftmost-pivot
elimination (first nonzero row, no pivoting heuristics) so that every basis
produced downstream is reproducible. Multiplication goes through float64
BLAS, which is exact while inner_dim * (p-1)^2 stays below 2**53; the sizes
used in this package are far below that bound, and the guard falls back to
int64 arithmetic otherwise.
"""

import numpy as np

from .combinat import check_odd_prime


def normalize(a, p):
    """Reduce an integer array mod p, returning int64."""
    return np.asarray(a, dtype=np.int64) % p


def identity(k):
    return np.eye(k, dtype=np.int64)


def matmul(a, b, p):
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1]
    if inner * (p - 1) ** 2 < 2**53:
        c = a.astype(np.float64) @ b.astype(np.float64)
        return np.rint(c).astype(np.int64) % p
    return (a.astype(np.int64) @ b.astype(np.int64)) % p


def _inv_scalar(x, p):
    return pow(int(x), p - 2, p)


def rref(a, p):
    """Reduced row echelon form.

    Returns (R, pivots) where pivots is the tuple of pivot column indices.
    The pivot row chosen in each column is the first row with a nonzero
    entry, making the output deterministic.
    """
    a = normalize(a, p).copy()
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * _inv_scalar(a[r, c], p)) % p
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            a[rows] = (a[rows] - np.outer(a[rows, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, tuple(pivots)


def rank(a, p):
    return len(rref(a, p)[1])


def nullspace(a, p):
    """Basis of the right null space, one vector per row.

    Satisfies a @ nullspace(a, p).T == 0; the number of rows is
    cols - rank(a).
    """
    a = np.asarray(a)
    m, n = a.shape
    r, pivots = rref(a, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for row, pc in enumerate(pivots):
            basis[k, pc] = (-r[row, c]) % p
        lead = np.nonzero(basis[k])[0][0]
        basis[k] = (basis[k] * _inv_scalar(basis[k, lead], p)) % p
    return basis


def solve(a, b, p):
    """One solution of a x = b, or None if the system is inconsistent.

    Free variables are set to zero.
    """
    a = normalize(a, p)
    b = normalize(b, p)
    m, n = a.shape
    aug = np.concatenate([a, b.reshape(m, 1)], axis=1)
    r, pivots = rref(aug, p)
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for row, c in enumerate(pivots):
        x[c] = r[row, n]
    return x


def inverse(a, p):
    """Inverse of a square matrix, or None if singular."""
    a = normalize(a, p)
    m, n = a.shape
    if m != n:
        raise ValueError("inverse requires a square matrix")
    aug = np.concatenate([a, identity(n)], axis=1)
    r, pivots = rref(aug, p)
    if any(c >= n for c in pivots):
        return None
    return r[:, n:]


def column_space_basis(a, p):
    """Pivot columns of a: a basis of the column space, as columns."""
    _, pivots = rref(a, p)
    return np.asarray(a, dtype=np.int64)[:, list(pivots)]


def is_invertible(a, p):
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def check_field(p):
    check_odd_prime(p)


class Echelon:
    """Incrementally built reduced row echelon basis over GF(p).

    Every stored row stays reduced against all the others, so testing
    or absorbing one more vector costs a single vector-matrix product
    instead of a fresh elimination of the whole stack. Useful when a
    span is grown one candidate at a time, as in greedy basis
    extraction and ideal membership checks.
    """

    def __init__(self, p):
        check_field(p)
        self.p = p
        self.rows = None
        self.pivots = []

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, vec):
        """Residue of vec modulo the current row span."""
        v = np.asarray(vec, dtype=np.int64).ravel() % self.p
        if self.pivots:
            coeffs = v[self.pivots]
            if coeffs.any():
                v = (v - matmul(coeffs[None, :], self.rows, self.p)[0]) % self.p
        return v

    def contains(self, vec):
        return not self.reduce(vec).any()

    def add(self, vec):
        """Absorb vec into the span; True exactly when the rank grows."""
        v = self.reduce(vec)
        support = np.flatnonzero(v)
        if support.size == 0:
            return False
        c = int(support[0])
        v = (v * _inv_scalar(int(v[c]), self.p)) % self.p
        if self.rows is None:
            self.rows = v[None, :]
        else:
            col = self.rows[:, c]
            if col.any():
                self.rows = (self.rows - np.outer(col, v)) % self.p
            self.rows = np.vstack([self.rows, v])
        self.pivots.append(c)
        return True
