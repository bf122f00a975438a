"""Signed permutation modules over GF(p) and their indecomposable summands.

A module M(alpha|beta) has a basis of colour words: assignments of the n
points to colours c_1..c_r, d_1..d_s with content (alpha, beta). An
adjacent transposition swaps two positions, fixing a word with sign +1
when both positions carry the same c-colour and sign -1 when they carry
the same d-colour. Generators are stored as (perm, sign) pairs, so the
group action costs O(dim) instead of a matrix product.

Decomposition runs a Fitting-style splitting tree. Random equivariant
endomorphisms are sampled by sandwiching random elements of End(M),
computed once per module by sign-aware orbit analysis of basis pairs,
between the tracked inclusion/projection maps of each node; kernels of
the coprime factors of a minimal polynomial split a node, and a node
that refuses to split for many rounds is accepted as indecomposable.
Summands are then matched against a registry of labelled classes built
in the fixed total order, with loud integrity errors on any
inconsistency: multiplicities must fill the module dimension and every
sweep step must expose exactly one new class, so a misidentification
cannot pass silently.
"""

import weakref
from math import factorial, isqrt

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components
from sympy import Poly, Symbol

from . import gfp
from .combinat import (
    check_odd_prime,
    enumerate_p2p,
    enumerate_partitions,
    is_p_restricted,
    scale,
    size,
    wp,
)

DIM_CAP = 20000
MAX_NONSPLIT_ROUNDS = 30
MAX_NONSPLIT_ROUNDS_BIG = 12
ISO_RANDOM_TRIES = 24
ISO_SPAN_PRODUCT_CAP = 4096


class DimensionCapError(RuntimeError):
    """Raised when a module would exceed the configured basis-size cap."""

    def __init__(self, dim, cap):
        super().__init__(
            f"module dimension {dim} exceeds the cap {cap}; "
            f"pass a larger cap to proceed"
        )
        self.dim = dim
        self.cap = cap


class IntegrityError(RuntimeError):
    """Raised when decomposition bookkeeping reaches an impossible state."""


def module_dimension(ab):
    alpha, beta = ab
    n = size(alpha) + size(beta)
    d = factorial(n)
    for part in tuple(alpha) + tuple(beta):
        d //= factorial(part)
    return d


def _multiset_words(counts):
    """All distinct arrangements of the multiset, lexicographically."""
    total = sum(counts)
    counts = list(counts)
    word = [0] * total
    out = []

    def rec(k):
        if k == total:
            out.append(tuple(word))
            return
        for x in range(len(counts)):
            if counts[x]:
                counts[x] -= 1
                word[k] = x
                rec(k + 1)
                counts[x] += 1

    rec(0)
    return out


class SignedPermModule:
    """Explicit signed permutation module with monomial generator actions."""

    def __init__(self, ab, p, words, perms, signs):
        self.ab = ab
        self.p = p
        self.n = size(ab[0]) + size(ab[1])
        self.words = words
        self.dim = len(words)
        self.perms = perms
        self.signs = signs

    def generator_matrix(self, i):
        a = np.zeros((self.dim, self.dim), dtype=np.int64)
        a[self.perms[i], np.arange(self.dim)] = self.signs[i] % self.p
        return a

    def generator_matrices(self):
        return [self.generator_matrix(i) for i in range(len(self.perms))]


def build_module(ab, p, cap=DIM_CAP):
    """Construct M(alpha|beta) over GF(p) with its generator actions."""
    check_odd_prime(p)
    alpha, beta = tuple(ab[0]), tuple(ab[1])
    if any(x < 0 for x in alpha + beta):
        raise ValueError("negative entries in the content pair")
    dim = module_dimension((alpha, beta))
    if dim > cap:
        raise DimensionCapError(dim, cap)
    n = size(alpha) + size(beta)
    r = len(alpha)
    words = _multiset_words(alpha + beta)
    index = {w: j for j, w in enumerate(words)}
    perms = []
    signs = []
    for i in range(n - 1):
        perm = np.empty(dim, dtype=np.int64)
        sign = np.empty(dim, dtype=np.int64)
        for j, w in enumerate(words):
            a, b = w[i], w[i + 1]
            if a == b:
                perm[j] = j
                sign[j] = 1 if a < r else -1
            else:
                perm[j] = index[w[:i] + (b, a) + w[i + 2 :]]
                sign[j] = 1
        perms.append(perm)
        signs.append(sign)
    return SignedPermModule((alpha, beta), p, words, perms, signs)


def _compose_words(perm_a, sign_a, perm_b, sign_b):
    """(perm, sign) of the product action A_a A_b."""
    return perm_a[perm_b], sign_b * sign_a[perm_b]


def _word_action(module, word):
    """(perm, sign) for the product of generators s_{i+1}, i in word."""
    perm = np.arange(module.dim, dtype=np.int64)
    sign = np.ones(module.dim, dtype=np.int64)
    for i in word:
        perm, sign = _compose_words(module.perms[i], module.signs[i], perm, sign)
    return perm, sign


def _fingerprint_words(n):
    """A fixed list of generator-index words used as trace probes."""
    words = [tuple(range(k)) for k in range(1, n)]
    for extra in (
        (0, 2),
        (0, 2, 4),
        (0, 1, 3),
        (0, 1, 3, 4),
        (0, 2, 4, 6),
        (0, 1, 3, 5),
    ):
        if extra and all(i < n - 1 for i in extra):
            words.append(extra)
    return words


# ---------------------------------------------------------------------------
# Hom spaces by sign-aware orbit analysis


class HomBasis:
    """Basis of the intertwiner space M -> N, encoded cell by cell.

    An intertwiner X (dim N rows, dim M columns) must satisfy
    X[k', j'] = signN[k] * signM[j] * X[k, j] whenever the generator
    action carries the cell (k, j) to (k', j'), so the space has one
    basis element per sign-consistent orbit of cells. orbit[cell] holds
    the index of the basis element supported there (-1 when the cell is
    forced to zero) and coeff[cell] its value (+1 or -1) on the cell.
    """

    def __init__(self, shape, orbit, coeff, num):
        self.shape = shape
        self.orbit = orbit
        self.coeff = coeff
        self.num = num

    def element(self, coeffs, p):
        vals = np.concatenate((np.asarray(coeffs, dtype=np.int64) % p, [0]))
        flat = vals[self.orbit] * self.coeff
        return (flat % p).reshape(self.shape)

    def sample(self, rng, p):
        return self.element(rng.integers(0, p, self.num), p)

    def matrices(self, p):
        eye = np.eye(self.num, dtype=np.int64)
        return [self.element(eye[i], p) for i in range(self.num)]


def _hom_orbits(m, n_mod):
    """HomBasis of the intertwiners m -> n_mod.

    Builds a graph on two sign layers of the cell grid and reads the
    connected components: a component meeting both layers of one cell
    forces that orbit to zero, otherwise the two layers of an orbit are
    mirror components and one basis element survives.
    """
    if m.n != n_mod.n or m.p != n_mod.p:
        raise ValueError("hom requires equal degree and prime")
    dn, dm = n_mod.dim, m.dim
    cells = dn * dm
    if not m.perms:
        orbit = np.arange(cells, dtype=np.int64)
        coeff = np.ones(cells, dtype=np.int64)
        return HomBasis((dn, dm), orbit, coeff, cells)
    base = np.arange(cells, dtype=np.int64)
    src = []
    dst = []
    for g in range(len(m.perms)):
        image = (n_mod.perms[g][:, None] * dm + m.perms[g][None, :]).ravel()
        sg = (n_mod.signs[g][:, None] * m.signs[g][None, :]).ravel()
        flip = (sg < 0).astype(np.int64) * cells
        src.append(base)
        dst.append(image + flip)
        src.append(base + cells)
        dst.append(image + (cells - flip))
    src = np.concatenate(src)
    dst = np.concatenate(dst)
    graph = sparse.coo_matrix(
        (np.ones(len(src), dtype=np.int8), (src, dst)),
        shape=(2 * cells, 2 * cells),
    )
    _, comp = connected_components(graph, directed=False)
    cp = comp[:cells].astype(np.int64)
    cm = comp[cells:].astype(np.int64)
    ncomp = int(comp.max()) + 1
    mirror = np.empty(ncomp, dtype=np.int64)
    mirror[cp] = cm
    mirror[cm] = cp
    ids = np.arange(ncomp)
    keep = ids[ids < mirror]
    remap = np.full(ncomp, -1, dtype=np.int64)
    remap[keep] = np.arange(len(keep))
    direct = remap[cp]
    via_mirror = remap[mirror[cp]]
    orbit = np.where(direct >= 0, direct, via_mirror)
    coeff = np.where(direct >= 0, 1, np.where(via_mirror >= 0, -1, 0)).astype(
        np.int64
    )
    return HomBasis((dn, dm), orbit, coeff, len(keep))


def hom_basis(m, n_mod):
    """All intertwiners m -> n_mod, as dense matrices."""
    return _hom_orbits(m, n_mod).matrices(m.p)


def hom_dim_kernel(m, n_mod):
    """Hom dimension by the naive commutant linear system.

    Independent of the orbit bookkeeping: intersects, generator by
    generator, the coefficient kernels of X -> B_g X - X A_g on the
    running solution basis. Quadratic memory in dim m * dim n_mod, so
    meant for small cross-checks only.
    """
    p = m.p
    da, db = m.dim, n_mod.dim
    basis = np.eye(da * db, dtype=np.int64)
    for a_g, b_g in zip(m.generator_matrices(), n_mod.generator_matrices()):
        mats = basis.reshape(-1, db, da)
        images = np.stack(
            [(gfp.matmul(b_g, x, p) - gfp.matmul(x, a_g, p)) % p for x in mats]
        ).reshape(len(basis), -1)
        null = gfp.nullspace(images.T, p)
        if len(null) == 0:
            return 0
        basis = gfp.matmul(null, basis, p)
    return len(basis)


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient arrays ordered low degree first

_X = Symbol("x")


def _poly_trim(c):
    c = np.asarray(c, dtype=np.int64)
    nz = np.nonzero(c)[0]
    return c[: nz[-1] + 1] if len(nz) else c[:0]


def _poly_mul(a, b, p):
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    return _poly_trim(np.convolve(a, b) % p)


def _poly_divmod(a, b, p):
    a = _poly_trim(a).copy()
    b = _poly_trim(b)
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    inv = gfp._inv_scalar(b[-1], p)
    q = np.zeros(max(len(a) - len(b) + 1, 0), dtype=np.int64)
    while len(a) >= len(b):
        k = len(a) - len(b)
        c = (a[-1] * inv) % p
        q[k] = c
        a[k : k + len(b)] = (a[k : k + len(b)] - c * b) % p
        a = _poly_trim(a)
    return q, a


def _poly_gcd(a, b, p):
    a, b = _poly_trim(a), _poly_trim(b)
    while len(b):
        a, b = b, _poly_divmod(a, b, p)[1]
    if len(a):
        a = (a * gfp._inv_scalar(a[-1], p)) % p
    return a


def _poly_lcm(a, b, p):
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.int64)
    g = _poly_gcd(a, b, p)
    q, r = _poly_divmod(_poly_mul(a, b, p), g, p)
    assert len(r) == 0
    return (q * gfp._inv_scalar(q[-1], p)) % p


def _poly_eval_matrix(coeffs, z, p):
    """coeffs(z) by square-root blocking, few matrix products."""
    coeffs = np.asarray(coeffs, dtype=np.int64) % p
    d = z.shape[0]
    if len(coeffs) == 0:
        return np.zeros((d, d), dtype=np.int64)
    s = max(1, isqrt(len(coeffs) - 1) + 1)
    powers = [np.eye(d, dtype=np.int64)]
    for _ in range(s - 1):
        powers.append(gfp.matmul(powers[-1], z, p))
    zs = gfp.matmul(powers[-1], z, p)
    out = np.zeros((d, d), dtype=np.int64)
    for block in reversed(
        [coeffs[i : i + s] for i in range(0, len(coeffs), s)]
    ):
        out = gfp.matmul(out, zs, p)
        for e, c in enumerate(block):
            if c:
                out = (out + int(c) * powers[e]) % p
    return out


def _vector_minpoly(z, v, p):
    """Monic minimal polynomial of z on the Krylov space of v."""
    d = z.shape[0]
    rows = []
    cur = np.asarray(v, dtype=np.int64) % p
    combo = np.zeros(d + 2, dtype=np.int64)
    combo[0] = 1
    for _ in range(d + 1):
        red = cur.copy()
        cmb = combo.copy()
        for lead, row, rc in rows:
            c = red[lead]
            if c:
                red = (red - c * row) % p
                cmb = (cmb - c * rc) % p
        nz = np.nonzero(red)[0]
        if len(nz) == 0:
            poly = _poly_trim(cmb)
            return (poly * gfp._inv_scalar(poly[-1], p)) % p
        lead = int(nz[0])
        inv = gfp._inv_scalar(red[lead], p)
        rows.append((lead, (red * inv) % p, (cmb * inv) % p))
        cur = gfp.matmul(z, cur[:, None], p)[:, 0]
        combo = np.roll(combo, 1)
        combo[0] = 0
    raise IntegrityError("Krylov iteration failed to close")


def matrix_minpoly(z, p, rng):
    """Monic minimal polynomial of the matrix z over GF(p)."""
    d = z.shape[0]
    if d == 0:
        return np.array([1], dtype=np.int64)
    m = np.array([1], dtype=np.int64)
    for _ in range(6):
        v = rng.integers(0, p, d)
        if not v.any():
            v[int(rng.integers(0, d))] = 1
        m = _poly_lcm(m, _vector_minpoly(z, v, p), p)
        if len(m) > 1 and not _poly_eval_matrix(m, z, p).any():
            return m
    for j in range(d):
        v = np.zeros(d, dtype=np.int64)
        v[j] = 1
        m = _poly_lcm(m, _vector_minpoly(z, v, p), p)
        if not _poly_eval_matrix(m, z, p).any():
            return m
    raise IntegrityError("minimal polynomial did not annihilate the matrix")


def _factor_poly(coeffs, p):
    """Irreducible factorization [(coeff array, multiplicity)], sorted."""
    poly = Poly([int(c) for c in reversed(coeffs)], _X, modulus=p)
    _, factors = poly.factor_list()
    out = []
    for f, mult in factors:
        fc = np.array(
            [int(c) % p for c in reversed(f.all_coeffs())], dtype=np.int64
        )
        out.append((fc, int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), [int(x) for x in fm[0]]))
    return out


# ---------------------------------------------------------------------------
# Fitting decomposition into indecomposable summands


class Summand:
    """A direct summand of a signed permutation module.

    C (dim parent x dim) and R (dim x dim parent) are equivariant
    inclusion/projection maps with R C = identity; gens are the
    restricted generator actions on the summand.
    """

    def __init__(self, parent, C, R, gens):
        self.parent = parent
        self.C = C
        self.R = R
        self.gens = gens
        self.dim = C.shape[1]
        self.p = parent.p
        self.n = parent.n
        self._fp = None

    def fingerprint(self):
        """Iso invariant: the dimension and traces of fixed word actions.

        The trace of a word action on the summand equals the trace of
        the monomial parent action against the projector C R, which
        costs O(dim parent) per word once the projector is formed.
        """
        if self._fp is None:
            p = self.p
            proj = gfp.matmul(self.C, self.R, p)
            traces = [int(np.trace(proj) % p)]
            for word in _fingerprint_words(self.n):
                perm, sign = _word_action(self.parent, word)
                val = proj[np.arange(len(perm)), perm]
                traces.append(int(np.dot(sign, val) % p))
            self._fp = (self.dim, tuple(traces))
        return self._fp


def _apply_gen_left(perm, sign, x, p):
    """The product A_g x for a signed permutation generator."""
    out = np.empty_like(x)
    out[perm] = (sign[:, None] * x) % p
    return out


def _node_gens(module, C, R, p):
    """Generator actions restricted to the summand cut out by (C, R)."""
    return [
        gfp.matmul(R, _apply_gen_left(perm, sign, C, p), p)
        for perm, sign in zip(module.perms, module.signs)
    ]


def _split_once(z, p, rng):
    """Split along the coprime minpoly factors of z, or None.

    The generalized kernels of the irreducible factors are invariant
    under everything commuting with z, in particular under the group
    action, so they cut the node into direct summands.
    """
    m = matrix_minpoly(z, p, rng)
    factors = _factor_poly(m, p)
    if len(factors) < 2:
        return None
    blocks = []
    for f, mult in factors:
        w = _poly_eval_matrix(f, z, p)
        wm = np.eye(z.shape[0], dtype=np.int64)
        for _ in range(mult):
            wm = gfp.matmul(wm, w, p)
        basis = gfp.nullspace(wm, p)
        if len(basis) == 0:
            raise IntegrityError("minpoly factor with an empty kernel")
        blocks.append(basis.T)
    u = np.concatenate(blocks, axis=1)
    if u.shape[1] != z.shape[0]:
        raise IntegrityError("generalized kernels do not fill the space")
    u_inv = gfp.inverse(u, p)
    if u_inv is None:
        raise IntegrityError("generalized kernels are not independent")
    out = []
    start = 0
    for b in blocks:
        k = b.shape[1]
        out.append((b, u_inv[start : start + k]))
        start += k
    return out


def decompose_summands(module, end_basis, p, rng, start=None):
    """The indecomposable summands of the module, as Summand objects.

    Monte Carlo in the choice of endomorphisms: a node is accepted as
    indecomposable after a fixed number of non-splitting rounds. All
    downstream bookkeeping re-checks dimensions and label counts, so a
    premature accept cannot pass silently through the labelled
    decomposition. An optional (C, R) starting node restricts the
    splitting to that summand of the module.
    """
    eye = np.eye(module.dim, dtype=np.int64)
    if start is None:
        start = (eye, eye)
    dim = start[0].shape[1]
    if end_basis.num == 1 and dim == module.dim:
        return [Summand(module, eye, eye, _node_gens(module, eye, eye, p))]
    queue = [start]
    leaves = []
    while queue:
        C, R = queue.pop()
        d = C.shape[1]
        split = None
        if d > 1:
            rounds = (
                MAX_NONSPLIT_ROUNDS if d <= 128 else MAX_NONSPLIT_ROUNDS_BIG
            )
            for _ in range(rounds):
                big = end_basis.sample(rng, p)
                z = gfp.matmul(gfp.matmul(R, big, p), C, p)
                split = _split_once(z, p, rng)
                if split is not None:
                    break
        if split is None:
            leaves.append(Summand(module, C, R, _node_gens(module, C, R, p)))
            continue
        for b, r in split:
            queue.append((gfp.matmul(C, b, p), gfp.matmul(r, R, p)))
    total = sum(leaf.dim for leaf in leaves)
    if total != dim:
        raise IntegrityError(f"summand dimensions sum to {total}, not {dim}")
    return leaves


def idempotent_summand(module, f):
    """The summand cut out by an equivariant idempotent f of the module."""
    p = module.p
    f = np.asarray(f, dtype=np.int64) % p
    if gfp.matmul(f, f, p).tolist() != f.tolist():
        raise ValueError("the map is not idempotent")
    b = gfp.column_space_basis(f, p)
    ker = gfp.nullspace(f, p)
    u = np.concatenate([b, ker.T], axis=1) if len(ker) else b
    u_inv = gfp.inverse(u, p)
    if u_inv is None:
        raise IntegrityError("image and kernel of the idempotent overlap")
    r = u_inv[: b.shape[1]]
    return Summand(module, b, r, _node_gens(module, b, r, p))


# ---------------------------------------------------------------------------
# isomorphism testing


def _random_intertwiner(a, b, hom, rng):
    """A random equivariant map a -> b through the ambient Hom basis."""
    p = a.p
    return gfp.matmul(gfp.matmul(b.R, hom.sample(rng, p), p), a.C, p)


def _summands_isomorphic(a, b, hom_ab, rng, tries=ISO_RANDOM_TRIES):
    """Monte Carlo iso test for indecomposable summands, one-sided error.

    When a and b are isomorphic indecomposables a random element of
    Hom(a, b) is invertible with probability at least 1 - 1/p, so a
    miss across all tries is negligible; a True answer is exact.
    """
    if a.dim != b.dim or a.fingerprint() != b.fingerprint():
        return False
    p = a.p
    for _ in range(tries):
        if gfp.is_invertible(_random_intertwiner(a, b, hom_ab, rng), p):
            return True
    return False


def _hom_span(a, b, hom_ab):
    """Basis of Hom(a, b) as dense matrices, via the ambient Hom basis."""
    p = a.p
    flats = [
        gfp.matmul(gfp.matmul(b.R, x, p), a.C, p).ravel()
        for x in hom_ab.matrices(p)
    ]
    if not flats:
        return []
    rr, pivots = gfp.rref(np.stack(flats) % p, p)
    return [rr[i].reshape((b.dim, a.dim)) for i in range(len(pivots))]


_leaf_cache = weakref.WeakKeyDictionary()


def _leaves_of(s, rng):
    """Indecomposable leaves of a summand, cached on the parent module."""
    parent = s.parent
    key = (s.C.shape, s.C.tobytes(), s.R.tobytes())
    per_module = _leaf_cache.setdefault(parent, {})
    if key not in per_module:
        per_module[key] = decompose_summands(
            parent,
            _hom_orbits(parent, parent),
            parent.p,
            rng,
            start=(s.C, s.R),
        )
    return per_module[key]


def _as_summand(u):
    if isinstance(u, Summand):
        return u
    if isinstance(u, SignedPermModule):
        eye = np.eye(u.dim, dtype=np.int64)
        return Summand(u, eye, eye, _node_gens(u, eye, eye, u.p))
    raise TypeError("expected a SignedPermModule or a Summand")


def modules_isomorphic(u, v, seed=0):
    """Whether two modules or summands are isomorphic over GF(p).

    Searches Hom(u, v) for an invertible map; on failure, and when the
    composition space is small enough to enumerate, it certifies the
    negative answer by showing that the span of all compositions
    u -> v -> u, a two-sided ideal of End(u), is nilpotent, so no
    composition can be invertible. Non-isomorphic indecomposables
    always fall to one of those two cases. A decomposable pair sharing
    a common summand without being isomorphic escapes both, as does
    any pair with a large composition space, so the remaining case
    splits each side into indecomposable leaves and matches them
    pairwise, deciding by unique decomposition.
    """
    a = _as_summand(u)
    b = _as_summand(v)
    if a.n != b.n or a.p != b.p:
        raise ValueError("iso test requires equal degree and prime")
    if a.dim != b.dim:
        return False
    p = a.p
    rng = np.random.default_rng(seed)
    hom_ab = _hom_orbits(a.parent, b.parent)
    for _ in range(ISO_RANDOM_TRIES):
        if gfp.is_invertible(_random_intertwiner(a, b, hom_ab, rng), p):
            return True
    xs = _hom_span(a, b, hom_ab)
    ys = _hom_span(b, a, _hom_orbits(b.parent, a.parent))
    if not xs or not ys:
        return False
    if len(xs) * len(ys) <= ISO_SPAN_PRODUCT_CAP:
        comps = _independent(
            (gfp.matmul(y, x, p) for x in xs for y in ys), p
        )
        for c in comps:
            if gfp.is_invertible(c, p):
                return True
        power = comps
        while power:
            square = _independent(
                (gfp.matmul(w, c, p) for w in power for c in power), p
            )
            if len(square) == len(power):
                break
            power = square
        if not power:
            return False
    leaves_a = _leaves_of(a, rng)
    leaves_b = _leaves_of(b, rng)
    if len(leaves_a) != len(leaves_b):
        return False
    unused = list(leaves_b)
    for x in leaves_a:
        for i, y in enumerate(unused):
            if _summands_isomorphic(x, y, hom_ab, rng):
                unused.pop(i)
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# algebra structure: radical, Wedderburn components, idempotent lifting


def _independent(mats, p):
    """Subset of mats forming a basis of their span, keeping order."""
    span = gfp.Echelon(p)
    return [
        np.asarray(m, dtype=np.int64) % p
        for m in mats
        if span.add(np.asarray(m).ravel())
    ]


def _combine(rows, mats, p):
    """Matrices formed by coefficient rows over a matrix list."""
    out = []
    shape = mats[0].shape
    for row in rows:
        acc = np.zeros(shape, dtype=np.int64)
        for c, m in zip(row, mats):
            if c:
                acc = (acc + int(c) * m) % p
        out.append(acc)
    return out


def _matrix_power(m, q, p):
    out = np.eye(m.shape[0], dtype=np.int64)
    base = m % p
    while q:
        if q & 1:
            out = gfp.matmul(out, base, p)
        base = gfp.matmul(base, base, p)
        q >>= 1
    return out


def _lift_power_trace(x, y, k, p):
    """tr((xy)^(p^k)) of the integer lifts, reduced mod p^(k+1)."""
    mod = p ** (k + 1)
    w = np.matmul(x % mod, y % mod) % mod
    out = np.eye(w.shape[0], dtype=np.int64)
    q = p**k
    while q:
        if q & 1:
            out = np.matmul(out, w) % mod
        w = np.matmul(w, w) % mod
        q >>= 1
    return int(np.trace(out) % mod)


def _trace_chain(basis, p, d):
    """Iterated kernels of p-adically lifted trace forms; contains the radical.

    Step k keeps the x of the previous piece with tr((xy)^(p^k)) = 0
    mod p^(k+1) for every y of the previous piece, traces taken on
    integer lifts. A radical x passes every step with any lift: xy is
    nilpotent mod p, so every elementary symmetric function of the lift
    is divisible by p and the Waring expansion of the power sum has
    p-adic valuation at least k+1 in each term. The divided trace is
    only biadditive when both arguments satisfy the previous
    conditions, which is why the second argument shrinks along with the
    first. The certification in radical() checks the reverse inclusion.
    """
    cur = basis
    k = 0
    while p**k <= d and cur:
        unit = p**k
        gram = np.zeros((len(cur), len(cur)), dtype=np.int64)
        for i, x in enumerate(cur):
            for j, y in enumerate(cur):
                t = _lift_power_trace(x, y, k, p)
                if t % unit:
                    raise IntegrityError("trace value off the p-adic grid")
                gram[i, j] = (t // unit) % p
        null = gfp.nullspace(gram, p)
        cur = _independent(_combine(null, cur, p), p) if len(null) else []
        k += 1
    return cur


def radical(mats, p):
    """Basis of the Jacobson radical of the algebra spanned by mats.

    mats must span a subalgebra of a matrix algebra over GF(p), closed
    under products and containing the identity in its span. The
    candidate from the trace chain is certified before returning: it
    must be a two-sided ideal, nilpotent, and the chain must vanish on
    the quotient; together these pin it as exactly the radical.
    """
    check_odd_prime(p)
    basis = _independent(list(mats), p)
    if not basis:
        return []
    d = basis[0].shape[0]
    rad = _trace_chain(basis, p, d)
    rad_span = gfp.Echelon(p)
    for r in rad:
        rad_span.add(r.ravel())
    for a in basis:
        for r in rad:
            for prod in (gfp.matmul(a, r, p), gfp.matmul(r, a, p)):
                if not rad_span.contains(prod.ravel()):
                    raise IntegrityError("radical candidate is not an ideal")
    power = rad
    while power:
        square = _independent(
            (gfp.matmul(x, r, p) for x in power for r in power), p
        )
        if len(square) == len(power):
            raise IntegrityError("radical candidate is not nilpotent")
        power = square
    quot = _Quotient(basis, rad, p)
    if quot.dim:
        if p**quot.dim <= 30000:
            if not _quotient_semisimple_brute(quot):
                raise IntegrityError(
                    "quotient by the candidate is not semisimple"
                )
        else:
            left = _independent(_left_tables(quot), p)
            if _trace_chain(left, p, quot.dim):
                raise IntegrityError(
                    "quotient by the candidate is not semisimple"
                )
    return rad


class _Quotient:
    """The algebra modulo a spanned ideal, through chosen representatives."""

    def __init__(self, basis, rad, p):
        self.p = p
        d = basis[0].shape[0]
        self._d = d
        flat_rad = [m.ravel() for m in rad]
        span = gfp.Echelon(p)
        for v in flat_rad:
            span.add(v)
        reps = [m % p for m in basis if span.add(m.ravel())]
        self.reps = reps
        self.dim = len(reps)
        self.n_rad = len(flat_rad)
        all_rows = flat_rad + [m.ravel() for m in reps]
        self._stack_t = (
            (np.vstack(all_rows) % p).T
            if all_rows
            else np.zeros((d * d, 0), dtype=np.int64)
        )

    def coords(self, m):
        """Coordinates in the representative part, radical part dropped."""
        sol = gfp.solve(self._stack_t, np.asarray(m).ravel() % self.p, self.p)
        if sol is None:
            raise IntegrityError("element outside the algebra span")
        return sol[self.n_rad :] % self.p

    def rep(self, coords):
        out = np.zeros((self._d, self._d), dtype=np.int64)
        for c, m in zip(coords, self.reps):
            if c:
                out = (out + int(c) * m) % self.p
        return out

    def mul(self, ca, cb):
        return self.coords(gfp.matmul(self.rep(ca), self.rep(cb), self.p))

    def identity_coords(self):
        eye = np.eye(self.dim, dtype=np.int64)
        sys_rows = np.concatenate(_left_tables(self), axis=0)
        rhs = np.concatenate([eye[:, i] for i in range(self.dim)])
        one = gfp.solve(sys_rows, rhs, self.p)
        if one is None:
            raise IntegrityError("quotient has no identity element")
        return one % self.p


def _left_tables(q):
    """Left multiplication operators of the quotient basis."""
    eye = np.eye(q.dim, dtype=np.int64)
    tables = []
    for i in range(q.dim):
        cols = [q.mul(eye[i], eye[j]) for j in range(q.dim)]
        tables.append(np.stack(cols, axis=1) % q.p)
    return tables


def _right_tables(q):
    eye = np.eye(q.dim, dtype=np.int64)
    tables = []
    for j in range(q.dim):
        cols = [q.mul(eye[i], eye[j]) for i in range(q.dim)]
        tables.append(np.stack(cols, axis=1) % q.p)
    return tables


def _quotient_semisimple_brute(q):
    """Exactly decide whether the quotient has zero radical.

    Enumerates every element up to scalars in multiplication-table
    coordinates; the radical is nonzero precisely when some nonzero
    element generates a nilpotent two-sided ideal. Used only when
    p^dim is small enough to sweep.
    """
    p = q.p
    left = _left_tables(q)
    right = _right_tables(q)
    for coeffs in np.ndindex(*(p,) * q.dim):
        vec = np.array(coeffs, dtype=np.int64)
        nz = np.nonzero(vec)[0]
        if len(nz) == 0 or vec[nz[0]] != 1:
            continue
        ideal = [vec]
        while True:
            new = list(ideal)
            for v in ideal:
                for tab in left:
                    new.append(tab @ v % p)
                for tab in right:
                    new.append(tab @ v % p)
            new = _independent(new, p)
            if len(new) == len(ideal):
                break
            ideal = new
        power = ideal
        for _ in range(len(ideal) + 1):
            if not power:
                break
            nxt = []
            for z in power:
                lz = sum(int(c) * tab for c, tab in zip(z, left)) % p
                for w in ideal:
                    nxt.append(lz @ w % p)
            power = _independent(nxt, p)
        if not power:
            return False
    return True


def _center_rows(q, left, right):
    stack = np.concatenate(
        [(left[i] - right[i]) % q.p for i in range(q.dim)], axis=0
    )
    return [row for row in gfp.nullspace(stack, q.p)]


def _wedderburn_data(mats, p):
    """(radical, quotient, primitive central idempotents, left, right).

    The center of the semisimple quotient is split along its Frobenius
    fixed points: a fixed element satisfies x^p = x, so Lagrange
    evaluation at the scalars of GF(p) refines the identity into the
    primitive central idempotents deterministically.
    """
    basis = _independent(list(mats), p)
    rad = radical(basis, p)
    q = _Quotient(basis, rad, p)
    if q.dim == 0:
        return rad, q, [], [], []
    left = _left_tables(q)
    right = _right_tables(q)
    one = q.identity_coords()
    center = _center_rows(q, left, right)
    if not center:
        raise IntegrityError("unital quotient with empty center")
    fixed_rows = []
    for row in center:
        lmat = np.zeros((q.dim, q.dim), dtype=np.int64)
        for c, tab in zip(row, left):
            if c:
                lmat = (lmat + int(c) * tab) % p
        row_p = gfp.matmul(_matrix_power(lmat, p, p), one[:, None], p)[:, 0]
        fixed_rows.append((row_p - row) % p)
    fro = gfp.nullspace(np.stack(fixed_rows).T, p)
    fixed = [np.tensordot(frow, np.stack(center), axes=(0, 0)) % p for frow in fro]
    parts = [one]
    for b in fixed:
        refined = []
        for e in parts:
            refined.extend(_eigen_split(e, b, q, p))
        parts = refined
    return rad, q, parts, left, right


def _eigen_split(e, b, q, p):
    """Refine the central idempotent e along the Frobenius-fixed b."""
    u = q.mul(e, b)
    pieces = []
    for c in range(p):
        piece = e.copy()
        for c2 in range(p):
            if c2 == c:
                continue
            piece = q.mul(piece, (u - c2 * e) % p)
            piece = (piece * gfp._inv_scalar((c - c2) % p, p)) % p
        if piece.any():
            pieces.append(piece)
    if not pieces:
        raise IntegrityError("eigenvalue split lost the idempotent")
    return pieces


def _component_data(e, q, left, center, p):
    """(matrix size, residue field degree) of one Wedderburn component."""
    le = np.zeros((q.dim, q.dim), dtype=np.int64)
    for c, tab in zip(e, left):
        if c:
            le = (le + int(c) * tab) % p
    block_dim = gfp.rank(le, p)
    e_deg = gfp.rank(np.stack([q.mul(e, z) for z in center]) % p, p)
    n_i = isqrt(block_dim // e_deg) if block_dim % e_deg == 0 else 0
    if n_i * n_i * e_deg != block_dim:
        raise IntegrityError("component dimensions are inconsistent")
    return n_i, e_deg


def wedderburn(mats, p):
    """Components of span(mats)/radical as (matrix size, field degree).

    For End(M) the matrix sizes are the multiplicities of the
    indecomposable summands of M. Sorted descending.
    """
    rad, q, parts, left, right = _wedderburn_data(mats, p)
    if q.dim == 0:
        return []
    center = _center_rows(q, left, right)
    out = [_component_data(e, q, left, center, p) for e in parts]
    out.sort(key=lambda t: (-t[0], -t[1]))
    if sum(n * n * e for n, e in out) != q.dim:
        raise IntegrityError("component dimensions do not fill the quotient")
    return out


def split_idempotents(mats, module, p):
    """Lift the central idempotents of End/rad and cut the module.

    Returns one record per Wedderburn component: a dict holding the
    exact idempotent map on the module, the dimension of the underlying
    indecomposable class, its multiplicity, and the class index. The
    idempotents are orthogonal and sum to the identity; multiplicity
    times class dimension summed over records gives dim M.
    """
    rad, q, parts, left, right = _wedderburn_data(mats, p)
    d = module.dim
    center = _center_rows(q, left, right)
    comp_data = [_component_data(e, q, left, center, p) for e in parts]
    lifted = []
    remaining = np.eye(d, dtype=np.int64)
    for idx, e in enumerate(parts):
        if idx == len(parts) - 1:
            f = remaining % p
            if gfp.matmul(f, f, p).tolist() != f.tolist():
                raise IntegrityError("final lifted idempotent is defective")
        else:
            cand = gfp.matmul(gfp.matmul(remaining, q.rep(e), p), remaining, p)
            f = _lift_idempotent(cand, p, d)
        lifted.append(f)
        remaining = (remaining - f) % p
    if remaining.any():
        raise IntegrityError("lifted idempotents do not sum to the identity")
    records = []
    for idx, f in enumerate(lifted):
        image_dim = gfp.rank(f, p)
        mult = comp_data[idx][0]
        if image_dim % mult:
            raise IntegrityError(
                "image dimension incompatible with the multiplicity"
            )
        records.append(
            {
                "idempotent": f,
                "dim": image_dim // mult,
                "multiplicity": mult,
                "class_index": idx,
            }
        )
    if sum(r["dim"] * r["multiplicity"] for r in records) != d:
        raise IntegrityError("record dimensions do not sum to dim M")
    return records


def _lift_idempotent(e, p, d):
    cur = e % p
    for _ in range(d.bit_length() + 5):
        sq = gfp.matmul(cur, cur, p)
        if (sq == cur).all():
            return cur
        cube = gfp.matmul(sq, cur, p)
        cur = (3 * sq - 2 * cube) % p
    raise IntegrityError("idempotent lifting did not converge")


# ---------------------------------------------------------------------------
# the labelled decomposition engine


def _canonical_pair(ab):
    """Sort both rows and move size-1 parts of beta over to alpha.

    Modules agreeing after this move are isomorphic, so decompositions
    are cached and Hom bases shared under the canonical key.
    """
    alpha, beta = wp(ab[0]), wp(ab[1])
    ones = sum(1 for x in beta if x == 1)
    beta = tuple(x for x in beta if x != 1)
    alpha = wp(alpha + (1,) * ones)
    return alpha, beta


class DirectEngine:
    """Ground-truth engine decomposing modules into labelled summands.

    Maintains, per degree, a registry of indecomposable classes built
    by sweeping the label modules in the fixed total order; every
    module is then expressed in those classes. Exposes the oracle
    interface of the combinatorial engine: attribute p and method
    projective_signed.
    """

    def __init__(self, p, seed=0, cap=DIM_CAP):
        check_odd_prime(p)
        self.p = p
        self.seed = seed
        self.cap = cap
        self.registry = {}
        self.modules = {}
        self.homs = {}
        self.decomps = {}
        self.leaf_groups = {}

    def module(self, ab):
        key = _canonical_pair(ab)
        if key not in self.modules:
            self.modules[key] = build_module(key, self.p, self.cap)
        return self.modules[key]

    def hom(self, ab, cd):
        key = (_canonical_pair(ab), _canonical_pair(cd))
        if key not in self.homs:
            self.homs[key] = _hom_orbits(
                self.module(key[0]), self.module(key[1])
            )
        return self.homs[key]

    def _rng_for(self, key, salt):
        alpha, beta = key
        return np.random.default_rng(
            [self.seed, salt, len(alpha), *alpha, 999983, len(beta), *beta]
        )

    def _grouped_leaves(self, ab):
        """Summands of M(ab) grouped into iso classes: [(rep, count)]."""
        key = _canonical_pair(ab)
        if key in self.leaf_groups:
            return self.leaf_groups[key]
        module = self.module(key)
        end = self.hom(key, key)
        rng = self._rng_for(key, 1)
        leaves = decompose_summands(module, end, self.p, rng)
        groups = []
        for leaf in leaves:
            for rep, members in groups:
                if _summands_isomorphic(leaf, rep, end, rng):
                    members.append(leaf)
                    break
            else:
                groups.append((leaf, [leaf]))
        out = [(rep, len(members)) for rep, members in groups]
        self.leaf_groups[key] = out
        return out

    def registry_for(self, n):
        """Class representatives for degree n, built label by label."""
        if n in self.registry:
            return self.registry[n]
        classes = []
        for lam, mu in enumerate_p2p(n, self.p):
            row_ab = (lam, scale(self.p, mu))
            unmatched = []
            for rep, count in self._grouped_leaves(row_ab):
                if self._match_registry(rep, classes, row_ab) is None:
                    unmatched.append((rep, count))
            if len(unmatched) != 1 or unmatched[0][1] != 1:
                raise IntegrityError(
                    f"sweep at label {(lam, mu)}: expected exactly one new "
                    f"class of multiplicity 1, found "
                    f"{[(r.dim, c) for r, c in unmatched]}"
                )
            classes.append({"label": (lam, mu), "rep": unmatched[0][0]})
        self.registry[n] = classes
        return classes

    def _match_registry(self, rep, classes, row_ab):
        rng = np.random.default_rng(
            [self.seed, 77, rep.dim, *rep.fingerprint()[1]]
        )
        for idx, cls in enumerate(classes):
            other = cls["rep"]
            if rep.dim != other.dim or rep.fingerprint() != other.fingerprint():
                continue
            hom = self.hom(row_ab, other.parent.ab)
            if _summands_isomorphic(rep, other, hom, rng):
                return idx
        return None

    def decompose(self, ab):
        """Labelled multiset {(lam, mu): multiplicity} of M(ab)."""
        alpha, beta = wp(ab[0]), wp(ab[1])
        key = _canonical_pair((alpha, beta))
        if key in self.decomps:
            return dict(self.decomps[key])
        dim = module_dimension(key)
        if dim > self.cap:
            raise DimensionCapError(dim, self.cap)
        n = size(alpha) + size(beta)
        classes = self.registry_for(n)
        out = {}
        for rep, count in self._grouped_leaves(key):
            idx = self._match_registry(rep, classes, key)
            if idx is None:
                raise IntegrityError(
                    f"a summand of M{key} of dimension {rep.dim} matches "
                    f"no registered class at degree {n}"
                )
            label = classes[idx]["label"]
            out[label] = out.get(label, 0) + count
        dims = {cls["label"]: cls["rep"].dim for cls in classes}
        if sum(m * dims[l] for l, m in out.items()) != module_dimension(key):
            raise IntegrityError("labelled multiplicities do not fill M")
        self.decomps[key] = out
        return dict(out)

    def class_representative(self, n, label):
        for cls in self.registry_for(n):
            if cls["label"] == label:
                return cls["rep"]
        raise KeyError(label)

    def projective_signed(self, ab, lam0):
        lam0 = wp(lam0)
        alpha, beta = wp(ab[0]), wp(ab[1])
        if size(alpha) + size(beta) != size(lam0):
            return 0
        return self.decompose((alpha, beta)).get((lam0, ()), 0)


def decompose_labelled(ab, p, seed=0, engine=None):
    """Labelled multiset of the indecomposable summands of M(ab)."""
    if engine is None:
        engine = DirectEngine(p, seed=seed)
    return engine.decompose(ab)


def projective_oracle(ab, lam0, p, engine=None):
    """Multiplicity of the class (lam0, empty) in M(ab), lam0 p-restricted."""
    if not is_p_restricted(wp(lam0), p):
        raise ValueError("the base label must be p-restricted")
    if engine is None:
        engine = DirectEngine(p)
    return engine.projective_signed(ab, lam0)


def _residue_degree(rep, hom_end, rng, p, samples=8):
    """Degree over GF(p) of End(rep) modulo its radical.

    The minimal polynomial of an endomorphism of an indecomposable is a
    power of one irreducible whose degree divides the residue degree
    and attains it for generic elements, so the maximum over random
    samples is exact with high probability.
    """
    best = 1
    for _ in range(samples):
        z = _random_intertwiner(rep, rep, hom_end, rng)
        m = matrix_minpoly(z, p, rng)
        for f, _ in _factor_poly(m, p):
            deg = len(f) - 1
            if deg == 1 and f[0] == 0:
                continue
            best = max(best, deg)
    return best


def wedderburn_module(ab, p, engine=None, seed=0):
    """Component data [(multiplicity, residue degree)] of End(M(ab)).

    Derived from the labelled decomposition, so it stays feasible for
    modules whose endomorphism algebra is too large for the direct
    structure-constant route. Sorted descending.
    """
    if engine is None:
        engine = DirectEngine(p, seed=seed)
    dec = engine.decompose(ab)
    n = size(wp(ab[0])) + size(wp(ab[1]))
    out = []
    for cls in engine.registry_for(n):
        label = cls["label"]
        if label not in dec:
            continue
        rep = cls["rep"]
        hom_end = engine.hom(rep.parent.ab, rep.parent.ab)
        rng = np.random.default_rng([seed, 5151, rep.dim])
        out.append((dec[label], _residue_degree(rep, hom_end, rng, p)))
    out.sort(key=lambda t: (-t[0], -t[1]))
    return out


def assemble_matrix(n, p, signed=True, engine=None, seed=0):
    """(labels, matrix) of labelled multiplicities at degree n.

    Rows and columns run over the label list in the fixed total order;
    entry [i, j] is the multiplicity of the j-th class in the i-th
    module. Labels are (lam, mu) pairs; for the plain matrix mu is
    empty and the rows are the modules M(lam|empty).
    """
    check_odd_prime(p)
    if engine is None:
        engine = DirectEngine(p, seed=seed)
    if signed:
        labels = enumerate_p2p(n, p)
        rows = [(lam, scale(p, mu)) for lam, mu in labels]
    else:
        labels = [(lam, ()) for lam in enumerate_partitions(n)]
        rows = list(labels)
    mat = np.zeros((len(labels), len(labels)), dtype=np.int64)
    for i, ab in enumerate(rows):
        dec = engine.decompose(ab)
        for j, label in enumerate(labels):
            mat[i, j] = dec.get(label, 0)
    return labels, mat
