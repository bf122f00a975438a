"""Tests for the module-theoretic decomposition engine."""

from math import factorial

import numpy as np
import pytest

from skostka import gfp, modrep, reduction, tabx
from skostka.combinat import enumerate_p2, enumerate_p2p, size, wp

P = 3

_ENGINES = {}


def engine(p=P):
    if p not in _ENGINES:
        _ENGINES[p] = modrep.DirectEngine(p)
    return _ENGINES[p]


def eijs(n):
    out = []
    for i in range(n):
        for j in range(n):
            m = np.zeros((n, n), dtype=np.int64)
            m[i, j] = 1
            out.append(m)
    return out


# ---------------------------------------------------------------------------
# module construction


def test_module_dimensions():
    assert modrep.module_dimension(((2, 1), (3,))) == 60
    assert modrep.build_module(((2, 1), (3,)), P).dim == 60
    for n in range(1, 5):
        m = modrep.build_module(((1,) * n, ()), P)
        assert m.dim == factorial(n)
    assert modrep.build_module(((6,), ()), P).dim == 1
    m = modrep.build_module(((), ()), P)
    assert m.dim == 1 and m.n == 0


def test_sign_conventions():
    # two positions of one c-part swap to the same word with sign +1,
    # two positions of one d-part with sign -1, distinct parts just swap
    m = modrep.build_module(((2,), (2,)), P)
    words = list(m.words)
    j = words.index((0, 0, 1, 1))
    assert m.perms[0][j] == j and m.signs[0][j] == 1
    assert m.perms[2][j] == j and m.signs[2][j] == -1
    k = m.perms[1][j]
    assert words[k] == (0, 1, 0, 1) and m.signs[1][j] == 1


def test_same_d_block_transposition_negates():
    m = modrep.build_module(((), (3,)), P)
    assert m.dim == 1
    for i in range(2):
        a = m.generator_matrix(i)
        assert a.tolist() == [[P - 1]]


def test_generator_relations_exhaustive():
    def compose(m, a, b):
        return modrep._compose_words(a[0], a[1], b[0], b[1])

    for n in range(2, 5):
        for ab in enumerate_p2(n):
            m = modrep.build_module(ab, P)
            gens = [(m.perms[i], m.signs[i]) for i in range(n - 1)]
            for i, g in enumerate(gens):
                sq = compose(m, g, g)
                assert (sq[0] == np.arange(m.dim)).all()
                assert (sq[1] % P == 1).all()
            for i in range(n - 2):
                lhs = compose(m, gens[i], compose(m, gens[i + 1], gens[i]))
                rhs = compose(m, gens[i + 1], compose(m, gens[i], gens[i + 1]))
                assert (lhs[0] == rhs[0]).all()
                assert ((lhs[1] - rhs[1]) % P == 0).all()
            for i in range(n - 1):
                for j in range(i + 2, n - 1):
                    lhs = compose(m, gens[i], gens[j])
                    rhs = compose(m, gens[j], gens[i])
                    assert (lhs[0] == rhs[0]).all()
                    assert ((lhs[1] - rhs[1]) % P == 0).all()


def test_generator_matrix_matches_word_encoding():
    m = modrep.build_module(((2, 1), (1,)), P)
    for i in range(m.n - 1):
        a = m.generator_matrix(i)
        for j in range(m.dim):
            col = np.zeros(m.dim, dtype=np.int64)
            col[m.perms[i][j]] = m.signs[i][j] % P
            assert (a[:, j] == col).all()


def test_dimension_cap():
    with pytest.raises(modrep.DimensionCapError):
        modrep.build_module(((1,) * 8, ()), P, cap=20000)
    err = None
    try:
        modrep.build_module(((1,) * 6, ()), P, cap=100)
    except modrep.DimensionCapError as e:
        err = e
    assert err is not None and err.dim == 720 and err.cap == 100


def test_even_prime_rejected():
    with pytest.raises(ValueError):
        modrep.build_module(((1, 1), ()), 2)
    with pytest.raises(ValueError):
        modrep.DirectEngine(2)


# ---------------------------------------------------------------------------
# hom spaces


def test_hom_dimension_fixtures():
    m11 = modrep.build_module(((1, 1), ()), P)
    m20 = modrep.build_module(((2,), ()), P)
    md = modrep.build_module(((1,), (1,)), P)
    assert modrep._hom_orbits(m11, m11).num == 2
    assert modrep._hom_orbits(m11, m20).num == 1
    assert modrep._hom_orbits(md, md).num == 2


def test_hom_basis_elements_intertwine():
    m = modrep.build_module(((2, 1), ()), P)
    n_mod = modrep.build_module(((1, 1), (1,)), P)
    basis = modrep.hom_basis(m, n_mod)
    assert basis
    for x in basis:
        for g in range(m.n - 1):
            a = m.generator_matrix(g)
            b = n_mod.generator_matrix(g)
            assert (gfp.matmul(x, a, P) == gfp.matmul(b, x, P)).all()


def mackey_hom_dim(ab, cd):
    """Independent Hom dimension count via double-coset matrices.

    Counts nonnegative integer matrices with typed row margins from ab
    and typed column margins from cd, where any cell pairing a c-part
    with a d-part may hold at most 1. Each such matrix is one surviving
    orbit of basis-vector pairs.
    """
    rows = [(s, 0) for s in ab[0]] + [(s, 1) for s in ab[1]]
    cols = [(s, 0) for s in cd[0]] + [(s, 1) for s in cd[1]]
    memo = {}

    def fill_row(i, rem):
        if i == len(rows):
            return 1 if not any(rem) else 0
        key = (i, rem)
        if key in memo:
            return memo[key]
        target, rtype = rows[i]

        def cells(j, left, rem_list):
            if j == len(cols):
                return fill_row(i + 1, tuple(rem_list)) if left == 0 else 0
            total = 0
            cap = min(left, rem_list[j])
            if rtype != cols[j][1]:
                cap = min(cap, 1)
            for v in range(cap + 1):
                rem_list[j] -= v
                total += cells(j + 1, left - v, rem_list)
                rem_list[j] += v
            return total

        out = cells(0, target, list(rem))
        memo[key] = out
        return out

    return fill_row(0, tuple(s for s, _ in cols))


def test_hom_dim_against_double_coset_count():
    for n in range(0, 5):
        mods = {ab: modrep.build_module(ab, P) for ab in enumerate_p2(n)}
        for ab, m in mods.items():
            for cd, n_mod in mods.items():
                want = mackey_hom_dim(ab, cd)
                assert modrep._hom_orbits(m, n_mod).num == want, (ab, cd)
    picks = [(((3, 1), (1,)), ((2, 1), (2,))), (((2, 2), (1,)), ((1, 1, 1), (2,)))]
    for ab, cd in picks:
        m = modrep.build_module(ab, P)
        n_mod = modrep.build_module(cd, P)
        assert modrep._hom_orbits(m, n_mod).num == mackey_hom_dim(ab, cd)


def test_hom_dim_against_naive_kernel():
    pairs = [
        (((2, 1), ()), ((2, 1), ())),
        (((2, 1), ()), ((1, 1, 1), ())),
        (((1, 1), (1,)), ((1,), (2,))),
        (((2,), (2,)), ((2,), (2,))),
        (((1, 1), (2,)), ((2, 1), (1,))),
    ]
    for ab, cd in pairs:
        m = modrep.build_module(ab, P)
        n_mod = modrep.build_module(cd, P)
        assert modrep._hom_orbits(m, n_mod).num == modrep.hom_dim_kernel(m, n_mod)


# ---------------------------------------------------------------------------
# minimal polynomials and factorization


def test_matrix_minpoly():
    rng = np.random.default_rng(5)
    z = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 2]], dtype=np.int64)
    m = modrep.matrix_minpoly(z, P, rng)
    # (x-1)^2 (x-2) = x^3 - 4x^2 + 5x - 2 = x^3 + 2x^2 + 2x + 1 mod 3
    assert m.tolist() == [1, 2, 2, 1]
    factors = modrep._factor_poly(m, P)
    assert sorted((len(f) - 1, mult) for f, mult in factors) == [(1, 1), (1, 2)]
    nil = np.zeros((4, 4), dtype=np.int64)
    nil[0, 1] = nil[1, 2] = 1
    m2 = modrep.matrix_minpoly(nil, P, rng)
    assert m2.tolist() == [0, 0, 0, 1]


# ---------------------------------------------------------------------------
# radical, wedderburn components, idempotent splitting


def test_radical_dimension_fixtures():
    full = eijs(2)
    assert modrep.radical(full, P) == []
    upper = [full[0], full[1], full[3]]
    assert len(modrep.radical(upper, P)) == 1
    m = modrep.build_module(((1, 1, 1), ()), P)
    rad = modrep.radical(modrep.hom_basis(m, m), P)
    assert len(rad) == 4


def brute_radical_dim(basis, p):
    """Largest nilpotent ideal by sweeping all elements, for tiny algebras."""
    stack_t = np.stack([b.ravel() for b in basis]).T % p

    def coords(m):
        c = gfp.solve(stack_t, m.ravel() % p, p)
        assert c is not None
        return c

    k = len(basis)
    left = []
    right = []
    for i in range(k):
        lcols = [coords(gfp.matmul(basis[i], basis[j], p)) for j in range(k)]
        rcols = [coords(gfp.matmul(basis[j], basis[i], p)) for j in range(k)]
        left.append(np.stack(lcols, axis=1) % p)
        right.append(np.stack(rcols, axis=1) % p)
    found = []
    for coeffs in np.ndindex(*(p,) * k):
        vec = np.array(coeffs, dtype=np.int64)
        nz = np.nonzero(vec)[0]
        if len(nz) == 0 or vec[nz[0]] != 1:
            continue
        ideal = [vec]
        while True:
            new = list(ideal)
            for v in ideal:
                for t in left:
                    new.append(t @ v % p)
                for t in right:
                    new.append(t @ v % p)
            new = modrep._independent(new, p)
            if len(new) == len(ideal):
                break
            ideal = new
        power = ideal
        for _ in range(len(ideal) + 1):
            if not power:
                break
            nxt = []
            for z in power:
                lz = sum(int(c) * t for c, t in zip(z, left)) % p
                for w in ideal:
                    nxt.append(lz @ w % p)
            power = modrep._independent(nxt, p)
        if not power:
            found.append(vec)
    return len(modrep._independent(found, p)) if found else 0


def test_radical_against_brute_force():
    cases = [
        [m for k, m in enumerate(eijs(2))],
        [eijs(2)[0], eijs(2)[1], eijs(2)[3]],
    ]
    for ab in [((2, 1), ()), ((2, 2), ()), ((2,), (2,)), ((1, 1), (1,))]:
        m = modrep.build_module(ab, P)
        cases.append(modrep.hom_basis(m, m))
    for mats in cases:
        basis = modrep._independent(mats, P)
        assert len(modrep.radical(basis, P)) == brute_radical_dim(basis, P)


def test_wedderburn_components():
    m11 = modrep.build_module(((1, 1), ()), P)
    assert modrep.wedderburn(modrep.hom_basis(m11, m11), P) == [(1, 1), (1, 1)]
    # M((2,1)|empty) is indecomposable at p = 3, so its endomorphism
    # algebra is local with a one-dimensional semisimple quotient
    m21 = modrep.build_module(((2, 1), ()), P)
    assert modrep.wedderburn(modrep.hom_basis(m21, m21), P) == [(1, 1)]
    m42 = modrep.build_module(((4, 2), ()), P)
    w = modrep.wedderburn(modrep.hom_basis(m42, m42), P)
    assert len(w) == 2 and all(n == 1 for n, e in w)
    full = eijs(2)
    assert modrep.wedderburn(full, P) == [(2, 1)]


def test_split_idempotents():
    m6 = modrep.build_module(((6,), ()), P)
    recs = modrep.split_idempotents(modrep.hom_basis(m6, m6), m6, P)
    assert len(recs) == 1
    assert recs[0]["dim"] == 1 and recs[0]["multiplicity"] == 1

    m42 = modrep.build_module(((4, 2), ()), P)
    basis = modrep.hom_basis(m42, m42)
    recs = modrep.split_idempotents(basis, m42, P)
    assert sorted(r["dim"] for r in recs) == [6, 9]
    assert all(r["multiplicity"] == 1 for r in recs)
    total = np.zeros((15, 15), dtype=np.int64)
    for r in recs:
        f = r["idempotent"]
        assert (gfp.matmul(f, f, P) == f).all()
        total = (total + f) % P
    assert (total == np.eye(15, dtype=np.int64)).all()
    f0, f1 = (r["idempotent"] for r in recs)
    assert not gfp.matmul(f0, f1, P).any()
    assert not gfp.matmul(f1, f0, P).any()


def test_idempotent_summand_equivariance():
    m42 = modrep.build_module(((4, 2), ()), P)
    recs = modrep.split_idempotents(modrep.hom_basis(m42, m42), m42, P)
    for r in recs:
        s = modrep.idempotent_summand(m42, r["idempotent"])
        assert s.dim == r["dim"] * r["multiplicity"]
        assert (gfp.matmul(s.R, s.C, P) == np.eye(s.dim, dtype=np.int64)).all()
        for g in range(m42.n - 1):
            a = m42.generator_matrix(g)
            assert (
                gfp.matmul(a, s.C, P) == gfp.matmul(s.C, s.gens[g], P)
            ).all()


# ---------------------------------------------------------------------------
# isomorphism testing


def test_modules_isomorphic_reflexive():
    m = modrep.build_module(((2, 1), ()), P)
    assert modrep.modules_isomorphic(m, m)


def test_modules_isomorphic_shared_class_across_parents():
    m42 = modrep.build_module(((4, 2), ()), P)
    m411 = modrep.build_module(((4, 1, 1), ()), P)
    recs42 = modrep.split_idempotents(modrep.hom_basis(m42, m42), m42, P)
    recs411 = modrep.split_idempotents(modrep.hom_basis(m411, m411), m411, P)
    s42 = {r["dim"]: modrep.idempotent_summand(m42, r["idempotent"]) for r in recs42}
    s411 = {r["dim"]: modrep.idempotent_summand(m411, r["idempotent"]) for r in recs411}
    assert 6 in s42 and 6 in s411
    assert s42[6].fingerprint() == s411[6].fingerprint()
    assert modrep.modules_isomorphic(s42[6], s411[6])
    assert modrep.modules_isomorphic(s42[9], s411[9])
    assert not modrep.modules_isomorphic(s42[6], s42[9])


def test_modules_isomorphic_trivial_vs_sign():
    triv = modrep.build_module(((4,), ()), P)
    sgn = modrep.build_module(((), (4,)), P)
    assert triv.dim == 1 and sgn.dim == 1
    assert not modrep.modules_isomorphic(triv, sgn)


def test_full_module_classification_matches_part_counts():
    for n in range(0, 5):
        pairs = enumerate_p2(n)
        mods = {ab: modrep.build_module(ab, P) for ab in pairs}
        for i, ab in enumerate(pairs):
            for cd in pairs[i:]:
                want = tabx.iso_equivalent(ab, cd)
                got = modrep.modules_isomorphic(mods[ab], mods[cd])
                assert got == want, (ab, cd)


# ---------------------------------------------------------------------------
# labelled decomposition


def test_decompose_published_rows():
    eng = engine()
    assert eng.decompose(((4, 2), ())) == {((5, 1), ()): 1, ((4, 2), ()): 1}
    assert eng.decompose(((6,), ())) == {((6,), ()): 1}
    assert eng.decompose(((2, 1), (3,))) == {
        ((3, 1, 1, 1), ()): 1,
        ((2, 2, 1, 1), ()): 1,
        ((2, 1), (1,)): 1,
    }


def test_projective_oracle_values():
    eng = engine()
    assert modrep.projective_oracle(((1, 1, 1), (3,)), (2, 2, 1, 1), P, engine=eng) == 3
    assert modrep.projective_oracle(((1, 1, 1), ()), (2, 1), P, engine=eng) == 1
    assert modrep.projective_oracle(((2, 2), ()), (2, 2), P, engine=eng) == 1
    with pytest.raises(ValueError):
        modrep.projective_oracle(((3,), ()), (3,), P, engine=eng)


def test_krull_schmidt_dimension_fill():
    eng = engine()
    for n in range(0, 5):
        for ab in enumerate_p2(n):
            dec = eng.decompose(ab)
            classes = {c["label"]: c["rep"].dim for c in eng.registry_for(n)}
            total = sum(m * classes[l] for l, m in dec.items())
            assert total == modrep.module_dimension((wp(ab[0]), wp(ab[1])))


def test_assemble_matrix_small_unitriangular():
    for n in range(0, 5):
        labels, mat = modrep.assemble_matrix(n, P, signed=True, engine=engine())
        assert len(labels) == mat.shape[0] == mat.shape[1]
        assert (np.diag(mat) == 1).all()
        assert (np.triu(mat, 1) == 0).all()


def test_assemble_matrix_plain_matches_labels():
    labels, mat = modrep.assemble_matrix(4, P, signed=False, engine=engine())
    assert all(mu == () for _, mu in labels)
    slabels, smat = modrep.assemble_matrix(4, P, signed=True, engine=engine())
    idx = [slabels.index(l) for l in labels]
    assert (mat == smat[np.ix_(idx, idx)]).all()


def test_cross_engine_agreement_small():
    eng = engine()
    for n in range(0, 5):
        labels = enumerate_p2p(n, P)
        for ab in enumerate_p2(n):
            dec = eng.decompose(ab)
            for x in labels:
                lhs = reduction.signed_kostka(ab, x, eng)
                assert lhs == dec.get(x, 0), (ab, x)


def test_sign_twist_relabelling():
    eng = engine()
    for n in range(0, 5):
        for ab in enumerate_p2(n):
            dec = eng.decompose(ab)
            twisted = eng.decompose((ab[1], ab[0]))
            relabel = {
                reduction.sign_twist_label(x, P): m for x, m in dec.items()
            }
            assert twisted == relabel, ab


def test_decomposition_determinism():
    a = modrep.decompose_labelled(((2, 1, 1), ()), P, seed=0)
    b = modrep.decompose_labelled(((2, 1, 1), ()), P, seed=0)
    c = modrep.decompose_labelled(((2, 1, 1), ()), P, seed=7)
    assert a == b == c


def test_composition_input_normalized():
    eng = engine()
    assert eng.decompose(((1, 2), (1,))) == eng.decompose(((2, 1), (1,)))


def test_wedderburn_module_route():
    got = modrep.wedderburn_module(((1, 1, 1), ()), P, engine=engine())
    assert got == [(1, 1), (1, 1)]
    got42 = modrep.wedderburn_module(((4, 2), ()), P, engine=engine())
    assert got42 == [(1, 1), (1, 1)]


def test_class_representative_dims():
    eng = engine()
    reps = {c["label"]: c["rep"].dim for c in eng.registry_for(4)}
    assert len(reps) == len(enumerate_p2p(4, P))
    assert reps[((4,), ())] == 1
    assert all(d >= 1 for d in reps.values())
    y31 = eng.class_representative(4, ((3, 1), ()))
    assert modrep.modules_isomorphic(y31, y31)
    with pytest.raises(KeyError):
        eng.class_representative(4, ((9,), ()))
