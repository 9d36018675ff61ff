from fractions import Fraction

import pytest

from bgg import linalg
from bgg.cartan import pairing, weight
from bgg.errors import NotComparableError
from bgg.nilpotent import build_nilpotent
from bgg.verma import (
    Descender,
    InclusionFamily,
    VermaEngine,
    generalized_verma_dims,
    integrable_quotient,
    normalize_singular,
    singular_vectors,
)
from bgg.weyl import enumerate_for_depth

F = Fraction


@pytest.fixture(scope="module")
def eng_a1(A1):
    return VermaEngine(build_nilpotent(A1, 10))


@pytest.fixture(scope="module")
def eng_a2(A2):
    return VermaEngine(build_nilpotent(A2, 8))


@pytest.fixture(scope="module")
def a2_setup(A2, eng_a2):
    mu = weight((1, 1))
    table, orbit = enumerate_for_depth(A2, mu, 8)
    fam = InclusionFamily(eng_a2, table, mu, orbit)
    return mu, table, orbit, fam


def by_word(table, word):
    return table.element(table.group.from_word(word).matrix)


# --- slices ---------------------------------------------------------------------


def test_slice_dims(eng_a1, eng_a2):
    assert eng_a1.dim((2,)) == 1
    assert eng_a2.dim((1, 1)) == 2
    assert eng_a2.dim((0, 0)) == 1


def test_slice_top_has_zero_raising(eng_a2):
    sl = eng_a2.slice(weight((1, 1)), (0, 0))
    assert sl.dim == 1
    assert all(m == [] for m in sl.e_matrices)


def test_sl2_string_formula(eng_a1):
    # e f^k v = k (m - k + 1) f^(k-1) v
    for m in (0, 1, 3, 5):
        mu = weight((m,))
        for k in range(1, 8):
            em = eng_a1.e_matrix(mu, 0, (k,))
            assert em[0][0] == k * (m - k + 1)


def test_commutator_identity_on_slices(A2, B2, eng_a2):
    # [e_i, f_j] acts as delta_ij <top - beta, alpha_i^vee> on every slice
    engines = {id(eng_a2): (A2, eng_a2, weight((1, 1)))}
    engB = VermaEngine(build_nilpotent(B2, 8))
    engines[id(engB)] = (B2, engB, weight((2, 1)))
    for A, eng, mu in engines.values():
        for beta in [(1, 0), (0, 1), (1, 1), (2, 1), (2, 2), (3, 2)]:
            for i in range(2):
                for j in range(2):
                    target = tuple(b + (1 if k == j else 0) for k, b in enumerate(beta))
                    tgt2 = tuple(t - (1 if k == i else 0) for k, t in enumerate(target))
                    if any(x < 0 for x in tgt2):
                        continue
                    n, m = eng.dim(tgt2), eng.dim(beta)
                    zero_mat = [[F(0)] * m for _ in range(n)]
                    lhs = (
                        linalg.mat_mul(eng.e_matrix(mu, i, target), eng.f_matrix_simple(j, beta))
                        if eng.e_matrix(mu, i, target)
                        else zero_mat
                    )
                    bm = tuple(b - (1 if k == i else 0) for k, b in enumerate(beta))
                    rhs = (
                        linalg.mat_mul(eng.f_matrix_simple(j, bm), eng.e_matrix(mu, i, beta))
                        if all(x >= 0 for x in bm)
                        else zero_mat
                    )
                    diff = [
                        [lhs[r][c] - rhs[r][c] for c in range(m)] for r in range(n)
                    ]
                    if i == j:
                        p = pairing(A, weight(mu.labels, beta), i)
                        for r in range(min(n, m)):
                            diff[r][r] -= p
                    assert linalg.mat_is_zero(diff), (A.entries, beta, i, j)


# --- singular vectors ---------------------------------------------------------------


def test_singular_a1_power(eng_a1):
    for m in (0, 2, 4):
        mu = weight((m,))
        basis = eng_a1.singular_basis(mu, (m + 1,))
        assert len(basis) == 1
        for k in range(1, m + 1):
            assert eng_a1.singular_basis(mu, (k,)) == []


def test_singular_incomparable_pair(A2, eng_a2, a2_setup):
    mu, table, orbit, _ = a2_setup
    s0 = by_word(table, (0,))
    s1 = by_word(table, (1,))
    # weight of s0.mu inside the module topped by s1.mu: no singular vector
    lam = weight(mu.labels, orbit[s1.matrix])
    nu = weight(mu.labels, orbit[s0.matrix])
    assert singular_vectors(eng_a2, lam, nu) == []


def test_singular_dichotomy_full_matrix(A2, eng_a2, a2_setup):
    mu, table, orbit, _ = a2_setup
    els = list(table.elements())
    for w in els:
        for wp in els:
            lam = weight(mu.labels, orbit[wp.matrix])
            nu = weight(mu.labels, orbit[w.matrix])
            dim = len(singular_vectors(eng_a2, lam, nu))
            assert dim == (1 if table.arrow_leq(w, wp) else 0), (w.word, wp.word)


def test_singular_bottom_inside_top(eng_a2, a2_setup):
    mu, table, orbit, _ = a2_setup
    w0 = by_word(table, (0, 1, 0))
    basis = eng_a2.singular_basis(mu, orbit[w0.matrix])
    assert len(basis) == 1


# --- inclusions -----------------------------------------------------------------------


def test_inclusion_identity(a2_setup, eng_a2):
    mu, table, orbit, fam = a2_setup
    e = by_word(table, ())
    assert fam.generator_image(e, e) == [eng_a2.one]


def test_inclusion_a1_power_image(eng_a1, A1):
    for m in (0, 2):
        mu = weight((m,))
        table, orbit = enumerate_for_depth(A1, mu, 2 * (m + 1))
        fam = InclusionFamily(eng_a1, table, mu, orbit)
        s = by_word(table, (0,))
        e = by_word(table, ())
        img = fam.top_singular(s)
        # the singular vector is the (m+1)-st power of the lowering generator
        assert img == eng_a1.unit_vector((m + 1,), eng_a1.power_word(0, m + 1))
        assert fam.generator_image(s, e) == [eng_a1.one]


def test_inclusion_generator_image_s0(a2_setup, eng_a2):
    mu, table, orbit, fam = a2_setup
    s0 = by_word(table, (0,))
    # singular vector at offset 2*alpha_0 is the square of the lowering generator
    vec = fam.top_singular(s0)
    assert vec == eng_a2.unit_vector((2, 0), eng_a2.power_word(0, 2))


def test_inclusion_not_comparable(a2_setup):
    mu, table, orbit, fam = a2_setup
    s0 = by_word(table, (0,))
    s1 = by_word(table, (1,))
    with pytest.raises(NotComparableError):
        fam.generator_image(s0, s1)


def test_inclusion_blocks_intertwine(A2, a2_setup, eng_a2):
    # block o e_i = e_i o block and block o f_i = f_i o block on every slice
    mu, table, orbit, fam = a2_setup
    w0 = by_word(table, (0, 1, 0))
    m01 = by_word(table, (0, 1))
    for (w, wp) in [(w0, m01), (m01, by_word(table, ())), (by_word(table, (0,)), by_word(table, ()))]:
        bw, bwp = orbit[w.matrix], orbit[wp.matrix]
        top_w = weight(mu.labels, bw)
        top_wp = weight(mu.labels, bwp)
        for nu in [(2, 1), (2, 2), (3, 2), (3, 3), (4, 3), (4, 4)]:
            gsrc = tuple(a - b for a, b in zip(nu, bw))
            if any(x < 0 for x in gsrc):
                continue
            blk = fam.block(w, wp, nu)
            gtgt = tuple(a - b for a, b in zip(nu, bwp))
            for i in range(2):
                # raising operators commute with the embedding
                up = tuple(x - (1 if k == i else 0) for k, x in enumerate(nu))
                if all(x >= 0 for x in up):
                    lhs_rows = linalg.mat_mul(
                        eng_a2.e_matrix(top_wp, i, gtgt), blk
                    ) if eng_a2.e_matrix(top_wp, i, gtgt) else []
                    up_blk = fam.block(w, wp, up)
                    e_src = eng_a2.e_matrix(top_w, i, gsrc)
                    rhs_rows = linalg.mat_mul(up_blk, e_src) if (up_blk and e_src) else []
                    if lhs_rows and rhs_rows:
                        diff = [
                            [lhs_rows[r][c] - rhs_rows[r][c] for c in range(len(lhs_rows[0]))]
                            for r in range(len(lhs_rows))
                        ]
                        assert linalg.mat_is_zero(diff)
                # lowering operators too
                dn = tuple(x + (1 if k == i else 0) for k, x in enumerate(nu))
                if sum(dn) <= 8:
                    lhs_rows = linalg.mat_mul(eng_a2.f_matrix_simple(i, gtgt), blk)
                    rhs_rows = linalg.mat_mul(
                        fam.block(w, wp, dn),
                        eng_a2.f_matrix_simple(i, gsrc),
                    )
                    diff = [
                        [lhs_rows[r][c] - rhs_rows[r][c] for c in range(len(lhs_rows[0]))]
                        for r in range(len(lhs_rows))
                    ]
                    assert linalg.mat_is_zero(diff)


def test_inclusion_blocks_injective(a2_setup):
    mu, table, orbit, fam = a2_setup
    w0 = by_word(table, (0, 1, 0))
    for wp_word in [(), (0,), (0, 1)]:
        wp = by_word(table, wp_word)
        for nu in [(4, 4), (4, 3), (3, 3)]:
            blk = fam.block(w0, wp, nu)
            if blk and blk[0]:
                assert linalg.rank(blk) == len(blk[0])


def test_commuting_squares_exact(a2_setup, eng_a2):
    # composite generator images agree exactly, not just up to scalar
    mu, table, orbit, fam = a2_setup
    w0 = by_word(table, (0, 1, 0))
    e = by_word(table, ())
    for mid_word in [(0, 1), (1, 0)]:
        mid = by_word(table, mid_word)
        g_top = fam.generator_image(w0, mid)
        desc = Descender(
            eng_a2,
            tuple(a - b for a, b in zip(orbit[mid.matrix], orbit[e.matrix])),
            fam.generator_image(mid, e),
        )
        composite = [F(0)] * eng_a2.dim(orbit[w0.matrix])
        for k, word in enumerate(eng_a2.words(tuple(a - b for a, b in zip(orbit[w0.matrix], orbit[mid.matrix])))):
            if g_top[k]:
                col = desc.column(word)
                for r in range(len(composite)):
                    composite[r] += g_top[k] * col[r]
        direct_vec = fam.generator_image(w0, e)
        assert composite == direct_vec


# --- quotients ------------------------------------------------------------------------


def test_integrable_quotient_a1(eng_a1):
    dims = integrable_quotient(eng_a1, weight((2,)), 6)
    assert [dims[(k,)] for k in range(7)] == [1, 1, 1, 0, 0, 0, 0]


def test_integrable_quotient_trivial(eng_a2):
    dims = integrable_quotient(eng_a2, weight((0, 0)), 4)
    assert dims[(0, 0)] == 1
    assert all(v == 0 for b, v in dims.items() if b != (0, 0))


def test_integrable_quotient_matches_freudenthal(A2, eng_a2):
    from bgg.characters import freudenthal

    dims = integrable_quotient(eng_a2, weight((1, 1)), 8)
    target = freudenthal(A2, eng_a2.algebra, weight((1, 1)), 8)
    assert sum(dims.values()) == 8
    for beta, v in dims.items():
        assert v == target.coeff(beta)


def test_generalized_verma_empty_s_is_verma(eng_a2):
    dims = generalized_verma_dims(eng_a2, weight((1, 1)), (), 6)
    for beta, v in dims.items():
        assert v == eng_a2.dim(beta)


def test_generalized_verma_full_s_is_integrable(eng_a2):
    lam = weight((1, 1))
    assert generalized_verma_dims(eng_a2, lam, (0, 1), 8) == integrable_quotient(
        eng_a2, lam, 8
    )


def test_generalized_verma_product_character(A2, eng_a2):
    from bgg.characters import convolve, levi_freudenthal, u_character

    lam = weight((1, 1))
    dims = generalized_verma_dims(eng_a2, lam, (0,), 8)
    levi = levi_freudenthal(A2, (0,), lam, 8)
    comp = [b for b, _ in eng_a2.algebra.root_list() if not {i for i, c in enumerate(b) if c} <= {0}]
    uch = u_character(eng_a2.algebra, comp, lam, 8)
    predicted = convolve(2, 8, uch.coeffs, levi.coeffs)
    for beta, v in dims.items():
        assert v == predicted.get(beta, 0)


def test_generalized_verma_requires_dominance_on_s(eng_a2):
    with pytest.raises(ValueError):
        generalized_verma_dims(eng_a2, weight((-1, 1)), (0,), 4)


def test_local_finiteness_witness(A2, eng_a2, a2_setup):
    # for w with an ascent at i, the class of the highest vector of the
    # w-module dies under f_i^(<w.mu, alpha_i^vee> + 1) in the quotient by
    # the (s_i w)-submodule
    mu, table, orbit, fam = a2_setup
    g = table.group
    for w in table.elements():
        for i in range(2):
            siw = g.from_word((i,) + w.word)
            if siw.length != w.length + 1:
                continue
            siw = table.element(siw.matrix)
            top_w = weight(mu.labels, orbit[w.matrix])
            p = pairing(A2, top_w, i) + 1
            assert p >= 1
            gamma = tuple(p if k == i else 0 for k in range(2))
            nu = tuple(a + b for a, b in zip(orbit[w.matrix], gamma))
            if sum(nu) > 8:
                continue
            power_vec = eng_a2.unit_vector(gamma, eng_a2.power_word(i, p))
            blk = fam.block(siw, w, nu)
            assert blk and blk[0], (w.word, i)
            assert linalg.in_column_span(blk, power_vec), (w.word, i)


def test_normalize_singular():
    assert normalize_singular([F(0), F(-2), F(4)]) == [F(0), F(1), F(-2)]
    with pytest.raises(ValueError):
        normalize_singular([F(0)])
