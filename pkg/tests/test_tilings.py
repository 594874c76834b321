import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tetrafarey.catalogue import PERIODIC_BLOCK, block_law_exponent, periodic_paths, stated_block_exponent
from tetrafarey.eisenstein import ONE, SIGMA, SIGMA_BAR, ZERO, EInt, ProjPoint, UnimodularMatrix, sigma_pow
from tetrafarey.paths import AngleSeq, Mode, PathRep
from tetrafarey.sampling import rand_triple, rand_window, rand_window_range
from tetrafarey.tilings import (
    ProductMode,
    TilingError,
    TilingTriple,
    TilingWindow,
    canonical_x,
    check_window,
    coplanarity_test,
    entry,
    equivalence_orbit,
    equivalence_transform,
    is_generic,
    paths_from_tiling,
    tiling_from_paths,
    tiling_to_triple,
    tilings_equivalent,
    triple_to_tiling,
    triples_equivalent,
)

seeds = st.integers(0, 2**32 - 1)
modes = st.sampled_from(list(ProductMode))


def test_example_block():
    u, v = periodic_paths()
    w = tiling_from_paths(u, v, ProductMode.SCALAR)
    assert w.entries == PERIODIC_BLOCK
    assert check_window(w).ok


def test_example_recovers_v_path():
    u, v = periodic_paths()
    w = tiling_from_paths(u, v)
    u2, v2 = paths_from_tiling(w)
    assert v2[0] == ProjPoint(ZERO, -SIGMA_BAR) and v2[1] == ProjPoint(SIGMA, SIGMA_BAR)
    assert u2.vertices == u.vertices and v2.vertices == v.vertices


def test_example_block_law_on_large_window():
    u, v = periodic_paths(range(0, 12), range(0, 12))
    w = tiling_from_paths(u, v)
    assert check_window(w).ok
    bad_literal = 0
    for i in range(12):
        for j in range(12):
            i0, k = i % 4, i // 4
            j0, l = j % 4, j // 4
            assert w[i, j] == sigma_pow(block_law_exponent(i0, j0, k, l)) * w[i0, j0]
            if w[i, j] != sigma_pow(stated_block_exponent(k, l)) * w[i0, j0]:
                bad_literal += 1
    # the uniform exponent only holds where both row and column are even
    assert bad_literal > 0


def test_det_mode_partner_convention():
    u, v = periodic_paths()
    ws = tiling_from_paths(u, v, ProductMode.SCALAR)
    vd = PathRep(tuple(ProjPoint(-x.q, x.p) for x in v.vertices), Mode.NORMALISED, 0)
    wd = tiling_from_paths(u, vd, ProductMode.DET)
    assert wd.entries == ws.entries
    # (s, -r) yields the negated window instead
    vn = PathRep(tuple(ProjPoint(x.q, -x.p) for x in v.vertices), Mode.NORMALISED, 0)
    assert tiling_from_paths(u, vn, ProductMode.DET).entries != ws.entries


def test_entry_values():
    u, v = ProjPoint(EInt(2), ONE), ProjPoint(ONE, SIGMA)
    assert entry(u, v, ProductMode.SCALAR) == EInt(2) + SIGMA
    assert entry(u, v, ProductMode.DET) == EInt(2) * SIGMA - ONE


def test_check_window_reports_first_violation():
    u, v = periodic_paths()
    w = tiling_from_paths(u, v)
    ents = [list(r) for r in w.entries]
    ents[2][2] = ents[2][2] + ONE
    bad = check_window(TilingWindow(0, 0, tuple(map(tuple, ents))))
    assert not bad.sl2_ok
    assert bad.first_violation["kind"] == "2x2"
    assert (bad.first_violation["row"], bad.first_violation["col"]) == (1, 1)


def test_non_tame_window():
    # every 2x2 minor is 1 but the 3x3 determinant is not zero
    w = TilingWindow(0, 0, ((1, 1, 0), (-1, 0, 1), (0, -1, 0)))
    r = check_window(w)
    assert r.sl2_ok and not r.tame_ok
    assert r.first_violation["kind"] == "3x3"


@given(seeds, modes)
def test_window_round_trip(seed, mode):
    w = rand_window(random.Random(seed), mode)
    assert check_window(w).ok
    u, v = paths_from_tiling(w, mode)
    assert u[0] == ProjPoint(ONE, ZERO) and u[1] == ProjPoint(ZERO, ONE)
    assert tiling_from_paths(u, v, mode, w.rows, w.cols).same_entries(w)


@given(seeds)
def test_paths_unique_up_to_sl2(seed):
    rng = random.Random(seed)
    w = rand_window(rng)
    u, v = paths_from_tiling(w)
    A = UnimodularMatrix(ONE, SIGMA, ZERO, ONE, True)
    At = A.inverse().transpose()
    u2 = PathRep(tuple(A.apply(x) for x in u.vertices), Mode.NORMALISED, u.base_index)
    v2 = PathRep(tuple(At.apply(x) for x in v.vertices), Mode.NORMALISED, v.base_index)
    assert tiling_from_paths(u2, v2, ProductMode.SCALAR, w.rows, w.cols).same_entries(w)


@given(seeds)
def test_triple_round_trips(seed):
    rng = random.Random(seed)
    need = (-1, 0, 1)
    rows, cols = rand_window_range(rng, 6, need=need), rand_window_range(rng, 6, need=need)
    t = rand_triple(rng, rows, cols)
    w = triple_to_tiling(t, rows, cols)
    assert check_window(w).ok
    t2 = tiling_to_triple(w)
    assert t2.X == t.X
    assert all(t2.a[i] == t.a[i] for i in set(t.a.indices) & set(t2.a.indices))
    assert triple_to_tiling(t2, rows, cols).same_entries(w)


def test_triple_needs_central_rows():
    u, v = periodic_paths()
    with pytest.raises(TilingError):
        tiling_to_triple(tiling_from_paths(u, v, ProductMode.DET))


@given(seeds, st.integers(0, 5), st.integers(0, 5), st.booleans())
def test_equivalence_is_symmetric(seed, k, l, flip):
    w = rand_window(random.Random(seed))
    t = equivalence_transform(w, k, l, flip)
    assert check_window(t).ok
    assert tilings_equivalent(w, t) and tilings_equivalent(t, w)
    assert equivalence_transform(t, -k, -l, flip).entries == w.entries


@given(seeds)
def test_generic_orbit_has_eighteen(seed):
    w = rand_window(random.Random(seed))
    if is_generic(w):
        assert len(equivalence_orbit(w)) == 18


def test_checkerboard():
    zero = TilingTriple(AngleSeq((ZERO,) * 6, -2), AngleSeq((ZERO,) * 6, -2), UnimodularMatrix.identity())
    w = triple_to_tiling(zero, range(-2, 4), range(-2, 4))
    assert all(not w[i, j] for i in w.rows for j in w.cols if (i + j) % 2 == 0)
    assert all(w[i, j].is_unit() for i in w.rows for j in w.cols if (i + j) % 2)
    assert not is_generic(w)
    assert len(equivalence_orbit(w)) == 6


@given(seeds, st.integers(0, 5), st.integers(0, 5))
def test_triple_equivalence_from_rescaling(seed, k, l):
    rng = random.Random(seed)
    need = (-1, 0, 1)
    rows, cols = rand_window_range(rng, 6, need=need), rand_window_range(rng, 6, need=need)
    t = rand_triple(rng, rows, cols)
    w = triple_to_tiling(t, rows, cols)
    t2 = tiling_to_triple(equivalence_transform(w, k, l))
    assert triples_equivalent(t, t2)


def _rescaled(seq, k):
    return AngleSeq(tuple(seq[i] * sigma_pow(2 * k * (1 if i % 2 else -1)) for i in seq.indices), seq.base_index)


def _zero_at_origin(seq):
    vals = list(seq.values)
    vals[-seq.base_index] = ZERO
    return AngleSeq(tuple(vals), seq.base_index)


@given(seeds, st.integers(-1, 1), st.integers(-1, 1), st.booleans(), st.booleans(), st.booleans())
def test_equivalent_triples_give_equivalent_tilings(seed, k, l, neg, za, zb):
    rng = random.Random(seed)
    need = (-1, 0, 1)
    rows, cols = rand_window_range(rng, 6, need=need), rand_window_range(rng, 6, need=need)
    t = rand_triple(rng, rows, cols)
    a = _zero_at_origin(t.a) if za else t.a
    b = _zero_at_origin(t.b) if zb else t.b
    t = TilingTriple(a, b, t.X)
    w1 = triple_to_tiling(t, rows, cols)
    hits = 0
    for kx in range(-2, 3):
        for lx in range(-2, 3):
            X = UnimodularMatrix.diag(sigma_pow(-kx), sigma_pow(kx)) @ t.X @ UnimodularMatrix.diag(sigma_pow(lx), sigma_pow(-lx))
            t2 = TilingTriple(_rescaled(a, k), _rescaled(b, l), -X if neg else X)
            if triples_equivalent(t, t2):
                hits += 1
                assert tilings_equivalent(w1, triple_to_tiling(t2, rows, cols))
    assert hits >= 1


def test_literal_x_twist_breaks_class():
    # with a_0, b_0 nonzero the seeds already absorb the rescaling
    a = AngleSeq((EInt(2, 1), EInt(-2, 1), EInt(-1, 3)), -1)
    b = AngleSeq((EInt(1, 2), EInt(-1, 1), EInt(3)), -1)
    X = UnimodularMatrix(ONE, EInt(1, 1), ZERO, ONE, True)
    t = TilingTriple(a, b, X)
    D = UnimodularMatrix.diag(SIGMA, SIGMA.unit_inverse())
    t2 = TilingTriple(a, _rescaled(b, 1), D @ X)
    assert triples_equivalent(t, t2, relation="full")
    assert not triples_equivalent(t, t2)
    rows = cols = range(-1, 2)
    assert not tilings_equivalent(triple_to_tiling(t, rows, cols), triple_to_tiling(t2, rows, cols))
    t3 = TilingTriple(a, _rescaled(b, 1), X)
    assert tilings_equivalent(triple_to_tiling(t, rows, cols), triple_to_tiling(t3, rows, cols))


def test_canonical_x_sign():
    X = UnimodularMatrix(-ONE, ZERO, ZERO, -ONE, True)
    assert canonical_x(X) == UnimodularMatrix.identity()
    assert canonical_x(UnimodularMatrix.identity()) == UnimodularMatrix.identity()


def test_coplanar_integer_window():
    w = TilingWindow(0, 0, ((1, 1, 0), (0, 1, 1), (-1, 0, 1)))
    r = coplanarity_test(w)
    assert r.coplanar and r.all_integer and r.witness == {"rows": [0, 1], "cols": [0, 1]}


def test_example_is_not_coplanar():
    u, v = periodic_paths()
    r = coplanarity_test(tiling_from_paths(u, v))
    assert not r.coplanar and not r.all_integer


@given(seeds)
def test_coplanar_iff_integer(seed):
    w = rand_window(random.Random(seed))
    r = coplanarity_test(w)
    assert r.coplanar == r.all_integer


def test_bad_windows():
    with pytest.raises(TilingError):
        TilingWindow(0, 0, ((1, 2), (3,)))
    with pytest.raises(TilingError):
        check_window(TilingWindow(0, 0, ((1, 2),)))
