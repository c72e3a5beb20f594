import numpy as np
import pytest

from lrctk.bounds import concat_bound, locality_bound
from lrctk.codes import encode, from_generator, min_distance, puncture
from lrctk.constructions import (
    build_from_recipe,
    concatenate,
    parity_split_code,
    pyramid_code,
    random_all_symbol_code,
    rs_code,
    vandermonde,
)
from lrctk.errors import (
    ConstructionFailure,
    DeltaExceedsD,
    FieldMismatch,
    FieldTooSmall,
    InfeasibleParams,
)
from lrctk.gf import make_field
from lrctk.locality import check_profile, is_k_core

from .oracles import oracle_min_distance, oracle_rank

F2 = make_field(2)
F4 = make_field(4)
F7 = make_field(7)
F11 = make_field(11)


def test_rs_examples():
    C = rs_code(6, 4, F7)
    assert (C.n, C.k) == (6, 4) and min_distance(C) == 3
    assert oracle_min_distance(C.G.tolist(), 7) == 3
    C2 = rs_code(8, 6, F11)
    assert min_distance(C2) == 3
    C3 = rs_code(5, 5, F7)
    assert np.array_equal(C3.G, np.eye(5, dtype=np.int64)) and min_distance(C3) == 1


def test_rs_field_too_small():
    with pytest.raises(FieldTooSmall):
        rs_code(7, 4, F7)


def test_rs_is_mds_sweep():
    for n, k, F in [(4, 2, F7), (6, 3, F7), (7, 3, F11), (6, 2, make_field(8))]:
        C = rs_code(n, k, F)
        assert min_distance(C) == n - k + 1


def test_parity_split_check_matrix_rank_oracle():
    # k=4, r=2, delta=3 over GF(11): H is 6x8 after splitting, rank must be n-k=4
    t, width, n, kp = 2, 4, 8, 6
    H1 = vandermonde(n - kp, F11.points(n), F11)
    H = np.zeros((t * 2 + (n - kp - 2), n), dtype=np.int64)
    for b in range(t):
        cols = list(range(b * width, (b + 1) * width))
        H[b * 2 : (b + 1) * 2, cols] = H1[:2, cols]
    H[t * 2 :, :] = H1[2:, :]
    assert oracle_rank(H.tolist(), 11) == 4


def test_pyramid_first_example():
    code, prof, rec = pyramid_code(4, 2, 2, 3, F7)
    assert (code.n, code.k) == (7, 4)
    assert min_distance(code) == 3 == locality_bound(7, 4, 2, 2)
    assert check_profile(code, prof) == []
    assert prof.mode == "information" and len(prof.groups) == 2


def test_pyramid_larger_example():
    code, prof, rec = pyramid_code(6, 3, 3, 4, make_field(13))
    assert (code.n, code.k) == (11, 6)
    assert min_distance(code) == 4 == locality_bound(11, 6, 3, 3)
    assert check_profile(code, prof) == []


def test_pyramid_degenerate_single_group():
    code, prof, rec = pyramid_code(3, 3, 2, 3, F7)
    assert code.n == 3 + 3 - 1  # no splitting
    assert len(prof.groups) == 1
    base = rs_code(5, 3, F7)
    assert np.array_equal(code.G, base.G)


def test_pyramid_rejects_bad_params():
    with pytest.raises(DeltaExceedsD):
        pyramid_code(4, 2, 3, 2, F7)
    with pytest.raises(FieldTooSmall):
        pyramid_code(4, 2, 2, 4, F7)  # needs q > 7


def test_pyramid_uneven_blocks():
    code, prof, rec = pyramid_code(5, 2, 2, 3, F11)
    # blocks of 2, 2, 1 message rows
    assert [len(g.support) for g in prof.groups] == [3, 3, 2]
    assert min_distance(code) == locality_bound(code.n, 5, 2, 2)
    assert check_profile(code, prof) == []


def test_parity_split_first_example():
    code, prof, rec = parity_split_code(4, 2, 3, F11)
    assert (code.n, code.k) == (8, 4)
    d = min_distance(code)
    assert d == 3 == locality_bound(8, 4, 2, 3)
    assert d - 3 == 2 * 2 - 4  # d - delta = r*ceil(k/r) - k = 0
    assert check_profile(code, prof) == []
    assert prof.mode == "all_symbol"


def test_parity_split_second_example():
    code, prof, rec = parity_split_code(3, 2, 2, F7)
    assert (code.n, code.k) == (6, 3)
    d = min_distance(code)
    assert d == 3 and d - 2 == 2 * 2 - 3
    assert check_profile(code, prof) == []


def test_parity_split_degenerate_single_group():
    code, prof, rec = parity_split_code(2, 3, 2, F7)
    assert code.n == 3 + 2 - 1 and code.k == 2
    assert len(prof.groups) == 1
    assert min_distance(code) == 3  # [4,2,3] RS


def test_parity_split_deficiency_identity_sweep():
    for k, r, delta, F in [(4, 2, 3, F11), (3, 2, 2, F7), (5, 3, 2, F11), (5, 2, 2, make_field(11))]:
        code, prof, rec = parity_split_code(k, r, delta, F)
        t = -(-k // r)
        assert min_distance(code) - delta == r * t - k


def test_random_all_symbol_basic():
    F17 = make_field(17)
    code, prof, rec = random_all_symbol_code(4, 2, 2, 3, F17, seed=1)
    assert (code.n, code.k) == (9, 4)
    assert min_distance(code) == locality_bound(9, 4, 2, 2) == 5
    assert check_profile(code, prof) == []


def test_random_all_symbol_small():
    F13 = make_field(13)
    code, prof, rec = random_all_symbol_code(3, 2, 2, 2, F13, seed=0)
    assert (code.n, code.k) == (6, 3)
    assert min_distance(code) == locality_bound(6, 3, 2, 2) == 3


def test_random_boundary_cores_meet_every_block_at_r():
    # k = n - t(delta-1) = tr: every k-core takes exactly r from each block
    t, r, delta = 2, 2, 2
    blocks = [list(range(3)), list(range(3, 6))]
    from itertools import combinations

    k = t * r
    for S in combinations(range(6), k):
        if is_k_core(blocks, r, S):
            assert all(len(set(S) & set(P)) == r for P in blocks)


def test_random_infeasible_params():
    with pytest.raises(InfeasibleParams):
        random_all_symbol_code(5, 2, 2, 2, make_field(13), seed=0)  # k > tr = 4


def test_random_rejects_too_small_field():
    with pytest.raises(FieldTooSmall):
        random_all_symbol_code(4, 2, 2, 3, make_field(3), seed=0)


def test_random_failure_reports_core_count():
    # boundary k = tr over GF(5) is very unlikely to land in 2 attempts
    with pytest.raises(ConstructionFailure) as e:
        random_all_symbol_code(6, 2, 2, 3, make_field(5), seed=0, attempts=2)
    assert e.value.attempts == 2
    assert e.value.failed_cores_last_attempt == 27


def test_random_threads_do_not_change_result():
    F17 = make_field(17)
    a = random_all_symbol_code(4, 2, 2, 3, F17, seed=5, threads=1)
    b = random_all_symbol_code(4, 2, 2, 3, F17, seed=5, threads=4)
    assert np.array_equal(a[0].G, b[0].G)
    assert a[2].provenance == b[2].provenance


def outer_4_2_3():
    return from_generator([[1, 0, 1, 1], [0, 1, 1, 2]], F4)


def test_concat_acceptance_pair():
    inner = from_generator([[1, 0, 1], [0, 1, 1]], F2)
    cat, rec = concatenate(outer_4_2_3(), inner)
    assert (cat.n, cat.k) == (12, 4)
    d = min_distance(cat)
    assert 2 * 3 <= d <= 3 * 3  # classical bounds d1d2 <= d <= n1d2
    assert d <= concat_bound(3, 2, 2, 4, 2)


def test_concat_identity_inner_is_subfield_expansion():
    ident = from_generator(np.eye(2, dtype=np.int64), F2)
    cat, _ = concatenate(outer_4_2_3(), ident)
    assert (cat.n, cat.k) == (8, 4)
    assert min_distance(cat) == 3  # = d2 here


def test_concat_full_outer_gives_inner_distance():
    inner = from_generator([[1, 0, 1], [0, 1, 1]], F2)
    full = from_generator(np.eye(3, dtype=np.int64), make_field(4))
    cat, _ = concatenate(full, inner)
    assert (cat.n, cat.k) == (9, 6)
    assert min_distance(cat) == 2  # = d1


def test_concat_binary_tower():
    # inner over GF(4), outer over GF(16): subfield coordinate map
    inner = from_generator([[1, 0, 1], [0, 1, 2]], F4)
    outer = from_generator([[1, 0, 1, 1], [0, 1, 1, 2]], make_field(16))
    cat, _ = concatenate(outer, inner)
    assert cat.field.q == 4 and (cat.n, cat.k) == (12, 4)
    assert min_distance(cat) >= min_distance(inner) * min_distance(outer)


def test_concat_field_mismatch():
    inner = from_generator([[1, 0, 1], [0, 1, 1]], F2)
    with pytest.raises(FieldMismatch):
        concatenate(from_generator([[1, 0], [0, 1]], F7), inner)


def test_concat_encoding_consistency():
    # concatenated encode == outer encode + symbol expansion + inner encode
    inner = from_generator([[1, 0, 1], [0, 1, 1]], F2)
    outer = outer_4_2_3()
    cat, _ = concatenate(outer, inner)
    rng = np.random.Generator(np.random.PCG64(43))
    for _ in range(10):
        m = rng.integers(0, 2, 4)
        sym = [int(m[0]) | (int(m[1]) << 1), int(m[2]) | (int(m[3]) << 1)]
        w = encode(outer, sym)
        expanded = []
        for ws in w:
            bits = [int(ws) & 1, (int(ws) >> 1) & 1]
            expanded.extend(int(x) for x in encode(inner, bits))
        assert encode(cat, m).tolist() == expanded


def test_recipes_replay_bit_for_bit():
    cases = []
    cases.append(pyramid_code(4, 2, 2, 3, F7))
    cases.append(parity_split_code(4, 2, 3, F11))
    cases.append(random_all_symbol_code(4, 2, 2, 3, make_field(17), seed=1))
    for code, prof, rec in cases:
        code2, prof2, rec2 = build_from_recipe(rec)
        assert np.array_equal(code.G, code2.G)
    inner = from_generator([[1, 0, 1], [0, 1, 1]], F2)
    cat, rec = concatenate(outer_4_2_3(), inner)
    cat2, _, _ = build_from_recipe(rec)
    assert np.array_equal(cat.G, cat2.G)


def test_every_emitted_group_is_a_valid_local_code():
    for code, prof, rec in [pyramid_code(5, 2, 2, 3, F11),
                            parity_split_code(3, 2, 2, F7),
                            random_all_symbol_code(3, 2, 2, 2, make_field(13), seed=0)]:
        for g in prof.groups:
            assert len(g.support) <= prof.r + prof.delta - 1
            local = puncture(code, g.support)
            assert min_distance(local) >= prof.delta
