import pytest

from fbpath.paths import (
    ModelParams,
    enumerate_paths,
    make_path,
    striking_sequence,
    validate,
    wt,
)
from fbpath.transforms import (
    SectorLabel,
    TransformError,
    b1,
    b1_inverse,
    b2,
    b3,
    b_transform,
    d_transform,
    particle_content,
    particle_move,
    sector_construct,
    sector_decompose,
    trivial_path,
)


def ground_paths(p, pp, L):
    params = ModelParams(p, pp)
    s0 = params.s0
    return enumerate_paths(params, s0, s0, s0 + 1, L)


# -- b1 -------------------------------------------------------------------------

def test_b1_model_and_lengths():
    # a (3,8) ground path maps into (3,11) at the new ground-line 4
    for path in ground_paths(3, 8, 6):
        image = b1(path)
        assert image.params == ModelParams(3, 11)
        assert image.a == image.b == 4 and image.c == 5
        m = striking_sequence(path).m
        assert image.L == 2 * path.L - m
        assert striking_sequence(image).m == path.L


def test_b1_empty_path():
    path = validate(3, 8, 3, 3, 4, [3])
    image = b1(path)
    assert image.L == 0 and image.a == 4


def test_b1_weight_shift():
    for L in (0, 2, 4, 6):
        for path in ground_paths(2, 5, L):
            m = striking_sequence(path).m
            assert wt(b1(path)) == wt(path) + (L - m) ** 2 // 4


def test_b1_requires_ground_family():
    stray = validate(3, 8, 3, 5, 6, [3, 4, 5])
    with pytest.raises(TransformError, match="ground family"):
        b1(stray)


def test_b1_inverse_roundtrip():
    for L in (0, 2, 4, 6):
        for path in ground_paths(2, 5, L):
            assert b1_inverse(b1(path)) == path


# -- b2 / moves / b3 --------------------------------------------------------------

def test_b2_identity_at_zero():
    path = next(iter(ground_paths(2, 5, 4)))
    image = b1(path)
    assert b2(image, 0) == image


def test_b2_zigzag_weights():
    # inserting k particles into the empty (1,3) path gives the zigzag of
    # length 2k and weight k^2
    empty = validate(1, 3, 1, 1, 2, [1])
    for k in range(5):
        grown = b2(empty, k)
        assert grown.heights == (1,) + (2, 1) * k
        assert wt(grown) == k * k


def test_b2_length_weight_law():
    for path in ground_paths(2, 5, 4):
        image = b1(path)
        for k in (1, 2, 3):
            grown = b2(image, k)
            assert grown.L == image.L + 2 * k
            seq = striking_sequence(grown)
            assert seq.m == path.L
            assert wt(grown) == wt(path) + (grown.L - seq.m) ** 2 // 4


def test_b2_needs_wide_model():
    path = next(iter(ground_paths(5, 8, 2)))
    with pytest.raises(TransformError, match="2p"):
        b2(path, 1)


def test_particle_move_weight_and_inverse():
    params = ModelParams(2, 5)
    moved_any = False
    for path in ground_paths(2, 5, 8):
        from fbpath.paths import _scoring_flags

        flags = _scoring_flags(2, 5, path.heights, path.c)
        for j in range(1, path.L - 1):
            if flags[j] and flags[j + 1] and not flags[j + 2]:
                after = particle_move(path, j)
                moved_any = True
                assert wt(after) == wt(path) + 1
                assert after.L == path.L
                assert striking_sequence(after).m == striking_sequence(path).m
                assert particle_move(after, j, reverse=True) == path
    assert moved_any


def test_adjacent_particles_block():
    # two particles side by side: the left pair cannot move
    empty = validate(1, 3, 1, 1, 2, [1])
    grown = b2(b1(empty), 2)  # (1,4) zigzag of two particles
    with pytest.raises(TransformError):
        particle_move(grown, 1)


def test_b3_identity_and_weights():
    path = next(iter(ground_paths(2, 5, 4)))
    grown = b2(b1(path), 2)
    assert b3(grown, (), 2) == grown
    m = striking_sequence(grown).m
    seen = set()
    for lam in [(1,), (2,), (1, 1), (2, 1), (2, 2), (m,), (m, m)]:
        if lam[0] > m:
            continue
        moved = b3(grown, lam, 2)
        assert wt(moved) == wt(grown) + sum(lam)
        assert moved.heights not in seen
        seen.add(moved.heights)


def test_b3_rejects_oversized_parts():
    path = next(iter(ground_paths(2, 5, 2)))
    grown = b2(b1(path), 1)
    m = striking_sequence(grown).m
    with pytest.raises(TransformError, match="exceeds"):
        b3(grown, (m + 1,), 1)


def test_b_transform_is_b1_at_trivial_arguments():
    for path in ground_paths(3, 8, 4):
        assert b_transform(path, 0, ()) == b1(path)


def test_b_transform_length_count_law():
    # after the composite, m' = L and L' + m = 2 m' + 2 k
    for path in ground_paths(2, 5, 4):
        m = striking_sequence(path).m
        for k, lam in [(0, ()), (1, ()), (1, (1,)), (2, (2, 1))]:
            image = b_transform(path, k, lam)
            mp = striking_sequence(image).m
            assert mp == path.L
            assert image.L + m == 2 * mp + 2 * k


# -- duality ----------------------------------------------------------------------

def test_d_transform_involution_and_weights():
    for path in ground_paths(3, 8, 6):
        dual = d_transform(path)
        assert dual.params == ModelParams(5, 8)
        assert dual.heights == path.heights
        assert d_transform(dual) == path
        assert wt(path) + wt(dual) == path.L ** 2 // 4
        assert striking_sequence(dual).m == path.L - striking_sequence(path).m


def test_d_transform_swaps_striking_rows():
    path = make_path(ModelParams(3, 8), [3, 4, 5, 4, 3, 2, 3], 4)
    seq = striking_sequence(path)
    dual_seq = striking_sequence(d_transform(path))
    assert dual_seq.pairs == tuple((b, a) for a, b in seq.pairs)


# -- particle content ---------------------------------------------------------------

def test_particle_content_roundtrip():
    for path in ground_paths(2, 5, 4):
        for k, lam in [(0, ()), (1, ()), (2, (1,)), (2, (2, 2))]:
            image = b_transform(path, k, lam)
            inner, kk, lamk = particle_content(image)
            assert (kk, lamk) == (k, lam)
            assert inner == path


def test_particle_content_descends_model():
    path = next(iter(ground_paths(3, 11, 4)))
    inner, _, _ = particle_content(path)
    assert inner.params == ModelParams(3, 8)
    assert inner.a == inner.b == 3


def test_particle_content_narrow_model_rejected():
    path = next(iter(ground_paths(5, 8, 4)))
    with pytest.raises(TransformError, match="2p"):
        particle_content(path)


# -- sectors -------------------------------------------------------------------------

def test_trivial_path_shape():
    path = trivial_path(3)
    assert path.heights == (1, 2, 1, 2, 1, 2, 1)
    assert wt(path) == 9


def test_sector_construct_trivial_model():
    params = ModelParams(1, 3)
    for n1 in range(4):
        path = sector_construct(params, SectorLabel((n1,), ()))
        assert path == trivial_path(n1)
        assert wt(path) == n1 * n1


def test_sector_construct_l_equals_m0():
    from fbpath import cfmn

    params = ModelParams(3, 8)
    zd = cfmn.zones(cfmn.continued_fraction(8, 3))
    for n_hat in [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)]:
        label = SectorLabel(n_hat, ((), ()))
        path = sector_construct(params, label)
        assert path.L == cfmn.solve_m(zd, list(n_hat)).m[0]


def test_sector_roundtrip_all_paths():
    for (p, pp) in [(2, 5), (3, 8), (5, 8)]:
        params = ModelParams(p, pp)
        for L in (0, 2, 4, 6):
            for path in ground_paths(p, pp, L):
                label = sector_decompose(path)
                again = sector_construct(params, label)
                assert again == path


def test_sector_label_lengths_checked():
    params = ModelParams(3, 8)
    with pytest.raises(TransformError, match="length"):
        sector_construct(params, SectorLabel((1,), ()))
