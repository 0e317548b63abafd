import json
from importlib import resources

import pytest

from fbpath.bijection import (
    BijectionError,
    HookConstraints,
    Partition,
    box_partitions,
    dki_parameters,
    enumerate_dki,
    hook_difference,
    hook_differences_on_diagonal,
    partition_from_json_dict,
    partition_to_path,
    path_to_partition,
    satisfies_dki,
)
from fbpath.paths import ModelParams, enumerate_paths, path_from_json_dict, validate, wt
from fbpath.qseries import QPolynomial
from fbpath.charform import dki_recurrence


def golden():
    data = resources.files("fbpath.data").joinpath("golden_bijection_a3.json")
    return json.loads(data.read_text())


# -- partitions and hook differences ------------------------------------------

def test_partition_invariants():
    with pytest.raises(BijectionError):
        Partition((1, 2))
    with pytest.raises(BijectionError):
        Partition((2, 0))
    assert Partition(()).weight == 0
    assert Partition((5, 4, 3, 1)).conjugate().parts == (4, 3, 3, 2, 1)


def test_hook_difference_table():
    mu = Partition((5, 4, 3, 1))
    rows = [
        [hook_difference(mu, r, c) for c in range(1, mu.part(r) + 1)]
        for r in range(1, 5)
    ]
    assert rows == [[1, 2, 2, 3, 4], [0, 1, 1, 2], [-1, 0, 0], [-3]]


def test_hook_difference_diagonal_minus_one():
    mu = Partition((5, 4, 3, 1))
    assert hook_differences_on_diagonal(mu, -1) == [2, 1]


def test_hook_difference_single_cell():
    assert hook_difference(Partition((1,)), 1, 1) == 0
    with pytest.raises(BijectionError):
        hook_difference(Partition((1,)), 1, 2)


# -- class membership -----------------------------------------------------------

GOLDEN_HC = HookConstraints(8, 4, 7, 8, 2, 1)


def test_satisfies_dki_golden():
    assert satisfies_dki(Partition((6, 6, 6, 6, 3, 2, 1, 1)), GOLDEN_HC)


def test_satisfies_dki_vacuous_and_box():
    assert satisfies_dki(Partition(()), GOLDEN_HC)
    assert not satisfies_dki(Partition((8,)), GOLDEN_HC)  # part exceeds N
    assert not satisfies_dki(Partition((1,) * 9), GOLDEN_HC)  # too many parts


def test_satisfies_dki_rejects_degenerate_alpha_beta():
    with pytest.raises(BijectionError, match="alpha"):
        satisfies_dki(Partition(()), HookConstraints(8, 4, 7, 8, 0, 1))


def test_enumerate_dki_empty_box():
    hc = HookConstraints(8, 4, 0, 0, 2, 1)
    assert [mu.parts for mu in enumerate_dki(hc)] == [()]


@pytest.mark.parametrize("K,i,N,M,alpha,beta", [
    (4, 2, 4, 4, 1, 1),
    (5, 2, 4, 5, 2, 1),
    (8, 4, 5, 5, 2, 1),
    (6, 3, 4, 4, 2, 2),
])
def test_enumerate_dki_matches_recurrence(K, i, N, M, alpha, beta):
    hc = HookConstraints(K, i, N, M, alpha, beta)
    stream = QPolynomial.zero()
    for mu in enumerate_dki(hc):
        stream = stream + QPolynomial.q_power(mu.weight)
    assert stream == dki_recurrence(K, i, N, M, alpha, beta)


def test_enumerate_dki_conjugation_symmetry():
    # conjugation swaps (N, M) and (alpha, beta) but also sends the index i
    # to K - i, so the class is self-paired exactly when K = 2i
    for (K, i, N, M, alpha, beta) in [(4, 2, 4, 4, 1, 1), (8, 4, 5, 6, 2, 1)]:
        hc = HookConstraints(K, i, N, M, alpha, beta)
        swapped = HookConstraints(K, i, M, N, beta, alpha)
        direct = sorted(mu.parts for mu in enumerate_dki(hc))
        conj = sorted(mu.conjugate().parts for mu in enumerate_dki(swapped))
        assert direct == conj


def test_enumerate_dki_conjugation_general_law():
    # for K != 2i the conjugate class has index K - i (outside the canonical
    # window, so spell its constraints out directly)
    for (K, i, N, M, alpha, beta) in [(5, 2, 4, 5, 2, 1), (6, 2, 5, 4, 1, 2)]:
        hc = HookConstraints(K, i, N, M, alpha, beta)
        conj = sorted(mu.conjugate().parts for mu in enumerate_dki(hc))
        target = []
        for mu in box_partitions(M, N):
            lo = hook_differences_on_diagonal(mu, 1 - alpha)
            hi = hook_differences_on_diagonal(mu, beta - 1)
            if all(v >= alpha - (K - i) + 1 for v in lo) and all(
                v <= K - (K - i) - beta - 1 for v in hi
            ):
                target.append(mu.parts)
        assert conj == sorted(target)


# -- the path correspondence -------------------------------------------------------

def test_golden_partition_roundtrip():
    doc = golden()
    path = path_from_json_dict(doc["path"])
    mu = path_to_partition(path)
    assert mu.parts == (6, 6, 6, 6, 3, 2, 1, 1)
    assert mu.weight == wt(path) == 31
    lab = doc["labels"]
    again = partition_to_path(mu, lab["p"], lab["p'"], lab["a"], lab["b"],
                              lab["c"], lab["L"])
    assert again == path
    hc = dki_parameters(path)
    assert (hc.K, hc.i, hc.N, hc.M, hc.alpha, hc.beta) == (8, 4, 7, 8, 2, 1)


def test_zero_length_path_is_single_dot():
    path = validate(3, 8, 4, 4, 5, [4])
    assert path_to_partition(path).parts == ()


def test_empty_partition_gives_minimal_path():
    path = partition_to_path(Partition(()), 3, 8, 4, 3, 2, 15)
    assert wt(path) == 0
    assert path_to_partition(path).parts == ()


def test_partition_outside_box_rejected():
    with pytest.raises(BijectionError, match="box"):
        partition_to_path(Partition((9,)), 3, 8, 4, 3, 2, 15)


def test_malformed_partition_rejected():
    # fits the box but fails the hook constraints: the peel leaves the strip
    bad = Partition((7, 7))
    assert not satisfies_dki(bad, GOLDEN_HC)
    with pytest.raises(BijectionError):
        partition_to_path(bad, 3, 8, 4, 3, 2, 15)


@pytest.mark.parametrize("p,pp", [(2, 5), (3, 8), (5, 8), (3, 4)])
def test_weight_preserving_roundtrip_sweep(p, pp):
    params = ModelParams(p, pp)
    for a in range(1, pp):
        for b in range(1, pp):
            for c in (b - 1, b + 1):
                if not 1 <= c <= pp - 1:
                    continue
                for L in range(0, 7):
                    if (L + a - b) % 2:
                        continue
                    for path in enumerate_paths(params, a, b, c, L):
                        mu = path_to_partition(path)
                        assert mu.weight == wt(path)
                        back = partition_to_path(mu, p, pp, a, b, c, L)
                        assert back == path


def test_bijective_image_equals_dki_class():
    # the image of all paths is exactly the hook-difference class when
    # alpha, beta >= 1
    p, pp, a, b, c, L = 3, 8, 4, 3, 2, 9
    params = ModelParams(p, pp)
    images = sorted(
        path_to_partition(path).parts
        for path in enumerate_paths(params, a, b, c, L)
    )
    hc = dki_parameters(next(iter(enumerate_paths(params, a, b, c, L))))
    members = sorted(mu.parts for mu in enumerate_dki(hc))
    assert images == members


def test_partition_json_roundtrip():
    mu = partition_from_json_dict({"parts": [6, 6, 3]})
    assert mu.parts == (6, 6, 3)
    with pytest.raises(BijectionError):
        partition_from_json_dict({})


def test_box_partitions_count():
    # C(4, 2) = 6 partitions fit in a 2 x 2 box
    assert sum(1 for _ in box_partitions(2, 2)) == 6
