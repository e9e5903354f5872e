import math
from itertools import product

import numpy as np
import pytest

from njordan.jordan import (
    DECOMPOSITION_CHECKS,
    CharTooSmall,
    CommutatorForm,
    DefectForm,
    HypothesisFailed,
    NoUnit,
    NotNJordan,
    TupleBudgetExceeded,
    check_lemma21,
    classify,
    herstein_decompose,
    is_anti_n_hom,
    is_n_hom,
    is_n_jordan,
    iter_tuple_chunks,
    jordan_defect,
    n_hom_witness,
    sampled,
    symmetrized_defect,
    symmetrized_rows,
    unit_specialization_sides,
    verify_corollary25,
    verify_lemma22,
    verify_theorem23,
    verify_theorem24,
)
from njordan.maps import (
    NJordanFilter,
    enumerate_additive_maps,
    identity_map,
    map_from_generator_images,
    map_from_values,
    transpose_map,
    zero_map,
)
from njordan.rings import char_exceeds, cyclic_ring, direct_product, matrix_ring, zero_mul_ring

from oracles import boolean_pair_mul, cyclic_n_hom, cyclic_n_jordan

Z6, Z7 = cyclic_ring(6), cyclic_ring(7)
V4 = direct_product(cyclic_ring(2), cyclic_ring(2))
M22 = matrix_ring(2, 2)
M23 = matrix_ring(3, 2)


def pair(a, b):
    return 2 * a + b


@pytest.fixture
def neg_id():
    return map_from_generator_images(Z7, Z7, [6])


@pytest.fixture
def collapse():
    """h(a, b) = (a + b, 0) on Z2 x Z2."""
    values = [pair((a + b) % 2, 0) for a, b in [(0, 0), (0, 1), (1, 0), (1, 1)]]
    return map_from_values(V4, V4, values)


def test_collapse_fixture_is_boolean_collapse(collapse):
    assert collapse(pair(1, 0)) == pair(1, 0) and collapse(pair(0, 1)) == pair(1, 0)
    assert collapse(pair(1, 1)) == 0


# --- predicates -----------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 7))
def test_identity_is_n_jordan(n):
    assert is_n_jordan(identity_map(Z6), n)


def test_negation_jordan_flags(neg_id):
    assert is_n_jordan(neg_id, 3)
    assert not is_n_jordan(neg_id, 2)


@pytest.mark.parametrize("m", [5, 6, 7, 9])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_n_jordan_matches_modular_oracle(m, n):
    R = cyclic_ring(m)
    for h in enumerate_additive_maps(R, R):
        assert is_n_jordan(h, n) == cyclic_n_jordan(h(1), m, n)


@pytest.mark.parametrize("a, b", [(5, 5), (6, 3), (4, 6), (7, 7), (9, 3)])
@pytest.mark.parametrize("n", [2, 3])
def test_n_hom_matches_modular_oracle(a, b, n):
    for h in enumerate_additive_maps(cyclic_ring(a), cyclic_ring(b)):
        assert is_n_hom(h, n) == cyclic_n_hom(h(1) if a > 1 else 0, a, b, n)


def test_boolean_collapse_is_jordan(collapse):
    assert is_n_jordan(collapse, 2)


def test_negation_is_3_hom(neg_id):
    assert is_n_hom(neg_id, 3)


def test_collapse_hom_witness(collapse):
    x, y = pair(1, 0), pair(0, 1)
    assert collapse(V4.mul(x, y)) == 0
    assert V4.mul(collapse(x), collapse(y)) == pair(1, 0)
    assert not is_n_hom(collapse, 2)
    w = n_hom_witness(collapse, 2)
    lhs = collapse(boolean_pair_mul(*w))
    rhs = boolean_pair_mul(collapse(w[0]), collapse(w[1]))
    assert lhs != rhs


@pytest.mark.parametrize("n", [2, 3, 4])
def test_zero_map_is_everything(n):
    z = zero_map(M22, M22)
    assert is_n_hom(z, n) and is_anti_n_hom(z, n) and is_n_jordan(z, n)


@pytest.mark.parametrize("n", [2, 3])
def test_anti_equals_hom_on_commutative_pairs(n):
    for A, B in [(Z6, Z6), (V4, V4), (cyclic_ring(4), cyclic_ring(6))]:
        for h in enumerate_additive_maps(A, B):
            assert is_anti_n_hom(h, n) == is_n_hom(h, n)


def test_transpose_is_anti_hom_not_hom():
    from oracles import mat_from_index, mat_index, mat_mul

    t = transpose_map(M23, 3, 2)
    assert is_anti_n_hom(t, 2)
    w = n_hom_witness(t, 2)
    assert w is not None
    x, y = (mat_from_index(v, 3, 2) for v in w)
    assert t(mat_index(mat_mul(x, y, 3), 3)) != mat_index(
        mat_mul(mat_from_index(t(w[0]), 3, 2), mat_from_index(t(w[1]), 3, 2), 3), 3
    )
    # elementary matrices E12, E21 also witness the failure
    e12, e21 = 9, 3
    assert t(M23.mul(e12, e21)) != M23.mul(t(e12), t(e21))


def test_tuple_budget():
    with pytest.raises(TupleBudgetExceeded):
        is_n_hom(identity_map(M23), 4, tuple_budget=10**6)


def test_iter_tuple_chunks_lexicographic():
    rows = np.concatenate(list(iter_tuple_chunks(3, 3, chunk=5)))
    assert [tuple(r) for r in rows] == list(product(range(3), repeat=3))


# --- classification -------------------------------------------------------


def test_classify_examples(neg_id, collapse):
    r = classify(identity_map(Z6), 4)
    assert r.is_jordan and r.is_n_jordan and r.is_n_hom and r.is_anti_n_hom
    r = classify(neg_id, 3)
    assert (r.is_jordan, r.is_n_jordan, r.is_n_hom, r.is_anti_n_hom) == (False, True, True, True)
    r = classify(collapse, 2)
    assert (r.is_jordan, r.is_n_jordan, r.is_n_hom, r.is_anti_n_hom) == (True, True, False, False)
    assert r.map_key == collapse.key


# --- defects --------------------------------------------------------------


def test_defect_examples(neg_id, collapse):
    assert jordan_defect(neg_id, (3, 3, 3)) == 0
    assert jordan_defect(collapse, (pair(1, 0), pair(0, 1))) == pair(1, 0)
    assert jordan_defect(zero_map(Z7, Z7), (2, 5, 6)) == 0


def test_symmetrized_defect_non_jordan_example():
    h = map_from_generator_images(Z7, Z7, [2])
    # 2 * (h(1) - h(1)^2) = 2 * (2 - 4) = -4 = 3 mod 7
    assert symmetrized_defect(h, (1, 1)) == 3


def test_symmetrized_defect_vanishes_for_n_jordan(neg_id):
    for xs in product(range(7), repeat=3):
        assert symmetrized_defect(neg_id, xs) == 0


@pytest.mark.parametrize("n", [2, 3])
def test_symmetrized_defect_commutative_is_factorial_multiple(n):
    # any additive map, commutative rings: the sum is n! times a single defect
    for h in enumerate_additive_maps(Z6, Z6):
        for xs in product(range(6), repeat=n):
            assert symmetrized_defect(h, xs) == Z6.scalar(math.factorial(n), jordan_defect(h, xs))


def test_vectorised_symmetrisation_matches_scalar():
    h = map_from_generator_images(M22, M22, [1, 2, 4, 8])
    rng = np.random.default_rng(3)
    for h in [identity_map(M22), transpose_map(M22, 2, 2), h]:
        X = rng.integers(0, 16, size=(40, 3))
        vec = symmetrized_rows(DefectForm(h, 3), X)
        assert [int(v) for v in vec] == [symmetrized_defect(h, tuple(r)) for r in X]


# --- symmetrised forms -----------------------------------------------------


def test_diagonal_check_defect_form(neg_id):
    report = check_lemma21(DefectForm(neg_id, 3))
    assert report.outcome == "verified" and report.tuples_checked == 343


def test_diagonal_check_hypothesis_failed():
    h = map_from_generator_images(Z7, Z7, [2])
    with pytest.raises(HypothesisFailed) as exc:
        check_lemma21(DefectForm(h, 2))
    assert exc.value.witness == 1


@pytest.mark.parametrize("n", [2, 3])
def test_diagonal_check_commutator_form(n):
    for g in [transpose_map(M22, 2, 2), map_from_generator_images(M22, M22, [3, 2, 4, 8])]:
        report = check_lemma21(CommutatorForm(g, n))
        assert report.outcome == "verified" and report.tuples_checked == 16**n


def test_diagonal_check_sampled_is_reproducible():
    g = map_from_generator_images(M23, M23, [1, 3, 9, 27])
    a = check_lemma21(CommutatorForm(g, 3), sampled(500, 11))
    b = check_lemma21(CommutatorForm(g, 3), sampled(500, 11))
    assert a.outcome == "verified" and a.tuples_checked == 500
    assert a.to_json() == b.to_json()
    assert a.mode == {"sampled": {"count": 500, "seed": 11}}


def test_symmetrised_defect_examples(neg_id):
    r = verify_lemma22(neg_id, 3)
    assert r.outcome == "verified" and r.tuples_checked == 343
    r = verify_lemma22(identity_map(M22), 2)
    assert r.outcome == "verified" and r.tuples_checked == 256
    r = verify_lemma22(map_from_generator_images(Z7, Z7, [2]), 2)
    assert r.outcome == "premise_failed"


def test_symmetrised_defect_on_noncommutative_jordan_maps():
    for h in enumerate_additive_maps(M22, M22):
        if is_n_jordan(h, 3):
            assert verify_lemma22(h, 3).outcome == "verified"


def test_symmetrised_defect_sampled_and_budget(neg_id):
    r = verify_lemma22(identity_map(M23), 4, sampled(2000, 5))
    assert r.outcome == "verified" and r.tuples_checked == 2000
    with pytest.raises(TupleBudgetExceeded):
        verify_lemma22(identity_map(M23), 4, tuple_budget=10**6)


# --- commutative case -----------------------------------------------------


def test_commutative_z7():
    r = verify_theorem23(Z7, Z7, 3)
    assert r.outcome == "verified" and r.maps_checked == 3
    jordan = [h(1) for h in enumerate_additive_maps(Z7, Z7) if is_n_jordan(h, 3)]
    assert jordan == [a for a in range(7) if pow(a, 3, 7) == a] == [0, 1, 6]


def test_commutative_premises():
    assert verify_theorem23(V4, V4, 2).outcome == "premise_failed"
    assert verify_theorem23(V4, V4, 2).detail.startswith("char(B)")
    assert verify_theorem23(M23, M23, 2).detail == "A non-commutative"
    assert verify_theorem23(Z7, M23, 2).detail == "B non-commutative"


# --- decomposition --------------------------------------------------------


def test_decompose_negation(neg_id):
    d = herstein_decompose(neg_id, 3)
    assert d.c == 6
    assert [d.tau(x) for x in range(7)] == list(range(7))
    assert d.ok and set(d.checks) == set(DECOMPOSITION_CHECKS)
    assert all(neg_id(x) == Z7.mul(6, x) for x in range(7))


@pytest.mark.parametrize("R", [Z7, cyclic_ring(5), M23, cyclic_ring(1)], ids=lambda r: r.label)
@pytest.mark.parametrize("n", [2, 3, 4])
def test_decompose_identity(R, n):
    if not char_exceeds(R, n):
        with pytest.raises(CharTooSmall):
            herstein_decompose(identity_map(R), n)
        return
    d = herstein_decompose(identity_map(R), n)
    assert d.c == R.unit and d.ok
    assert all(d.tau(x) == x for x in R.elements)


def test_decompose_errors(collapse):
    with pytest.raises(CharTooSmall):
        herstein_decompose(collapse, 2)
    nu = zero_mul_ring(5)
    with pytest.raises(NoUnit):
        herstein_decompose(identity_map(nu), 2)
    with pytest.raises(NotNJordan):
        herstein_decompose(map_from_generator_images(Z7, Z7, [2]), 2)


def test_decompose_all_m23_jordan_maps():
    # 81 is odd so char > 2 holds; every Jordan map must decompose cleanly
    maps = list(enumerate_additive_maps(M23, M23, NJordanFilter(2)))
    assert len(maps) > 2
    for h in maps:
        assert herstein_decompose(h, 2).ok


def test_decompose_nontrivial_scalar():
    # Z5 x Z7 -> Z5 x Z7, x -> (a*x1, b*x2) with a^3 = a, b^3 = b
    A = direct_product(cyclic_ring(5), cyclic_ring(7))
    for h in enumerate_additive_maps(A, A):
        if is_n_jordan(h, 3):
            d = herstein_decompose(h, 3)
            assert d.ok and A.power(d.c, 3) == d.c


def test_unit_specialization():
    A = M23
    for h in [identity_map(A), transpose_map(A, 3, 2)]:
        for n in (2, 3):
            for x in A.elements:
                lhs, rhs = unit_specialization_sides(h, n, x)
                assert lhs == rhs
                assert lhs == A.scalar(math.factorial(n), h(x))


def test_unit_specialization_is_symmetrized_defect():
    for h in enumerate_additive_maps(Z7, Z7):
        if is_n_jordan(h, 3):
            for x in range(7):
                lhs, rhs = unit_specialization_sides(h, 3, x)
                # with n-Jordan h, the symmetrised defect at (x, e, e) is lhs - rhs = 0
                assert symmetrized_defect(h, (x, 1, 1)) == Z7.sub(lhs, rhs) == 0


def test_decomposition_report(neg_id, collapse):
    assert verify_theorem24(neg_id, 3).outcome == "verified"
    r = verify_theorem24(collapse, 2)
    assert r.outcome == "premise_failed" and "CharTooSmall" in r.detail


# --- transfer -------------------------------------------------------------


def test_transfer_z7():
    r = verify_corollary25(Z7, Z7, 3, "hom")
    assert r.outcome == "verified" and r.maps_checked == 3
    assert "2 Jordan maps" in r.detail


def test_transfer_premises(collapse):
    assert verify_corollary25(M22, M22, 2).detail == "char(B) > 2 fails"
    r = verify_corollary25(V4, V4, 2, "hom")
    assert r.outcome == "premise_failed"
    assert is_n_jordan(collapse, 2) and not is_n_hom(collapse, 2)
    assert verify_corollary25(zero_mul_ring(5), Z7, 2).detail == "A has no unit"


def test_transfer_m23_hom_branch_premise_fails_on_transpose():
    r = verify_corollary25(M23, M23, 2, "hom")
    assert r.outcome == "premise_failed"
    h = map_from_generator_images(M23, M23, r.witness["gen_images"])
    assert is_n_jordan(h, 2) and not is_n_hom(h, 2)


def test_transfer_rejects_bad_branch():
    with pytest.raises(ValueError):
        verify_corollary25(Z7, Z7, 3, "sideways")
