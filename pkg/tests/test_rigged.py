import math

import pytest

from bethe_lab import rigged


def test_partitions_reverse_lex_order():
    assert rigged.partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert rigged.partitions(0) == [()]


def test_vacancy_single_box():
    assert rigged.vacancy((1,), 4) == {1: 2}


def test_vacancy_two_rows():
    assert rigged.vacancy((1, 1), 6) == {1: 2}


def test_vacancy_hook_shape():
    assert rigged.vacancy((2, 1), 6) == {1: 2, 2: 0}


def test_vacancy_rejects_oversized_partition():
    with pytest.raises(rigged.AdmissibilityError):
        rigged.vacancy((2, 1), 4)


def test_rigging_bounds_enforced():
    rigged.RiggedConfiguration(6, (2, 1), (0, 2))
    with pytest.raises(ValueError):
        rigged.RiggedConfiguration(6, (2, 1), (1, 0))  # P_2 = 0 caps the long row
    with pytest.raises(ValueError):
        rigged.RiggedConfiguration(6, (1, 1), (0, 1))  # equal rows sorted descending


def test_enumerate_four_sites_two_magnons():
    rcs = rigged.enumerate_rcs(4, 2)
    assert [(rc.nu, rc.riggings) for rc in rcs] == [((2,), (0,)), ((1, 1), (0, 0))]


def test_enumerate_six_sites_three_magnons():
    rcs = rigged.enumerate_rcs(6, 3)
    shapes = [(rc.nu, rc.riggings) for rc in rcs]
    assert shapes == [
        ((3,), (0,)),
        ((2, 1), (0, 0)),
        ((2, 1), (0, 1)),
        ((2, 1), (0, 2)),
        ((1, 1, 1), (0, 0, 0)),
    ]


def test_enumerate_two_sites_one_magnon():
    rcs = rigged.enumerate_rcs(2, 1)
    assert [(rc.nu, rc.riggings) for rc in rcs] == [((1,), (0,))]


def test_rc_count_examples():
    assert rigged.rc_count(4, 2) == 2
    assert rigged.rc_count(6, 2) == 9
    assert rigged.rc_count(6, 0) == 1


def test_count_identity_up_to_fourteen_sites():
    for n in range(2, 15):
        for ell in range(n // 2 + 1):
            count = len(rigged.enumerate_rcs(n, ell))
            assert count == math.comb(n, ell) - (
                math.comb(n, ell - 1) if ell >= 1 else 0
            ), (n, ell)


def test_emitted_riggings_saturate_bounds():
    for rc in rigged.enumerate_rcs(8, 3):
        p = rigged.vacancy(rc.nu, 8)
        for row, rig in zip(rc.nu, rc.riggings):
            assert 0 <= rig <= p[row]
            with pytest.raises(ValueError):
                bumped = tuple(
                    p[row] + 1 if i == rc.nu.index(row) else r
                    for i, r in enumerate(rc.riggings)
                )
                rigged.RiggedConfiguration(8, rc.nu, bumped)
            break  # one bump per configuration is enough


def test_dedup_of_equal_row_riggings():
    # permuting riggings among equal-length rows must not add configurations
    rcs = rigged.enumerate_rcs(8, 2)
    seen = set()
    for rc in rcs:
        key = (rc.nu, tuple(sorted(rc.riggings, reverse=True)))
        assert key not in seen
        seen.add(key)


def test_heuristic_pairing_single_magnon():
    # three single-magnon states at n=4: riggings 2, 1, 0 follow the
    # rapidities 1/2, 0, -1/2
    rcs = rigged.enumerate_rcs(4, 1)
    pairs = rigged.heuristic_real_pairing([(0.5,), (0.0,), (-0.5,)], rcs)
    assert pairs is not None
    rig_by_solution = {si: rcs[ri].riggings[0] for si, ri in pairs}
    assert rig_by_solution == {0: 2, 1: 1, 2: 0}


def test_heuristic_pairing_two_magnon_real_rows():
    # the six real two-magnon states at n=6 in descending rapidity order
    # carry riggings (2,2) down to (0,0)
    rcs = rigged.enumerate_rcs(6, 2)
    sols = [
        (0.688190, -0.688190),
        (0.631084, -0.198071),
        (0.582004, -0.094167),
        (0.198071, -0.631084),
        (0.162459, -0.162459),
        (0.094167, -0.582004),
    ]
    pairs = rigged.heuristic_real_pairing(sols, rcs)
    assert pairs is not None
    rig = {si: rcs[ri].riggings for si, ri in pairs}
    assert rig == {
        2: (2, 2),
        1: (2, 1),
        0: (2, 0),
        4: (1, 1),
        3: (1, 0),
        5: (0, 0),
    }


def test_heuristic_pairing_declines_outside_scope():
    rcs = rigged.enumerate_rcs(8, 3)
    assert rigged.heuristic_real_pairing([(0.1, 0.2, 0.3)], rcs) is None
