from math import factorial

import pytest

from heckeboid.enumeration import (
    all_classes,
    count_solutions,
    hall_transitive_count,
    involutions,
    standard_sigmaq,
)
from heckeboid.errors import BadQ, LimitExceeded
from heckeboid.perms import canonical_form, make_pair, pair_violations
from oracles import brute_classes, perms_with_cycles

# (q, n) -> (classes, transitive pairs), all produced by oracles.brute_classes
FROZEN = {
    (3, 1): (1, 1), (3, 2): (1, 1), (3, 3): (2, 8), (3, 4): (2, 48),
    (3, 5): (1, 120), (3, 6): (8, 2640),
    (4, 1): (1, 1), (4, 2): (1, 1), (4, 3): (0, 0), (4, 4): (5, 60), (4, 5): (4, 480),
    (5, 1): (1, 1), (5, 2): (1, 1), (5, 3): (0, 0), (5, 4): (0, 0), (5, 5): (6, 624),
}


def test_first_examples():
    r = all_classes(3, 1)
    assert r.class_count == 1 and r.classes[0] == make_pair(3, (1,), (1,))
    r = all_classes(3, 2)
    assert r.classes == (make_pair(3, "(1 2)", "id", n=2),)
    assert r.subgroup_count == 1
    assert all_classes(4, 2).class_count == 1


@pytest.mark.parametrize("q, n", sorted(FROZEN))
def test_against_brute_force(q, n):
    classes, transitive, reps = brute_classes(q, n)
    assert (classes, transitive) == FROZEN[(q, n)]
    r = all_classes(q, n)
    assert r.class_count == classes == len(r.classes)
    assert r.transitive_pair_count == transitive == hall_transitive_count(q, n)
    assert r.subgroup_count * factorial(n - 1) == transitive
    assert set(r.classes) == {canonical_form(make_pair(q, a, b)) for a, b in reps}


def test_larger_counts():
    # cross-checked with the Hall recursion only; brute force is too slow here
    r = all_classes(3, 7)
    assert (r.class_count, r.transitive_pair_count, r.subgroup_count) == (6, 30240, 42)
    assert r.transitive_pair_count == hall_transitive_count(3, 7)


def test_representatives_are_canonical_and_valid():
    for q, n in FROZEN:
        for c in all_classes(q, n).classes:
            assert not pair_violations(q, c.sigma2, c.sigmaq)
            assert canonical_form(c) == c


def test_classes_sorted():
    cls = all_classes(3, 6).classes
    keys = [(c.sigma2, c.sigmaq) for c in cls]
    assert keys == sorted(keys)


def test_workers_do_not_change_result():
    assert all_classes(3, 6, workers=2) == all_classes(3, 6)


def test_limit():
    with pytest.raises(LimitExceeded):
        all_classes(3, 10)
    with pytest.raises(LimitExceeded):
        all_classes(3, 5, limit=4)
    with pytest.raises(LimitExceeded):
        all_classes(3, 0)
    with pytest.raises(BadQ):
        all_classes(2, 3)


def test_count_solutions_examples():
    assert [count_solutions(3, n)[0] for n in range(1, 7)] == [1, 2, 4, 10, 26, 76]
    assert count_solutions(3, 3)[1] == 3
    for q in range(4, 9):
        assert count_solutions(q, q - 1)[1] == 1


@pytest.mark.parametrize("q", [3, 4, 5])
def test_count_solutions_against_filter(q):
    for n in range(1, 7):
        i2, iq = count_solutions(q, n)
        assert i2 == len(perms_with_cycles(n, {1, 2}))
        assert iq == len(perms_with_cycles(n, {1, q}))


def test_hall_examples():
    assert hall_transitive_count(3, 1) == 1
    assert hall_transitive_count(3, 2) == 1


def test_all_pair_count():
    r = all_classes(3, 4)
    i2, i3 = count_solutions(3, 4)
    assert r.all_pair_count == i2 * i3 == 10 * 9


def test_large_q_freezes():
    # once q > n the only admissible sigmaq is the identity
    for n in range(1, 6):
        counts = {all_classes(q, n).class_count for q in range(max(3, n + 1), n + 5)}
        assert len(counts) == 1


def test_involutions_and_standard_sigmaq():
    assert len(list(involutions(5))) == 26
    assert standard_sigmaq(3, 7, 2) == (2, 3, 1, 5, 6, 4, 7)
