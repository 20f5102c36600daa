import random

import pytest

from qmut import (
    ClassSignature,
    ClassTooLargeError,
    PreconditionViolatedError,
    Quiver,
    TooLargeError,
    class_signature,
    count_3cycles,
    enlarge_cycle,
    enlarge_pendant,
    enlargement_plan,
    enumerate_class_bruteforce,
    enumerate_mutation_class,
    is_class_member,
    membership_report,
    open_attachment_points,
    replay_enlargements,
)

TRIANGLE = Quiver(3, [(0, 1), (1, 2), (2, 0)])


def _kinds(q):
    return [v.kind for v in membership_report(q).violations]


def test_members():
    assert is_class_member(Quiver(1))
    assert is_class_member(Quiver.linear(6))
    assert is_class_member(TRIANGLE)
    assert is_class_member(Quiver(3, [(0, 1), (2, 1)]))
    # triangle chain sharing one vertex
    assert is_class_member(Quiver(5, [(0, 1), (1, 2), (2, 0), (2, 4), (3, 2), (4, 3)]))


def test_disconnected_witness():
    rep = membership_report(Quiver(4, [(0, 1), (2, 3)]))
    assert not rep.member
    v = next(x for x in rep.violations if x.kind == "not-connected")
    assert v.witness == (0, 1)


def test_parallel_arrows_rejected():
    assert "parallel-arrows" in _kinds(Quiver(2, [(0, 1), (0, 1)]))


def test_long_cycle_rejected():
    q = Quiver(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    kinds = _kinds(q)
    assert "cycle-not-length-3" in kinds
    witness = next(
        v.witness for v in membership_report(q).violations if v.kind == "cycle-not-length-3"
    )
    assert sorted(witness) == [0, 1, 2, 3]


def test_unoriented_triangle_rejected():
    assert "cycle-not-oriented" in _kinds(Quiver(3, [(0, 1), (1, 2), (0, 2)]))


def test_valency_bound():
    star5 = Quiver(6, [(0, i) for i in range(1, 6)])
    assert "valency-exceeded" in _kinds(star5)


def test_valency4_needs_two_triangles():
    star4 = Quiver(5, [(0, i) for i in range(1, 5)])
    assert "valency4-not-two-triangles" in _kinds(star4)


def test_valency3_needs_one_triangle():
    star3 = Quiver(4, [(0, 1), (0, 2), (0, 3)])
    assert "valency3-not-one-triangle" in _kinds(star3)


def test_count_3cycles():
    assert count_3cycles(Quiver.linear(5)) == 0
    assert count_3cycles(TRIANGLE) == 1


def test_class_signature():
    sig = class_signature(TRIANGLE)
    assert sig == ClassSignature(n=3, t=1)
    assert sig.is_feasible()
    assert not ClassSignature(n=4, t=2).is_feasible()
    assert ClassSignature(n=7, t=0).is_feasible()


# sizes confirmed by the brute-force scan for n <= 5 (see acceptance suite)
CLASS_SIZES = {2: 1, 3: 4, 4: 6, 5: 19, 6: 49, 7: 150, 8: 442}


def test_class_sizes_frozen():
    for n, size in CLASS_SIZES.items():
        assert len(enumerate_mutation_class(Quiver.linear(n))) == size


def test_a3_class_contents():
    members = enumerate_mutation_class(Quiver.linear(3))
    expected = [
        Quiver.linear(3),
        Quiver(3, [(0, 1), (2, 1)]),
        Quiver(3, [(1, 0), (1, 2)]),
        TRIANGLE,
    ]
    keys = {cf.key for cf in members}
    assert keys == {q.canonical_form().key for q in expected}
    assert len(keys) == 4


def test_enumeration_values_are_canonical_members():
    for cf, q in enumerate_mutation_class(Quiver.linear(5)).items():
        assert q.canonical_form().key == cf.key
        assert is_class_member(q)


def test_class_too_large():
    with pytest.raises(ClassTooLargeError):
        enumerate_mutation_class(Quiver.linear(5), max_size=7)


def test_bruteforce_cap():
    with pytest.raises(TooLargeError):
        enumerate_class_bruteforce(6)


def test_bruteforce_small():
    assert len(enumerate_class_bruteforce(2)) == 1
    assert len(enumerate_class_bruteforce(3)) == 4


def test_enlarge_pendant():
    q = enlarge_pendant(Quiver(1), 0, "out")
    assert q == Quiver(2, [(0, 1)])
    q = enlarge_pendant(q, 1, "in")
    assert q == Quiver(3, [(0, 1), (2, 1)])
    with pytest.raises(PreconditionViolatedError):
        enlarge_pendant(q, 5, "out")
    with pytest.raises(PreconditionViolatedError):
        enlarge_pendant(q, 0, "sideways")


def test_enlarge_cycle():
    q = enlarge_cycle(Quiver(1), 0, "cw")
    assert q == Quiver(3, [(0, 1), (1, 2), (2, 0)])
    r = enlarge_cycle(Quiver(1), 0, "ccw")
    assert r == Quiver(3, [(0, 2), (2, 1), (1, 0)])
    assert r.is_isomorphic(q)


def test_enlarge_cycle_preconditions():
    # shared spine vertex of two triangles has valency 4
    chain = Quiver(5, [(0, 1), (1, 2), (2, 0), (2, 4), (3, 2), (4, 3)])
    with pytest.raises(PreconditionViolatedError):
        enlarge_cycle(chain, 2, "cw")
    # valency 2 but already on one triangle is still allowed
    assert is_class_member(enlarge_cycle(chain, 0, "cw"))
    with pytest.raises(PreconditionViolatedError):
        enlarge_cycle(chain, 0, "diagonal")


def test_open_attachment_points():
    assert open_attachment_points(Quiver.linear(3)) == [0, 2]
    assert open_attachment_points(TRIANGLE) == [0, 1, 2]
    chain = Quiver(5, [(0, 1), (1, 2), (2, 0), (2, 4), (3, 2), (4, 3)])
    assert open_attachment_points(chain) == [0, 1, 3, 4]


def test_enlargements_at_open_points_stay_in_class():
    rng = random.Random(11)
    for _ in range(150):
        q = Quiver(1)
        for _ in range(rng.randrange(1, 6)):
            attach = rng.choice(open_attachment_points(q))
            if rng.random() < 0.5:
                q = enlarge_pendant(q, attach, rng.choice(["in", "out"]))
            else:
                q = enlarge_cycle(q, attach, rng.choice(["cw", "ccw"]))
            assert is_class_member(q)


def test_enlargement_plan_reconstructs_members():
    """Every member decomposes into enlargements replaying to an isomorphic copy."""
    for n in range(1, 7):
        for _, q in enumerate_mutation_class(Quiver.linear(n)).items():
            ops = enlargement_plan(q)
            built = replay_enlargements(ops)
            assert built.is_isomorphic(q), (n, q, ops)


def test_enlargement_plan_rejects_non_members():
    with pytest.raises(PreconditionViolatedError):
        enlargement_plan(Quiver(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
    with pytest.raises(PreconditionViolatedError):
        enlargement_plan(Quiver(0))


def test_replay_rejects_unknown_ops():
    with pytest.raises(PreconditionViolatedError):
        replay_enlargements([("weld", 0, "cw")])
