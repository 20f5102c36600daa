import random

import pytest

from qmut import (
    ClassSignature,
    InfeasibleSignatureError,
    MutationSequence,
    NotInClassError,
    Quiver,
    QuiverError,
    SignatureMismatchError,
    StateBudgetExceededError,
    allowed_mutation_vertices,
    count_3cycles,
    cycle_distance,
    enlarge_cycle,
    enlarge_pendant,
    enumerate_mutation_class,
    normal_form_target,
    open_attachment_points,
    preserves_signature,
    reduce_to_normal_form,
    restricted_reachability,
    verify_sequence,
)

TRIANGLE = Quiver(3, [(0, 1), (1, 2), (2, 0)])


def random_member(rng, max_ops):
    """Grow a class member by random safe enlargements from a single vertex."""
    q = Quiver(1)
    for _ in range(rng.randrange(max_ops + 1)):
        spots = open_attachment_points(q)
        if not spots:
            break
        at = rng.choice(spots)
        if rng.random() < 0.5:
            q = enlarge_pendant(q, at, rng.choice(("in", "out")))
        else:
            q = enlarge_cycle(q, at, rng.choice(("cw", "ccw")))
    return q


def test_allowed_vertices():
    assert allowed_mutation_vertices(Quiver.linear(3)) == [0, 2]
    assert allowed_mutation_vertices(TRIANGLE) == []
    assert allowed_mutation_vertices(normal_form_target(5, 2)) == [2]


def test_preserves_signature():
    lin = Quiver.linear(4)
    assert preserves_signature(lin, 0)  # source reflection
    assert not preserves_signature(lin, 1)  # interior mutation creates a triangle


def test_target_small_cases():
    assert normal_form_target(3, 0) == Quiver.linear(3)
    assert normal_form_target(3, 1) == TRIANGLE
    assert normal_form_target(5, 2) == Quiver(
        5, [(0, 1), (1, 2), (2, 0), (4, 3), (3, 2), (2, 4)]
    )
    assert normal_form_target(6, 2) == Quiver(
        6, [(0, 1), (1, 2), (2, 3), (3, 1), (5, 4), (4, 3), (3, 5)]
    )


def test_target_signatures():
    for n in range(1, 10):
        for t in range((n + 1) // 2):
            q = normal_form_target(n, t)
            sig = ClassSignature.of_quiver(q)
            assert (sig.n, sig.t) == (n, t)


def test_target_infeasible():
    for n, t in ((4, 2), (2, 1), (-1, 0), (3, -1), (0, 1)):
        with pytest.raises(InfeasibleSignatureError):
            normal_form_target(n, t)


def test_cycle_distance():
    q = normal_form_target(5, 2)
    tris = sorted(q.directed_3cycles())
    assert cycle_distance(q, tris[0], tris[1]) == 0  # they share vertex 2
    far = Quiver(
        7,
        [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4)],
    )
    a, b = sorted(far.directed_3cycles())
    assert cycle_distance(far, a, b) == 2
    split = Quiver(4, [(0, 1), (2, 3)])
    with pytest.raises(QuiverError):
        cycle_distance(split, {0}, {3})


def test_reduce_identity_like_start():
    seq = reduce_to_normal_form(Quiver.linear(5))
    ok, bad = verify_sequence(seq)
    assert ok and bad is None
    assert seq.end.is_isomorphic(normal_form_target(5, 0))


def test_reduce_triangle_with_pendant():
    q = Quiver(4, [(0, 1), (1, 2), (2, 0), (3, 0)])
    seq = reduce_to_normal_form(q)
    ok, _ = verify_sequence(seq)
    assert ok
    assert seq.start == q
    assert seq.end.is_isomorphic(normal_form_target(4, 1))


def test_reduce_every_member_up_to_five():
    for n in range(2, 6):
        for _, q in enumerate_mutation_class(Quiver.linear(n)).items():
            seq = reduce_to_normal_form(q)
            ok, bad = verify_sequence(seq)
            assert ok, (q.arrows(), bad)
            assert seq.end.is_isomorphic(normal_form_target(n, count_3cycles(q)))


def test_reduce_random_members():
    rng = random.Random(11)
    for _ in range(40):
        q = random_member(rng, 4)
        if q.n < 2:
            continue
        seq = reduce_to_normal_form(q)
        ok, bad = verify_sequence(seq)
        assert ok, (q.arrows(), bad)
        assert seq.end.is_isomorphic(normal_form_target(q.n, count_3cycles(q)))


def test_reduce_rejects_non_member():
    with pytest.raises(NotInClassError):
        reduce_to_normal_form(Quiver(2, [(0, 1), (0, 1)]))


def test_verify_good_sequence():
    seq = MutationSequence.from_vertices(Quiver.linear(3), [0, 1])
    assert verify_sequence(seq) == (True, None)


def test_verify_flags_disallowed_vertex():
    seq = MutationSequence.from_vertices(Quiver.linear(4), [1])
    assert verify_sequence(seq) == (False, 0)


def test_verify_flags_non_member_start():
    bad = Quiver(2, [(0, 1), (0, 1)])
    assert verify_sequence(MutationSequence(start=bad, steps=())) == (False, 0)


def test_verify_flags_tampered_state():
    seq = MutationSequence.from_vertices(Quiver.linear(3), [0, 1])
    v0, q0 = seq.steps[0]
    tampered = MutationSequence(start=seq.start, steps=((v0, q0), (seq.steps[1][0], q0)))
    assert verify_sequence(tampered) == (False, 1)


def test_verify_flags_out_of_range_vertex():
    lin = Quiver.linear(3)
    seq = MutationSequence(start=lin, steps=((7, lin),))
    assert verify_sequence(seq) == (False, 0)


def test_reachability_trivial():
    seq = restricted_reachability(Quiver.linear(4), Quiver.linear(4))
    assert len(seq) == 0 and seq.start == Quiver.linear(4)


def test_reachability_finds_path():
    zigzag = Quiver(4, [(0, 1), (2, 1), (2, 3)])
    assert not zigzag.is_isomorphic(Quiver.linear(4))
    seq = restricted_reachability(Quiver.linear(4), zigzag)
    ok, _ = verify_sequence(seq)
    assert ok
    assert seq.end.is_isomorphic(zigzag)


def test_reachability_between_triangle_placements():
    a = Quiver(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4)])
    b = Quiver(5, [(0, 1), (1, 2), (2, 0), (3, 0), (4, 3)])
    seq = restricted_reachability(a, b)
    ok, _ = verify_sequence(seq)
    assert ok
    assert seq.end.is_isomorphic(b)


def test_reachability_signature_mismatch():
    with pytest.raises(SignatureMismatchError):
        restricted_reachability(Quiver.linear(3), TRIANGLE)


def test_reachability_rejects_non_member():
    with pytest.raises(NotInClassError):
        restricted_reachability(Quiver(2, [(0, 1), (0, 1)]), Quiver.linear(2))


def test_reachability_state_budget():
    zigzag = Quiver(4, [(0, 1), (2, 1), (2, 3)])
    with pytest.raises(StateBudgetExceededError):
        restricted_reachability(Quiver.linear(4), zigzag, max_states=1)
