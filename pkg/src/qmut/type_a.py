"""Recognition and enumeration of the mutation class of linearly ordered quivers.

A connected quiver belongs to the class exactly when every cycle of its
underlying graph is an oriented triangle, no vertex touches more than
four others, and vertices of valency 3 and 4 sit on triangles in the
unique way these constraints allow.  Members are built from a single
vertex by repeatedly attaching a pendant arrow or an oriented triangle.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .quiver import Quiver, QuiverError


class ClassTooLargeError(QuiverError):
    pass


class TooLargeError(QuiverError):
    pass


class PreconditionViolatedError(QuiverError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: tuple


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    violations: tuple

    def __bool__(self):
        return self.member


@dataclass(frozen=True)
class ClassSignature:
    """Vertex count and oriented-triangle count; a complete derived invariant."""

    n: int
    t: int

    @classmethod
    def of_quiver(cls, q: Quiver) -> "ClassSignature":
        return cls(n=q.n, t=count_3cycles(q))

    def is_feasible(self) -> bool:
        if self.n < 0 or self.t < 0:
            return False
        return self.t == 0 or 2 * self.t + 1 <= self.n


def count_3cycles(q: Quiver) -> int:
    return len(q.directed_3cycles())


def _undirected_cycles(q: Quiver, node_budget: int = 500_000):
    """Yield each simple cycle of the underlying simple graph once, as a vertex tuple."""
    n = q.n
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v, _ in q.arcs:
        adj[u].add(v)
        adj[v].add(u)
    nbrs = [sorted(s) for s in adj]
    budget = [node_budget]

    def dfs(root, path, on_path):
        budget[0] -= 1
        if budget[0] < 0:
            raise QuiverError("cycle scan budget exceeded")
        v = path[-1]
        for w in nbrs[v]:
            if w == root:
                # close only in one direction so each cycle appears once
                if len(path) >= 3 and path[1] < path[-1]:
                    yield tuple(path)
            elif w > root and w not in on_path:
                path.append(w)
                on_path.add(w)
                yield from dfs(root, path, on_path)
                on_path.remove(w)
                path.pop()

    for root in range(n):
        yield from dfs(root, [root], {root})


def membership_report(q: Quiver) -> MembershipReport:
    """Decide class membership, with a witness for each failed condition.

    Conditions are checked in order: connectivity, cycle shape, valency
    bound, then the triangle incidences forced at valency-4 and valency-3
    vertices.  The cycle scan stops at its first offending cycle.
    """
    violations: list[Violation] = []

    if not q.is_connected():
        comp = _component_of(q, 0)
        violations.append(Violation("not-connected", tuple(sorted(comp))))

    for u, v, m in q.arcs:
        if m >= 2:
            violations.append(Violation("parallel-arrows", (u, v)))

    tris = q.directed_3cycles()
    tri_supports = {tuple(sorted(t)) for t in tris}
    for cyc in _undirected_cycles(q):
        if len(cyc) != 3:
            violations.append(Violation("cycle-not-length-3", cyc))
            break
        if tuple(sorted(cyc)) not in tri_supports:
            violations.append(Violation("cycle-not-oriented", cyc))
            break

    for v in range(q.n):
        val = q.valency(v)
        if val > 4:
            violations.append(Violation("valency-exceeded", (v, val)))

    tri_count = [0] * q.n
    tri_nbrs: list[set[int]] = [set() for _ in range(q.n)]
    for t in tris:
        for v in t:
            tri_count[v] += 1
            tri_nbrs[v] |= t - {v}

    for v in range(q.n):
        val = q.valency(v)
        if val == 4:
            # the four neighbours must split into two triangles through v
            if tri_count[v] != 2 or len(tri_nbrs[v]) != 4:
                violations.append(Violation("valency4-not-two-triangles", (v,)))
        elif val == 3:
            # exactly one triangle through v, covering two of the three edges
            if tri_count[v] != 1:
                violations.append(Violation("valency3-not-one-triangle", (v,)))

    return MembershipReport(member=not violations, violations=tuple(violations))


def _component_of(q: Quiver, start: int) -> set[int]:
    if q.n == 0:
        return set()
    adj: list[set[int]] = [set() for _ in range(q.n)]
    for u, v, _ in q.arcs:
        adj[u].add(v)
        adj[v].add(u)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def is_class_member(q: Quiver) -> bool:
    return membership_report(q).member


def class_signature(q: Quiver) -> ClassSignature:
    return ClassSignature.of_quiver(q)


# -- enumeration ----------------------------------------------------------


def enumerate_mutation_class(seed: Quiver, max_size: int | None = None) -> dict:
    """All quivers mutation-equivalent to seed, keyed by canonical form.

    Values are canonical representatives.  Raises ClassTooLargeError once
    more than max_size distinct classes have been discovered.
    """
    start = seed.canonical_quiver()
    found = {start.canonical_form(): start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for v in range(cur.n):
            cf = cur.mutate(v).canonical_form()
            if cf not in found:
                if max_size is not None and len(found) >= max_size:
                    raise ClassTooLargeError(f"mutation class exceeds {max_size} quivers")
                found[cf] = cf.quiver
                queue.append(cf.quiver)
    return found


def enumerate_class_bruteforce(n: int) -> dict:
    """Scan every loop-free simple digraph orientation on n vertices for members.

    Tries all 3^(n(n-1)/2) arrow assignments, so n is capped at 5.
    Returns the same canonical-form keyed mapping as enumerate_mutation_class.
    """
    if n > 5:
        raise TooLargeError(f"brute-force enumeration is limited to n <= 5, got {n}")
    if n == 0:
        q = Quiver(0)
        return {q.canonical_form(): q}
    pairs = list(itertools.combinations(range(n), 2))
    found = {}
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        arrows = []
        for (u, v), c in zip(pairs, choice):
            if c == 1:
                arrows.append((u, v))
            elif c == 2:
                arrows.append((v, u))
        q = Quiver(n, arrows)
        if is_class_member(q):
            cf = q.canonical_form()
            if cf not in found:
                found[cf] = cf.quiver
    return found


# -- enlargements ---------------------------------------------------------


def enlarge_pendant(q: Quiver, attach: int, direction: str) -> Quiver:
    """Add vertex n joined to attach by one arrow; direction 'out' points n-ward."""
    if not 0 <= attach < q.n:
        raise PreconditionViolatedError(f"attach vertex {attach} out of range")
    if direction not in ("in", "out"):
        raise PreconditionViolatedError(f"direction must be 'in' or 'out', got {direction!r}")
    new = q.n
    arrow = (attach, new) if direction == "out" else (new, attach)
    return Quiver(q.n + 1, list(q.arrows()) + [arrow])


def enlarge_cycle(q: Quiver, attach: int, orientation: str) -> Quiver:
    """Glue an oriented triangle (attach, n, n+1) onto attach.

    Requires valency(attach) <= 2 and at most one triangle through attach.
    'cw' orients the new cycle attach -> n -> n+1 -> attach, 'ccw' reverses it.
    """
    if not 0 <= attach < q.n:
        raise PreconditionViolatedError(f"attach vertex {attach} out of range")
    if orientation not in ("cw", "ccw"):
        raise PreconditionViolatedError(f"orientation must be 'cw' or 'ccw', got {orientation!r}")
    if q.valency(attach) > 2:
        raise PreconditionViolatedError(f"vertex {attach} has valency {q.valency(attach)} > 2")
    tri_here = sum(1 for t in q.directed_3cycles() if attach in t)
    if tri_here > 1:
        raise PreconditionViolatedError(f"vertex {attach} already lies on {tri_here} triangles")
    p, r = q.n, q.n + 1
    if orientation == "cw":
        extra = [(attach, p), (p, r), (r, attach)]
    else:
        extra = [(attach, r), (r, p), (p, attach)]
    return Quiver(q.n + 2, list(q.arrows()) + extra)


def open_attachment_points(q: Quiver) -> list[int]:
    """Vertices where either enlargement preserves class membership.

    Safe spots are vertices of valency at most 1, or valency-2 vertices
    whose both edges lie on one triangle.  Attaching anywhere else creates
    a valency-3 vertex with too few triangle edges.
    """
    tris = q.directed_3cycles()
    out = []
    for v in range(q.n):
        val = q.valency(v)
        if val <= 1:
            out.append(v)
        elif val == 2 and any(v in t for t in tris):
            out.append(v)
    return out


def enlargement_plan(q: Quiver) -> list[tuple]:
    """Rebuild a member from a single vertex as explicit enlargement steps.

    Returns ops of the form ('pendant', attach, dir) or ('cycle', attach,
    orient) whose replay via replay_enlargements yields a quiver isomorphic
    to q.  Attach labels refer to the replayed quiver at each step.
    """
    if q.n == 0 or not is_class_member(q):
        raise PreconditionViolatedError("enlargement plans exist only for nonempty class members")
    ops: list[tuple] = []
    built_of: dict[int, int] = {}  # original label -> label in the replayed quiver
    cur = Quiver(1)
    root, steps = _strip_removals(q)
    built_of[root] = 0
    for op, removed in steps:
        kind, orig_attach, arg = op
        ops.append((kind, built_of[orig_attach], arg))
        if kind == "pendant":
            built_of[removed[0]] = cur.n
            cur = enlarge_pendant(cur, built_of[orig_attach], arg)
        else:
            built_of[removed[0]] = cur.n
            built_of[removed[1]] = cur.n + 1
            cur = enlarge_cycle(cur, built_of[orig_attach], arg)
    return ops


def _strip_removals(q: Quiver):
    """Strip q to one vertex.

    Returns (root_label, steps) where root_label is the surviving original
    vertex and steps lists (op, removed_original_labels) in build order.
    """
    cur = q
    alive = list(range(q.n))
    log: list[tuple] = []
    while cur.n > 1:
        pend = [v for v in range(cur.n) if cur.valency(v) == 1]
        if pend:
            v = pend[0]
            (a,) = cur.neighbors(v)
            direction = "out" if cur.arrow_count(a, v) else "in"
            log.append((("pendant", alive[a], direction), (alive[v],)))
            cur = _drop_vertices(cur, [v])
            alive = [x for i, x in enumerate(alive) if i != v]
            continue
        leaf = None
        for t in sorted(tuple(sorted(t)) for t in cur.directed_3cycles()):
            free = [v for v in t if cur.valency(v) == 2]
            if len(free) >= 2:
                leaf = t
                break
        if leaf is None:
            raise PreconditionViolatedError("quiver does not strip to a single vertex")
        free = [v for v in leaf if cur.valency(v) == 2]
        anchor = next(v for v in leaf if v not in free[:2])
        # orient the removal so replaying 'cw' rebuilds the same cycle shape:
        # cw glues attach -> first-new -> second-new -> attach, so list the
        # dropped corners in cycle order starting after the anchor
        succ = next(w for w in leaf if cur.arrow_count(anchor, w))
        pred = next(w for w in leaf if cur.arrow_count(w, anchor))
        drop_ordered = [succ, pred]
        log.append((("cycle", alive[anchor], "cw"), tuple(alive[d] for d in drop_ordered)))
        cur = _drop_vertices(cur, drop_ordered)
        alive = [x for i, x in enumerate(alive) if i not in drop_ordered]
    return alive[0], list(reversed(log))


def _drop_vertices(q: Quiver, drop) -> Quiver:
    dropset = set(drop)
    keep = [v for v in range(q.n) if v not in dropset]
    newlabel = {v: i for i, v in enumerate(keep)}
    arrows = [(newlabel[u], newlabel[v]) for u, v in q.arrows() if u not in dropset and v not in dropset]
    return Quiver(len(keep), arrows)


def replay_enlargements(ops) -> Quiver:
    """Apply enlargement ops starting from the one-vertex quiver."""
    cur = Quiver(1)
    for op in ops:
        kind, attach, arg = op
        if kind == "pendant":
            cur = enlarge_pendant(cur, attach, arg)
        elif kind == "cycle":
            cur = enlarge_cycle(cur, attach, arg)
        else:
            raise PreconditionViolatedError(f"unknown enlargement op {op!r}")
    return cur
