"""Reduction of class members to a normal form by verified mutations.

Every member with n vertices and t triangles can be mutated, using only
sinks, sources, and vertices of valency 3 or 4, into a fixed shape: a
chain of t triangles glued corner to corner with alternating
orientations, with one pendant path feeding the free end.  Mutations at
these vertices preserve both membership and the triangle count, so (n, t)
is a complete invariant and the reduction doubles as a constructive
equivalence test.

The reduction works in stages: pull stray triangles onto one chain
(rolling a triangle along a connecting path and absorbing it at a shared
vertex), squeeze the chain triangles together while swallowing pendant
paths, normalize the triangle orientations along the chain, and finally
comb the surviving tail with sink and source reflections.
"""

from __future__ import annotations

from collections import deque

from .gentle import NotInClassError
from .quiver import MutationSequence, Quiver, QuiverError
from .type_a import ClassSignature, count_3cycles, is_class_member, membership_report


class InfeasibleSignatureError(QuiverError):
    pass


class SignatureMismatchError(QuiverError):
    pass


class StateBudgetExceededError(QuiverError):
    pass


class NotReachableError(QuiverError):
    pass


def allowed_mutation_vertices(q: Quiver) -> list[int]:
    """Vertices whose mutation provably keeps membership and triangle count."""
    out = []
    for v in range(q.n):
        if q.is_sink(v) or q.is_source(v) or q.valency(v) in (3, 4):
            out.append(v)
    return out


def preserves_signature(q: Quiver, v: int) -> bool:
    return count_3cycles(q.mutate(v)) == count_3cycles(q)


def normal_form_target(n: int, t: int) -> Quiver:
    """The labelled normal form with n vertices and t triangles.

    Vertices 0..m-1 (m = n - 2t - 1) form the tail feeding vertex m; the
    chain then alternates spine vertices m, m+2, ... with apexes between
    them, triangle orientations alternating along the chain.
    """
    if n < 0 or t < 0 or (t > 0 and 2 * t + 1 > n):
        raise InfeasibleSignatureError(f"no class member has n={n}, t={t}")
    if t == 0:
        return Quiver.linear(n)
    m = n - (2 * t + 1)
    arrows = [(i, i + 1) for i in range(m)]
    for i in range(1, t + 1):
        lo = m + 2 * (i - 1)  # spine vertex entering triangle i
        ap = m + 2 * i - 1
        hi = m + 2 * i
        if i % 2 == 1:
            arrows += [(lo, ap), (ap, hi), (hi, lo)]
        else:
            arrows += [(hi, ap), (ap, lo), (lo, hi)]
    return Quiver(n, arrows)


def cycle_distance(q: Quiver, c1, c2) -> int:
    """Fewest arrows joining two vertex sets in the underlying graph."""
    d, _ = _shortest_path_between(q, c1, c2)
    return d


def _shortest_path_between(q: Quiver, sources, targets):
    """Deterministic shortest undirected path; returns (dist, [src..tgt])."""
    src = sorted(set(sources))
    tgt = set(targets)
    both = sorted(set(src) & tgt)
    if both:
        return 0, [both[0]]
    adj: list[list[int]] = [[] for _ in range(q.n)]
    for u, v, _ in q.arcs:
        adj[u].append(v)
        adj[v].append(u)
    for lst in adj:
        lst.sort()
    parent = {s: None for s in src}
    frontier = src
    d = 0
    while frontier:
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if w not in parent:
                    parent[w] = v
                    nxt.append(w)
        nxt.sort()
        hits = [w for w in nxt if w in tgt]
        if hits:
            dock = hits[0]
            path = [dock]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            path.reverse()
            return d + 1, path
        frontier = nxt
        d += 1
    raise QuiverError("vertex sets lie in different components")


def _tri_supports(q: Quiver) -> list[frozenset]:
    return sorted(q.directed_3cycles(), key=lambda t: tuple(sorted(t)))


def _succ_in_tri(q: Quiver, tri, v: int) -> int:
    return next(w for w in tri if w != v and q.arrow_count(v, w))


def _pred_in_tri(q: Quiver, tri, v: int) -> int:
    return next(w for w in tri if w != v and q.arrow_count(w, v))


def _corner_cargo(q: Quiver, tri, corner: int):
    """Vertices hanging off a triangle corner, and whether triangles hide there."""
    others = set(tri) - {corner}
    visited = {corner} | others
    out: set[int] = set()
    stack = [corner]
    while stack:
        v = stack.pop()
        for w in q.neighbors(v):
            if w not in visited:
                visited.add(w)
                out.add(w)
                stack.append(w)
    has_tri = any(t != tri and (set(t) & out) for t in q.directed_3cycles())
    return out, has_tri


def _cargo_path(q: Quiver, tri, corner: int) -> list[int]:
    """The plain cargo at a corner, ordered outward from the corner."""
    out, has_tri = _corner_cargo(q, tri, corner)
    _check(not has_tri, "cargo unexpectedly contains a triangle")
    heads = [w for w in q.neighbors(corner) if w in out]
    _check(len(heads) == 1, "corner cargo is not a single pendant path")
    path = []
    prev, cur = corner, heads[0]
    while True:
        path.append(cur)
        nxts = [w for w in q.neighbors(cur) if w != prev]
        if not nxts:
            break
        _check(len(nxts) == 1, "cargo path branches")
        prev, cur = cur, nxts[0]
    _check(len(path) == len(out), "cargo path does not cover the cargo")
    return path


def _cycle_sequence(q: Quiver) -> list[frozenset]:
    """Order all triangles into the chain-building sequence.

    Starts from the smallest leaf of the triangle tree, then repeatedly
    appends the nearest triangle that is strictly closer to the last pick
    than to every earlier one.
    """
    tris = _tri_supports(q)
    if not tris:
        return []
    cache: dict[tuple, int] = {}

    def dist(a, b):
        key = (tuple(sorted(a)), tuple(sorted(b)))
        if key not in cache:
            d = cycle_distance(q, a, b)
            cache[key] = d
            cache[(key[1], key[0])] = d
        return cache[key]

    leaves = []
    for t in tris:
        heavy = 0
        for c in sorted(t):
            _, has_tri = _corner_cargo(q, t, c)
            if has_tri:
                heavy += 1
        if heavy <= 1:
            leaves.append(t)
    _check(bool(leaves), "triangle tree has no leaf")
    seq = [min(leaves, key=lambda t: tuple(sorted(t)))]
    used = {seq[0]}
    while len(seq) < len(tris):
        last = seq[-1]
        cands = [
            t
            for t in tris
            if t not in used and all(dist(t, last) < dist(t, c) for c in seq[:-1])
        ]
        if not cands:
            break
        dm = min(dist(t, last) for t in cands)
        best = min((t for t in cands if dist(t, last) == dm), key=lambda t: tuple(sorted(t)))
        seq.append(best)
        used.add(best)
    return seq


def _check(cond, msg: str):
    if not cond:
        raise QuiverError(f"reduction invariant violated: {msg}")


class _Reducer:
    """Tracks the working quiver, the move log, and per-move safety checks."""

    def __init__(self, q: Quiver):
        self.start = q
        self.cur = q
        self.t = count_3cycles(q)
        self.moves: list[int] = []
        self.budget = 80 * (q.n + 2) * (self.t + 2)
        self.chain: list[frozenset] = []

    def apply(self, v: int):
        q = self.cur
        _check(v in allowed_mutation_vertices(q), f"vertex {v} not allowed for mutation")
        nxt = q.mutate(v)
        _check(count_3cycles(nxt) == self.t, f"mutation at {v} changed the triangle count")
        _check(is_class_member(nxt), f"mutation at {v} left the class")
        self.moves.append(v)
        _check(len(self.moves) <= self.budget, "move budget exceeded")
        self.cur = nxt

    def roll(self, tri: frozenset, pivot: int) -> frozenset:
        """Mutate at a valency-3 corner; the triangle advances over its bridge."""
        _check(pivot in tri, "roll pivot not on the triangle")
        _check(self.cur.valency(pivot) == 3, "roll pivot must have valency 3")
        self.apply(pivot)
        new = [t for t in self.cur.directed_3cycles() if pivot in t]
        _check(len(new) == 1, "rolled triangle is not unique at the pivot")
        return new[0]

    # -- stage 1: gather all triangles onto one chain ---------------------

    def gather(self):
        while True:
            q = self.cur
            seq = _cycle_sequence(q)
            on = set(seq)
            off = [t for t in _tri_supports(q) if t not in on]
            if not off:
                return
            chain_verts = set().union(*on)
            best = None
            for t in off:
                d, path = _shortest_path_between(q, t, chain_verts)
                key = (d, path[-1], tuple(sorted(t)))
                if best is None or key < best[0]:
                    best = (key, t, path)
            (_, t, path) = best
            if best[0][0] == 0:
                dock = path[0]
                _check(self.cur.valency(dock) == 4, "dock vertex must have valency 4")
                self.apply(dock)
            else:
                self.roll(t, path[0])

    # -- stage 2: squeeze the chain together, swallowing pendant paths ----

    def consolidate(self):
        chain = _cycle_sequence(self.cur)
        _check(len(chain) == self.t, "chain does not cover all triangles")
        self.chain = chain
        s = len(chain)
        for i in range(s - 1, -1, -1):
            if i < s - 1:
                while True:
                    d, path = _shortest_path_between(self.cur, chain[i], chain[i + 1])
                    if d == 0:
                        break
                    chain[i] = self.roll(chain[i], path[0])
            anchor = None
            if i < s - 1:
                shared = chain[i] & chain[i + 1]
                _check(len(shared) == 1, "adjacent chain triangles must share one vertex")
                anchor = next(iter(shared))
            while True:
                tri = chain[i]
                infos = {}
                for c in sorted(tri):
                    if c == anchor:
                        continue
                    infos[c] = _corner_cargo(self.cur, tri, c)
                loaded = {c: inf for c, inf in infos.items() if inf[0]}
                plain = sorted(c for c, inf in loaded.items() if not inf[1])
                heavy = sorted(c for c, inf in loaded.items() if inf[1])
                if i > 0:
                    _check(len(heavy) == 1, "expected exactly one leftward connection")
                    if not plain:
                        break
                else:
                    _check(not heavy, "leftmost triangle cannot hold further triangles")
                    if len(loaded) <= 1:
                        break
                eat_c = min(plain, key=lambda c: (len(infos[c][0]), c))
                if anchor is not None:
                    kept = anchor
                else:
                    bare = [c for c in sorted(tri) if c != eat_c and c not in loaded]
                    if bare:
                        kept = bare[0]
                    elif heavy:
                        kept = heavy[0]
                    else:
                        kept = max(plain, key=lambda c: (len(infos[c][0]), c))
                chain[i] = self.eat(tri, eat_c, kept)
                if anchor is not None:
                    _check(anchor in chain[i], "anchor corner fell off the chain")

    def eat(self, tri: frozenset, eat_corner: int, kept_corner: int) -> frozenset:
        """Swallow the pendant path at eat_corner, keeping kept_corner in place."""
        _check(kept_corner in tri and kept_corner != eat_corner, "bad eat corners")
        path = _cargo_path(self.cur, tri, eat_corner)
        # Keeping the pivot's successor needs the path flowing into the pivot;
        # keeping its predecessor needs it flowing outward.
        toward = _succ_in_tri(self.cur, tri, eat_corner) == kept_corner
        if not toward:
            _check(
                _pred_in_tri(self.cur, tri, eat_corner) == kept_corner,
                "kept corner must adjoin the pivot",
            )
        self.orient_pendant_path(path, eat_corner, toward)
        cur_tri = tri
        pivot = eat_corner
        for step in path:
            cur_tri = self.roll(cur_tri, pivot)
            _check(kept_corner in cur_tri and step in cur_tri, "eat roll lost its corners")
            pivot = step
        return cur_tri

    def orient_pendant_path(self, path_from_fixed: list[int], fixed: int, toward: bool):
        """Uniformly orient a pendant path with sink/source reflections only.

        The path is listed outward from its fixed attachment; reflections
        happen at path vertices, fixing edges from the attachment outward
        and cascading each repair to the free end.
        """
        ps = list(reversed(path_from_fixed)) + [fixed]
        for k in range(len(ps) - 1):
            a, b = ps[k], ps[k + 1]
            ok = self.cur.arrow_count(a, b) if toward else self.cur.arrow_count(b, a)
            if ok:
                continue
            for j in range(k, -1, -1):
                v = ps[j]
                _check(
                    self.cur.is_sink(v) or self.cur.is_source(v),
                    "pendant reflection hit a non-extremal vertex",
                )
                self.apply(v)
        for k in range(len(ps) - 1):
            a, b = ps[k], ps[k + 1]
            ok = self.cur.arrow_count(a, b) if toward else self.cur.arrow_count(b, a)
            _check(ok, "pendant path failed to orient")

    # -- stage 3: alternate the triangle orientations along the chain -----

    def fix_chain_bits(self):
        chain = self.chain
        s = len(chain)
        if s == 0:
            return
        q = self.cur
        u = [0] * (s + 1)
        a = [0] * (s + 1)
        for i in range(1, s):
            shared = chain[i - 1] & chain[i]
            _check(len(shared) == 1, "chain links must share one vertex")
            u[i] = next(iter(shared))
        first = chain[0]
        free0 = sorted(set(first) - {u[1]} if s > 1 else set(first))
        tails = [c for c in free0 if _corner_cargo(q, first, c)[0]]
        _check(len(tails) <= 1, "leftmost triangle holds more than one tail")
        if s == 1:
            u[0] = tails[0] if tails else free0[0]
            rest = sorted(set(first) - {u[0]})
            u[1] = rest[0]
            a[1] = rest[1]
        else:
            u[0] = tails[0] if tails else free0[0]
            a[1] = next(c for c in first if c not in (u[0], u[1]))
            last = chain[s - 1]
            frees = sorted(set(last) - {u[s - 1]})
            u[s] = frees[0]
            a[s] = frees[1]
            for i in range(2, s):
                a[i] = next(c for c in chain[i - 1] if c not in (u[i - 1], u[i]))

        def bit(i):
            # True = chord arrow runs up the spine (u[i-1] -> u[i])
            if self.cur.arrow_count(u[i - 1], u[i]):
                return True
            _check(bool(self.cur.arrow_count(u[i], u[i - 1])), "spine corners not adjacent")
            return False

        sbit = [None] * (s + 1)
        for i in range(1, s + 1):
            sbit[i] = bit(i)

        for p in range(1, s + 1):
            want = p % 2 == 0  # odd positions point down, even point up
            if sbit[p] == want:
                continue
            j = next((j for j in range(p + 1, s + 1) if sbit[j] != sbit[p]), None)
            if j is None:
                # re-designating the free end flips the last chord for free
                u[s], a[s] = a[s], u[s]
                sbit[s] = not sbit[s]
                if p == s:
                    continue
                j = s
            for k in range(j - 1, p - 1, -1):
                _check(sbit[k] != sbit[k + 1], "cannot swap equal chain bits")
                self.apply(u[k])
                sbit[k], sbit[k + 1] = sbit[k + 1], sbit[k]
                a[k], a[k + 1] = a[k + 1], a[k]
                chain[k - 1] = frozenset((u[k - 1], a[k], u[k]))
                chain[k] = frozenset((u[k], a[k + 1], u[k + 1]))
        for p in range(1, s + 1):
            _check(sbit[p] == (p % 2 == 0), "chain bits failed to alternate")
        self._u0 = u[0]

    # -- stage 4: comb the tail -------------------------------------------

    def orient_tails(self):
        q = self.cur
        if self.t == 0:
            if q.n <= 1:
                return
            ends = sorted(v for v in range(q.n) if q.valency(v) == 1)
            _check(len(ends) == 2, "triangle-free member must be a path")
            w0 = ends[0]
            path = []
            prev, cur = None, w0
            while True:
                nxts = [w for w in sorted(q.neighbors(cur)) if w != prev]
                if not nxts:
                    break
                prev, cur = cur, nxts[0]
                path.append(cur)
            self.orient_pendant_path(path, w0, toward=True)
            return
        u0 = self._u0
        tri0 = self.chain[0]
        cargo, has_tri = _corner_cargo(self.cur, tri0, u0)
        _check(not has_tri, "tail corner still carries triangles")
        if cargo:
            path = _cargo_path(self.cur, tri0, u0)
            self.orient_pendant_path(path, u0, toward=True)


def reduce_to_normal_form(q: Quiver) -> MutationSequence:
    """A verified mutation sequence from q to its labelled normal form.

    Every move happens at a sink, a source, or a vertex of valency 3 or 4,
    and every intermediate quiver is a class member with the same triangle
    count.  The final quiver is isomorphic to normal_form_target(n, t).
    """
    report = membership_report(q)
    if not report.member:
        raise NotInClassError(report)
    red = _Reducer(q)
    red.gather()
    red.consolidate()
    red.fix_chain_bits()
    red.orient_tails()
    target = normal_form_target(q.n, red.t)
    _check(red.cur.is_isomorphic(target), "reduction finished off target")
    return MutationSequence.from_vertices(q, red.moves)


def verify_sequence(seq: MutationSequence):
    """Replay a sequence, checking every move is allowed and class-preserving.

    Returns (True, None) or (False, index) for the first offending step;
    a start quiver outside the class reports step 0.
    """
    cur = seq.start
    if not is_class_member(cur):
        return False, 0
    t0 = count_3cycles(cur)
    for idx, (v, expected) in enumerate(seq.steps):
        if not isinstance(v, int) or not 0 <= v < cur.n:
            return False, idx
        if v not in allowed_mutation_vertices(cur):
            return False, idx
        nxt = cur.mutate(v)
        if nxt != expected:
            return False, idx
        if count_3cycles(nxt) != t0 or not is_class_member(nxt):
            return False, idx
        cur = nxt
    return True, None


def restricted_reachability(q1: Quiver, q2: Quiver, max_states: int | None = None) -> MutationSequence:
    """Search for a mutation path q1 -> q2 (up to isomorphism) through
    allowed vertices only, breadth-first over isomorphism classes."""
    for q in (q1, q2):
        rep = membership_report(q)
        if not rep.member:
            raise NotInClassError(rep)
    s1 = ClassSignature.of_quiver(q1)
    s2 = ClassSignature.of_quiver(q2)
    if s1 != s2:
        raise SignatureMismatchError(f"signatures differ: {s1} vs {s2}")
    target = q2.canonical_form().key
    start_key = q1.canonical_form().key
    if start_key == target:
        return MutationSequence(start=q1, steps=())
    parent: dict[tuple, tuple] = {start_key: None}
    queue = deque([(q1, start_key)])
    states = 1
    while queue:
        cur, ckey = queue.popleft()
        for v in allowed_mutation_vertices(cur):
            nxt = cur.mutate(v)
            key = nxt.canonical_form().key
            if key in parent:
                continue
            if max_states is not None and states >= max_states:
                raise StateBudgetExceededError(f"exceeded {max_states} stored quivers")
            parent[key] = (ckey, v)
            states += 1
            if key == target:
                moves = []
                walk = key
                while parent[walk] is not None:
                    pk, mv = parent[walk]
                    moves.append(mv)
                    walk = pk
                moves.reverse()
                return MutationSequence.from_vertices(q1, moves)
            queue.append((nxt, key))
    raise NotReachableError("no allowed mutation path found")
