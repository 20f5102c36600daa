"""Quivers (finite directed multigraphs without loops or 2-cycles) and mutation."""

from __future__ import annotations

from dataclasses import dataclass, field


class QuiverError(Exception):
    """Base class for all errors raised by this package."""


class LoopArrowError(QuiverError):
    pass


class TwoCycleError(QuiverError):
    pass


class BadVertexLabelError(QuiverError):
    pass


# Safety valve for the canonical-labelling search; only pathological,
# highly symmetric inputs could ever approach it.
_CANONICAL_NODE_BUDGET = 500_000


class Quiver:
    """Immutable quiver on vertices 0..n-1.

    Arrows form a multiset of (src, dst) pairs.  Loops and 2-cycles
    (arrows in both directions between one pair) are rejected at
    construction time, so a quiver is equivalently a skew-symmetric
    integer matrix.  Instances hash and compare by labelled arrow data;
    use ``is_isomorphic`` for unlabelled comparison.
    """

    __slots__ = ("n", "arcs", "_cf", "_tris")

    def __init__(self, n: int, arrows=()):
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise BadVertexLabelError(f"vertex count must be a non-negative int, got {n!r}")
        counts: dict[tuple[int, int], int] = {}
        for arrow in arrows:
            u, v = arrow
            if not isinstance(u, int) or not isinstance(v, int):
                raise BadVertexLabelError(f"arrow {arrow!r} has non-integer endpoints")
            if not (0 <= u < n and 0 <= v < n):
                raise BadVertexLabelError(f"arrow ({u}, {v}) outside vertex range 0..{n - 1}")
            if u == v:
                raise LoopArrowError(f"loop arrow at vertex {u}")
            counts[u, v] = counts.get((u, v), 0) + 1
        for u, v in counts:
            if (v, u) in counts:
                raise TwoCycleError(f"2-cycle between vertices {u} and {v}")
        self.n = n
        self.arcs = tuple(sorted((u, v, m) for (u, v), m in counts.items()))
        self._cf = None
        self._tris = None

    @classmethod
    def _make(cls, n: int, counts: dict[tuple[int, int], int]) -> "Quiver":
        # Internal fast path; caller guarantees validity.
        q = object.__new__(cls)
        q.n = n
        q.arcs = tuple(sorted((u, v, m) for (u, v), m in counts.items() if m > 0))
        q._cf = None
        q._tris = None
        return q

    @classmethod
    def linear(cls, n: int) -> "Quiver":
        """The uniformly oriented path 0 -> 1 -> ... -> n-1."""
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    # -- basic queries ----------------------------------------------------

    def counts(self) -> dict[tuple[int, int], int]:
        return {(u, v): m for u, v, m in self.arcs}

    def arrow_count(self, u: int, v: int) -> int:
        for a, b, m in self.arcs:
            if a == u and b == v:
                return m
        return 0

    def arrows(self):
        """Yield (src, dst) once per arrow, respecting multiplicity."""
        for u, v, m in self.arcs:
            for _ in range(m):
                yield (u, v)

    def arrow_total(self) -> int:
        return sum(m for _, _, m in self.arcs)

    def out_neighbors(self, v: int) -> set[int]:
        return {b for a, b, _ in self.arcs if a == v}

    def in_neighbors(self, v: int) -> set[int]:
        return {a for a, b, _ in self.arcs if b == v}

    def neighbors(self, v: int) -> set[int]:
        return self.out_neighbors(v) | self.in_neighbors(v)

    def valency(self, v: int) -> int:
        """Number of distinct neighbouring vertices."""
        return len(self.neighbors(v))

    def indegree(self, v: int) -> int:
        return sum(m for a, b, m in self.arcs if b == v)

    def outdegree(self, v: int) -> int:
        return sum(m for a, b, m in self.arcs if a == v)

    def is_sink(self, v: int) -> bool:
        return self.outdegree(v) == 0

    def is_source(self, v: int) -> bool:
        return self.indegree(v) == 0

    def _count_matrix(self) -> list[list[int]]:
        n = self.n
        c = [[0] * n for _ in range(n)]
        for u, v, m in self.arcs:
            c[u][v] = m
        return c

    # -- mutation ---------------------------------------------------------

    def mutate(self, k: int) -> "Quiver":
        """Mutate at vertex k.

        Arrows through k are reversed; for every path u -> k -> v the net
        arrow count from v to u drops by (arrows u->k) * (arrows k->v),
        with negative totals meaning arrows in the opposite direction.
        The mutated vertex keeps its label.
        """
        n = self.n
        if not isinstance(k, int) or not 0 <= k < n:
            raise BadVertexLabelError(f"mutation vertex {k!r} outside range 0..{n - 1}")
        c = self._count_matrix()
        b = [[c[u][v] - c[v][u] for v in range(n)] for u in range(n)]
        counts: dict[tuple[int, int], int] = {}
        for u in range(n):
            bu = b[u]
            for v in range(n):
                if u == v:
                    continue
                if u == k or v == k:
                    w = -bu[v]
                else:
                    w = bu[v]
                    x, y = bu[k], b[k][v]
                    if x > 0 and y > 0:
                        w += x * y
                    elif x < 0 and y < 0:
                        w -= x * y
                if w > 0:
                    counts[u, v] = w
        return Quiver._make(n, counts)

    # -- structure --------------------------------------------------------

    def directed_3cycles(self) -> frozenset[frozenset[int]]:
        """Support sets of oriented 3-cycles, each triangle reported once."""
        if self._tris is None:
            outs = [self.out_neighbors(v) for v in range(self.n)]
            found = set()
            for u in range(self.n):
                for v in outs[u]:
                    for w in outs[v]:
                        if u in outs[w]:
                            found.add(frozenset((u, v, w)))
            self._tris = frozenset(found)
        return self._tris

    def is_connected(self) -> bool:
        """Connectivity of the underlying undirected graph (vacuous for n <= 1)."""
        if self.n <= 1:
            return True
        adj = [set() for _ in range(self.n)]
        for u, v, _ in self.arcs:
            adj[u].add(v)
            adj[v].add(u)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.n

    def relabel(self, perm) -> "Quiver":
        """Apply a vertex permutation; perm[old] = new."""
        if sorted(perm) != list(range(self.n)):
            raise BadVertexLabelError(f"not a permutation of 0..{self.n - 1}: {perm!r}")
        counts = {(perm[u], perm[v]): m for u, v, m in self.arcs}
        return Quiver._make(self.n, counts)

    # -- canonical form and isomorphism -----------------------------------

    def _refined_colors(self) -> list[int]:
        # Iterated degree refinement; colour order is label-independent.
        n = self.n
        c = self._count_matrix()
        nbrs = [sorted(self.neighbors(v)) for v in range(n)]
        sig = [(self.indegree(v), self.outdegree(v)) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        col = [ranks[sig[v]] for v in range(n)]
        while True:
            sig2 = []
            for v in range(n):
                local = tuple(sorted((col[w], c[v][w], c[w][v]) for w in nbrs[v]))
                sig2.append((col[v], local))
            ranks = {s: i for i, s in enumerate(sorted(set(sig2)))}
            new = [ranks[sig2[v]] for v in range(n)]
            if new == col:
                return col
            col = new

    def _canonical_perm(self) -> list[int]:
        # Maximizes the adjacency scan over permutations compatible with the
        # refined colour classes; backtracks only over genuine ties.
        n = self.n
        if n == 0:
            return []
        c = self._count_matrix()
        col = self._refined_colors()
        members: dict[int, list[int]] = {}
        for v in range(n):
            members.setdefault(col[v], []).append(v)
        colors_sorted = sorted(col)
        used = [False] * n
        best: dict[str, object] = {"flat": None, "perm": None, "nodes": 0}

        def seg(v, asg):
            row = c[v]
            out = [row[u] for u in asg]
            out += [c[u][v] for u in asg]
            return tuple(out)

        def twins(v, w):
            if c[v][w] != c[w][v]:
                return False
            for x in range(n):
                if x == v or x == w:
                    continue
                if c[v][x] != c[w][x] or c[x][v] != c[x][w]:
                    return False
            return True

        def rec(asg, flat):
            best["nodes"] += 1
            if best["nodes"] > _CANONICAL_NODE_BUDGET:
                raise QuiverError("canonical form search budget exceeded")
            k = len(asg)
            if k == n:
                tf = tuple(flat)
                if best["flat"] is None or tf > best["flat"]:
                    best["flat"] = tf
                    best["perm"] = list(asg)
                return
            cands = [v for v in members[colors_sorted[k]] if not used[v]]
            scored = [(seg(v, asg), v) for v in cands]
            top = max(s for s, _ in scored)
            if best["flat"] is not None:
                pref = tuple(flat) + top
                if pref < best["flat"][: len(pref)]:
                    return
            kept = []
            for s, v in scored:
                if s != top:
                    continue
                if any(twins(v, w) for w in kept):
                    continue
                kept.append(v)
            for v in kept:
                used[v] = True
                asg.append(v)
                rec(asg, flat + list(top))
                asg.pop()
                used[v] = False

        rec([], [])
        perm = [0] * n
        for newlabel, old in enumerate(best["perm"]):
            perm[old] = newlabel
        return perm

    def canonical_form(self) -> "CanonicalForm":
        if self._cf is None:
            perm = self._canonical_perm()
            rq = self.relabel(perm)
            self._cf = CanonicalForm(key=(self.n, rq.arcs), quiver=rq)
        return self._cf

    def canonical_quiver(self) -> "Quiver":
        """A canonically relabelled representative of the isomorphism class."""
        return self.canonical_form().quiver

    def is_isomorphic(self, other: "Quiver") -> bool:
        if self.n != other.n:
            return False
        return self.canonical_form() == other.canonical_form()

    # -- plumbing ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.n == other.n and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"Quiver({self.n}, {sorted(self.arrows())!r})"


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Total-order-comparable key identifying a quiver up to isomorphism."""

    key: tuple
    quiver: Quiver = field(compare=False, hash=False, repr=False)

    def __hash__(self):
        return hash(self.key)


@dataclass(frozen=True)
class MutationSequence:
    """A start quiver plus an ordered list of (vertex, resulting quiver) steps."""

    start: Quiver
    steps: tuple

    @classmethod
    def from_vertices(cls, start: Quiver, vertices) -> "MutationSequence":
        cur = start
        steps = []
        for v in vertices:
            cur = cur.mutate(v)
            steps.append((v, cur))
        return cls(start=start, steps=tuple(steps))

    @property
    def end(self) -> Quiver:
        return self.steps[-1][1] if self.steps else self.start

    def vertices(self) -> list[int]:
        return [v for v, _ in self.steps]

    def __len__(self):
        return len(self.steps)
