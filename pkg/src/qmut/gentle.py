"""Gentle presentations of class members, path bases, and Cartan data.

The bound quiver algebra attached to a member has one relation for each
composable pair of arrows around an oriented triangle.  Its Cartan matrix
counts relation-free paths between vertices; the determinant equals 2^t
where t is the number of triangles.  The determinant routine here is
fraction-free Gaussian elimination, deliberately independent of the 2^t
law so the two can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .quiver import Quiver, QuiverError
from .type_a import MembershipReport, count_3cycles, membership_report


class NotInClassError(QuiverError):
    def __init__(self, report: MembershipReport):
        self.report = report
        kinds = ", ".join(v.kind for v in report.violations) or "unknown"
        super().__init__(f"quiver is not a class member ({kinds})")


class SizeMismatchError(QuiverError):
    pass


@dataclass(frozen=True)
class Path:
    """A directed path, stored as its source plus the arrow list."""

    source: int
    arrows: tuple

    @property
    def target(self) -> int:
        return self.arrows[-1][1] if self.arrows else self.source

    @property
    def length(self) -> int:
        return len(self.arrows)

    def sort_key(self):
        return (self.source, self.target, self.length, self.arrows)


@dataclass(frozen=True)
class GentlePresentation:
    """A quiver with a set of monomial relations (arrow sequences)."""

    quiver: Quiver
    relations: tuple

    def __post_init__(self):
        counts = self.quiver.counts()
        for rel in self.relations:
            if len(rel) < 2:
                raise QuiverError(f"relation {rel!r} shorter than two arrows")
            for u, v in rel:
                if (u, v) not in counts:
                    raise QuiverError(f"relation uses missing arrow ({u}, {v})")
            for (a, b), (c, d) in zip(rel, rel[1:]):
                if b != c:
                    raise QuiverError(f"relation {rel!r} is not a composable path")

    def relation_pairs(self) -> set[tuple]:
        """The length-2 relations, as ((u,v),(v,w)) pairs."""
        return {rel for rel in self.relations if len(rel) == 2}


def presentation_of(q: Quiver) -> GentlePresentation:
    """The gentle presentation of a class member.

    Every oriented triangle contributes its three composable arrow pairs
    as relations.  Raises NotInClassError otherwise.
    """
    report = membership_report(q)
    if not report.member:
        raise NotInClassError(report)
    rels = []
    for tri in sorted(tuple(sorted(t)) for t in q.directed_3cycles()):
        a = tri[0]
        b = next(w for w in tri if q.arrow_count(a, w))
        c = next(w for w in tri if w != a and w != b)
        # cycle a -> b -> c -> a
        rels.append(((a, b), (b, c)))
        rels.append(((b, c), (c, a)))
        rels.append(((c, a), (a, b)))
    return GentlePresentation(quiver=q, relations=tuple(sorted(rels)))


def check_gentle(p: GentlePresentation) -> tuple[bool, tuple]:
    """Verify the gentle axioms; returns (ok, violations).

    Checks: at most two arrows start and end at each vertex; every longer
    relation restricts to a length-2 one; and each arrow extends to at most
    one relation-free and one relation-bound arrow on either side.
    """
    q = p.quiver
    violations = []
    for v in range(q.n):
        if q.outdegree(v) > 2:
            violations.append(("too-many-arrows-out", (v,)))
        if q.indegree(v) > 2:
            violations.append(("too-many-arrows-in", (v,)))

    pairs = p.relation_pairs()
    for rel in p.relations:
        if len(rel) > 2:
            if not any((rel[i], rel[i + 1]) in pairs for i in range(len(rel) - 1)):
                violations.append(("relation-not-degree-2-generated", rel))

    arrows = {(u, v) for u, v, _ in q.arcs}
    for u, v in sorted(arrows):
        succ_free = [w for (a, w) in arrows if a == v and ((u, v), (v, w)) not in pairs]
        succ_bound = [w for (a, w) in arrows if a == v and ((u, v), (v, w)) in pairs]
        pred_free = [a for (a, b) in arrows if b == u and ((a, u), (u, v)) not in pairs]
        pred_bound = [a for (a, b) in arrows if b == u and ((a, u), (u, v)) in pairs]
        if len(succ_free) > 1:
            violations.append(("ambiguous-free-continuation", ((u, v), tuple(sorted(succ_free)))))
        if len(succ_bound) > 1:
            violations.append(("ambiguous-bound-continuation", ((u, v), tuple(sorted(succ_bound)))))
        if len(pred_free) > 1:
            violations.append(("ambiguous-free-predecessor", ((u, v), tuple(sorted(pred_free)))))
        if len(pred_bound) > 1:
            violations.append(("ambiguous-bound-predecessor", ((u, v), tuple(sorted(pred_bound)))))
    return (not violations, tuple(violations))


def path_basis(p: GentlePresentation) -> tuple[Path, ...]:
    """All paths avoiding the relations, including one trivial path per vertex.

    Paths are extended arrow by arrow; an extension is rejected as soon as
    any relation appears as a trailing segment.  For class members every
    such path is vertex-simple, so lengths stay below the vertex count; a
    guard trips if a presentation admits unboundedly long paths.
    """
    q = p.quiver
    rels = [tuple(r) for r in p.relations]
    out_arrows: dict[int, list[tuple[int, int]]] = {}
    for u, v, m in q.arcs:
        out_arrows.setdefault(u, []).append((u, v))
    for lst in out_arrows.values():
        lst.sort()

    found: list[Path] = [Path(source=v, arrows=()) for v in range(q.n)]
    stack: list[tuple] = [(v, ()) for v in range(q.n)]
    while stack:
        src, arrows = stack.pop()
        tail = arrows[-1][1] if arrows else src
        for arrow in out_arrows.get(tail, ()):
            ext = arrows + (arrow,)
            if len(ext) > q.n:
                raise QuiverError("path basis is not finite within the vertex bound")
            if any(len(r) <= len(ext) and ext[-len(r):] == r for r in rels):
                continue
            found.append(Path(source=src, arrows=ext))
            stack.append((src, ext))
    return tuple(sorted(found, key=Path.sort_key))


@dataclass(frozen=True)
class CartanMatrix:
    """Integer matrix with rows indexed by path targets, columns by sources."""

    rows: tuple

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return self.rows[i][j]


def cartan_matrix(p: GentlePresentation) -> CartanMatrix:
    """Entry (i, j) counts basis paths with source j and target i."""
    n = p.quiver.n
    rows = [[0] * n for _ in range(n)]
    for path in path_basis(p):
        rows[path.target][path.source] += 1
    return CartanMatrix(rows=tuple(tuple(r) for r in rows))


def bareiss_det(rows) -> int:
    """Exact integer determinant by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise QuiverError("determinant requires a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def cartan_det(p: GentlePresentation) -> int:
    return bareiss_det(cartan_matrix(p).rows)


def derived_equivalent(p1: GentlePresentation, p2: GentlePresentation) -> bool:
    """Presentations on equally many vertices are derived equivalent exactly
    when their quivers carry the same number of oriented triangles."""
    if p1.quiver.n != p2.quiver.n:
        raise SizeMismatchError(
            f"cannot compare presentations on {p1.quiver.n} and {p2.quiver.n} vertices"
        )
    return count_3cycles(p1.quiver) == count_3cycles(p2.quiver)
