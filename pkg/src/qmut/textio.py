"""Plain-text formats: quiver files, mutation sequence files, DOT export.

Quiver files start with a header line ``n <count>`` followed by one
``<src> -> <dst>`` line per arrow (repeats mean multiplicity).  ``#``
begins a comment anywhere on a line; blank lines are ignored.  Vertex
labels are 0-based.

Sequence files start with ``start <path>`` naming a quiver file, then
``mutate <vertex>`` lines.  Serialization appends a short content hash of
each intermediate quiver as a comment so replays can detect divergence.
"""

from __future__ import annotations

import hashlib

from .quiver import BadVertexLabelError, MutationSequence, Quiver, QuiverError


class QuiverFormatError(QuiverError):
    def __init__(self, lineno: int, msg: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}")


def serialize_quiver(q: Quiver) -> str:
    lines = [f"n {q.n}"]
    for u, v in q.arrows():
        lines.append(f"{u} -> {v}")
    return "\n".join(lines) + "\n"


def parse_quiver(text: str) -> Quiver:
    n = None
    arrows: list[tuple[int, int, int]] = []  # (src, dst, lineno)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise QuiverFormatError(lineno, f"expected header 'n <count>', got {line!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise QuiverFormatError(lineno, f"vertex count is not an integer: {parts[1]!r}")
            if n < 0:
                raise QuiverFormatError(lineno, f"vertex count must be non-negative, got {n}")
            continue
        if len(parts) != 3 or parts[1] != "->":
            raise QuiverFormatError(lineno, f"expected '<src> -> <dst>', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[2])
        except ValueError:
            raise QuiverFormatError(lineno, f"arrow endpoints are not integers: {line!r}")
        arrows.append((u, v, lineno))
    if n is None:
        raise QuiverFormatError(1, "missing header 'n <count>'")
    for u, v, lineno in arrows:
        for label in (u, v):
            if not 0 <= label < n:
                hint = ""
                if label == n and all(a >= 1 and b >= 1 for a, b, _ in arrows):
                    hint = " (labels are 0-based; this input looks 1-based)"
                raise QuiverFormatError(
                    lineno, f"vertex {label} outside range 0..{n - 1}{hint}"
                )
    # loop / 2-cycle errors span lines, so they propagate without line info
    return Quiver(n, [(u, v) for u, v, _ in arrows])


def quiver_hash(q: Quiver) -> str:
    return hashlib.sha256(serialize_quiver(q).encode()).hexdigest()[:12]


def serialize_sequence(seq: MutationSequence, start_ref: str) -> str:
    lines = [f"start {start_ref}"]
    for v, q in seq.steps:
        lines.append(f"mutate {v}  # {quiver_hash(q)}")
    return "\n".join(lines) + "\n"


def parse_sequence_text(text: str):
    """Returns (start_ref, moves) where moves are (vertex, expected_hash_or_None)."""
    start_ref = None
    moves: list[tuple[int, str | None]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        before, _, comment = raw.partition("#")
        line = before.strip()
        note = comment.strip() or None
        if not line:
            continue
        parts = line.split()
        if start_ref is None:
            if parts[0] != "start" or len(parts) < 2:
                raise QuiverFormatError(lineno, f"expected 'start <file>', got {line!r}")
            start_ref = raw.split("#", 1)[0].strip()[len("start"):].strip()
            continue
        if parts[0] != "mutate" or len(parts) != 2:
            raise QuiverFormatError(lineno, f"expected 'mutate <vertex>', got {line!r}")
        try:
            v = int(parts[1])
        except ValueError:
            raise QuiverFormatError(lineno, f"mutation vertex is not an integer: {parts[1]!r}")
        moves.append((v, note))
    if start_ref is None:
        raise QuiverFormatError(1, "missing 'start <file>' line")
    return start_ref, moves


def build_sequence(start: Quiver, moves) -> tuple[MutationSequence, int | None]:
    """Replay parsed moves; returns the sequence and the first hash mismatch index."""
    bad = None
    cur = start
    steps = []
    for idx, (v, expected_hash) in enumerate(moves):
        if not 0 <= v < cur.n:
            raise BadVertexLabelError(f"step {idx}: mutation vertex {v} outside range 0..{cur.n - 1}")
        cur = cur.mutate(v)
        steps.append((v, cur))
        if expected_hash is not None and bad is None and quiver_hash(cur) != expected_hash:
            bad = idx
    return MutationSequence(start=start, steps=tuple(steps)), bad


def export_dot(q: Quiver) -> str:
    lines = ["digraph quiver {"]
    for v in range(q.n):
        lines.append(f"  {v};")
    for u, v in q.arrows():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
