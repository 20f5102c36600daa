"""Command-line interface.

Exit codes: 0 for success (and positive decisions), 1 for negative
decisions (non-member, not equivalent, invalid sequence), 2 for usage or
input errors.  Results go to stdout, diagnostics to stderr; ``--json``
switches stdout to a single JSON object.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from . import gentle, normalform, textio, type_a
from .quiver import Quiver, QuiverError


def _load(path: str) -> Quiver:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise QuiverError(f"cannot read {path}: {exc}") from exc
    return textio.parse_quiver(text)


def _qdict(q: Quiver) -> dict:
    return {"n": q.n, "arrows": [[u, v] for u, v in q.arrows()]}


def _cmd_mutate(args):
    q = _load(args.file)
    r = q.mutate(args.k)
    return 0, textio.serialize_quiver(r), {"quiver": _qdict(r)}


def _cmd_check(args):
    q = _load(args.file)
    rep = type_a.membership_report(q)
    if rep.member:
        t = type_a.count_3cycles(q)
        return 0, f"member t={t}\n", {"member": True, "t": t, "violations": []}
    lines = ["non-member"]
    for v in rep.violations:
        lines.append(f"violation {v.kind}: {' '.join(str(x) for x in v.witness)}")
    payload = {
        "member": False,
        "t": None,
        "violations": [{"kind": v.kind, "witness": list(v.witness)} for v in rep.violations],
    }
    return 1, "\n".join(lines) + "\n", payload


def _cmd_tricycles(args):
    q = _load(args.file)
    triples = sorted(tuple(sorted(t)) for t in q.directed_3cycles())
    lines = [str(len(triples))] + [" ".join(str(v) for v in t) for t in triples]
    return 0, "\n".join(lines) + "\n", {"count": len(triples), "triples": [list(t) for t in triples]}


def _cmd_cartan(args):
    q = _load(args.file)
    cm = gentle.cartan_matrix(gentle.presentation_of(q))
    lines = [str(cm.n)] + [" ".join(str(x) for x in row) for row in cm.rows]
    return 0, "\n".join(lines) + "\n", {"n": cm.n, "rows": [list(r) for r in cm.rows]}


def _cmd_det(args):
    q = _load(args.file)
    d = gentle.cartan_det(gentle.presentation_of(q))
    return 0, f"{d}\n", {"det": d}


def _cmd_equiv(args):
    pa = gentle.presentation_of(_load(args.file_a))
    pb = gentle.presentation_of(_load(args.file_b))
    eq = gentle.derived_equivalent(pa, pb)
    da, db = gentle.cartan_det(pa), gentle.cartan_det(pb)
    word = "derived-equivalent" if eq else "not-derived-equivalent"
    payload = {"equivalent": eq, "det_a": da, "det_b": db}
    return (0 if eq else 1), f"{word} det {da} vs {db}\n", payload


def _cmd_normalize(args):
    q = _load(args.file)
    seq = normalform.reduce_to_normal_form(q)
    text = textio.serialize_sequence(seq, start_ref=args.file)
    payload = {
        "moves": seq.vertices(),
        "n": q.n,
        "t": type_a.count_3cycles(q),
    }
    return 0, text, payload


def _cmd_verify_seq(args):
    try:
        text = Path(args.seqfile).read_text()
    except OSError as exc:
        raise QuiverError(f"cannot read {args.seqfile}: {exc}") from exc
    start_ref, moves = textio.parse_sequence_text(text)
    start_path = Path(start_ref)
    if not start_path.is_absolute():
        start_path = Path(args.seqfile).parent / start_path
    start = _load(str(start_path))
    seq, bad_hash = textio.build_sequence(start, moves)
    if bad_hash is not None:
        payload = {"valid": False, "failed_step": bad_hash, "reason": "state-hash"}
        return 1, f"invalid step={bad_hash} reason=state-hash\n", payload
    ok, failed = normalform.verify_sequence(seq)
    if ok:
        return 0, f"valid steps={len(seq)}\n", {"valid": True, "steps": len(seq)}
    return 1, f"invalid step={failed}\n", {"valid": False, "failed_step": failed}


def _cmd_enumerate(args):
    if args.n < 0:
        raise QuiverError("n must be non-negative")
    members = type_a.enumerate_mutation_class(Quiver.linear(args.n), max_size=args.limit)
    reps = [cf.quiver for cf in sorted(members)]
    text = "---\n".join(textio.serialize_quiver(q) for q in reps)
    payload = {"count": len(reps), "members": [_qdict(q) for q in reps]}
    return 0, text, payload


def _cmd_target(args):
    q = normalform.normal_form_target(args.n, args.t)
    return 0, textio.serialize_quiver(q), {"quiver": _qdict(q)}


def _cmd_dot(args):
    q = _load(args.file)
    text = textio.export_dot(q)
    return 0, text, {"dot": text}


def _parse_ops(opspec: str):
    ops = []
    for chunk in opspec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(":")
        if len(parts) != 3:
            raise QuiverError(f"bad enlargement {chunk!r}; expected kind:attach:arg")
        kind, attach, arg = parts
        try:
            attach_v = int(attach)
        except ValueError:
            raise QuiverError(f"bad attach vertex in {chunk!r}")
        if kind == "p":
            ops.append(("pendant", attach_v, arg))
        elif kind == "c":
            ops.append(("cycle", attach_v, arg))
        else:
            raise QuiverError(f"unknown enlargement kind {kind!r} (use 'p' or 'c')")
    return ops


def _cmd_generate(args):
    if (args.enlargements is None) == (args.random is None):
        raise QuiverError("provide exactly one of --enlargements or --random")
    if args.enlargements is not None:
        ops = _parse_ops(args.enlargements)
        q = type_a.replay_enlargements(ops)
    else:
        rng = random.Random(int(os.environ.get("QMUT_SEED", "0")))
        ops = []
        q = Quiver(1)
        for _ in range(args.random):
            attach = rng.choice(type_a.open_attachment_points(q))
            if rng.random() < 0.5:
                op = ("pendant", attach, rng.choice(["in", "out"]))
                q = type_a.enlarge_pendant(q, attach, op[2])
            else:
                op = ("cycle", attach, rng.choice(["cw", "ccw"]))
                q = type_a.enlarge_cycle(q, attach, op[2])
            ops.append(op)
    payload = {"ops": [list(op) for op in ops], "quiver": _qdict(q)}
    return 0, textio.serialize_quiver(q), payload


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qmut",
        description="Quiver mutation, class membership, Cartan data, and normal forms.",
    )
    p.add_argument("--json", action="store_true", help="emit one JSON object instead of text")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("mutate", help="mutate a quiver at one vertex")
    sp.add_argument("-k", type=int, required=True, metavar="VERTEX", help="vertex to mutate at")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_mutate)

    sp = sub.add_parser("check", help="test class membership")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("tricycles", help="list oriented 3-cycles")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_tricycles)

    sp = sub.add_parser("cartan", help="print the Cartan matrix of the gentle presentation")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_cartan)

    sp = sub.add_parser("det", help="print the Cartan determinant")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_det)

    sp = sub.add_parser("equiv", help="decide derived equivalence of two members")
    sp.add_argument("file_a")
    sp.add_argument("file_b")
    sp.set_defaults(func=_cmd_equiv)

    sp = sub.add_parser("normalize", help="emit a verified mutation sequence to normal form")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_normalize)

    sp = sub.add_parser("verify-seq", help="replay and validate a mutation sequence file")
    sp.add_argument("seqfile")
    sp.set_defaults(func=_cmd_verify_seq)

    sp = sub.add_parser("enumerate", help="list the mutation class of the linear quiver")
    sp.add_argument("-n", type=int, required=True, help="number of vertices")
    sp.add_argument("--limit", type=int, default=None, help="abort beyond this many classes")
    sp.set_defaults(func=_cmd_enumerate)

    sp = sub.add_parser("target", help="print the labelled normal form for (n, t)")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-t", type=int, required=True)
    sp.set_defaults(func=_cmd_target)

    sp = sub.add_parser("dot", help="export a quiver as DOT text")
    sp.add_argument("file")
    sp.set_defaults(func=_cmd_dot)

    sp = sub.add_parser("generate", help="build a member by enlargements from one vertex")
    sp.add_argument(
        "--enlargements",
        help="comma-separated ops, e.g. 'c:0:cw,p:1:out' (p:attach:in|out, c:attach:cw|ccw)",
    )
    sp.add_argument("--random", type=int, metavar="K", help="apply K random enlargements (QMUT_SEED)")
    sp.set_defaults(func=_cmd_generate)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code, text, payload = args.func(args)
    except QuiverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps({"ok": code == 0, **payload}, sort_keys=True))
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
