"""Command-line front end.  Every command prints one JSON report on stdout.

Exit codes: 0 success, 1 a negative verdict, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import diagram as dg
from .complex import (
    StableClass, differential, enumerate_generators, generator_classes, homology,
    relative_grading, stable_equal, verify_d_squared,
)
from .errors import HFError, InvarianceViolation, MapError, PreconditionFailed, SchemaError
from .laurent import pformat


class Verdict(Exception):
    """Carries a report whose verdict is negative (exit code 1)."""

    def __init__(self, payload):
        super().__init__("negative verdict")
        self.payload = payload


def digest(d: dg.HeegaardDiagram) -> str:
    return hashlib.sha256(dg.serialize(d).encode("utf-8")).hexdigest()


def _load(path: str) -> dg.HeegaardDiagram:
    try:
        return dg.load(path)
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from None


def _gen(g) -> list[int]:
    return list(g)


def _stable_payload(dim: int, b: int) -> dict:
    out = {"raw": [dim, b]}
    den = 2 ** (b - 1)
    if dim % den == 0:
        out["reduced"] = [dim // den, 1]
    else:
        out["warning"] = f"dim {dim} is not divisible by 2^(b-1) = {den}"
    return out


# -- commands -------------------------------------------------------------------
def cmd_validate(args):
    d = _load(args.file)
    rep = dg.validate(d)
    nice = dg.is_nice(d)
    payload = {"valid": rep.valid, "violations": rep.violations, "nice": nice.is_nice,
               "offenders": [list(o) for o in nice.offenders]}
    if not rep.valid or not nice.is_nice:
        raise Verdict(payload)
    return d, payload


def cmd_info(args):
    d = _load(args.file)
    rep = dg.validate(d)
    faces = [
        {"id": f.id, "corners": [list(c) for c in f.corners], "chi": f.chi, "pointed": f.id in d.basepoints}
        for f in d.faces
    ]
    return d, {
        "name": d.name, "genus": d.g, "k": d.k, "b": d.b, "crossings": len(d.crossings),
        "faces": faces, "valid": rep.valid, "violations": rep.violations, "nice": dg.is_nice(d).is_nice,
        "tubes": [[list(a), list(b)] for a, b in d.tubes],
    }


def cmd_gens(args):
    d = _load(args.file)
    gens = enumerate_generators(d)
    return d, {"count": len(gens), "generators": [_gen(g) for g in gens]}


def cmd_diff(args):
    d = _load(args.file)
    diff = differential(d, threads=args.threads)
    ok, bad = verify_d_squared(diff)
    payload = {
        "generators": [_gen(g) for g in diff.generators],
        "entries": [list(e) for e in diff.nonzero()],
        "d_squared_zero": ok,
    }
    if bad:
        payload["counterexample"] = list(bad)
    if args.witnesses:
        payload["witnesses"] = [
            {"row": i, "col": j, "domains": [list(D) for D in doms]}
            for (i, j), doms in sorted(diff.witnesses.items())
        ]
    if args.matrix:
        with open(args.matrix, "w", encoding="utf-8") as fh:
            fh.write(diff.export())
    if not ok:
        raise Verdict(payload)
    return d, payload


def cmd_homology(args):
    d = _load(args.file)
    h = homology(d, differential(d, threads=args.threads))
    payload = {"dim": h.total, "b": d.b, "stable": _stable_payload(h.total, d.b),
               "generators": h.n_generators, "rank": h.rank}
    if args.per_class or args.graded:
        classes = []
        for c in h.per_class:
            entry = {"generators": c["generators"], "dim": c["dim"]}
            if args.graded:
                gr, mod = relative_grading(d, [tuple(g) for g in c["generators"]])
                entry["grading"] = [[_gen(g), v] for g, v in sorted(gr.items())]
                entry["modulus"] = mod
            classes.append(entry)
        payload["classes"] = classes
    return d, payload


def cmd_twisted(args):
    from .twisted import twisted_differential, univariate_homology, verify_twisted_d_squared

    d = _load(args.file)
    diff = differential(d, threads=args.threads)
    classes = generator_classes(d, diff.generators)
    if args.cls is not None:
        if not 0 <= args.cls < len(classes):
            raise SchemaError(f"--class {args.cls} out of range (0..{len(classes) - 1})")
        picked = [(args.cls, classes[args.cls])]
    else:
        picked = list(enumerate(classes))
    out = []
    ok_all = True
    for n, idx in picked:
        c = twisted_differential(d, [diff.generators[i] for i in idx], diff)
        entry = c.to_json()
        entry["class"] = n
        entry["d_squared_zero"] = verify_twisted_d_squared(c)
        entry["augmentation_matches"] = c.augmented() == c.untwisted
        ok_all &= entry["d_squared_zero"] and entry["augmentation_matches"]
        if c.m <= 1:
            th = univariate_homology(c)
            entry["homology"] = {"ring": th.ring, "free_rank": th.free_rank,
                                 "divisors": [pformat(p) for p in th.divisors], "gf2_dim": th.gf2_dim}
        else:
            entry["homology"] = None
            entry["note"] = f"{c.m} variables; homology is not computed"
        out.append(entry)
    payload = {"classes": out}
    if not ok_all:
        raise Verdict(payload)
    return d, payload


def cmd_move(args):
    from .moves import apply_move, move_from_json, move_to_json

    d = _load(args.file)
    try:
        with open(args.script, encoding="utf-8") as fh:
            script = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"{args.script}: {exc}") from None
    if not isinstance(script, list):
        raise SchemaError("move script must be a JSON list")
    trace = []
    cur = d
    for i, rec in enumerate(script):
        try:
            mv = move_from_json(rec)
        except PreconditionFailed as exc:
            raise SchemaError(f"move {i}: {exc}") from None
        try:
            cur = apply_move(cur, mv)
        except (PreconditionFailed, HFError) as exc:
            raise Verdict({"applied": trace, "failed": i, "reason": str(exc)}) from None
        trace.append({"move": move_to_json(mv), "crossings": len(cur.crossings), "k": cur.k, "b": cur.b, "g": cur.g})
    dg.save(cur, args.output)
    return d, {"applied": trace, "output": args.output, "output_digest": digest(cur)}


def cmd_fuzz(args):
    from .moves import fuzz_invariance

    d = _load(args.file)
    try:
        rep = fuzz_invariance(d, args.moves, args.seed)
    except InvarianceViolation as exc:
        raise Verdict({"ok": False, "error": str(exc)}) from None
    return d, rep.to_json()


def _parse_gen(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise SchemaError(f"generator {text!r} must be comma-separated crossing ids") from None


def cmd_oracle(args):
    from .complex import empty_polygons
    from .oracle import brute_force_polygons, build_surface, compare_with_search, maslov_additivity_sample

    d = _load(args.file)
    if args.pair:
        x, y = (_parse_gen(t) for t in args.pair)
        gens = set(enumerate_generators(d))
        if x not in gens or y not in gens:
            raise SchemaError("--pair arguments must be generators")
        brute = brute_force_polygons(d, x, y)
        fast = sorted(D for z, D in empty_polygons(d, x) if z == y)
        surfaces = [vars(build_surface(d, D, x, y)) for D in brute]
        for s in surfaces:
            s["sheets"] = [list(t) for t in s["sheets"]]
            s["corners"] = [list(t) for t in s["corners"]]
        payload = {"x": list(x), "y": list(y), "brute": [list(D) for D in brute],
                   "search": [list(D) for D in fast], "agree": brute == fast, "surfaces": surfaces}
        if brute != fast:
            raise Verdict(payload)
        return d, payload
    bad = compare_with_search(d)
    rep = maslov_additivity_sample(d, 200, 0)
    payload = {"discrepancies": bad, "agree": not bad, "additivity_trials": rep.trials}
    if bad:
        raise Verdict(payload)
    return d, payload


def cmd_stable_eq(args):
    d1, d2 = _load(args.file1), _load(args.file2)
    s1 = StableClass(homology(d1).total, d1.b).tensor_summands(args.summands1)
    s2 = StableClass(homology(d2).total, d2.b).tensor_summands(args.summands2)
    eq = stable_equal(s1, s2)
    payload = {"first": [s1.dim, s1.b], "second": [s2.dim, s2.b], "equal": eq,
               "digests": [digest(d1), digest(d2)]}
    if not eq:
        raise Verdict(payload)
    return d1, payload


# -- plumbing ------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nicehf", description="Combinatorial Heegaard Floer homology of nice diagrams.")
    p.add_argument("--threads", type=int, default=None, help="worker threads (default: $HF_THREADS or 1)")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (
        ("validate", cmd_validate, "check the diagram axioms and niceness"),
        ("info", cmd_info, "genus, curve count, basepoints and faces"),
        ("gens", cmd_gens, "list generators"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("file")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("diff", help="the differential")
    sp.add_argument("file")
    sp.add_argument("--witnesses", action="store_true")
    sp.add_argument("--matrix", metavar="OUT")
    sp.set_defaults(func=cmd_diff)

    sp = sub.add_parser("homology", help="dimension of the homology")
    sp.add_argument("file")
    sp.add_argument("--per-class", action="store_true")
    sp.add_argument("--graded", action="store_true")
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("twisted", help="twisted complex and its homology")
    sp.add_argument("file")
    sp.add_argument("--class", dest="cls", type=int, default=None)
    sp.set_defaults(func=cmd_twisted)

    sp = sub.add_parser("move", help="diagram rewrites")
    msub = sp.add_subparsers(dest="action", required=True)
    ap = msub.add_parser("apply", help="apply a JSON list of moves")
    ap.add_argument("file")
    ap.add_argument("--script", required=True)
    ap.add_argument("-o", "--output", required=True)
    ap.set_defaults(func=cmd_move)

    sp = sub.add_parser("fuzz-invariance", help="random moves with invariance checks")
    sp.add_argument("file")
    sp.add_argument("--moves", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_fuzz)

    sp = sub.add_parser("oracle", help="compare the polygon search with exhaustion")
    sp.add_argument("file")
    sp.add_argument("--pair", nargs=2, metavar=("X", "Y"))
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("stable-eq", help="compare stable invariants of two diagrams")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--summands1", type=int, default=0)
    sp.add_argument("--summands2", type=int, default=0)
    sp.set_defaults(func=cmd_stable_eq)
    return p


def _emit(argv, d, payload, code, elapsed, timing, out):
    report = {"command": list(argv), "payload": payload, "ok": code == 0}
    if d is not None:
        report["digest"] = digest(d)
    if timing:
        report["timing"] = round(elapsed, 6)
    out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.threads is None:
        try:
            args.threads = max(1, int(os.environ.get("HF_THREADS", "1")))
        except ValueError:
            args.threads = 1
    t0 = time.perf_counter()
    try:
        d, payload = args.func(args)
        code = 0
    except Verdict as v:
        d, payload, code = None, v.payload, 1
    except (SchemaError, MapError) as exc:
        d, payload, code = None, {"error": type(exc).__name__, "message": str(exc)}, 2
    except HFError as exc:
        d, payload, code = None, {"error": type(exc).__name__, "message": str(exc)}, 1
    _emit(argv, d, payload, code, time.perf_counter() - t0, args.timing, out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
