"""Command line front end.

Exit codes: 0 success, 1 a counterexample verdict or a failing fact, 2 bad
input or a complex outside the enumeration budget.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

import jsonschema

from . import center
from .complex import build_complex
from .convexity import NotConvex, Subcomplex, simplicial_convex_hull, subcomplex_from_json
from .coxeter import parse_type
from .facts import run_facts

SCHEMAS = ("complex", "subcomplex", "facts", "verdict", "sweep")

# Exhaustive sweeps run over ordered face pairs; F4 (5088 faces) and A5
# (4682) sit below this cap, B5 and larger do not.
EXHAUSTIVE_PAIR_CAP = 3 * 10**7

OK, FAILED, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def load_schema(name: str) -> dict:
    if name not in SCHEMAS:
        raise KeyError(name)
    text = resources.files("chamberworks").joinpath("schemas", f"{name}.json").read_text()
    return json.loads(text)


def validate(name: str, doc: dict) -> None:
    jsonschema.validate(doc, load_schema(name))


def _emit(doc: dict, schema: str, out: str | None) -> None:
    validate(schema, doc)
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _complex(args):
    try:
        rank = int(args.rank) if args.rank is not None else None
        t, n = parse_type(args.type, rank)
        return build_complex(t, n)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    except (RuntimeError, MemoryError) as exc:
        raise InputError(f"cannot build {args.type}: {exc}") from exc


def _split_rank(args) -> None:
    """``hull b 3 k.json`` and ``hull b3 k.json`` both work."""
    rest = list(args.rest)
    args.rank = None
    if rest and rest[0].isdigit():
        args.rank = rest.pop(0)
    if len(rest) != 1:
        raise InputError("expected TYPE [RANK] FILE")
    args.file = rest[0]


def _read_subcomplex(cc, path: str) -> Subcomplex:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        validate("subcomplex", data)
    except jsonschema.ValidationError as exc:
        raise InputError(f"{path}: {exc.message}") from exc
    t, n = data["complex"]["type"], data["complex"]["rank"]
    try:
        want = parse_type(t, None if t[1:].isdigit() else n)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc
    if f"{want[0]}{want[1]}" != cc.type_label:
        raise InputError(f"{path} is a {t} subcomplex, not {cc.type_label}")
    try:
        return subcomplex_from_json(cc, data)
    except (ValueError, KeyError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def cmd_build(args) -> int:
    cc = _complex(args)
    _emit(cc.to_json(faces=args.faces), "complex", args.out)
    return OK


def cmd_facts(args) -> int:
    try:
        report = run_facts(args.type, int(args.rank) if args.rank else None,
                           remark_circle=args.remark_circle)
    except (ValueError, RuntimeError, MemoryError) as exc:
        raise InputError(str(exc)) from exc
    _emit(report.to_json(), "facts", args.out)
    return OK if report.ok else FAILED


def cmd_hull(args) -> int:
    _split_rank(args)
    cc = _complex(args)
    K = _read_subcomplex(cc, args.file)
    _emit(simplicial_convex_hull(cc, K, method=args.method).to_json(), "subcomplex", args.out)
    return OK


def cmd_verdict(args) -> int:
    _split_rank(args)
    cc = _complex(args)
    K = _read_subcomplex(cc, args.file)
    if args.hull_first:
        K = simplicial_convex_hull(cc, K)
    try:
        v = center.verdict(cc, K)
    except NotConvex as exc:
        raise InputError(f"{args.file}: subcomplex is not convex (use --hull-first)") from exc
    except center.Unsupported as exc:
        raise InputError(str(exc)) from exc
    _emit(v.to_json(), "verdict", args.out)
    return FAILED if v.kind == center.COUNTEREXAMPLE else OK


def _dump_counterexamples(result, directory: str) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for i, bad in enumerate(result.counterexamples):
        path = d / f"counterexample-{result.complex}-{i}.json"
        path.write_text(json.dumps(bad["verdict"]["witness"]["subcomplex"], indent=2) + "\n")
        print(f"counterexample reproducer written to {path}", file=sys.stderr)


def cmd_sweep(args) -> int:
    cc = _complex(args)
    k = args.max_seed_faces
    if k < 1:
        raise InputError("--max-seed-faces must be at least 1")
    if args.samples is None:
        nfaces = sum(len(r) for r in cc.faces_by_type.values())
        if k > 2 or nfaces * nfaces > EXHAUSTIVE_PAIR_CAP:
            raise InputError(f"exhaustive sweep of {cc.type_label} with k={k} exceeds the budget; "
                             "pass --samples")
        result = center.exhaustive_sweep(cc)
        result.max_seed_faces = k
    else:
        if args.samples < 1:
            raise InputError("--samples must be positive")
        result = center.sampled_sweep(cc, args.samples, args.seed, max_faces=k)
    _emit(result.to_json(), "sweep", args.out)
    if not result.ok:
        _dump_counterexamples(result, args.dump_dir)
        return FAILED
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chamberworks",
                                description="Spherical Coxeter complexes, convex hulls and center verdicts.")
    p.add_argument("--json-schema", choices=SCHEMAS, metavar="NAME",
                   help=f"print the JSON schema of an output ({', '.join(SCHEMAS)}) and exit")
    sub = p.add_subparsers(dest="command")

    def typed(name, help_):
        q = sub.add_parser(name, help=help_)
        q.add_argument("type", help="type label such as f4, e6, b3 or a bare letter with RANK")
        q.add_argument("--out", help="write JSON here instead of stdout")
        return q

    q = typed("build", "vertices, labels and walls of a complex")
    q.add_argument("rank", nargs="?")
    q.add_argument("--faces", action="store_true", help="include the full face list")
    q.set_defaults(func=cmd_build)

    q = typed("facts", "run the fact catalogue of a complex")
    q.add_argument("rank", nargs="?")
    q.add_argument("--remark-circle", action="store_true",
                   help="E7 only: the singular circle with trivial induced Weyl group")
    q.set_defaults(func=cmd_facts)

    q = typed("hull", "convex hull of the faces in a subcomplex file")
    q.add_argument("rest", nargs="+", metavar="[RANK] FILE")
    q.add_argument("--method", choices=("roots", "closure"), default="roots")
    q.set_defaults(func=cmd_hull)

    q = typed("verdict", "classify a convex subcomplex file")
    q.add_argument("rest", nargs="+", metavar="[RANK] FILE")
    q.add_argument("--hull-first", action="store_true", help="replace the input by its convex hull")
    q.set_defaults(func=cmd_verdict)

    q = typed("sweep", "verdicts for hulls of small face seeds")
    q.add_argument("rank", nargs="?")
    q.add_argument("--max-seed-faces", type=int, default=2)
    q.add_argument("--samples", type=int, help="sample this many seeds instead of enumerating")
    q.add_argument("--seed", type=int, default=0, help="PRNG key for sampled sweeps")
    q.add_argument("--dump-dir", default=".", help="where counterexample reproducers go")
    q.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.json_schema:
        sys.stdout.write(json.dumps(load_schema(args.json_schema), indent=2) + "\n")
        return OK
    if not args.command:
        parser.print_usage(sys.stderr)
        return INPUT_ERROR
    try:
        return args.func(args)
    except InputError as exc:
        print(f"chamberworks: error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
