"""Command-line entry point: ``tricat <command> [flags]``.

Results go to standard output (or ``--out``), diagnostics to standard error.
Exit codes: 0 success, 1 a validation or verification failure, 2 usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import BUNDLED, __version__, bundled_model
from .model import ModelSpec, TricatError, UniverseSpec, load_model

COMMANDS = ("gen", "validate", "eval", "member", "dim", "pairs", "verify", "report")
KINDS = ("resdim", "coresdim", "pd", "id", "dim", "category")


class UsageError(Exception):
    pass


def _grammar() -> str:
    from .parser import GRAMMAR
    return "class expression grammar:\n" + GRAMMAR + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tricat", description="Relative homological calculus on finite triangulated models.")
    p.add_argument("--version", action="version", version=f"tricat {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, model=True):
        if model:
            sp.add_argument("--model", required=True,
                            help=f"model file, or a bundled name: {', '.join(BUNDLED)}")
        sp.add_argument("--S", type=int, default=3, help="max number of summands (default 3)")
        sp.add_argument("--W", type=int, default=4, help="shift window [-W, W] (default 4)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write the result here instead of standard output")
        sp.add_argument("--format", choices=("json", "text"), default="json")

    g = sub.add_parser("gen", help="generate a model file")
    g.add_argument("--family", required=True, choices=("semisimple", "derived_An", "cluster_An"))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--period", type=int, default=1)
    g.add_argument("--window", type=int, default=4)
    g.add_argument("--cap", type=int, default=6)
    common(g, model=False)

    common(sub.add_parser("validate", help="check the triangle axioms of a model"))

    e = sub.add_parser("eval", help="enumerate a class expression")
    e.add_argument("--class", dest="cls", required=True)
    common(e)

    mb = sub.add_parser("member", help="test membership of an object in a class")
    mb.add_argument("--class", dest="cls", required=True)
    mb.add_argument("--obj", required=True)
    common(mb)

    d = sub.add_parser("dim", help="resolution, homological or Rouquier dimension")
    d.add_argument("--kind", required=True, choices=KINDS)
    d.add_argument("--class", dest="cls")
    d.add_argument("--obj")
    common(d)

    pr = sub.add_parser("pairs", help="search for (X, omega) pairs")
    pr.add_argument("--strategy", choices=("seeded", "exhaustive"), default="seeded")
    common(pr)

    v = sub.add_parser("verify", help="run catalogue entries")
    v.add_argument("--suite", default="full", help="'full' or a comma-separated list of entry ids")
    v.add_argument("--samples", type=int, default=50)
    v.add_argument("--timings", action="store_true", help="record per-entry milliseconds")
    common(v)

    r = sub.add_parser("report", help="render a saved verification report")
    r.add_argument("--in", dest="inp", required=True)
    common(r, model=False)
    return p


def _load(spec: str) -> ModelSpec:
    if spec in BUNDLED and not Path(spec).exists():
        return bundled_model(spec)
    return load_model(spec)


def _envelope(args, m: Optional[ModelSpec], result) -> dict:
    out = {"tool": {"name": "tricat", "version": __version__}, "command": args.command}
    if m is not None:
        out["model"] = {"name": m.name, "hash": m.content_hash(), "mid_complete": m.mid_complete}
    out["universe"] = {"S": args.S, "W": args.W}
    out["seed"] = args.seed
    out["result"] = result
    return out


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v) if not isinstance(v, str) else v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {json.dumps(x) if not isinstance(x, str) else x}"
                         if not isinstance(x, (dict, list)) else _text(x, indent + 1) for x in obj)
    return f"{pad}{obj}"


def _report_text(rep: dict) -> str:
    lines = [f"model {rep['model']['name']} ({rep['model']['hash']}), universe S={rep['universe']['S']} "
             f"W={rep['universe']['W']}, seed {rep['seed']}"]
    for e in rep["entries"]:
        line = f"{e['id']:5s} {e['status']:18s} {len(e['bindings'])} bindings"
        if e.get("counterexample"):
            ce = e["counterexample"]
            line += f"  counterexample: {ce['claim']} at {ce.get('object', '-')}"
        lines.append(line)
    lines.append("summary " + " ".join(f"{k}={v}" for k, v in rep["summary"].items()))
    return "\n".join(lines)


def _emit(args, payload, text: Optional[str] = None):
    if args.format == "json":
        body = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    else:
        body = (text if text is not None else _text(payload)) + "\n"
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)


def _run(args) -> int:
    from .parser import parse_expr, parse_obj
    u = UniverseSpec(args.S, args.W)
    if args.command == "gen":
        from .gen import gen_cluster_An, gen_derived_An, gen_semisimple
        if args.family == "semisimple":
            m = gen_semisimple(args.n, args.period, args.cap)
        elif args.family == "derived_An":
            m = gen_derived_An(args.n, args.window, args.cap)
        else:
            m = gen_cluster_An(args.n, args.cap)
        body = m.dumps()
        if args.out:
            Path(args.out).write_text(body, encoding="utf-8")
        else:
            sys.stdout.write(body + "\n")
        return 0
    if args.command == "report":
        try:
            rep = json.loads(Path(args.inp).read_text(encoding="utf-8"))
            failed = any(e["status"] == "fail" for e in rep["entries"])
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read report {args.inp}: {exc}") from None
        _emit(args, rep, _report_text(rep))
        return 1 if failed else 0

    m = _load(args.model)
    if args.command == "validate":
        from .validate import validate_model
        rep = validate_model(m, u)
        _emit(args, _envelope(args, m, rep.to_json()))
        return 0 if rep.ok else 1
    if args.command == "pairs":
        from .verifier import find_ab_pairs
        pairs = find_ab_pairs(m, u, args.strategy, args.seed)
        _emit(args, _envelope(args, m, [p.to_json() for p in pairs]))
        return 0
    if args.command == "verify":
        from .verifier import run_suite
        select = None if args.suite == "full" else [s.strip() for s in args.suite.split(",") if s.strip()]
        rep = run_suite(m, u, args.seed, select, samples=args.samples, timings=args.timings).to_json()
        _emit(args, rep, _report_text(rep))
        return 1 if rep["summary"]["fail"] else 0

    from .classes import Evaluator
    ev = Evaluator(m, u)
    if args.command == "dim" and args.kind == "category":
        from .dimensions import category_dim
        _emit(args, _envelope(args, m, category_dim(ev).to_json()))
        return 0
    if args.cls is None:
        raise UsageError(f"--class is required for {args.command}")
    view = ev.eval(parse_expr(args.cls, m))
    if args.command == "eval":
        _emit(args, _envelope(args, m, {"class": args.cls, **view.to_json()}))
        return 0
    if args.obj is None:
        raise UsageError(f"--obj is required for {args.command}")
    obj = parse_obj(args.obj, m)
    if args.command == "member":
        _emit(args, _envelope(args, m, {"class": args.cls, "obj": str(obj), "member": view.member(obj),
                                        "caveats": list(view.caveats)}))
        return 0
    from . import dimensions as D
    fn = {"resdim": D.resdim, "coresdim": D.coresdim, "pd": D.pd, "id": D.id_,
          "dim": D.rel_rouquier_dim}[args.kind]
    res = fn(ev, view, obj)
    _emit(args, _envelope(args, m, {"kind": args.kind, "class": args.cls, "obj": str(obj), **res.to_json()}))
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _run(args)
    except UsageError as exc:
        sys.stderr.write(f"tricat: {exc}\n{parser.format_usage()}{_grammar()}")
        return 2
    except (TricatError, KeyError) as exc:
        sys.stderr.write(f"tricat: {exc}\n{_grammar()}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
