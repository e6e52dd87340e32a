"""Command line front end.

    chabauty enumerate "X(1,3)"
    chabauty limit "O(1,3)" --weights 0,0,0,1
    chabauty poset "X(3,0)" "X(1,2)" "X(2,1)" --format dot --out chart.dot
    chabauty regress
    chabauty transition --n 3
    chabauty sweep --max-n 5
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .catalog import (
    FamilyError,
    enumerate_directions,
    parse_family,
    signature_from_direction,
    predicted_block_form,
)
from .exactmat import to_rational
from .liealg import DiagonalDirection
from .limits import closed_form_limit, grassmann_limit, verify_limit
from .pfqf import (
    GEOMETRY,
    GROUP,
    SignatureError,
    SignatureSequence,
    build_poset,
    canonicalize,
    enumerate_limits,
    isom_algebra,
    isom_dim,
    parse_signature,
)
from .regression import run_all, sphere_to_euclidean

DEFAULT_SEED = 20240611
DEFAULTS = {"mode": None, "format": "text", "out": None, "seed": DEFAULT_SEED, "max_n": 6}


class UsageError(Exception):
    pass


def _is_signature(spec: str) -> bool:
    return spec.strip().startswith(("X", "("))


def _load_target(spec: str):
    """Return (label, algebra, symmetric flag, family or None)."""
    try:
        if _is_signature(spec):
            s = parse_signature(spec)
            return s.label(), isom_algebra(s), len(s) == 1, None
        fam = parse_family(spec)
        return fam.label, fam.algebra, True, fam
    except (SignatureError, FamilyError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _parse_weights(text: str) -> DiagonalDirection:
    try:
        return DiagonalDirection(tuple(to_rational(w) for w in text.replace(" ", "").split(",") if w))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad weights {text!r}: {exc}") from exc


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt_space(space) -> list[str]:
    return [json.dumps(m) for m in space.to_literal()]


# ---------------------------------------------------------------- commands

def cmd_enumerate(args) -> int:
    spec = args.spec
    if _is_signature(spec):
        mode = args.mode or GEOMETRY
        try:
            limits = enumerate_limits(parse_signature(spec), mode)
        except SignatureError as exc:
            raise UsageError(str(exc)) from exc
        rows = [{"limit": s.label(), "dim": isom_dim(s)} for s in limits]
    else:
        _, _, _, fam = _load_target(spec)
        rows = []
        seen = set()
        for dc in enumerate_directions(fam):
            lim = closed_form_limit(dc.algebra, dc.x)
            row = {"I": "{" + ", ".join(sorted(dc.I)) + "}", "x": str(dc.x), "dim": lim.dim}
            if fam.kind == "O":
                sig = canonicalize(SignatureSequence(signature_from_direction(dc.form, dc.x)), args.mode or GROUP)
                if sig in seen:
                    continue
                seen.add(sig)
                row = {"limit": sig.label(), **row}
            else:
                row["blocks"] = predicted_block_form(fam, dc.I).describe()
            rows.append(row)
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        text = "".join(" ".join(f"{k}={v}" if k != "limit" else str(v) for k, v in r.items()) + "\n" for r in rows)
    _emit(text, args.out)
    return 0


def cmd_limit(args) -> int:
    label, algebra, symmetric, _ = _load_target(args.spec)
    x = _parse_weights(args.weights)
    if x.n != algebra.n:
        raise UsageError(f"{x.n} weights given for {label}, which needs {algebra.n}")
    report = verify_limit(algebra, x, symmetric=symmetric)
    if args.format == "json":
        text = json.dumps({"spec": label, **report.to_dict()}, indent=2) + "\n"
    else:
        lines = [f"spec: {label}", f"direction: {x}", f"dims: {report.dims[0]} -> {report.dims[1]}",
                 "oracle limit:"]
        lines += ["  " + s for s in _fmt_space(report.oracle_limit)]
        if report.closed_form_limit is not None:
            lines.append("closed form limit:")
            lines += ["  " + s for s in _fmt_space(report.closed_form_limit)]
        elif report.closed_form_error:
            lines.append(f"closed form: not applicable ({report.closed_form_error})")
        lines.append(f"agree: {str(report.agree).lower()}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def cmd_poset(args) -> int:
    mode = args.mode or GEOMETRY
    try:
        starts = [parse_signature(s) for s in args.spec]
        poset = build_poset(starts, mode)
    except SignatureError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "dot":
        text = poset.to_dot()
    elif args.format == "json":
        text = json.dumps({"mode": poset.mode, "nodes": [u.label() for u in poset.nodes],
                           "edges": [[u.label(), v.label()] for u, v in poset.edges]}, indent=2) + "\n"
    else:
        text = poset.to_text()
    _emit(text, args.out)
    return 0


def cmd_regress(args) -> int:
    results = run_all(seed=args.seed)
    width = max(len(r.name) for r in results)
    lines = [f"{r.name.ljust(width)}  {'PASS' if r.ok else 'FAIL'}  {r.detail}".rstrip() for r in results]
    failed = sum(not r.ok for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} passed")
    _emit("\n".join(lines) + "\n", args.out)
    return 1 if failed else 0


def cmd_transition(args) -> int:
    got, want = sphere_to_euclidean(args.n)
    lines = [f"so(n+1) for n = {args.n} under diag({', '.join(['1'] * args.n + ['0'])}):"]
    lines += ["  " + s for s in _fmt_space(got)]
    lines.append(f"equals isom(E^{args.n}): {str(got == want).lower()}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if got == want else 1


def sweep_families(max_n: int):
    """Families covered by the agreement sweep for ambient size <= max_n."""
    specs = [f"O({p},{n - p})" for n in range(1, min(max_n, 5) + 1) for p in range(n + 1)]
    specs += [f"GLpGLq({p},{n - p})" for n in range(1, max_n + 1) for p in range(n + 1)]
    specs += [f"GLC({m})" for m in range(1, max_n // 2 + 1)]
    specs += [f"Sp({2 * m})" for m in range(1, max_n // 2 + 1)]
    return [parse_family(s) for s in specs]


def run_sweep(max_n: int):
    cases, failures = 0, []
    for fam in sweep_families(max_n):
        for dc in enumerate_directions(fam):
            cases += 1
            oracle = grassmann_limit(dc.algebra, dc.x)
            closed = closed_form_limit(dc.algebra, dc.x)
            block = predicted_block_form(fam, dc.I, dc.w).span()
            if not (oracle == closed == block and oracle.dim == dc.algebra.dim):
                failures.append((fam.label, sorted(dc.I), dc.w))
    return cases, failures


def cmd_sweep(args) -> int:
    t0 = time.perf_counter()
    cases, failures = run_sweep(args.max_n)
    lines = [f"cases: {cases}", f"failures: {len(failures)}"]
    lines += [f"  {f} I={i} w={w}" for f, i, w in failures]
    sys.stderr.write(f"elapsed: {time.perf_counter() - t0:.2f}s\n")
    _emit("\n".join(lines) + "\n", args.out)
    return 1 if failures else 0


# ------------------------------------------------------------------ parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=[GROUP, GEOMETRY], default=argparse.SUPPRESS)
    common.add_argument("--format", choices=["text", "dot", "json"], default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--max-n", dest="max_n", type=int, default=argparse.SUPPRESS)
    common.add_argument("--config", metavar="JSON", default=argparse.SUPPRESS,
                        help="JSON file with any of the flag keys; flags win")

    parser = argparse.ArgumentParser(prog="chabauty", description="Exact conjugacy limits of symmetric subgroups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list limit classes of a family or geometry")
    p.add_argument("spec")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("limit", parents=[common], help="limit of an algebra along a diagonal direction")
    p.add_argument("spec")
    p.add_argument("--weights", required=True, help="comma-separated rationals, e.g. 0,0,0,1 or 1/2,-1/2")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("poset", parents=[common], help="Hasse diagram of limits (union over several starts)")
    p.add_argument("spec", nargs="+")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("regress", parents=[common], help="run the worked-example regression table")
    p.set_defaults(func=cmd_regress)

    p = sub.add_parser("transition", parents=[common], help="sphere to Euclidean degeneration demo")
    p.add_argument("--n", type=int, default=3)
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("sweep", parents=[common], help="oracle vs closed form vs block form over all families")
    p.set_defaults(func=cmd_sweep)
    return parser


def resolve_config(args: argparse.Namespace) -> argparse.Namespace:
    merged = dict(DEFAULTS)
    path = getattr(args, "config", None)
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {path}: {exc}") from exc
        unknown = set(cfg) - set(DEFAULTS) - {"max-n"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        if "max-n" in cfg:
            cfg["max_n"] = cfg.pop("max-n")
        merged.update(cfg)
    merged.update({k: v for k, v in vars(args).items() if k != "config"})
    return argparse.Namespace(**merged)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = resolve_config(args)
        if args.mode not in (None, GROUP, GEOMETRY):
            raise UsageError(f"bad mode {args.mode!r}")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"chabauty: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
