"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error or unknown
type, 3 order or poset cap exceeded, 4 time budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import signal
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import characters as ch
from . import verify as vf
from .group import DEFAULT_ORDER_CAP, OrderCapExceeded
from .lefschetz import PosetCapExceeded
from .rootsys import CoxeterType, InvalidType

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP, EXIT_BUDGET = 0, 1, 2, 3, 4

CONFIG_ENV = "COXINV_CONFIG"

DEFAULT_TYPES = (
    "A1 A2 A3 A4 A5 B2 B3 B4 D4 D5 E6 E7 E8 F4 H3 H4 "
    "I2(3) I2(4) I2(5) I2(6) I2(7) I2(8) I2(9) I2(10) I2(11) I2(12)"
).split()

VERIFY_TARGETS = ("f1", "f2", "lefschetz", "conjecture", "all")


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class RunConfig:
    types: list[str] = field(default_factory=lambda: list(DEFAULT_TYPES))
    mode: str = "auto"
    order_cap: int = DEFAULT_ORDER_CAP
    budget_seconds: float | None = None
    format: str | None = None
    out: str | None = None

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        with open(path) as fh:
            data = json.load(fh)
        known = {k: data[k] for k in ("types", "mode", "order_cap", "budget_seconds", "format", "out") if k in data}
        return cls(**known)


# ---------------------------------------------------------------------------
# rendering


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(rows: list[dict], header: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(header), lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in r.items()})
    return buf.getvalue()


def _render_checks(results: list[vf.CheckResult], fmt: str, extra: dict | None = None) -> str:
    if fmt == "json":
        doc = {"checks": [r.to_json() for r in results], "pass": all(r.counts_as_pass for r in results)}
        if extra:
            doc.update(extra)
        return _dump_json(doc)
    if fmt == "csv":
        parts = []
        for r in results:
            if r.rows:
                header = list(r.rows[0].keys())
                parts.append(f"# {r.name} {r.type} {r.to_json()['status']}\n" + _csv(r.rows, header))
            else:
                parts.append(f"# {r.name} {r.type} {r.to_json()['status']}\n" + _csv([r.summary], list(r.summary.keys())))
        return "".join(parts)
    lines = []
    for r in results:
        lines.append(f"{r.type:8s} {r.name:12s} {r.to_json()['status'].upper()}  {json.dumps(r.summary)}")
        for row in r.rows:
            lines.append("    " + json.dumps(row))
    if extra:
        for k, v in extra.items():
            lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def coxeter_dot(ctype: CoxeterType, coxeter_matrix, J: Sequence[int], name: str) -> str:
    """Coxeter graph with J-nodes filled black; labels on edges with m >= 4."""
    n = ctype.rank
    out = [f'graph "{name}" {{', "  node [shape=circle, style=filled, label=\"\"];"]
    for i in range(n):
        fill = "black" if i in J else "white"
        out.append(f'  n{i + 1} [fillcolor={fill}, xlabel="{i + 1}"];')
    for i in range(n):
        for j in range(i + 1, n):
            m = coxeter_matrix[i][j]
            if m >= 4:
                out.append(f'  n{i + 1} -- n{j + 1} [label="{m}"];')
            elif m == 3:
                out.append(f"  n{i + 1} -- n{j + 1};")
    out.append("}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_roots(ctx: vf.Context, fmt: str) -> tuple[str, int]:
    rs = ctx.rs
    doc = {
        "type": ctx.name,
        "field": str(rs.field),
        "rank": rs.rank,
        "num_roots": rs.num_roots,
        "num_positive": rs.n_pos,
        "exponents": list(ctx.ctype.exponents),
        "degrees": list(ctx.ctype.degrees),
        "order": ctx.ctype.order,
        "coxeter_matrix": [list(r) for r in rs.coxeter_matrix],
        "positive_roots": [[str(x) for x in rs.coeffs[i]] for i in range(rs.n_pos)],
    }
    if fmt == "csv":
        rows = [{"index": i, "coefficients": " ".join(str(x) for x in rs.coeffs[i]), "norm2": str(rs.norm2(i))} for i in range(rs.n_pos)]
        return _csv(rows, ["index", "coefficients", "norm2"]), EXIT_OK
    return _dump_json(doc), EXIT_OK


def cmd_group(ctx: vf.Context, fmt: str) -> tuple[str, int]:
    g = ctx.group
    stats = g.stats()
    stats["expected_order"] = ctx.ctype.order
    code = EXIT_OK if g.order == ctx.ctype.order else EXIT_FAIL
    if fmt == "csv":
        rows = [{"class": c, "size": s, "order": int(g.element_orders[g.class_reps[c]]), "length": int(g.lengths[g.class_reps[c]])} for c, s in enumerate(g.class_sizes)]
        return _csv(rows, ["class", "size", "order", "length"]), code
    return _dump_json(stats), code


def cmd_special(ctx: vf.Context, fmt: str) -> tuple[str, int]:
    rows = [c.to_json() for c in ctx.special.classes]
    if fmt == "csv":
        return _csv(rows, list(rows[0].keys())), EXIT_OK
    doc = {"type": ctx.name, "mode": ctx.mode, "count": len(rows), "classes": rows}
    return _dump_json(doc), EXIT_OK


def cmd_table_xg(contexts: list[vf.Context], fmt: str) -> tuple[str, int]:
    results = [vf.check_xg(ctx) for ctx in contexts]
    rows = [
        {"type": r.type, "expected": r.summary["expected"], "computed": r.summary["computed"], "mode": r.summary["mode"], "status": r.to_json()["status"]}
        for r in results
    ]
    code = EXIT_OK if all(r.passed for r in results) else EXIT_FAIL
    if fmt == "json":
        return _dump_json({"table": rows}), code
    return _csv(rows, ["type", "expected", "computed", "mode", "status"]), code


def cmd_poincare(ctx: vf.Context, fmt: str) -> tuple[str, int]:
    r = vf.check_poincare(ctx)
    return _render_checks([r], fmt), EXIT_OK if r.passed else EXIT_FAIL


def cmd_graphs(ctx: vf.Context, fmt: str) -> tuple[str, int]:
    """Richardson graphs of the non-identity special classes, reference J where available."""
    exp = ctx.expected
    ref = [tuple(j - 1 for j in J) for J in exp["special_J"]] if exp else []
    graphs = []
    code = EXIT_OK
    for c in ctx.special.classes:
        if c.is_identity:
            continue
        matches = [J for J in ref if J in c.admissible_J]
        J = matches[0] if matches else c.J
        if ref and not matches:
            code = EXIT_FAIL
        graphs.append((J, c))
    if fmt == "dot":
        parts = [coxeter_dot(ctx.ctype, ctx.rs.coxeter_matrix, J, f"{ctx.name} J={{{','.join(str(j + 1) for j in J)}}}") for J, _ in graphs]
        return "".join(parts), code
    doc = {"type": ctx.name, "graphs": [{"J": [j + 1 for j in J], "R1_type": list(c.R1_type), "R2_type": list(c.R2_type)} for J, c in graphs]}
    return _dump_json(doc), code


def cmd_os(ctx: vf.Context, fmt: str) -> tuple[str, int]:
    r = vf.check_betti(ctx)
    return _render_checks([r], fmt), EXIT_OK if r.passed else EXIT_FAIL


def cmd_verify(ctx: vf.Context, target: str, fmt: str) -> tuple[str, int]:
    if target == "all":
        results = vf.run_all(ctx)
    else:
        if not ctx.full:
            raise vf.ModeError(f"verify {target} needs full enumeration")
        results = [vf.FULL_CHECKS[target](ctx)]
    extra = {"mode": ctx.mode}
    lim = ctx.limitation()
    if lim:
        extra["limitation"] = lim
    code = EXIT_OK if all(r.counts_as_pass for r in results) else EXIT_FAIL
    return _render_checks(results, fmt, extra), code


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", dest="types", action="append", help="Coxeter type such as A3, H4 or I2(7); repeatable")
    common.add_argument("--mode", choices=vf.MODES, default=None)
    common.add_argument("--order-cap", type=int, default=None)
    common.add_argument("--budget-seconds", type=float, default=None)
    common.add_argument("--format", choices=("json", "csv", "dot", "text"), default=None)
    common.add_argument("--out", default=None, help="write the report to this path")
    common.add_argument("--config", default=None, help=f"JSON run configuration (default: ${CONFIG_ENV})")

    p = argparse.ArgumentParser(prog="coxinv", description="Special involutions and arrangement cohomology of finite Coxeter groups.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("roots", parents=[common], help="root system data")
    g = sub.add_parser("group", parents=[common], help="group enumeration")
    g.add_argument("--stats", action="store_true")
    sub.add_parser("special", parents=[common], help="special involution classes")
    sub.add_parser("table-xg", parents=[common], help="|X_G| table as CSV")
    sub.add_parser("poincare", parents=[common], help="Poincare polynomial of the quotient")
    sub.add_parser("graphs", parents=[common], help="Richardson graphs")
    o = sub.add_parser("os", parents=[common], help="Orlik-Solomon algebra data")
    o.add_argument("--betti", action="store_true")
    v = sub.add_parser("verify", parents=[common], help="run verifications")
    v.add_argument("target", choices=VERIFY_TARGETS)
    return p


DEFAULT_FORMATS = {"table-xg": "csv", "graphs": "dot"}


def resolve_config(args: argparse.Namespace) -> RunConfig:
    path = args.config or os.environ.get(CONFIG_ENV)
    cfg = RunConfig.from_file(path) if path else RunConfig()
    if args.types:
        cfg.types = args.types
    for name in ("mode", "order_cap", "budget_seconds", "format", "out"):
        val = getattr(args, name)
        if val is not None:
            setattr(cfg, name, val)
    if cfg.format is None:
        cfg.format = DEFAULT_FORMATS.get(args.command, "json")
    return cfg


def _on_alarm(signum, frame):
    raise BudgetExceeded("time budget exceeded")


def run(args: argparse.Namespace, cfg: RunConfig) -> tuple[str, int]:
    contexts = [vf.Context(t, cfg.mode, cfg.order_cap) for t in cfg.types]
    if args.command == "table-xg":
        return cmd_table_xg(contexts, cfg.format)
    outputs, codes = [], []
    for ctx in contexts:
        if args.command == "verify":
            text, code = cmd_verify(ctx, args.target, cfg.format)
        else:
            handler = {
                "roots": cmd_roots,
                "group": cmd_group,
                "special": cmd_special,
                "poincare": cmd_poincare,
                "graphs": cmd_graphs,
                "os": cmd_os,
            }[args.command]
            text, code = handler(ctx, cfg.format)
        outputs.append(text)
        codes.append(code)
    return "".join(outputs), max(codes)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = resolve_config(args)
    except (OSError, ValueError, TypeError) as exc:
        print(f"error: bad configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command != "table-xg" and not args.types and not (args.config or os.environ.get(CONFIG_ENV)):
        print("error: --type is required", file=sys.stderr)
        return EXIT_USAGE
    if cfg.budget_seconds:
        signal.signal(signal.SIGALRM, _on_alarm)
        signal.setitimer(signal.ITIMER_REAL, cfg.budget_seconds)
    try:
        text, code = run(args, cfg)
    except (InvalidType, vf.ModeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OrderCapExceeded, PosetCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    finally:
        if cfg.budget_seconds:
            signal.setitimer(signal.ITIMER_REAL, 0)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
