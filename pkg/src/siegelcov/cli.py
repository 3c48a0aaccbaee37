"""Command-line interface.

    siegelcov construct --name chi12_2 --prec 10
    siegelcov hecke --name chi12_2 --p 3
    siegelcov dims --table conjecture --jmax 30 --format csv
    siegelcov check --suite core

Exit status: 0 on success, 1 on a mathematical failure (non-divisibility,
not an eigenform, failed consistency check or acceptance criterion),
2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass

from .exact import LinearSystemError, format_rational

PREC_ENV = "SIEGELCOV_PREC"
DEFAULT_PREC = 6

log = logging.getLogger("siegelcov")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    prec: int | None
    fmt: str
    output: str | None
    stretch: bool
    seed: int

    def precision(self, default: int) -> int:
        P = self.prec if self.prec is not None else default
        if P < 2:
            raise UsageError("precision must be at least 2")
        return P


def _env_prec() -> int | None:
    raw = os.environ.get(PREC_ENV)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{PREC_ENV} must be an integer, got {raw!r}") from None


# --- rendering ------------------------------------------------------------------------


def _rows_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    fields = list(rows[0])
    for r in rows[1:]:
        fields += [k for k in r if k not in fields]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in r.items()})
    return buf.getvalue()


def _rows_pretty(rows: list[dict]) -> str:
    if not rows:
        return "(empty)\n"
    fields = list(rows[0])
    table = [[str(r.get(f, "")) for f in fields] for r in rows]
    widths = [max(len(f), *(len(t[i]) for t in table)) for i, f in enumerate(fields)]
    lines = ["  ".join(f.rjust(w) for f, w in zip(fields, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(t, widths)) for t in table]
    return "\n".join(lines) + "\n"


def render(obj, rows: list[dict] | None, fmt: str, pretty: str | None = None) -> str:
    """``obj`` is the JSON payload; ``rows`` the tabular view used for csv/pretty."""
    if fmt == "json":
        return json.dumps(obj, indent=1) + "\n"
    if fmt == "csv":
        return _rows_csv(rows if rows is not None else [obj])
    if pretty is not None:
        return pretty
    return _rows_pretty(rows if rows is not None else [obj])


def _form_rows(obj: dict) -> list[dict]:
    return [{"n": key, "coeff": vec} for key, vec in obj["coeffs"].items()]


def _form_pretty(F, obj: dict, limit: int = 40) -> str:
    chi = " with character" if F.character else ""
    lines = [f"weight ({F.j},{F.k}){chi}, certified for n1, n3 <= {F.prec}"]
    lines += [f"  provenance: {p}" for p in F.provenance]
    for i, (key, vec) in enumerate(obj["coeffs"].items()):
        if i == limit:
            lines.append(f"  ... {len(obj['coeffs']) - limit} more")
            break
        lines.append(f"  a([{key}]) = [{', '.join(vec)}]")
    return "\n".join(lines) + "\n"


def _emit_form(F, cfg: RunConfig) -> str:
    obj = F.to_json_obj()
    return render(obj, _form_rows(obj), cfg.fmt, _form_pretty(F, obj) if cfg.fmt == "pretty" else None)


# --- form lookup ------------------------------------------------------------------------


def _named_form(name: str, cfg: RunConfig, P: int | None):
    from .siegel import RECIPES, construct_named
    from .theta2 import BASE_WEIGHTS, base_form

    if name in BASE_WEIGHTS:
        return base_form(name, P if P is not None else cfg.precision(DEFAULT_PREC))
    if name not in RECIPES:
        raise UsageError(f"unknown form {name!r}; choose from {', '.join([*BASE_WEIGHTS, *RECIPES])}")
    if RECIPES[name].stretch and not cfg.stretch:
        raise UsageError(f"{name} is a stretch construction; pass --stretch to enable it")
    return construct_named(name, P)


# --- subcommands -------------------------------------------------------------------------


def cmd_base(args, cfg: RunConfig) -> tuple[str, int]:
    from .theta2 import base_form

    F = base_form(args.form, cfg.precision(DEFAULT_PREC))
    return _emit_form(F, cfg), 0


def cmd_mu(args, cfg: RunConfig) -> tuple[str, int]:
    from .covariant import ExprSyntaxError
    from .siegel import mu

    try:
        F = mu(args.expr, cfg.precision(DEFAULT_PREC))
    except (ExprSyntaxError, KeyError) as exc:
        raise UsageError(f"bad covariant expression: {exc}") from None
    return _emit_form(F, cfg), 0


def cmd_construct(args, cfg: RunConfig) -> tuple[str, int]:
    F = _named_form(args.name, cfg, cfg.prec)
    return _emit_form(F, cfg), 0


def cmd_hecke(args, cfg: RunConfig) -> tuple[str, int]:
    from .hecke2 import eigen_report, required_precision
    from .siegel import RECIPES

    try:
        need = required_precision(args.p, args.square)
    except (ValueError, NotImplementedError) as exc:
        raise UsageError(str(exc)) from None
    P = cfg.prec if cfg.prec is not None else need
    if P < need:
        raise UsageError(f"precision {P} is too small: this operator reads coefficients up to {need}")
    if args.name in RECIPES and cfg.prec is None:
        P = max(P, RECIPES[args.name].default_prec)
    F = _named_form(args.name, cfg, P)
    rep = eigen_report(F, args.name, args.p, args.square)
    obj = {"lambda": format_rational(rep.eigenvalue)}
    if cfg.fmt == "json":
        return render(obj, None, "json"), 0
    row = {"form": args.name, "operator": rep.operator, "lambda": obj["lambda"]}
    return render(row, [row], cfg.fmt), 0


def cmd_restrict(args, cfg: RunConfig) -> tuple[str, int]:
    from .fseries2 import restrict_diagonal
    from .siegel import restrict_and_decompose

    F = _named_form(args.name, cfg, cfg.prec)
    if args.decompose:
        decomp = restrict_and_decompose(F)
        comps = []
        for d in decomp:
            terms = [{"left": d.basis_left[a], "right": d.basis_right[b], "coeff": format_rational(c)}
                     for (a, b), c in sorted(d.coefficients.items()) if c]
            comps.append({"l": d.l, "weights": list(d.weights), "terms": terms})
        obj = {"name": args.name, "j": F.j, "k": F.k, "prec": F.prec, "components": comps}
        rows = [{"l": c["l"], "weights": c["weights"], "left": t["left"], "right": t["right"],
                 "coeff": t["coeff"]} for c in comps for t in c["terms"]]
        pretty = "".join(f"l={d.l} in M_{d.weights[0]} (x) M_{d.weights[1]}: {d.describe()}\n"
                         for d in decomp if not d.is_zero()) or "restriction is zero\n"
        return render(obj, rows, cfg.fmt, pretty if cfg.fmt == "pretty" else None), 0
    R = restrict_diagonal(F.series)
    table = {f"{format_rational(a)},{format_rational(c)}": [format_rational(x) for x in v]
             for (a, c), v in sorted(R.table.items())}
    obj = {"name": args.name, "j": F.j, "k": F.k, "prec": F.prec, "zero": R.is_zero(), "table": table}
    rows = [{"n1,n3": k, "coeff": v} for k, v in table.items()]
    return render(obj, rows, cfg.fmt), 0


def cmd_dims(args, cfg: RunConfig) -> tuple[str, int]:
    from .dims import (
        PARTITIONS,
        conjecture_table,
        consistency_checks,
        fricke_split,
        level2_elliptic_dims,
        series_coeff,
        yoshida_multiplicity,
    )

    if args.jmax < 0 or args.jmax % 2:
        raise UsageError("--jmax must be even and non-negative")
    js = range(0, args.jmax + 1, 2)
    code = 0
    if args.table == "conjecture":
        rows = [conjecture_table(j).to_row() for j in js]
    elif args.table == "yoshida":
        rows = []
        for j in js:
            k = j + 2
            a, b, c = level2_elliptic_dims(k)
            plus, minus = fricke_split(k) if k > 2 else (0, 0)
            row = {"j": j, "k": k, "dim_new_plus": plus, "dim_new_minus": minus, "dim_new_level4": c}
            for p in PARTITIONS:
                row["[" + ",".join(map(str, p)) + "]"] = yoshida_multiplicity(j, p)
            rows.append(row)
    else:
        checks = {(c.name, c.j): c for c in consistency_checks(args.jmax)}
        rows = []
        for j in js:
            a, b, c = level2_elliptic_dims(j)
            row = {"j": j, "a_j": a, "b_j": b, "c_j": c, "dim_S_j2_eps": series_coeff("eps2", j),
                   "dim_S_j7": series_coeff("level1_j7", j)}
            for (name, jj), chk in checks.items():
                if jj == j:
                    row["ok: " + name] = chk.passed
                    if not chk.passed:
                        code = 1
            rows.append(row)
    return render(rows, rows, cfg.fmt), code


def cmd_check(args, cfg: RunConfig) -> tuple[str, int]:
    from .acceptance import run_suite

    def progress(c):
        print(c.line(), file=sys.stderr, flush=True)

    crits = run_suite(args.suite, seed=cfg.seed, progress=progress)
    ok = all(c.acceptable for c in crits)
    obj = {"suite": args.suite, "seed": cfg.seed, "passed": ok,
           "criteria": [c.to_json_obj() for c in crits]}
    for c in obj["criteria"]:
        c.pop("seconds")  # keep the manifest byte-identical across runs
    rows = [{"criterion": c.number, "title": c.title, "passed": c.passed,
             "failed_checks": [i.label for i in c.items if not i.passed],
             "conflicts": [i.conflict for i in c.items if not i.passed and i.conflict]} for c in crits]
    pretty = "".join(c.line() + "\n" for c in crits)
    return render(obj, rows, cfg.fmt, pretty if cfg.fmt == "pretty" else None), 0 if ok else 1


# --- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .siegel import RECIPES
    from .theta2 import BASE_WEIGHTS

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=argparse.SUPPRESS,
                        help=f"certified precision P (default: ${PREC_ENV} or a per-command default)")
    common.add_argument("--format", choices=("json", "csv", "pretty"), default=argparse.SUPPRESS)
    common.add_argument("--output", "-o", default=argparse.SUPPRESS, help="write to this file instead of stdout")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized checks (default 0)")
    common.add_argument("--stretch", action="store_true", default=argparse.SUPPRESS,
                        help="enable the expensive constructions")
    common.add_argument("--verbose", "-v", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="siegelcov", parents=[common],
                                description="Vector-valued Siegel modular forms of degree two from covariants.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("base", parents=[common], help="a base form from theta constants")
    s.add_argument("--form", required=True, choices=tuple(BASE_WEIGHTS))
    s.set_defaults(func=cmd_base)

    s = sub.add_parser("mu", parents=[common], help="image of a covariant expression")
    s.add_argument("--expr", required=True)
    s.set_defaults(func=cmd_mu)

    names = (*BASE_WEIGHTS, *RECIPES)
    s = sub.add_parser("construct", parents=[common], help="a named form")
    s.add_argument("--name", required=True, choices=tuple(RECIPES))
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("hecke", parents=[common], help="Hecke eigenvalue of a named form")
    s.add_argument("--name", required=True, choices=names)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--square", action="store_true", help="T_{p^2} instead of T_p")
    s.set_defaults(func=cmd_hecke)

    s = sub.add_parser("restrict", parents=[common], help="restriction to the diagonal")
    s.add_argument("--name", required=True, choices=names)
    s.add_argument("--decompose", action="store_true", help="express components in level-one bases")
    s.set_defaults(func=cmd_restrict)

    s = sub.add_parser("dims", parents=[common], help="dimension tables")
    s.add_argument("--table", required=True, choices=("conjecture", "series", "yoshida"))
    s.add_argument("--jmax", type=int, required=True)
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("check", parents=[common], help="run the acceptance suite")
    s.add_argument("--suite", choices=("core", "stretch"), default="core")
    s.set_defaults(func=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    from .fseries2 import NonDivisible, PrecisionError
    from .hecke2 import NotEigenform

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        prec = getattr(args, "prec", None)
        cfg = RunConfig(prec=prec if prec is not None else _env_prec(),
                        fmt=getattr(args, "format", "json"),
                        output=getattr(args, "output", None),
                        stretch=getattr(args, "stretch", False),
                        seed=getattr(args, "seed", 0))
        text, code = args.func(args, cfg)
    except (UsageError, PrecisionError) as exc:
        print(f"siegelcov: error: {exc}", file=sys.stderr)
        return 2
    except (NonDivisible, NotEigenform, LinearSystemError) as exc:
        print(f"siegelcov: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"siegelcov: error: {exc}", file=sys.stderr)
        return 2
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
