"""coverwreath command line.

Exit codes: 0 embeds / verified, 1 internal inconsistency or failed
verification, 2 invalid input, 3 does not embed, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import certs
from .embed import (BUDGET_ENV, ROUTES, SUITE, EmbeddingCertificate, arithmetic_decide,
                    cohomology_report, construct_embedding, cross_validate, default_budget,
                    make_instance, obstruction_witness)
from .errors import BudgetExceeded, CertificateError, CoverWreathError

EXIT_OK, EXIT_INCONSISTENT, EXIT_INVALID, EXIT_NO_EMBED, EXIT_BUDGET = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    subcommand: str
    n: int | None = None
    q: int | None = None
    r: int | None = None
    routes: tuple = ROUTES
    budget: int | None = None
    fmt: str = "text"
    output: str | None = None
    seed: int = 0
    instances: list = field(default_factory=list)
    path: str | None = None
    oracle: bool = False


def _triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected n,q,r but got {text!r}")
    try:
        return tuple(int(x) for x in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-integer entry in {text!r}") from None


def _routes(text: str) -> tuple:
    chosen = tuple(x.strip() for x in text.split(",") if x.strip())
    bad = [x for x in chosen if x not in ROUTES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown route(s) {bad}; choose from {','.join(ROUTES)}")
    return chosen


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coverwreath",
        description="Decide whether Z_r.PSL_n(q) embeds in Z_r wr PSL_n(q) on projective points.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None,
                        help=f"max group order to enumerate (default 100000, env {BUDGET_ENV})")
    common.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    common.add_argument("--output", "-o", default=None, help="write output to this file")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    inst = argparse.ArgumentParser(add_help=False)
    inst.add_argument("--n", type=int, required=True)
    inst.add_argument("--q", type=int, required=True)
    inst.add_argument("--r", type=int, required=True)

    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("decide", parents=[common, inst], help="evaluate the arithmetic criterion")
    sub.add_parser("certify", parents=[common, inst],
                   help="write an embedding or obstruction certificate as JSON")
    p = sub.add_parser("verify", parents=[common], help="re-check a certificate file")
    p.add_argument("path")
    p = sub.add_parser("report", parents=[common, inst], help="cohomology dimensions of PSL_n(q)")
    p.add_argument("--oracle", action="store_true",
                   help="also compare against the all-pairs oracle (|G| <= 360)")
    p = sub.add_parser("sweep", parents=[common], help="cross-validate many instances")
    p.add_argument("--instances", nargs="*", type=_triple, default=[], metavar="N,Q,R")
    p.add_argument("--suite", action="store_true", help="add the standard instance suite")
    p.add_argument("--n", type=int, nargs="*", default=[], dest="ns")
    p.add_argument("--q", type=int, nargs="*", default=[], dest="qs")
    p.add_argument("--r", type=int, nargs="*", default=[], dest="rs")
    p.add_argument("--routes", type=_routes, default=ROUTES,
                   help=f"comma-separated subset of {','.join(ROUTES)}")
    return parser


def parse_config(argv=None) -> RunConfig:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(subcommand=args.subcommand, budget=args.budget, fmt=args.fmt,
                    output=args.output, seed=args.seed)
    if args.subcommand in ("decide", "certify", "report"):
        cfg.n, cfg.q, cfg.r = args.n, args.q, args.r
    if args.subcommand == "report":
        cfg.oracle = args.oracle
    if args.subcommand == "verify":
        cfg.path = args.path
    if args.subcommand == "sweep":
        cfg.routes = args.routes
        instances = list(args.instances)
        if args.suite:
            instances.extend(SUITE)
        if args.ns or args.qs or args.rs:
            instances.extend(itertools.product(args.ns, args.qs, args.rs))
        cfg.instances = instances
    return cfg


def _emit(cfg: RunConfig, text: str):
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def _err(msg: str):
    print(f"coverwreath: {msg}", file=sys.stderr)


def _budget(cfg: RunConfig) -> int:
    return default_budget() if cfg.budget is None else cfg.budget


def cmd_decide(cfg: RunConfig) -> int:
    inst = make_instance(cfg.n, cfg.q, cfg.r)
    embeds = arithmetic_decide(inst)
    quotient = (inst.q - 1) // inst.d
    if cfg.fmt == "json":
        _emit(cfg, json.dumps({"instance": {"n": inst.n, "q": inst.q, "r": inst.r},
                               "d": inst.d, "(q-1)/d": quotient,
                               "r_divides": quotient % inst.r == 0,
                               "embeds": embeds}, sort_keys=True) + "\n")
    else:
        verdict = "embeds" if embeds else "does not embed"
        rel = "does not divide" if embeds else "divides"
        _emit(cfg, f"{inst}: d = gcd(n, q-1) = {inst.d}, (q-1)/d = {quotient}; "
                   f"r = {inst.r} {rel} {quotient}: {verdict}\n")
    return EXIT_OK if embeds else EXIT_NO_EMBED


def cmd_certify(cfg: RunConfig) -> int:
    inst = make_instance(cfg.n, cfg.q, cfg.r)
    if arithmetic_decide(inst):
        cert = construct_embedding(inst, _budget(cfg))
        if not isinstance(cert, EmbeddingCertificate):
            _err(f"{inst}: criterion says embed but no cocycle is nonzero on the kernel")
            return EXIT_INCONSISTENT
        code = EXIT_OK
    else:
        cert = obstruction_witness(inst)
        code = EXIT_NO_EMBED
    doc = certs.to_json(cert)
    _emit(cfg, certs.dumps(doc))
    if cfg.output:
        print(f"{inst}: wrote {doc['kind']} certificate to {cfg.output}", file=sys.stderr)
    return code


def cmd_verify(cfg: RunConfig) -> int:
    try:
        doc = certs.load(cfg.path)
    except CertificateError as exc:
        _err(str(exc))
        return EXIT_INVALID
    budget = max(_budget(cfg), 2_000_000)
    try:
        summary = certs.verify(doc, budget)
    except CertificateError as exc:
        _err(f"verification failed: {exc}")
        return EXIT_INCONSISTENT
    except (KeyError, TypeError, ValueError) as exc:
        _err(f"malformed certificate: {exc!r}")
        return EXIT_INVALID
    if cfg.fmt == "json":
        _emit(cfg, json.dumps({"ok": True, **summary}, sort_keys=True) + "\n")
    else:
        _emit(cfg, f"OK: {summary['kind']} certificate verified "
                   f"({', '.join(f'{k}={v}' for k, v in summary.items() if k != 'kind')})\n")
    return EXIT_OK


def cmd_report(cfg: RunConfig) -> int:
    inst = make_instance(cfg.n, cfg.q, cfg.r)
    report = cohomology_report(inst, _budget(cfg))
    doc = report.as_dict()
    if cfg.oracle:
        doc["oracle"] = _oracle_compare(inst, cfg.seed)
    if cfg.fmt == "json":
        _emit(cfg, json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        lines = [f"{inst}: |PSL| = {report.group_order}"]
        for name in report.h1:
            lines.append(f"  {name:6s} h0 = {report.h0[name]}  h1 = {report.h1[name]}")
        lines.append(f"  kerphi_dim = {report.kerphi_dim} "
                     f"(predicts {'embedding' if report.predicted_embedding else 'no embedding'})")
        for name, ok in report.identities.items():
            lines.append(f"  {'skip' if ok is None else 'ok  ' if ok else 'FAIL'} {name}")
        for name, row in doc.get("oracle", {}).items():
            lines.append(f"  oracle {name}: {row}")
        _emit(cfg, "\n".join(lines) + "\n")
    if report.violations or any(row.get("agree") is False for row in doc.get("oracle", {}).values()):
        return EXIT_INCONSISTENT
    return EXIT_OK


def _oracle_compare(inst, seed: int) -> dict:
    from .cocycle import ORACLE_BUDGET, z1_full_oracle, z1_generator_method
    from .embed import build_cover
    from .grp import enumerate_elements
    from .permmod import standard_modules

    G = build_cover(inst).G
    if G.order > ORACLE_BUDGET:
        return {"skipped": {"reason": f"|G| = {G.order} > {ORACLE_BUDGET}"}}
    elements = enumerate_elements(G)
    out = {}
    for name, module in standard_modules(G, inst.r).items():
        a = z1_generator_method(G, module)
        b = z1_full_oracle(G, elements, module, seed=seed)
        dims = lambda c: (c.z1_dim, c.b1_dim, c.h1_dim)
        out[name] = {"generator": list(dims(a)), "oracle": list(dims(b)), "agree": dims(a) == dims(b)}
    return out


def cmd_sweep(cfg: RunConfig) -> int:
    budget = _budget(cfg)
    rows = []
    for triple in cfg.instances:
        row = {"instance": list(triple)}
        start = time.perf_counter()
        try:
            verdict = cross_validate(make_instance(*triple), budget, cfg.routes)
        except CoverWreathError as exc:
            row.update(status="ERROR", error=f"{type(exc).__name__}: {exc}")
        else:
            row.update(criterion="yes" if verdict.arithmetic else "no",
                       routes=[k for k, v in verdict.routes.items() if v.startswith("ran")],
                       constructed=verdict.constructed, witness=verdict.witness,
                       cohomology=verdict.cohomology, status=verdict.status,
                       diagnostics=verdict.diagnostics)
        row["seconds"] = round(time.perf_counter() - start, 3)
        rows.append(row)
    if cfg.fmt == "json":
        _emit(cfg, json.dumps({"rows": rows}, sort_keys=True, indent=2) + "\n")
    else:
        _emit(cfg, _table(rows))
    if any(row["status"] == "INCONSISTENT" for row in rows):
        return EXIT_INCONSISTENT
    if any(row["status"] == "ERROR" for row in rows):
        return EXIT_INVALID
    return EXIT_OK


def _table(rows) -> str:
    def cell(v):
        return "-" if v is None else str(v)

    header = ("n,q,r", "criterion", "routes", "constructed", "witness", "cohomology", "status",
              "seconds")
    body = []
    for row in rows:
        if row["status"] == "ERROR":
            body.append((",".join(map(str, row["instance"])), "-", "-", "-", "-", "-",
                         "ERROR: " + row["error"], cell(row["seconds"])))
            continue
        body.append((",".join(map(str, row["instance"])), row["criterion"],
                     "+".join(row["routes"]), cell(row["constructed"]), cell(row["witness"]),
                     cell(row["cohomology"]), row["status"], cell(row["seconds"])))
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in [header, *body]]
    for row in rows:
        for msg in row.get("diagnostics") or []:
            lines.append(f"# {','.join(map(str, row['instance']))}: {msg}")
    return "\n".join(lines) + "\n"


COMMANDS = {"decide": cmd_decide, "certify": cmd_certify, "verify": cmd_verify,
            "report": cmd_report, "sweep": cmd_sweep}


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:       # argparse usage errors exit 2 already
        return int(exc.code or 0)
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except BudgetExceeded as exc:
        _err(f"budget exceeded: {exc} (raise it with --budget or {BUDGET_ENV})")
        return EXIT_BUDGET
    except CoverWreathError as exc:
        _err(f"{type(exc).__name__}: {exc}")
        return EXIT_INVALID
    except ValueError as exc:       # e.g. a malformed budget in the environment
        _err(str(exc))
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
