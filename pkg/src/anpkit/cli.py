"""Command-line entry points.

Exit codes follow one convention across commands: 0 success, 1 domain
failure (validation violations, consistency gate, incomplete data),
2 environment or I/O trouble (missing files, malformed documents,
occupied ports).
"""

from __future__ import annotations

import argparse
import json
import os
import socket
import sys
from pathlib import Path

from .errors import AnpError, ConsistencyGateFailed, Incomplete, InvalidModel
from .network import (
    DecisionNetwork,
    comparison_contexts,
    load_network,
    validate_network,
)
from .session import (
    SessionStore,
    load_judgment_rows,
    matrices_from_rows,
    questionnaire,
    render_report,
    run_pipeline,
)
from .supermatrix import format_matrix

DEFAULT_PORT = 8080
EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_ENV = 2


def _load_model(path: str) -> DecisionNetwork:
    try:
        return load_network(path)
    except FileNotFoundError:
        print(f"model not found: {path}", file=sys.stderr)
        raise SystemExit(EXIT_ENV)
    except InvalidModel as exc:
        print(f"invalid model file: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_ENV)


def cmd_validate(args: argparse.Namespace) -> int:
    net = _load_model(args.model)
    report = validate_network(net)
    if report.ok:
        print(f"ok: {len(net.clusters)} cluster(s), "
              f"{sum(len(c.elements) for c in net.clusters)} element(s), {len(net.links)} link(s)")
        return EXIT_OK
    for v in report.violations:
        print(f"violation [{v.code}]: {v.message}")
    return EXIT_DOMAIN


def cmd_questionnaire(args: argparse.Namespace) -> int:
    net = _load_model(args.model)
    report = validate_network(net)
    if not report.ok:
        for v in report.violations:
            print(f"violation [{v.code}]: {v.message}", file=sys.stderr)
        return EXIT_DOMAIN
    questions = questionnaire(net)
    contexts = comparison_contexts(net)
    for i, q in enumerate(questions, start=1):
        print(f"{i:>4}  [{q['context']}] {q['row']} vs {q['col']}: {q['prompt']}")
    print(f"contexts: {len(contexts)}")
    print(f"questions: {len(questions)}")
    return EXIT_OK


def _print_ranking(report: dict, net: DecisionNetwork) -> None:
    labels = net.labels()
    print("criteria:")
    for c in report["criteria"]:
        print(f"  {c['rank']:>2}  {c['id']:<6} {labels.get(c['id'], c['id']):<34} {c['weight']:.5f}")
    print("elements:")
    for e in report["elements"]:
        print(f"  {e['rank']:>2}  {e['id']:<6} {labels.get(e['id'], e['id']):<34} {e['weight']:.5f}")


def cmd_run(args: argparse.Namespace) -> int:
    net = _load_model(args.model)
    vreport = validate_network(net)
    if not vreport.ok:
        for v in vreport.violations:
            print(f"violation [{v.code}]: {v.message}", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        rows = load_judgment_rows(args.judgments)
    except FileNotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ENV
    except InvalidModel as exc:
        print(f"invalid judgment file: {exc}", file=sys.stderr)
        return EXIT_ENV
    try:
        per_context = matrices_from_rows(net, rows)
        report = run_pipeline(net, per_context)
    except Incomplete as exc:
        print(f"incomplete judgments: {exc}", file=sys.stderr)
        for item in (exc.detail or [])[:20]:
            print(f"  missing {item['expert']}: [{item['context']}] {item['row']} vs {item['col']}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConsistencyGateFailed as exc:
        print(f"consistency gate failed: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except AnpError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    text = render_report(report)
    try:
        Path(args.out).write_text(text, encoding="utf-8")
    except OSError as exc:
        print(f"cannot write report: {exc}", file=sys.stderr)
        return EXIT_ENV

    for row in report["consistency"]:
        verdict = "PASS" if row["pass"] else "FAIL"
        print(f"[{row['context']}] CI={row['ci']:.6f} RI={row['ri']:.2f} CR={row['cr']:.6f} {verdict}")
    conv = report["convergence"]
    print(f"limit: mode={conv['mode']} iterations={conv['iterations']}")
    _print_ranking(report, net)
    print(f"report written to {args.out}")

    if args.debug_matrices:
        for stage in ("unweighted", "weighted", "limit"):
            sm = report["_matrices"][stage]
            print(f"--- {stage} supermatrix ({len(sm.index)}x{len(sm.index)}) ---")
            sys.stdout.write(format_matrix(sm))
    return EXIT_OK


def resolve_port(flag_value: int | None, env: dict | None = None) -> int:
    """Flag beats ANP_PORT beats the default."""
    env = os.environ if env is None else env
    if flag_value is not None:
        return flag_value
    raw = env.get("ANP_PORT")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise InvalidModel(f"ANP_PORT must be an integer, got {raw!r}")
    return DEFAULT_PORT


def cmd_serve(args: argparse.Namespace) -> int:
    try:
        port = resolve_port(args.port)
    except InvalidModel as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_ENV
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((args.host, port))
    except OSError:
        print(f"port {port} is already in use", file=sys.stderr)
        return EXIT_ENV
    finally:
        probe.close()

    import uvicorn

    from .service import create_app

    store = SessionStore(args.data)
    ui_dir = args.ui or os.environ.get("ANP_UI")
    app = create_app(store, ui_dir=ui_dir, model_dir=args.data)
    print(f"serving on http://{args.host}:{port} (data: {args.data})")
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="anp", description="ANP decision engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a model file")
    p.add_argument("model")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("questionnaire", help="list every pairwise question the model requires")
    p.add_argument("model")
    p.set_defaults(func=cmd_questionnaire)

    p = sub.add_parser("run", help="run the full pipeline on a judgment file")
    p.add_argument("model")
    p.add_argument("judgments")
    p.add_argument("-o", "--out", default="report.json", help="report file path")
    p.add_argument("--debug-matrices", action="store_true", help="dump supermatrices as text")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("serve", help="start the elicitation HTTP service")
    p.add_argument("--port", type=int, default=None, help="port (default: ANP_PORT or 8080)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data", default="anp-data", help="session data directory")
    p.add_argument("--ui", default=None, help="static web client directory served under /ui")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    code = args.func(args)
    return code


if __name__ == "__main__":
    sys.exit(main())
