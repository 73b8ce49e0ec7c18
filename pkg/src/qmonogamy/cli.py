"""Command-line surface.

    qmonogamy measure  <state-spec>            correlation report (JSON)
    qmonogamy sweep    [--eps ... --out ...]   deficit transition sweep (CSV + figure)
    qmonogamy classify <state-spec>            GHZ/W verdict line
    qmonogamy verify   <suite>                 identity suites (JSON report)
    qmonogamy npartite <state-spec>            4-party deficit and recursions (JSON)

State specs: ghz | w | product | psi-tilde:p=<f>,eps=<f> | ghz-gen:alpha=<f>
| w-gen:a=<f>,b=<f>,c=<f> | haar:n=<int>,seed=<int> | file:<path>.

Exit codes: 0 ok, 2 parse/range error, 3 numeric failure, 4 purity/arity
failure in classify or npartite, 5 verification-suite failure.  Reports go to
stdout or --out; stderr carries only error messages.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import monogamy as mo
from .errors import (
    NotDensityMatrix,
    NotNormalized,
    NotPure,
    OutOfRange,
    ParseError,
    QMonogamyError,
    WrongArity,
)
from .linalg import DimensionList
from .report import correlation_report
from .states import (
    as_pure,
    ghz_n,
    haar_random_pure,
    load_state,
    product_state,
    psi_tilde,
    ghz_generalized,
    w_generalized,
)
from .sweep import rows_as_dicts, run_sweep, sign_changes, write_sweep_csv
from .util import fmt12, round12
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NUMERIC = 3
EXIT_STATE = 4
EXIT_VERIFY = 5


def _kv_args(body: str, spec: str) -> dict[str, str]:
    out = {}
    for item in body.split(","):
        key, sep, value = item.partition("=")
        if not sep or not key or not value:
            raise ParseError(f"bad parameter {item!r} in state spec {spec!r}")
        out[key.strip()] = value.strip()
    return out


def _float_args(body: str, spec: str, keys: tuple[str, ...]) -> dict[str, float]:
    kv = _kv_args(body, spec)
    if set(kv) != set(keys):
        raise ParseError(f"state spec {spec!r} needs exactly the keys {keys}")
    try:
        return {k: float(v) for k, v in kv.items()}
    except ValueError as exc:
        raise ParseError(f"non-numeric parameter in {spec!r}: {exc}") from exc


def parse_state_spec(spec: str):
    """Resolve a textual state selector to a state; unknown selectors fail."""
    name, sep, body = spec.partition(":")
    if name == "ghz" and not sep:
        return ghz_n(3)
    if name == "w" and not sep:
        return w_generalized(1 / 3, 1 / 3, 1 / 3)
    if name == "product" and not sep:
        return product_state(3)
    if name == "psi-tilde" and sep:
        kv = _float_args(body, spec, ("p", "eps"))
        return psi_tilde(kv["p"], kv["eps"])
    if name == "ghz-gen" and sep:
        kv = _float_args(body, spec, ("alpha",))
        return ghz_generalized(kv["alpha"])
    if name == "w-gen" and sep:
        kv = _float_args(body, spec, ("a", "b", "c"))
        return w_generalized(kv["a"], kv["b"], kv["c"])
    if name == "haar" and sep:
        kv = _kv_args(body, spec)
        if set(kv) != {"n", "seed"}:
            raise ParseError(f"state spec {spec!r} needs exactly the keys ('n', 'seed')")
        try:
            n, seed = int(kv["n"]), int(kv["seed"])
        except ValueError as exc:
            raise ParseError(f"non-integer parameter in {spec!r}: {exc}") from exc
        if not (1 <= n <= 4):
            raise ParseError(f"haar spec supports 1..4 qubits, got n={n}")
        return haar_random_pure(DimensionList.qubits(n), seed)
    if name == "file" and sep:
        return load_state(body)
    raise ParseError(f"unknown state spec {spec!r}")


def _emit(text: str, out_path) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json_text(doc) -> str:
    return json.dumps(round12(doc), indent=2) + "\n"


def _flat_csv(doc, prefix="") -> list[str]:
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            lines += _flat_csv(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(doc, (list, tuple)):
        for i, v in enumerate(doc):
            lines += _flat_csv(v, f"{prefix}.{i}")
    else:
        value = fmt12(doc) if isinstance(doc, float) else str(doc)
        lines.append(f"{prefix},{value}")
    return lines


def _emit_doc(doc, args) -> None:
    if args.format == "csv":
        _emit("key,value\n" + "\n".join(_flat_csv(doc)) + "\n", args.out)
    else:
        _emit(_json_text(doc), args.out)


def _cmd_measure(args) -> int:
    try:
        state = parse_state_spec(args.state)
        if len(state.dims.dims) > 4:
            raise ParseError("measure supports at most 4 parties")
    except QMonogamyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        doc = correlation_report(state, seed=args.seed)
    except QMonogamyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _emit_doc(doc, args)
    return EXIT_OK


def _cmd_classify(args) -> int:
    try:
        state = parse_state_spec(args.state)
    except QMonogamyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        psi = as_pure(state) if not hasattr(state, "amplitudes") else state
        result = mo.classify_ghz_w(psi)
    except (NotPure, WrongArity) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STATE
    except QMonogamyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.format == "json":
        _emit(
            _json_text(
                {
                    "classification": result.verdict,
                    "delta_left": result.delta_left,
                    "boundary": result.boundary,
                }
            ),
            args.out,
        )
    else:
        flag = " (boundary)" if result.boundary else ""
        _emit(f"{result.verdict} delta_left={fmt12(result.delta_left)}{flag}\n", args.out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    try:
        eps_list = [float(x) for x in args.eps.split(",") if x.strip() != ""]
        if not eps_list:
            raise OutOfRange("eps list is empty")
        rows = run_sweep(
            eps_list,
            p_start=args.p_start,
            p_end=args.p_end,
            p_step=args.p_step,
            seed=args.seed,
            threads=args.threads,
        )
    except (ValueError, OutOfRange, NotNormalized) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except QMonogamyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    if args.format == "csv":
        crossings = write_sweep_csv(rows, args.out)
    else:
        crossings = sign_changes(rows)
        doc = {
            "rows": rows_as_dicts(rows),
            "crossings": {fmt12(k): v for k, v in sorted(crossings.items())},
        }
        _emit(_json_text(doc), args.out)
    if not args.no_plot:
        from .plotting import render_sweep_figure

        render_sweep_figure(rows, crossings, Path(args.out).with_suffix(".png"))
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        report = run_suite(
            args.suite,
            n_samples=args.n,
            seed=args.seed,
            tol_override=args.tol,
            threads=args.threads,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except QMonogamyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.format == "csv":
        lines = ["identity,max,mean,n,tolerance,pass"]
        for name, st in report["identities"].items():
            lines.append(
                f"{name},{fmt12(st['max'])},{fmt12(st['mean'])},{st['n']},"
                f"{fmt12(st['tolerance'])},{st['pass']}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_json_text(report), args.out)
    return EXIT_OK if report["passed"] else EXIT_VERIFY


def _cmd_npartite(args) -> int:
    try:
        state = parse_state_spec(args.state)
    except QMonogamyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        psi = as_pure(state) if not hasattr(state, "amplitudes") else state
        labels = psi.dims.labels
        anchor = args.anchor or labels[0]
        doc = {
            "labels": list(labels),
            "anchor": anchor,
            "delta_right_npartite": mo.deficit_right_npartite(psi, anchor, seed=args.seed),
        }
        if len(labels) == 4:
            right = mo.check_right_deficit_recursion(psi, seed=args.seed)
            left, diag = mo.check_left_deficit_recursion(psi, seed=args.seed)
            doc["right_recursion_residual"] = right
            doc["left_recursion_residual"] = left
            doc["diagnostics"] = diag
    except (NotPure, WrongArity) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STATE
    except QMonogamyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _emit_doc(doc, args)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="optimizer/sampling seed")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--tol", type=float, default=None,
                        help="override identity tolerances (verify)")
    common.add_argument("--threads", type=int, default=1, help="worker processes")

    parser = argparse.ArgumentParser(
        prog="qmonogamy",
        description="quantum correlation measures and monogamy deficits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", parents=[common], help="full correlation report")
    p.add_argument("state", help="state spec, e.g. psi-tilde:p=0.5,eps=1")
    p.set_defaults(fn=_cmd_measure, default_format="json")

    p = sub.add_parser("sweep", parents=[common], help="deficit transition sweep")
    p.add_argument("--eps", default="0.5,0.75,1", help="comma-separated eps values")
    p.add_argument("--p-start", type=float, default=0.0)
    p.add_argument("--p-end", type=float, default=1.0)
    p.add_argument("--p-step", type=float, default=0.01)
    p.add_argument("--no-plot", action="store_true", help="skip the figure")
    p.set_defaults(fn=_cmd_sweep, default_format="csv")

    p = sub.add_parser("classify", parents=[common], help="GHZ/W class verdict")
    p.add_argument("state")
    p.set_defaults(fn=_cmd_classify, default_format="text")

    p = sub.add_parser("verify", parents=[common], help="identity suites")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--n", type=int, default=20, help="samples per suite")
    p.set_defaults(fn=_cmd_verify, default_format="json")

    p = sub.add_parser("npartite", parents=[common], help="N-party deficits")
    p.add_argument("state")
    p.add_argument("--anchor", default=None)
    p.set_defaults(fn=_cmd_npartite, default_format="json")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = args.default_format
    if args.command == "sweep" and args.out is None:
        args.out = "sweep.csv"
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
