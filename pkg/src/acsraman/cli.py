"""Thin command-line client for the compute service.

Each subcommand builds a request, sends it to the service (in-process by
default, or to a running instance via ``--server``), and renders the JSON
response as a CSV table or a JSON document.  Exit codes: 0 success,
2 invalid or missing parameters, 3 physical-domain error, 4 numerical
failure.  Errors are reported on stderr as a single JSON object
{code, message}.

CSV files open with ``# key=value`` metadata lines, then a header row,
then data rows (RFC-4180-style quoting, LF line endings).  Floats are
printed in Python's shortest round-trip representation.  Identical
invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import io
import json
import math
import sys

import httpx

from .errors import EXIT_INVALID_PARAMS, exit_code_for
from .service.app import create_app


class _ParamError(Exception):
    """Client-side parameter problem; maps to exit code 2."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acsraman",
        description="Coherent states, spectra, completeness checks and "
        "thermodynamics of the two-mode Raman coupling model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--output", default=None, metavar="PATH",
                        help="write the result to PATH instead of stdout")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--server", default=None, metavar="URL",
                        help="base URL of a running service "
                        "(default: compute in-process)")

    sp = sub.add_parser("acs", help="amplitudes of one coherent state")
    sp.add_argument("--two-j", type=int, required=True, dest="two_j")
    sp.add_argument("--tau-re", type=float, default=None, dest="tau_re")
    sp.add_argument("--tau-im", type=float, default=None, dest="tau_im")
    sp.add_argument("--theta", type=float, default=None)
    sp.add_argument("--phi", type=float, default=None)
    add_common(sp)

    sp = sub.add_parser("spectrum",
                        help="closed-form block spectrum vs the Jacobi oracle")
    sp.add_argument("--w1", type=float, required=True)
    sp.add_argument("--w2", type=float, required=True)
    sp.add_argument("--lambda", type=float, required=True, dest="lam")
    sp.add_argument("--two-j", type=int, required=True, dest="two_j")
    add_common(sp)

    sp = sub.add_parser("residual",
                        help="eigenstate residual and ladder-identity residuals")
    sp.add_argument("--w1", type=float, required=True)
    sp.add_argument("--w2", type=float, required=True)
    sp.add_argument("--lambda", type=float, required=True, dest="lam")
    sp.add_argument("--two-j", type=int, default=None, dest="two_j")
    sp.add_argument("--branch", choices=("plus", "minus"), required=True)
    sp.add_argument("--verify-file", default=None, dest="verify_file",
                    metavar="PATH",
                    help="re-check a state previously emitted by `acs "
                    "--format json` instead of rebuilding it")
    add_common(sp)

    sp = sub.add_parser("completeness",
                        help="resolution-of-identity deviation reports")
    sp.add_argument("--two-j", type=int, required=True, dest="two_j")
    sp.add_argument("--full", action="store_true",
                    help="check the all-blocks sum on the truncated Fock space")
    sp.add_argument("--n-max", type=int, default=None, dest="n_max",
                    help="total-quanta truncation for --full (default: two-j)")
    add_common(sp)

    sp = sub.add_parser("thermo",
                        help="partition functions and internal energy over a "
                        "beta sweep, with the brute-force oracle")
    sp.add_argument("--w1", type=float, required=True)
    sp.add_argument("--w2", type=float, required=True)
    sp.add_argument("--lambda", type=float, required=True, dest="lam")
    sp.add_argument("--beta-min", type=float, required=True, dest="beta_min")
    sp.add_argument("--beta-max", type=float, required=True, dest="beta_max")
    sp.add_argument("--steps", type=int, required=True)
    add_common(sp)

    sp = sub.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)

    return parser


def _require_finite(**values: float | None) -> None:
    for name, value in values.items():
        if value is not None and not math.isfinite(value):
            raise _ParamError(f"{name} must be finite, got {value}")


def _build_request(args: argparse.Namespace) -> tuple[str, dict]:
    if args.command == "acs":
        _require_finite(tau_re=args.tau_re, tau_im=args.tau_im,
                        theta=args.theta, phi=args.phi)
        has_tau = args.tau_re is not None or args.tau_im is not None
        has_angles = args.theta is not None or args.phi is not None
        if has_tau and has_angles:
            raise _ParamError("give either --tau-re/--tau-im or --theta/--phi, not both")
        if has_tau and (args.tau_re is None or args.tau_im is None):
            raise _ParamError("--tau-re and --tau-im must be given together")
        if has_angles and (args.theta is None or args.phi is None):
            raise _ParamError("--theta and --phi must be given together")
        if not has_tau and not has_angles:
            raise _ParamError("give --tau-re/--tau-im or --theta/--phi")
        payload: dict = {"two_j": args.two_j}
        if has_tau:
            payload.update(tau_re=args.tau_re, tau_im=args.tau_im)
        else:
            payload.update(theta=args.theta, phi=args.phi)
        return "/acs", payload

    if args.command == "spectrum":
        _require_finite(w1=args.w1, w2=args.w2, lam=args.lam)
        return "/spectrum", {
            "w1": args.w1, "w2": args.w2, "lambda": args.lam, "two_j": args.two_j,
        }

    if args.command == "residual":
        _require_finite(w1=args.w1, w2=args.w2, lam=args.lam)
        if (args.two_j is None) == (args.verify_file is None):
            raise _ParamError("give exactly one of --two-j or --verify-file")
        payload = {
            "w1": args.w1, "w2": args.w2, "lambda": args.lam,
            "branch": args.branch,
        }
        if args.verify_file is not None:
            payload["state"] = _load_state_file(args.verify_file)
        else:
            payload["two_j"] = args.two_j
        return "/residual", payload

    if args.command == "completeness":
        if args.n_max is not None and not args.full:
            raise _ParamError("--n-max only applies with --full")
        payload = {"two_j": args.two_j, "full": args.full}
        if args.n_max is not None:
            payload["n_max"] = args.n_max
        return "/completeness", payload

    if args.command == "thermo":
        _require_finite(w1=args.w1, w2=args.w2, lam=args.lam,
                        beta_min=args.beta_min, beta_max=args.beta_max)
        return "/thermo", {
            "w1": args.w1, "w2": args.w2, "lambda": args.lam,
            "beta_min": args.beta_min, "beta_max": args.beta_max,
            "steps": args.steps,
        }

    raise _ParamError(f"unknown command {args.command!r}")


def _load_state_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _ParamError(f"cannot read state file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _ParamError(f"state file {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("command") != "acs":
        raise _ParamError(f"state file {path} is not an `acs` JSON dump")
    try:
        return {"two_j": doc["two_j"], "amplitudes": doc["amplitudes"]}
    except KeyError as exc:
        raise _ParamError(f"state file {path} is missing key {exc}") from exc


def _call_service(path: str, payload: dict, server: str | None) -> tuple[int, dict]:
    async def go() -> tuple[int, dict]:
        if server is None:
            transport = httpx.ASGITransport(app=create_app())
            client = httpx.AsyncClient(transport=transport,
                                       base_url="http://acsraman.internal")
        else:
            client = httpx.AsyncClient(base_url=server, timeout=300.0)
        async with client:
            resp = await client.post(path, json=payload)
            try:
                body = resp.json()
            except json.JSONDecodeError:
                body = {"code": "InternalError", "message": resp.text}
            return resp.status_code, body

    return asyncio.run(go())


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def _csv_document(meta: list[tuple[str, object]], header: list[str],
                  rows: list[list[object]]) -> str:
    buf = io.StringIO()
    for key, value in meta:
        buf.write(f"# {key}={_fmt(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(cell) for cell in row])
    return buf.getvalue()


def _render(command: str, body: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(body, indent=2, allow_nan=False) + "\n"

    if command == "acs":
        meta = [("command", "acs"), ("two_j", body["two_j"]),
                ("tau_re", body["tau"]["re"]), ("tau_im", body["tau"]["im"])]
        rows = [[r["l"], r["n_a"], r["n_b"], r["re"], r["im"]]
                for r in body["amplitudes"]]
        return _csv_document(meta, ["l", "n_a", "n_b", "re", "im"], rows)

    if command == "spectrum":
        meta = [("command", "spectrum"),
                ("w1", body["w1"]), ("w2", body["w2"]), ("lambda", body["lam"]),
                ("two_j", body["two_j"]),
                ("tau_plus_re", body["tau_plus"]["re"]),
                ("tau_plus_im", body["tau_plus"]["im"]),
                ("tau_minus_re", body["tau_minus"]["re"]),
                ("tau_minus_im", body["tau_minus"]["im"]),
                ("e_plus", body["e_plus"]), ("e_minus", body["e_minus"]),
                ("a", body["a"]), ("b", body["b"])]
        rows = [[r["n"], r["closed_form_eigenvalue"], r["oracle_eigenvalue"],
                 r["abs_diff"]] for r in body["rows"]]
        return _csv_document(
            meta,
            ["n", "closed_form_eigenvalue", "oracle_eigenvalue", "abs_diff"],
            rows,
        )

    if command == "residual":
        meta = [("command", "residual"),
                ("w1", body["w1"]), ("w2", body["w2"]), ("lambda", body["lam"]),
                ("two_j", body["two_j"]), ("branch", body["branch"]),
                ("tau_re", body["tau"]["re"]), ("tau_im", body["tau"]["im"]),
                ("energy", body["energy"])]
        rows = [[body["residual"], body["r1"], body["r2"], body["r3"]]]
        return _csv_document(meta, ["residual", "r1", "r2", "r3"], rows)

    if command == "completeness":
        meta = [("command", "completeness")]
        rows = [[body["two_j"], body["full"], body["n_max"],
                 body["max_abs_deviation"], body["theta_count"],
                 body["phi_count"]]]
        return _csv_document(
            meta,
            ["two_j", "full", "n_max", "max_abs_deviation",
             "theta_count", "phi_count"],
            rows,
        )

    if command == "thermo":
        meta = [("command", "thermo"),
                ("w1", body["w1"]), ("w2", body["w2"]), ("lambda", body["lam"]),
                ("a", body["a"]), ("b", body["b"])]
        rows = [[r["beta"], r["z_plus"], r["z_minus"], r["z"], r["u"],
                 r["u_oracle"], r["rel_err"]] for r in body["rows"]]
        return _csv_document(
            meta,
            ["beta", "z_plus", "z_minus", "z", "u", "u_oracle", "rel_err"],
            rows,
        )

    raise _ParamError(f"no renderer for command {command!r}")


def _emit_error(code: str, message: str) -> None:
    sys.stderr.write(json.dumps({"code": code, "message": message}) + "\n")


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0

    try:
        path, payload = _build_request(args)
    except _ParamError as exc:
        _emit_error("InvalidParameters", str(exc))
        return EXIT_INVALID_PARAMS

    status, body = _call_service(path, payload, args.server)
    if status != 200:
        code = body.get("code", "InternalError")
        _emit_error(code, body.get("message", ""))
        if status == 422:
            return EXIT_INVALID_PARAMS
        return exit_code_for(code)

    try:
        text = _render(args.command, body, args.format)
    except _ParamError as exc:
        _emit_error("InvalidParameters", str(exc))
        return EXIT_INVALID_PARAMS
    _write_output(text, args.output)
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
