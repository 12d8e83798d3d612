"""Command-line client for the laboratory service.

Every subcommand builds a JSON request, sends it to the service (an
in-process app by default, a running server with --server), and prints the
canonical JSON response. Errors come back as single-line JSON on stderr
with exit code 2 for rejected inputs, 3 for failed constructions, and 4
when a remote server cannot be reached.
"""
import argparse
import json
import math
import sys

import httpx

from .serialize import csv_text, dumps

DEFAULT_KS = "0.3,0.5,0.7"
DEFAULT_THETAS = f"0,{math.pi / 3!r},{math.pi / 2!r},{2 * math.pi / 3!r},{math.pi!r}"
SWEEP_COLUMNS = ("k", "vertex", "theta_target", "theta_closed",
                 "theta_numeric", "verdict", "abs_deviation")
NAMED_SEGMENT_TYPES = ("alpha-mu", "alpha-mu1", "mu1-reference")
PLAIN_SIGMA_FAMILIES = ("constant-one", "oscillatory", "midpoint-pinned")


class UsageError(Exception):
    pass


def _parse_pair(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected two comma-separated numbers, got {text!r}")
    try:
        return [float(parts[0]), float(parts[1])]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_floats(text: str):
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _parse_sigma(text: str) -> dict:
    """A sigma spec: a bare family name or a JSON object.

    Prescribed profiles need numbers, so they are always JSON, for example
    '{"family": "prescribed", "d0": 0.3, "dk": -0.5}'.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad sigma JSON: {exc}") from None
    if text in PLAIN_SIGMA_FAMILIES:
        return {"family": text}
    raise UsageError(
        f"unknown sigma {text!r}; use one of {', '.join(PLAIN_SIGMA_FAMILIES)} "
        "or a JSON object")


def _parse_segment(text: str) -> dict:
    """A segment spec: a named segment, family shorthand, or JSON object.

    Shorthands: 'alpha-mu', 'alpha-mu1', 'mu1-reference',
    'sigma:<family>', 'pulled-back:<family>', 'standard:<p>:<q>' with
    points as x,y pairs. Anything richer is a JSON object, for example
    '{"type": "sigma", "sigma": {"family": "prescribed", "d0": 0, "dk": 2}}'.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad segment JSON: {exc}") from None
    if text in NAMED_SEGMENT_TYPES:
        return {"type": text}
    if ":" in text:
        head, _, rest = text.partition(":")
        if head in ("sigma", "pulled-back"):
            return {"type": head, "sigma": _parse_sigma(rest)}
        if head == "standard":
            pq = rest.split(":")
            if len(pq) != 2:
                raise UsageError(
                    f"standard shorthand is standard:<px,py>:<qx,qy>, got {text!r}")
            return {"type": "standard", "p": _parse_pair(pq[0]),
                    "q": _parse_pair(pq[1])}
    raise UsageError(f"cannot parse segment {text!r}")


def _config_payload(args) -> dict:
    k, l = args.k, args.l
    if k is None and l is None and args.config:
        with open(args.config, encoding="utf-8") as fh:
            stored = json.load(fh)
        k, l = stored.get("k"), stored.get("l")
    if (k is None) == (l is None):
        raise UsageError("provide exactly one of --k or --l (or a --config file)")
    return {"k": k, "l": l}


def _schedule_payload(args) -> dict:
    out = {}
    if getattr(args, "schedule", None):
        vals = _parse_floats(args.schedule)
        if len(vals) != 3:
            raise UsageError("--schedule needs r0,ratio,steps")
        out["schedule"] = {"r0": vals[0], "ratio": vals[1], "steps": int(vals[2])}
    tol = {}
    if getattr(args, "tol", None):
        vals = _parse_floats(args.tol)
        if len(vals) != 2:
            raise UsageError("--tol needs convergence,oscillation")
        tol["convergence"], tol["oscillation"] = vals[0], vals[1]
    if getattr(args, "window", None) is not None:
        tol["window"] = args.window
    if tol:
        out["tolerances"] = tol
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockgeo",
        description="laboratory for geodesics, angles, and triangles "
                    "in the two-block coefficient model")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("json",)):
        p.add_argument("--k", type=float, default=None,
                       help="modulus in (0, 1)")
        p.add_argument("--l", type=float, default=None,
                       help="side length artanh(k), alternative to --k")
        p.add_argument("--config", default=None,
                       help="JSON file with stored k or l")
        p.add_argument("--server", default=None,
                       help="base URL of a running service "
                            "(default: in-process)")
        p.add_argument("--output", default=None,
                       help="write the result to a file instead of stdout")
        p.add_argument("--format", choices=formats, default="json")

    p = sub.add_parser("distance", help="distance between two points")
    common(p)
    p.add_argument("--p", required=True, help="first point as x,y")
    p.add_argument("--q", required=True, help="second point as x,y")

    p = sub.add_parser("angle", help="chord-ratio angle between two segments")
    common(p, formats=("json", "csv"))
    p.add_argument("--seg-a", required=True, help="first segment spec")
    p.add_argument("--seg-b", required=True, help="second segment spec")
    p.add_argument("--vertex", default=None,
                   help="shared vertex as x,y (default: detected)")
    p.add_argument("--schedule", default=None, help="r0,ratio,steps")
    p.add_argument("--tol", default=None, help="convergence,oscillation")
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--degrees", action="store_true",
                   help="also report the angle in degrees")
    p.add_argument("--diagnostics", action="store_true",
                   help="include the (r, ratio) table in JSON output")

    p = sub.add_parser("triangle",
                       help="synthesize a triangle with prescribed angles")
    common(p)
    p.add_argument("--thetas", required=True,
                   help="target angles at base,mu,mu1 in radians")
    p.add_argument("--family", type=int, default=1,
                   help="number of distinct members to synthesize")
    p.add_argument("--seed", default="0", help="family seed")
    p.add_argument("--schedule", default=None, help="r0,ratio,steps")
    p.add_argument("--tol", default=None, help="convergence,oscillation")
    p.add_argument("--window", type=int, default=None)

    p = sub.add_parser("probe", help="midpoint curvature comparison")
    common(p)

    p = sub.add_parser("sweep",
                       help="closed form vs numeric angle over a grid")
    common(p, formats=("json", "csv"))
    p.add_argument("--ks", default=DEFAULT_KS, help="comma list of moduli")
    p.add_argument("--vertex", choices=("base", "mu", "mu1"), default="mu")
    p.add_argument("--thetas", default=DEFAULT_THETAS,
                   help="comma list of target angles in radians")
    p.add_argument("--schedule", default=None, help="r0,ratio,steps")
    p.add_argument("--tol", default=None, help="convergence,oscillation")
    p.add_argument("--window", type=int, default=None)

    p = sub.add_parser("sigma-validate",
                       help="corridor and geodesy verdicts for a profile")
    common(p)
    p.add_argument("--sigma", required=True, help="sigma spec")
    p.add_argument("--samples", type=int, default=10_000)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _build_request(args):
    if args.command == "distance":
        return "/distance", {"config": _config_payload(args),
                             "p": _parse_pair(args.p),
                             "q": _parse_pair(args.q)}
    if args.command == "angle":
        payload = {"config": _config_payload(args),
                   "seg_a": _parse_segment(args.seg_a),
                   "seg_b": _parse_segment(args.seg_b),
                   "degrees": args.degrees,
                   "include_diagnostics": args.diagnostics or args.format == "csv"}
        if args.vertex:
            payload["vertex"] = _parse_pair(args.vertex)
        payload.update(_schedule_payload(args))
        return "/angle", payload
    if args.command == "triangle":
        thetas = _parse_floats(args.thetas)
        if len(thetas) != 3:
            raise UsageError("--thetas needs three angles: base,mu,mu1")
        payload = {"config": _config_payload(args), "thetas": thetas,
                   "family_size": args.family, "family_seed": args.seed}
        payload.update(_schedule_payload(args))
        return "/triangle", payload
    if args.command == "probe":
        return "/probe", {"config": _config_payload(args)}
    if args.command == "sweep":
        payload = {"ks": _parse_floats(args.ks), "vertex": args.vertex,
                   "thetas": _parse_floats(args.thetas)}
        payload.update(_schedule_payload(args))
        return "/sweep", payload
    if args.command == "sigma-validate":
        return "/sigma/validate", {"config": _config_payload(args),
                                   "sigma": _parse_sigma(args.sigma),
                                   "samples": args.samples}
    raise UsageError(f"unknown command {args.command!r}")


def _format_output(args, body) -> str:
    if args.format == "csv":
        if args.command == "angle":
            return csv_text(("r", "ratio"), body.get("diagnostics", ()))
        return csv_text(SWEEP_COLUMNS,
                        [[row.get(col) for col in SWEEP_COLUMNS]
                         for row in body.get("rows", ())])
    return dumps(body)


def _emit_error(category: str, message, extra: dict | None = None) -> None:
    err = {"category": category, "message": message}
    if extra:
        err.update(extra)
    print(json.dumps({"error": err}, sort_keys=True), file=sys.stderr)


def _write(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _in_process_client():
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import create_app
    return TestClient(create_app())


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        return _cmd_serve(args)
    try:
        path, payload = _build_request(args)
    except UsageError as exc:
        _emit_error("input", str(exc))
        return 2
    try:
        if args.server:
            with httpx.Client(base_url=args.server, timeout=120.0) as client:
                resp = client.post(path, json=payload)
                status, body = resp.status_code, resp.json()
        else:
            client = _in_process_client()
            resp = client.post(path, json=payload)
            status, body = resp.status_code, resp.json()
    except httpx.TransportError as exc:
        _emit_error("connection", f"{type(exc).__name__}: {exc}")
        return 4
    if status != 200:
        detail = body.get("detail", body)
        if isinstance(detail, dict) and detail.get("category") == "construction":
            _emit_error("construction", detail.get("message"),
                        {"suggestion": detail.get("suggestion", "")})
            return 3
        if isinstance(detail, dict):
            _emit_error(detail.get("category", "input"), detail.get("message"))
        else:
            _emit_error("input", detail)
        return 2
    _write(args, _format_output(args, body))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
