"""Command-line driver: ``perfectum <command> [flags]``.

Exit codes: 0 success, 1 usage error, 2 when a report contains a
falsification (an ``Unexpected`` sieve verdict or a failed verification).
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

from perfectum.annihilator import lloyd_condition, lloyd_poly, lloyd_zeros
from perfectum.enumerators import (
    PreconditionError,
    code_annihilator,
    theorem2_residual,
    verification_report,
)
from perfectum.exactmath import DensePoly, format_poly, rational_str
from perfectum.krawtchouk import KrawtchoukContext, kraw_eval, kraw_poly
from perfectum.sieve import CandidateRecord, SieveError, VerdictKind, sieve_range, sphere_size
from perfectum.stabilizer import (
    ConstructionError,
    StabilizerCode,
    build_quantum_hamming,
    code_from_json,
    code_to_json,
    commutation_check,
    distance3_check,
    generators_independent,
    perfection_check,
    purity_check,
)

COMMANDS = ("sieve", "lloyd", "krawtchouk", "construct", "verify", "theorem2")
FORMATS = ("json", "csv", "table")
SIEVE_COLUMNS = ["q", "n", "e", "d", "sphere", "l", "lloyd_zeros", "verdict"]
VERBOSE_COLUMNS = SIEVE_COLUMNS + ["lemma8_ok", "lloyd_ok"]

DEFAULTS: dict[str, Any] = {
    "q": [2],
    "n_max": 100,
    "e_max": 5,
    "n": None,
    "e": None,
    "i": None,
    "m": 2,
    "d": 3,
    "format": None,
    "output": None,
    "verbose": False,
    "verify": False,
    "parallelism": None,
    "code": None,
    "alpha": None,
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    q_list: list[int] = field(default_factory=lambda: [2])
    n_max: int = 100
    e_max: int = 5
    n: int | None = None
    e: int | None = None
    i: int | None = None
    m: int = 2
    d: int = 3
    format: str = "json"
    output_path: str | None = None
    verbose: bool = False
    verify: bool = False
    parallelism: int = 1
    code: str | None = None
    alpha: list[int] | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="perfectum", description="Perfect quantum code parameter sieve and verifier")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--config", help="key = value file mirroring flag names")

    p = sub.add_parser("sieve", help="search (q, n, e) for perfect-code parameters")
    common(p)
    p.add_argument("--q", type=_int_list, action="extend")
    p.add_argument("--n-max", type=int)
    p.add_argument("--e-max", type=int)
    p.add_argument("--verbose", action="store_true", default=None)
    p.add_argument("--parallelism", type=int)

    p = sub.add_parser("lloyd", help="Lloyd polynomial and its integer zeros")
    common(p)
    p.add_argument("--q", type=_int_list)
    p.add_argument("--n", type=int)
    p.add_argument("--e", type=int)

    p = sub.add_parser("krawtchouk", help="Krawtchouk polynomial P_i(x; n)")
    common(p)
    p.add_argument("--q", type=_int_list)
    p.add_argument("--n", type=int)
    p.add_argument("--i", type=int)

    p = sub.add_parser("construct", help="build a quantum Hamming code")
    common(p)
    p.add_argument("--q", type=_int_list)
    p.add_argument("--m", type=int)
    p.add_argument("--verify", action="store_true", default=None)

    p = sub.add_parser("verify", help="verify a code exported by construct")
    common(p)
    p.add_argument("--code", required=True)
    p.add_argument("--d", type=int)

    p = sub.add_parser("theorem2", help="explicit-matrix check of the projector identity")
    common(p)
    p.add_argument("--q", type=_int_list)
    p.add_argument("--m", type=int)
    p.add_argument("--code")
    p.add_argument("--alpha", type=_int_list, help="polynomial coefficients, constant term first")
    return parser


def _read_config_file(path: str) -> dict[str, str]:
    cp = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_string("[run]\n" + fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    return {k.replace("-", "_"): v for k, v in cp["run"].items()}


def _coerce(key: str, raw: str) -> Any:
    if key in ("q", "alpha"):
        return _int_list(raw)
    if key in ("verbose", "verify"):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if key in ("format", "output", "code"):
        return raw.strip()
    if key in DEFAULTS:
        return int(raw)
    raise UsageError(f"unknown config key {key!r}")


def resolve_config(args: argparse.Namespace, stdout_is_tty: bool) -> RunConfig:
    """Flags override the config file, which overrides defaults."""
    merged = dict(DEFAULTS)
    if getattr(args, "config", None):
        for key, raw in _read_config_file(args.config).items():
            try:
                merged[key] = _coerce(key, raw)
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError(f"bad config value for {key}: {raw!r}") from exc
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if merged["format"] is None:
        merged["format"] = "table" if stdout_is_tty else "json"
    if merged["parallelism"] is None:
        env = os.environ.get("PERFECTUM_PARALLELISM")
        try:
            merged["parallelism"] = int(env) if env else 1
        except ValueError as exc:
            raise UsageError(f"PERFECTUM_PARALLELISM={env!r} is not an integer") from exc
    if merged["parallelism"] < 0:
        raise UsageError("parallelism must be >= 0")
    return RunConfig(
        command=args.command,
        q_list=list(merged["q"]),
        n_max=merged["n_max"],
        e_max=merged["e_max"],
        n=merged["n"],
        e=merged["e"],
        i=merged["i"],
        m=merged["m"],
        d=merged["d"],
        format=merged["format"],
        output_path=merged["output"],
        verbose=bool(merged["verbose"]),
        verify=bool(merged["verify"]),
        parallelism=merged["parallelism"],
        code=merged["code"],
        alpha=merged["alpha"],
    )


# ---------------------------------------------------------------------------
# rendering


def record_row(rec: CandidateRecord, verbose: bool = False) -> dict[str, Any]:
    row: dict[str, Any] = {
        "q": rec.q,
        "n": rec.n,
        "e": rec.e,
        "d": rec.d,
        "sphere": str(rec.sphere),
        "l": rec.l,
        "lloyd_zeros": list(rec.lloyd_zeros),
        "verdict": str(rec.verdict) if rec.verdict else None,
    }
    if verbose:
        row["lemma8_ok"] = rec.l is not None
        row["lloyd_ok"] = rec.lloyd_ok
    return row


def render_json(doc: Any) -> str:
    return json.dumps(doc, indent=2) + "\n"


def render_csv(rows: list[dict[str, Any]], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row[c]) for c in columns])
    return buf.getvalue()


def _csv_cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    return str(v)


def render_table(rows: list[dict[str, Any]], columns: list[str]) -> str:
    cells = [[_csv_cell(r[c]) for c in columns] for r in rows]
    widths = [max([len(c)] + [len(row[k]) for row in cells]) for k, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)))
    if not rows:
        lines.append("(no records)")
    return "\n".join(lines) + "\n"


def _render_mapping(doc: dict[str, Any]) -> str:
    return "\n".join(f"{k}: {json.dumps(v)}" for k, v in doc.items()) + "\n"


def _emit(text: str, cfg: RunConfig, out) -> None:
    if cfg.output_path:
        try:
            with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {cfg.output_path}: {exc}") from exc
    else:
        out.write(text)


def _header(cfg: RunConfig) -> str:
    return "# perfectum config: " + json.dumps(asdict(cfg), sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_sieve(cfg: RunConfig, out, err=None) -> int:
    err = err or sys.stderr
    try:
        records = sieve_range(
            cfg.q_list, cfg.n_max, cfg.e_max, workers=cfg.parallelism, verbose=cfg.verbose
        )
    except (SieveError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    rows = [record_row(r, cfg.verbose) for r in records]
    columns = VERBOSE_COLUMNS if cfg.verbose else SIEVE_COLUMNS
    if cfg.format == "json":
        text = render_json(rows)
    elif cfg.format == "csv":
        text = render_csv(rows, columns)
    else:
        text = render_table(rows, columns)
    unexpected = [r for r in records if r.verdict and r.verdict.kind is VerdictKind.UNEXPECTED]
    for r in unexpected:
        err.write(f"UNEXPECTED survivor q={r.q} n={r.n} e={r.e}: not a quantum Hamming parameter\n")
    _emit(text, cfg, out)
    return 2 if unexpected else 0


def _need(value: int | None, name: str) -> int:
    if value is None:
        raise UsageError(f"--{name} is required")
    return value


def _single_q(cfg: RunConfig) -> int:
    if len(cfg.q_list) != 1:
        raise UsageError("exactly one --q is required")
    return cfg.q_list[0]


def cmd_lloyd(cfg: RunConfig, out) -> int:
    q, n, e = _single_q(cfg), _need(cfg.n, "n"), _need(cfg.e, "e")
    try:
        poly = lloyd_poly(e, n, q).poly
        zeros = lloyd_zeros(e, n, q)
        ok = lloyd_condition(e, n, q)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = {
        "q": q,
        "n": n,
        "e": e,
        "poly": [rational_str(c) for c in poly.coeffs],
        "zeros": zeros,
        "condition": ok,
    }
    if cfg.format == "json":
        text = render_json(doc)
    elif cfg.format == "csv":
        text = render_csv([doc], list(doc))
    else:
        text = f"L = {format_poly(poly)}; zeros: {zeros}; condition: {str(ok).lower()}\n"
    _emit(text, cfg, out)
    return 0


def cmd_krawtchouk(cfg: RunConfig, out) -> int:
    q, n, i = _single_q(cfg), _need(cfg.n, "n"), _need(cfg.i, "i")
    try:
        ctx = KrawtchoukContext(n, q)
        poly = kraw_poly(ctx, i)
        values = [kraw_eval(ctx, i, w) for w in range(n + 1)]
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from exc
    rows = [{"w": w, "value": str(v)} for w, v in enumerate(values)]
    if cfg.format == "json":
        text = render_json(
            {"q": q, "n": n, "i": i, "poly": [rational_str(c) for c in poly.coeffs], "values": [str(v) for v in values]}
        )
    elif cfg.format == "csv":
        text = render_csv(rows, ["w", "value"])
    else:
        text = f"P_{i}(x; {n}) = {format_poly(poly)}\n" + render_table(rows, ["w", "value"])
    _emit(text, cfg, out)
    return 0


def run_checks(code: StabilizerCode, d: int) -> tuple[dict[str, Any], bool]:
    """Every structural check plus the enumerator report for one code."""
    checks = {
        "commutation": commutation_check(code),
        "independent": generators_independent(code),
        "distance3": distance3_check(code) if d == 3 else None,
        "purity": purity_check(code, d),
        "perfection": perfection_check(code, radius=(d - 1) // 2),
        "hamming_equality": code.K * sphere_size(code.n, (d - 1) // 2, code.q) == code.q**code.n,
    }
    try:
        report = verification_report(code, d)
    except PreconditionError as exc:
        report = {"precondition_failed": str(exc)}
    residual = None
    if code.f == 1 and code.q in (2, 3) and code.n <= 5 and "A" in report:
        residual = theorem2_residual(code, code_annihilator(code))
        report["theorem2_residual"] = residual
        checks["theorem2"] = residual < 1e-9
    report["checks"] = checks
    ok = all(v for v in checks.values() if v is not None) and report.get("consistent", False)
    report["all_passed"] = ok
    return report, ok


def _emit_report(report: dict[str, Any], cfg: RunConfig, out) -> None:
    if cfg.format == "csv":
        raise UsageError("csv output is only available for sieve, lloyd and krawtchouk")
    text = render_json(report) if cfg.format == "json" else _render_mapping(report)
    _emit(text, cfg, out)


def cmd_construct(cfg: RunConfig, out) -> int:
    q = _single_q(cfg)
    if cfg.m < 2:
        raise UsageError(f"m must be >= 2, got {cfg.m}")
    if q not in (2, 3, 4, 5):
        raise UsageError(f"construction supports q in 2..5, got {q}")
    try:
        code = build_quantum_hamming(cfg.m, q)
    except (ValueError, ConstructionError) as exc:
        raise UsageError(str(exc)) from exc
    if not cfg.verify:
        _emit_report(code_to_json(code), cfg, out)
        return 0
    report, ok = run_checks(code, 3)
    report["code"] = code_to_json(code)
    _emit_report(report, cfg, out)
    return 0 if ok else 2


def _load_code(path: str) -> StabilizerCode:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read code file {path}: {exc}") from exc
    if "code" in doc and "generators" not in doc:
        doc = doc["code"]
    try:
        return code_from_json(doc)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed code file {path}: {exc}") from exc


def cmd_verify(cfg: RunConfig, out) -> int:
    code = _load_code(_need(cfg.code, "code"))
    report, ok = run_checks(code, cfg.d)
    _emit_report(report, cfg, out)
    return 0 if ok else 2


def cmd_theorem2(cfg: RunConfig, out) -> int:
    if cfg.code:
        code = _load_code(cfg.code)
    else:
        try:
            code = build_quantum_hamming(cfg.m, _single_q(cfg))
        except (ValueError, ConstructionError) as exc:
            raise UsageError(str(exc)) from exc
    alpha = DensePoly(cfg.alpha) if cfg.alpha else code_annihilator(code).poly
    try:
        residual = theorem2_residual(code, alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit_report({"alpha": format_poly(alpha), "theorem2_residual": residual}, cfg, out)
    return 0


HANDLERS = {
    "sieve": cmd_sieve,
    "lloyd": cmd_lloyd,
    "krawtchouk": cmd_krawtchouk,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "theorem2": cmd_theorem2,
}


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = resolve_config(args, stdout_is_tty=out.isatty() if hasattr(out, "isatty") else False)
        err.write(_header(cfg))
        if cfg.command == "sieve":
            return cmd_sieve(cfg, out, err)
        return HANDLERS[cfg.command](cfg, out)
    except UsageError as exc:
        err.write(f"perfectum: error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
