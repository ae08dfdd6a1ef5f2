"""Command-line front end.

Every command takes either ``--config FILE`` (a JSON run configuration) or
inline flags; both go through :func:`parse_config`.  Exact rationals are
written as ``"p/q"`` strings and field elements as coordinate vectors over
the powers of ``theta = 2cos(pi/k)``.

Exit status: 0 success (or every condition holds), 1 some condition
fails, 2 invalid input, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .characterize import DEFAULT_HORIZON, characterization_report, check_kappa_conditions
from .chebpoly import ChebPoly
from .errors import CoefficientRangeError, ConfigError, InternalConsistencyError, InvalidCoefficientError
from .expansion import pq_tables, sieved_poly_expansion
from .family import Family, family_from_json, polynomial
from .field import FieldElement, minimal_polynomial
from .operators import apply_Ak, apply_Dk, fourier_table

COMMANDS = ("expand", "operator", "fourier", "characterize", "minpoly", "tables")
FORMATS = ("text", "csv", "json", "latex")

_REQUIRED = {
    "minpoly": ("k",),
    "expand": ("family", "k", "m"),
    "operator": ("family", "k", "n"),
    "fourier": ("family", "k", "horizon"),
    "characterize": ("family", "k"),
    "tables": ("family", "horizon"),
}


@dataclass
class RunConfig:
    command: str
    family: Family | None = None
    family_json: dict | None = None
    k: int | None = None
    m: int | None = None
    n: int | None = None
    horizon: int | None = None
    output: str = "text"
    mode: str | None = None
    op: str = "D"
    seed: int | None = None
    extra: dict = field(default_factory=dict)


def _positive_int(data, key, minimum):
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigError(key, f"expected an integer >= {minimum}, got {value!r}")
    return value


def config_from_dict(data: dict) -> RunConfig:
    """Validate a decoded configuration object."""
    if not isinstance(data, dict):
        raise ConfigError("", "configuration must be a JSON object")
    command = data.get("command")
    if command not in COMMANDS:
        raise ConfigError("command", f"expected one of {', '.join(COMMANDS)}, got {command!r}")
    data = dict(data)
    if "N" in data and "horizon" not in data:
        data["horizon"] = data.pop("N")
    if "format" in data and "output" not in data:
        data["output"] = data.pop("format")
    if command == "characterize" and data.get("horizon") is None:
        data["horizon"] = DEFAULT_HORIZON
    for key in _REQUIRED[command]:
        if data.get(key) is None:
            raise ConfigError(key, f"required by the {command!r} command")

    cfg = RunConfig(command)
    seed = data.get("seed")
    if seed is not None:
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise ConfigError("seed", "expected an integer")
        cfg.seed = seed
    if data.get("family") is not None:
        fam = data["family"]
        if isinstance(fam, dict) and fam.get("kind") == "random" and seed is not None:
            fam = {**fam, "seed": seed}
        cfg.family_json = fam
        cfg.family = family_from_json(fam)
    if data.get("k") is not None:
        cfg.k = _positive_int(data, "k", 1)
    if data.get("m") is not None:
        cfg.m = _positive_int(data, "m", 0)
    if data.get("n") is not None:
        cfg.n = _positive_int(data, "n", 0)
    if data.get("horizon") is not None:
        cfg.horizon = _positive_int(data, "horizon", 5 if command == "characterize" else 0)
    output = data.get("output", "text")
    if output not in FORMATS:
        raise ConfigError("output", f"expected one of {', '.join(FORMATS)}, got {output!r}")
    cfg.output = output
    mode = data.get("mode")
    if mode is not None and mode not in ("full", "weakened"):
        raise ConfigError("mode", f"expected 'full' or 'weakened', got {mode!r}")
    cfg.mode = mode
    op = data.get("op", "D")
    if op not in ("D", "A"):
        raise ConfigError("op", f"expected 'D' or 'A', got {op!r}")
    cfg.op = op
    return cfg


def parse_config(text) -> RunConfig:
    """Parse and validate a UTF-8 JSON run configuration."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ConfigError("", "configuration is not valid UTF-8") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"invalid JSON: {exc}") from exc
    return config_from_dict(data)


# ---------------------------------------------------------------------------
# rendering helpers


def _scalar_json(c):
    if isinstance(c, FieldElement):
        return c.to_json()
    return str(c)


def _scalar_latex(c):
    if isinstance(c, FieldElement):
        terms = []
        for i, q in enumerate(c.coords):
            if not q:
                continue
            mono = "" if i == 0 else ("\\theta" if i == 1 else f"\\theta^{{{i}}}")
            terms.append(f"{_frac_latex(q)}{mono}" if mono else _frac_latex(q))
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"
    return _frac_latex(c)


def _frac_latex(q: Fraction):
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def poly_to_json(P: ChebPoly) -> dict:
    return {str(n): _scalar_json(c) for n, c in P.items()}


def poly_from_json(data: dict) -> ChebPoly:
    coeffs = {}
    for n, v in data.items():
        coeffs[int(n)] = FieldElement.from_json(v) if isinstance(v, dict) else Fraction(v)
    return ChebPoly(coeffs)


def _poly_latex(P: ChebPoly):
    if not P:
        return "0"
    parts = [f"\\left({_scalar_latex(c)}\\right)T_{{{n}}}(x)" for n, c in sorted(P.items(), reverse=True)]
    return " + ".join(parts)


def _emit_poly(P: ChebPoly, fmt: str, meta: dict) -> str:
    if fmt == "json":
        return json.dumps({**meta, "polynomial": poly_to_json(P), "text": P.render()}, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "coefficient"])
        for n, c in sorted(P.items(), reverse=True):
            w.writerow([n, " ".join(str(x) for x in c.coords) if isinstance(c, FieldElement) else str(c)])
        return buf.getvalue().rstrip("\n")
    if fmt == "latex":
        return f"$${_poly_latex(P)}$$"
    return P.render()


def _triangle_latex(name, rows):
    width = max(len(r) for r in rows)
    lines = [f"% {name}_n(j)", "\\begin{tabular}{r|" + "c" * width + "}",
             "$n$ & " + " & ".join(f"$j={j}$" for j in range(width)) + " \\\\ \\hline"]
    for n, row in enumerate(rows):
        cells = [f"${_scalar_latex(v)}$" for v in row] + [""] * (width - len(row))
        lines.append(f"{n} & " + " & ".join(cells) + " \\\\")
    lines.append("\\end{tabular}")
    return "\n".join(lines)


def _emit_tables(tables, fmt):
    named = (("r", tables.r), ("p", tables.p), ("q", tables.q))
    if fmt == "json":
        return json.dumps(tables.to_json(), indent=2)
    if fmt == "latex":
        return "\n\n".join(_triangle_latex(name, rows) for name, rows in named)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if fmt == "csv":
        w.writerow(["table", "n", "j", "value"])
    for name, rows in named:
        for n, row in enumerate(rows):
            for j, v in enumerate(row):
                w.writerow([name, n, j, str(v)])
    return buf.getvalue().rstrip("\n")


def _emit_fourier(table, fmt):
    if fmt == "json":
        return json.dumps(table.to_json(), indent=2)
    entries = []
    for n in range(table.N + 1):
        for j in range(n):
            entries.append(("kappa", n, j, table.kappa_at(n, j)))
        for j in range(n + 1):
            entries.append(("alpha", n, j, table.alpha_at(n, j)))
    for n in range(1, table.N + 1):
        entries.append(("sigma", n, n - 1, table.sigma(n)))
    if fmt == "latex":
        lines = ["\\begin{tabular}{llll}", "table & $n$ & $j$ & value \\\\ \\hline"]
        for name, n, j, v in entries:
            if v:
                lines.append(f"$\\{name}$ & {n} & {j} & ${_scalar_latex(v)}$ \\\\")
        lines.append("\\end{tabular}")
        return "\n".join(lines)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    d = len(FieldElement.from_rational(table.k, 0).coords)
    w.writerow(["table", "n", "j"] + [f"theta^{i}" for i in range(d)] + ["approx"])
    for name, n, j, v in entries:
        w.writerow([name, n, j] + [str(c) for c in v.coords] + [f"{float(v):.15g}"])
    return buf.getvalue().rstrip("\n")


def _emit_report(report, fmt):
    data = report.to_json()
    if fmt == "json":
        return json.dumps(data, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["condition", "verdict", "horizon", "n", "witness"])
        for c in data["conditions"]:
            w.writerow([c["condition"], c["verdict"], c["horizon"], c["n"] if c["n"] is not None else "",
                        c.get("witness", {}).get("value", "")])
        return buf.getvalue().rstrip("\n")
    if fmt == "latex":
        lines = ["\\begin{tabular}{lll}", "condition & verdict & witness \\\\ \\hline"]
        for c in data["conditions"]:
            verdict = f"holds up to {c['horizon']}" if c["verdict"] == "holds" else f"fails at $n={c['n']}$"
            wit = c.get("witness", {}).get("value", "")
            lines.append(f"{c['condition']} & {verdict} & \\texttt{{{wit}}} \\\\")
        lines.append("\\end{tabular}")
        return "\n".join(lines)
    lines = [f"family {data['family']}  k={data['k']}  horizon={data['horizon']}"]
    if "fitted_alpha" in data:
        lines.append(f"fitted ultraspherical alpha = {data['fitted_alpha']}")
    for c in data["conditions"]:
        if c["verdict"] == "holds":
            lines.append(f"  {c['condition']:<18} holds up to {c['horizon']}")
        else:
            lines.append(f"  {c['condition']:<18} fails at n={c['n']}  witness {c['witness']['value']}")
    for name in data["beyond_reach"]:
        lines.append(f"  note: {name} holds, but the first bad coefficient lies beyond its reach at this horizon")
    return "\n".join(lines)


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a validated configuration; returns ``(exit status, artifact text)``."""
    if cfg.command == "minpoly":
        mp = minimal_polynomial(cfg.k)
        if cfg.output == "json":
            return 0, json.dumps({"k": cfg.k, "coefficients": list(mp.coefficients), "text": str(mp)})
        if cfg.output == "latex":
            return 0, f"${mp}$".replace("*", "")
        if cfg.output == "csv":
            return 0, "power,coefficient\n" + "\n".join(f"{i},{c}" for i, c in enumerate(mp.coefficients))
        return 0, str(mp)
    if cfg.command == "expand":
        P = sieved_poly_expansion(cfg.family, cfg.k, cfg.m)
        return 0, _emit_poly(P, cfg.output, {"family": cfg.family_json, "k": cfg.k, "m": cfg.m})
    if cfg.command == "operator":
        P = polynomial(cfg.family, cfg.n)
        image = apply_Dk(P, cfg.k) if cfg.op == "D" else apply_Ak(P, cfg.k)
        meta = {"family": cfg.family_json, "k": cfg.k, "n": cfg.n, "op": cfg.op}
        return 0, _emit_poly(image, cfg.output, meta)
    if cfg.command == "fourier":
        return 0, _emit_fourier(fourier_table(cfg.family, cfg.k, cfg.horizon), cfg.output)
    if cfg.command == "tables":
        return 0, _emit_tables(pq_tables(cfg.family, cfg.horizon), cfg.output)
    # characterize
    if cfg.mode is not None:
        verdict = check_kappa_conditions(cfg.family, cfg.k, cfg.horizon, cfg.mode)
        status = 0 if verdict.holds else 1
        if cfg.output == "json":
            return status, json.dumps(verdict.to_json(), indent=2)
        text = f"{verdict.condition} holds up to {cfg.horizon}" if verdict.holds else \
            f"{verdict.condition} fails at n={verdict.n}  witness {verdict.witness['value']}"
        return status, text
    report = characterization_report(cfg.family, cfg.k, cfg.horizon)
    return (0 if report.all_hold else 1), _emit_report(report, cfg.output)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rwps", description="Exact computations with sieved random walk polynomials.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", metavar="FILE", help="JSON run configuration (other flags override it)")
    parser.add_argument("--family-json", metavar="JSON", help='e.g. \'{"kind": "ultraspherical", "alpha": "1/2"}\'')
    parser.add_argument("--k", type=int)
    parser.add_argument("--n", type=int, help="polynomial index for 'operator'")
    parser.add_argument("--m", type=int, help="degree for 'expand'")
    parser.add_argument("--horizon", "--N", dest="horizon", type=int, help="table size / check horizon")
    parser.add_argument("--format", dest="output", choices=FORMATS)
    parser.add_argument("--out", metavar="FILE", help="write the artifact here instead of stdout")
    parser.add_argument("--mode", choices=("full", "weakened"), help="run only the kappa conditions in this mode")
    parser.add_argument("--op", choices=("D", "A"), help="operator for 'operator' (default D)")
    parser.add_argument("--seed", type=int, help="seed for 'random' families")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        data: dict = {}
        if args.config:
            with open(args.config, "rb") as fh:
                raw = fh.read()
            try:
                data = json.loads(raw.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                raise ConfigError("", f"{args.config}: {exc}") from exc
            if not isinstance(data, dict):
                raise ConfigError("", "configuration must be a JSON object")
        data["command"] = args.command
        if args.family_json is not None:
            try:
                data["family"] = json.loads(args.family_json)
            except json.JSONDecodeError as exc:
                raise ConfigError("family", f"invalid JSON: {exc}") from exc
        for key in ("k", "n", "m", "horizon", "output", "mode", "op", "seed"):
            value = getattr(args, key)
            if value is not None:
                data[key] = value
        cfg = config_from_dict(data)
        status, text = run(cfg)
    except (ConfigError, InvalidCoefficientError, CoefficientRangeError, ValueError) as exc:
        print(f"rwps: error: {exc}", file=sys.stderr)
        return 2
    except InternalConsistencyError as exc:
        print(f"rwps: internal consistency failure: {exc}", file=sys.stderr)
        return 3
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
