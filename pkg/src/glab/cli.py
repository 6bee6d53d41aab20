"""`glab` command-line front end.

Numeric results go to stdout (or --out) as CSV/JSON; logs go to stderr.
Exit codes: 0 success, 1 domain/range/capacity errors, 2 usage errors.
Given identical argv and caches, stdout is byte-identical regardless of
the thread count.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import circle, error_analysis
from .config import OUTPUT_FORMATS, RunConfig, load_config
from .errors import DomainError, GlabError
from .explicit import h_term
from .goldbach import g_partial_sum, g_table_fft
from .sieve import LambdaTable, build_lambda, build_psi, load_lambda, psi, save_lambda
from .zeros import builtin_zeros, fetch_zeros, load_zeros, validate_zeros

log = logging.getLogger("glab")

PLOT_KINDS = {
    # kind -> (columns required, y column to plot, logscale x?)
    "error-ratios": (("x", "ratio_upper"), "ratio_upper", True),
    "gsum": (("x", "sum_g"), "sum_g", True),
    "hterm": (("x", "H"), "H", False),
}


def _fmt_csv(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _emit(header, rows, cfg: RunConfig, out: str | None) -> None:
    if cfg.output_format == "csv":
        lines = [",".join(header)]
        lines += [",".join(_fmt_csv(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps([dict(zip(header, row)) for row in rows], indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_float_list(spec: str) -> list[float]:
    try:
        return [float(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError as exc:
        raise DomainError(f"bad numeric list {spec!r}") from exc


def _parse_xs(spec: str) -> list[float]:
    """Either explicit half-integers 'a,b,c' or 'log:LO:HI:COUNT'."""
    if spec.startswith("log:"):
        try:
            _, lo, hi, count = spec.split(":")
            return error_analysis.half_integer_logspace(float(lo), float(hi), int(count))
        except ValueError as exc:
            raise DomainError(f"bad sweep spec {spec!r}, want log:LO:HI:COUNT") from exc
    return _parse_float_list(spec)


def _get_lambda(limit: int, cache_path: str | None) -> LambdaTable:
    if cache_path and Path(cache_path).exists():
        table = load_lambda(cache_path)
        log.info("loaded sieve cache %s (limit %d)", cache_path, table.limit)
        if table.limit < limit:
            raise DomainError(
                f"sieve cache {cache_path} has limit {table.limit}, need {limit}"
            )
        if table.limit > limit:
            table = LambdaTable(limit, table.values[: limit + 1])
        return table
    table = build_lambda(limit)
    if cache_path:
        save_lambda(table, cache_path)
        log.info("wrote sieve cache %s", cache_path)
    return table


def _load_zero_table(source: str, cfg: RunConfig):
    if source == "builtin":
        return builtin_zeros()
    if "://" in source:
        return fetch_zeros(source, cfg.cache_dir)
    return load_zeros(source)


def _cmd_sieve(args, cfg: RunConfig) -> int:
    table = _get_lambda(cfg.sieve_limit, args.sieve_cache)
    pt = build_psi(table)
    _emit(("limit", "psi"), [(table.limit, psi(table.limit, pt))], cfg, args.out)
    return 0


def _cmd_gsum(args, cfg: RunConfig) -> int:
    table = _get_lambda(cfg.sieve_limit, args.sieve_cache)
    gt = g_table_fft(table)
    rows = [(x, g_partial_sum(x, gt)) for x in _parse_float_list(args.x)]
    _emit(("x", "sum_g"), rows, cfg, args.out)
    return 0


def _cmd_zeros(args, cfg: RunConfig) -> int:
    source = args.url or args.file or cfg.zeros_source
    if args.action == "fetch":
        if not args.url:
            raise DomainError("zeros fetch needs --url")
        table = fetch_zeros(args.url, cfg.cache_dir)
        _emit(("count", "first", "last"),
              [(len(table.gammas), float(table.gammas[0]), float(table.gammas[-1]))],
              cfg, args.out)
        return 0
    table = _load_zero_table(source, cfg)
    report = validate_zeros(table)
    _emit(
        ("count", "last_gamma", "estimate", "deviation", "passed"),
        [(report.count, report.last_gamma, report.estimate, report.deviation, report.passed)],
        cfg, args.out,
    )
    return 0 if report.passed else 1


def _cmd_hterm(args, cfg: RunConfig) -> int:
    zt = _load_zero_table(args.zeros or cfg.zeros_source, cfg)
    rows = []
    for x in _parse_float_list(args.x):
        r = h_term(x, zt, args.T, chunk_size=cfg.chunk_size, threads=cfg.effective_threads())
        rows.append((r.x, r.T, r.terms_used, r.value, r.tail_estimate))
    _emit(("x", "T", "terms", "H", "tail"), rows, cfg, args.out)
    return 0


def _cmd_circle(args, cfg: RunConfig) -> int:
    check = args.check
    if check == "identity":
        lam = _get_lambda(args.limit or math.floor(args.x), args.sieve_cache)
        lhs, rhs = circle.total_integral_check(args.x, lam)
        _emit(("x", "lhs", "rhs"), [(args.x, lhs, rhs)], cfg, args.out)
    elif check == "decomp":
        lam = _get_lambda(args.limit or math.floor(args.x), args.sieve_cache)
        d = circle.decomposition_terms(args.x, lam, build_psi(lam))
        _emit(
            ("x", "main", "second", "third", "second_closed"),
            [(args.x, d.main, d.second, d.third, d.second_closed)],
            cfg, args.out,
        )
    elif check == "local-l2":
        if args.y is None:
            raise DomainError("local-l2 needs --y")
        lam = _get_lambda(args.limit or math.floor(args.x), args.sieve_cache)
        value = circle.local_l2(args.x, args.y, lam)
        _emit(("x", "y", "value"), [(args.x, args.y, value)], cfg, args.out)
    elif check == "selberg":
        if args.h is None:
            raise DomainError("selberg needs --h")
        lam = _get_lambda(args.limit or math.ceil(args.x + args.h), args.sieve_cache)
        value = circle.selberg_integral(args.x, args.h, build_psi(lam))
        _emit(("x", "h", "value"), [(args.x, args.h, value)], cfg, args.out)
    else:  # gallagher
        if args.y is None:
            raise DomainError("gallagher needs --y")
        rng = np.random.default_rng(args.seed)
        c = rng.standard_normal(args.n) + 1j * rng.standard_normal(args.n)
        lhs, rhs, ratio = circle.gallagher_check(c, args.y)
        _emit(("n", "y", "lhs", "rhs", "ratio"),
              [(args.n, args.y, lhs, rhs, ratio)], cfg, args.out)
    return 0


def _cmd_error_table(args, cfg: RunConfig) -> int:
    zt = _load_zero_table(args.zeros or cfg.zeros_source, cfg)
    lam = _get_lambda(cfg.sieve_limit, args.sieve_cache)
    gt = g_table_fft(lam)
    height = args.T if args.T is not None else float(zt.gammas[-1])
    records = error_analysis.error_ratio_table(
        _parse_xs(args.xs), gt, zt, height,
        chunk_size=cfg.chunk_size, threads=cfg.effective_threads(),
    )
    header = ("x", "sum_g", "H", "h_tail", "E", "ratio_upper", "ratio_lower", "ratio_fujii")
    rows = [
        (r.x, r.sum_g, r.h_value, r.h_tail, r.e_value,
         r.ratio_upper, r.ratio_lower, r.ratio_fujii)
        for r in records
    ]
    _emit(header, rows, cfg, args.out)
    return 0


def _cmd_omega(args, cfg: RunConfig) -> int:
    limit = args.limit or math.floor(4 * args.x)
    lam = _get_lambda(limit, args.sieve_cache)
    gt = g_table_fft(lam)
    chk = error_analysis.omega_lower_check(args.x, args.q, gt, lam)
    _emit(
        ("x", "q", "lhs", "mid", "rhs", "degenerate"),
        [(chk.x, chk.q, chk.lhs, chk.mid, chk.rhs, chk.degenerate_modulus)],
        cfg, args.out,
    )
    return 0


def emit_plot_script(table: str | Path, kind: str) -> str:
    """Deterministic gnuplot script for a known CSV schema."""
    if kind not in PLOT_KINDS:
        raise DomainError(f"unknown plot kind {kind!r}")
    required, ycol, logx = PLOT_KINDS[kind]
    path = Path(table)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise GlabError(f"cannot read table {table}: {exc}") from exc
    if len(lines) < 2:
        raise GlabError(f"table {table} has no data rows")
    header = lines[0].split(",")
    for col in required:
        if col not in header:
            raise GlabError(f"table {table} lacks column {col!r} needed for {kind}")
    xi = header.index(required[0]) + 1
    yi = header.index(ycol) + 1
    out_name = f"{path.stem}-{kind}.svg"
    script = [
        "# gnuplot script generated by glab plot",
        'set datafile separator ","',
        "set key autotitle columnhead",
        "set terminal svg size 960,600",
        f"set output '{out_name}'",
        f"set xlabel '{required[0]}'",
        f"set ylabel '{ycol}'",
    ]
    if logx:
        script.append("set logscale x")
    script.append(f"plot '{path}' using {xi}:{yi} with linespoints")
    return "\n".join(script) + "\n"


def _cmd_plot(args, cfg: RunConfig) -> int:
    script = emit_plot_script(args.table, args.kind)
    if args.out:
        Path(args.out).write_text(script)
    else:
        sys.stdout.write(script)
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON config file")
    sub.add_argument("--cache-dir", dest="cache_dir", help="cache directory")
    sub.add_argument("--threads", type=int, help="worker threads (0 = auto)")
    sub.add_argument("--chunk-size", type=int, dest="chunk_size",
                     help="zero-sum reduction chunk (power of two)")
    sub.add_argument("--format", choices=OUTPUT_FORMATS, help="output format")
    sub.add_argument("--out", help="write numeric output to this file")
    sub.add_argument("--sieve-cache", dest="sieve_cache", help="sieve cache file")
    sub.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="glab", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("sieve", help="build (and cache) the von Mangoldt table")
    p.add_argument("--limit", type=int)
    p.set_defaults(func=_cmd_sieve)

    p = subs.add_parser("gsum", help="partial sums of G(n)")
    p.add_argument("--limit", type=int)
    p.add_argument("--x", required=True, help="comma-separated evaluation points")
    p.set_defaults(func=_cmd_gsum)

    p = subs.add_parser("zeros", help="fetch or validate zero tables")
    p.add_argument("action", choices=("fetch", "validate"))
    p.add_argument("--file", help="zero table file")
    p.add_argument("--url", help="zero table URL")
    p.set_defaults(func=_cmd_zeros)

    p = subs.add_parser("hterm", help="truncated oscillation sum H")
    p.add_argument("--x", required=True)
    p.add_argument("--T", type=float, required=True, help="truncation height")
    p.add_argument("--zeros", help="zero table path, URL, or 'builtin'")
    p.set_defaults(func=_cmd_hterm)

    p = subs.add_parser("circle", help="exponential-sum identities and window checks")
    p.add_argument("--check", required=True,
                   choices=("identity", "decomp", "local-l2", "selberg", "gallagher"))
    p.add_argument("--x", type=float)
    p.add_argument("--y", type=float)
    p.add_argument("--h", type=float)
    p.add_argument("--limit", type=int)
    p.add_argument("--n", type=int, default=16, help="coefficient count (gallagher)")
    p.add_argument("--seed", type=int, default=0, help="rng seed (gallagher)")
    p.set_defaults(func=_cmd_circle)

    p = subs.add_parser("error-table", help="error-term records over a sweep")
    p.add_argument("--limit", type=int)
    p.add_argument("--zeros", help="zero table path, URL, or 'builtin'")
    p.add_argument("--xs", required=True, help="'a,b,c' or log:LO:HI:COUNT")
    p.add_argument("--T", type=float, help="truncation height (default: table top)")
    p.set_defaults(func=_cmd_error_table)

    p = subs.add_parser("omega", help="primorial-multiples lower-bound triple")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=_cmd_omega)

    p = subs.add_parser("plot", help="emit a gnuplot script for a result CSV")
    p.add_argument("--table", required=True)
    p.add_argument("--kind", required=True, choices=sorted(PLOT_KINDS))
    p.set_defaults(func=_cmd_plot)

    for sub in subs.choices.values():
        _add_common(sub)
    return parser


def dispatch(argv) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    overrides = {
        "cache_dir": args.cache_dir,
        "threads": args.threads,
        "chunk_size": args.chunk_size,
        "output_format": args.format,
        "sieve_limit": getattr(args, "limit", None),
    }
    try:
        cfg = load_config(overrides, config_path=args.config)
        return args.func(args, cfg)
    except (GlabError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))
