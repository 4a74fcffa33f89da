"""Command-line surface: family ingestion, sweeps, verification, reports.

Output contract: CSV for bulk numeric series, JSON for structured summaries.
Both carry a metadata block (tool version + config echo) so downstream
figures are reproducible, and both are byte-identical across runs and
worker counts for the same config. Exit codes: 0 success, 1 verification
mismatch, 2 usage/config error, 3 resource/cap error.

Primes 2 and 3 are excluded everywhere (every closed form assumes p > 3);
--first N counts primes >= 5. This is stated in the output metadata.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, analysis, moments, oracles
from .errors import CapExceeded, EcmomentsError, OrderMissing, UnknownFamily
from .family import (
    BirchFamily,
    CubicForm,
    Family,
    OneParamFamily,
    TwoParamFamily,
    get_family,
    make_s4a,
    make_s4b,
)
from .ffield import Prime, build_residue_table, is_prime, primes_from
from .poly import PolyZ, PolyZ2

_PRIME_NOTE = "primes 2 and 3 excluded (formulas assume p > 3); --first counts primes >= 5"


# --- FamilySpec (JSON file format) -----------------------------------------


def _poly_obj(f: PolyZ) -> dict:
    return {str(i): str(c) for i, c in enumerate(f.coeffs) if c}


def _poly_from(obj) -> PolyZ:
    if not isinstance(obj, dict):
        raise ValueError("polynomial must be an object mapping exponent to coefficient")
    terms = {}
    for k, v in obj.items():
        e = int(k)
        if e < 0 or str(e) != k.strip():
            raise ValueError(f"bad exponent key {k!r}")
        terms[e] = int(v)
    coeffs = [0] * (max(terms, default=-1) + 1)
    for e, c in terms.items():
        coeffs[e] = c
    return PolyZ(coeffs)


def _poly2_obj(f: PolyZ2) -> dict:
    return {f"{et},{es}": str(c) for (et, es), c in f.terms.items()}


def _poly2_from(obj) -> PolyZ2:
    if not isinstance(obj, dict):
        raise ValueError("polynomial must be an object mapping 'et,es' to coefficient")
    terms = {}
    for k, v in obj.items():
        et, es = (int(part) for part in k.split(","))
        if et < 0 or es < 0:
            raise ValueError(f"bad exponent key {k!r}")
        terms[(et, es)] = int(v)
    return PolyZ2(terms)


def family_to_spec(fam: Family) -> dict:
    spec: dict = {"name": fam.name}
    if isinstance(fam, BirchFamily):
        spec["kind"] = "birch"
        return spec
    if isinstance(fam, TwoParamFamily):
        spec.update(
            kind="two_param",
            form="cubic",
            A=_poly2_obj(fam.A),
            B=_poly2_obj(fam.B),
            C=_poly2_obj(fam.C),
        )
    else:
        spec["kind"] = "one_param"
        if fam.short is not None:
            A, B = fam.short
            spec.update(form="short", A=_poly_obj(A), B=_poly_obj(B))
        elif fam.weierstrass is not None:
            names = ("a1", "a2", "a3", "a4", "a6")
            spec["form"] = "weierstrass"
            spec.update({n: _poly_obj(f) for n, f in zip(names, fam.weierstrass)})
        else:
            cf = fam.cubic
            spec.update(
                form="cubic",
                c3=_poly_obj(cf.c3),
                c2=_poly_obj(cf.c2),
                c1=_poly_obj(cf.c1),
                c0=_poly_obj(cf.c0),
            )
    if fam.declared_rank is not None:
        spec["declared_rank"] = fam.declared_rank
    if fam.description:
        spec["description"] = fam.description
    return spec


def family_from_spec(spec: dict) -> Family:
    name = spec["name"]
    kind = spec.get("kind", "one_param")
    if kind == "birch":
        return BirchFamily(name=name)
    rank = spec.get("declared_rank")
    desc = spec.get("description", "")
    if kind == "two_param":
        return TwoParamFamily(
            name=name,
            A=_poly2_from(spec.get("A", {})),
            B=_poly2_from(spec.get("B", {})),
            C=_poly2_from(spec.get("C", {})),
            declared_rank=rank,
            description=desc,
        )
    if kind != "one_param":
        raise ValueError(f"unknown family kind {kind!r}")
    form = spec["form"]
    if form == "short":
        return OneParamFamily(
            name,
            short=(_poly_from(spec["A"]), _poly_from(spec["B"])),
            declared_rank=rank,
            description=desc,
        )
    if form == "weierstrass":
        return OneParamFamily(
            name,
            weierstrass=tuple(
                _poly_from(spec[n]) for n in ("a1", "a2", "a3", "a4", "a6")
            ),
            declared_rank=rank,
            description=desc,
        )
    if form == "cubic":
        return OneParamFamily(
            name,
            cubic=CubicForm(*(_poly_from(spec[n]) for n in ("c3", "c2", "c1", "c0"))),
            declared_rank=rank,
            description=desc,
        )
    raise ValueError(f"unknown family form {form!r}")


def save_family_spec(fam: Family, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(family_to_spec(fam), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_family_spec(path: str) -> Family:
    with open(path) as fh:
        return family_from_spec(json.load(fh))


def _parse_params(pairs) -> dict[str, int]:
    out = {}
    for pair in pairs or ():
        key, _, value = pair.partition("=")
        if not _ or not key:
            raise ValueError(f"--param expects key=value, got {pair!r}")
        out[key] = int(value)
    return out


def resolve_family(arg: str, params: dict[str, int]) -> Family:
    """builtin:NAME (with optional --param overrides for the parametrized
    catalog families) or a path to a FamilySpec JSON file."""
    if arg.startswith("builtin:"):
        name = arg[len("builtin:") :]
        if params:
            if name == "S4A":
                return make_s4a(**params)
            if name == "S4B":
                return make_s4b(**params)
            raise ValueError(f"--param not supported for builtin {name}")
        return get_family(name)
    if params:
        raise ValueError("--param only applies to builtin:S4A / builtin:S4B")
    return load_family_spec(arg)


# --- prime selection and output plumbing -----------------------------------


def _primes_in_range(lo: int, hi: int) -> list[Prime]:
    return [Prime(n) for n in range(max(5, lo), hi + 1) if is_prime(n)]


def select_primes(args) -> list[Prime]:
    if args.first is not None:
        if args.prime_max is not None:
            raise ValueError("--first and --prime-max are mutually exclusive")
        if args.first < 1:
            raise ValueError("--first must be >= 1")
        return primes_from(max(5, args.prime_min), args.first)
    if args.prime_max is None:
        raise ValueError("one of --first or --prime-max is required")
    return _primes_in_range(args.prime_min, args.prime_max)


def _config_echo(args, keys) -> dict:
    cfg = {k: getattr(args, k.replace("-", "_")) for k in keys}
    return {k: v for k, v in cfg.items() if v is not None}


def _meta(command: str, config: dict) -> dict:
    return {
        "tool": "ecmoments",
        "version": __version__,
        "command": command,
        "config": config,
        "note": _PRIME_NOTE,
    }


def _csv_header_lines(meta: dict) -> list[str]:
    return [
        f"# ecmoments {meta['version']}",
        f"# command: {meta['command']}",
        f"# config: {json.dumps(meta['config'], sort_keys=True)}",
        f"# note: {meta['note']}",
    ]


def _write_lines(path: str | None, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_json(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rational(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _cap_override(args) -> tuple[int, bool]:
    if args.two_param_cap is not None:
        return args.two_param_cap, True
    return moments.TWO_PARAM_CAP, False


# --- subcommands -----------------------------------------------------------


def cmd_moments(args) -> int:
    fam = resolve_family(args.family, _parse_params(args.param))
    primes = select_primes(args)
    orders = tuple(int(r) for r in args.orders.split(","))
    cap, override = _cap_override(args)
    series = moments.moment_series(
        fam, primes, orders, workers=args.workers, cap=cap, override=override
    )
    meta = _meta(
        "moments",
        _config_echo(args, ("family", "first", "prime_min", "prime_max", "orders")),
    )
    lines = _csv_header_lines(meta)
    lines.append("prime,order,raw_sum,normalized,normalized_real")
    for rec in series.records:
        for r in series.orders:
            q = rec.normalized(r)
            lines.append(
                f"{int(rec.prime)},{r},{rec.raw_sums[r]},{_rational(q)},{float(q)!r}"
            )
    _write_lines(args.out, lines)
    return 0


def cmd_verify(args) -> int:
    params = _parse_params(args.param)
    s4a = tuple(params.get(k, d) for k, d in zip("abcd", (0, 1, 0, 1)))
    s4b = tuple(params.get(k, d) for k, d in zip("mn", (1, 1)))
    registry = oracles.make_registry(s4a_params=s4a, s4b_params=s4b)
    oracle = oracles.get_oracle(args.oracle, registry)
    primes = select_primes(args)
    cap, override = _cap_override(args)
    families = None
    if params:
        families = {"S4A": make_s4a(*s4a), "S4B": make_s4b(*s4b)}
        families.setdefault(oracle.family, get_family(oracle.family))
    report = oracles.verify_oracle(
        args.oracle, primes, registry=registry, families=families,
        cap=cap, override=override,
    )
    payload = {
        "meta": _meta(
            "verify",
            _config_echo(args, ("oracle", "first", "prime_min", "prime_max")),
        ),
        "oracle": report.oracle,
        "family": report.family,
        "order": report.order,
        "source": oracle.source,
        "validity": oracle.validity,
        "all_equal": report.all_equal,
        "rows": [
            {"prime": r.prime, "predicted": str(r.predicted), "computed": str(r.computed)}
            for r in report.rows
        ],
    }
    if args.out:
        _write_json(args.out, payload)
    if report.all_equal:
        print(f"{report.oracle}: {len(report.rows)} primes, all exact")
        return 0
    bad = report.mismatches()[0]
    print(
        f"{report.oracle}: MISMATCH at p={bad.prime}: "
        f"predicted {bad.predicted}, computed {bad.computed} "
        f"({len(report.mismatches())} of {len(report.rows)} primes disagree)"
    )
    return 1


def _odd_report(series: moments.MomentSeries, r: int) -> analysis.BiasReport:
    """Adapt the odd-moment coefficient series to the bias-report shape:
    the 'integer' normalization is the paper-scale coefficient c_r, the
    half-step one divides by a further sqrt(p)."""
    odd = analysis.odd_coefficient_series(series, r)
    e = 1 if r == 1 else (r + 3) // 2
    raws = series.raw(r)
    vals_int = [Fraction(s, p**e) for s, p in zip(raws, odd.primes)]
    vals_half = [s / p ** (e + 0.5) for s, p in zip(raws, odd.primes)]
    return analysis.BiasReport(
        family=odd.family,
        order=r,
        normalizer="p" if r == 1 else f"p{e}",
        primes=odd.primes,
        values=odd.values,
        values_int_norm=vals_int,
        values_half_norm=vals_half,
        main_terms=[0] * len(raws),
        residuals=list(raws),
        mean=odd.mean,
    )


def cmd_bias(args) -> int:
    fam = resolve_family(args.family, _parse_params(args.param))
    primes = select_primes(args)
    r = args.order
    cap, override = _cap_override(args)
    series = moments.moment_series(
        fam, primes, (r,), workers=args.workers, cap=cap, override=override
    )
    if r % 2 == 0:
        report = analysis.bias_series(series, r, normalizer=args.normalizer)
    else:
        report = _odd_report(series, r)
    report = analysis.group_stats(report, args.group_size)

    meta = _meta(
        "bias",
        _config_echo(
            args,
            ("family", "first", "prime_min", "prime_max", "order",
             "group_size", "normalizer"),
        ),
    )
    lines = _csv_header_lines(meta)
    lines.append(f"# normalizer: {report.normalizer}")
    # running means ride along so downstream figures never recompute them
    lines.append("prime,raw_sum,main_term,residual,bias_p,bias_p32,run_mean_p,run_mean_p32")
    acc_i = acc_h = 0.0
    for n, (p, raw, mt, res, vi, vh) in enumerate(
        zip(
            report.primes,
            series.raw(r),
            report.main_terms,
            report.residuals,
            report.values_int_norm,
            report.values_half_norm,
        ),
        start=1,
    ):
        acc_i += float(vi)
        acc_h += vh
        lines.append(
            f"{p},{raw},{mt},{res},{float(vi)!r},{vh!r},{acc_i / n!r},{acc_h / n!r}"
        )
    _write_lines(args.out, lines)

    summary = {
        "meta": meta,
        "family": report.family,
        "order": report.order,
        "normalizer": report.normalizer,
        "mean": report.mean,
        "auto_decision": report.auto_decision,
        "two_param_convention": report.two_param_convention,
        "group_size": report.group_size,
        "group_means": report.group_means,
        "group_signs": report.group_signs,
        "n_pos": report.n_pos,
        "n_neg": report.n_neg,
        "n_zero": report.n_zero,
        "sign_test_p": report.sign_test_p,
        "histogram": {"edges": report.hist_edges, "counts": report.hist_counts},
    }
    if args.summary_out:
        _write_json(args.summary_out, summary)
    if report.mean is not None:
        print(
            f"{report.family} order {r}: mean bias {report.mean:+.6f} "
            f"(normalizer {report.normalizer}, {len(report.primes)} primes, "
            f"{len(report.group_means)} groups of {args.group_size})"
        )
    else:
        print(f"{report.family} order {r}: empty series, mean undefined")
    return 0


def cmd_rank(args) -> int:
    fam = resolve_family(args.family, _parse_params(args.param))
    if not isinstance(fam, OneParamFamily):
        raise ValueError("rank estimation applies to one-parameter families only")
    primes = select_primes(args)
    est = analysis.rank_estimate(fam, primes)
    payload = {
        "meta": _meta(
            "rank", _config_echo(args, ("family", "first", "prime_min", "prime_max"))
        ),
        "estimate": est.estimate,
        "primes_used": est.primes_used,
        "rational_surface": est.rational_surface,
    }
    if est.warning:
        payload["warning"] = est.warning
    if fam.declared_rank is not None:
        payload["declared_rank"] = fam.declared_rank
    if args.out:
        _write_json(args.out, payload)
    line = f"{fam.name}: rank estimate {est.estimate:.4f} over {est.primes_used} primes"
    if est.warning:
        line += f" (warning: {est.warning})"
    print(line)
    return 0


def cmd_sym(args) -> int:
    fam = resolve_family(args.family, _parse_params(args.param))
    if not isinstance(fam, OneParamFamily):
        raise ValueError("sym sums apply to one-parameter families only")
    primes = select_primes(args)
    ks = tuple(int(k) for k in args.k.split(","))
    meta = _meta(
        "sym", _config_echo(args, ("family", "first", "prime_min", "prime_max", "k"))
    )
    lines = _csv_header_lines(meta)
    lines.append("prime,k,sym_sum,normalized")
    for p in primes:
        table = build_residue_table(p)
        for k in ks:
            s = analysis.sym_sum(fam, p, k, table)
            lines.append(f"{int(p)},{k},{s.total!r},{s.normalized!r}")
    _write_lines(args.out, lines)
    return 0


def cmd_list_families(args) -> int:
    from .family import builtin_names

    by_family: dict[str, list[str]] = {}
    for name, oracle in oracles.REGISTRY.items():
        by_family.setdefault(oracle.family, []).append(name)
    header = f"{'name':<8} {'kind':<10} {'rank':<5} {'oracles':<18} description"
    print(header)
    print("-" * len(header))
    for name in builtin_names():
        fam = get_family(name)
        if isinstance(fam, BirchFamily):
            kind, rank = "birch", "-"
        elif isinstance(fam, TwoParamFamily):
            kind = "two_param"
            rank = "-" if fam.declared_rank is None else str(fam.declared_rank)
        else:
            kind = "one_param"
            rank = "-" if fam.declared_rank is None else str(fam.declared_rank)
        ors = ",".join(sorted(by_family.get(name, []))) or "-"
        desc = getattr(fam, "description", "")
        print(f"{name:<8} {kind:<10} {rank:<5} {ors:<18} {desc}")
    return 0


# --- parser ----------------------------------------------------------------


def _add_prime_args(sp) -> None:
    sp.add_argument("--first", type=int, help="first N primes >= 5")
    sp.add_argument("--prime-min", type=int, default=5)
    sp.add_argument("--prime-max", type=int)


def _add_common(sp, family=True) -> None:
    if family:
        sp.add_argument(
            "--family", required=True, help="builtin:NAME or path to a FamilySpec JSON"
        )
    _add_prime_args(sp)
    sp.add_argument("--two-param-cap", type=int, help="override the two-parameter prime cap")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--param", action="append", metavar="KEY=VALUE",
                    help="free parameters for the parametrized catalog families")
    sp.add_argument("--out", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecmoments",
        description="Moment sums and bias statistics of elliptic-curve families",
    )
    parser.add_argument("--version", action="version", version=f"ecmoments {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("moments", help="raw and normalized moment sums per prime")
    _add_common(sp)
    sp.add_argument("--orders", default="1,2", help="comma-separated orders, 1..8")
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("verify", help="check a closed-form oracle exactly")
    sp.add_argument("--oracle", required=True)
    _add_prime_args(sp)
    sp.add_argument("--two-param-cap", type=int)
    sp.add_argument("--param", action="append", metavar="KEY=VALUE")
    sp.add_argument("--out", help="JSON report path")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bias", help="main-term residual statistics")
    _add_common(sp)
    sp.add_argument("--order", type=int, default=2)
    sp.add_argument("--group-size", type=int, default=50)
    sp.add_argument(
        "--normalizer", default="auto",
        help="auto or an explicit exponent token (p, p32, p2, p52, p3, p72)",
    )
    sp.add_argument("--summary-out", help="JSON summary path")
    sp.set_defaults(func=cmd_bias)

    sp = sub.add_parser("rank", help="first-moment rank estimator")
    _add_common(sp)
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("sym", help="Chebyshev-recursion sums per prime")
    _add_common(sp)
    sp.add_argument("--k", default="1,2", help="comma-separated k values, 1..6")
    sp.set_defaults(func=cmd_sym)

    sp = sub.add_parser("list-families", help="builtin families and their oracles")
    sp.set_defaults(func=cmd_list_families)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (EcmomentsError, ValueError, OSError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
