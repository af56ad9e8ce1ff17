"""Command line front end.

Subcommands:

* ``compute``: one mixed correlator, exact.
* ``volume``: one intersection volume, open (n >= 1) or closed (n = 0).
* ``hodge``: one pairing against the top Hodge weightings.
* ``table``: constant or volume tables as csv (default) or json.
* ``verify``: a named consistency sweep; exits 1 on the first mismatch.

Values print as exact fractions.  ``--decimal N`` switches the printed
value to an N-place decimal rendering; ``--json`` wraps the result with
its inputs, keeping the value as an exact ``num/den`` string.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .cache import (
    check_cache,
    default_cache_path,
    load_cache,
    save_new_records,
    seed_engine,
)
from .constants import ALPHA, GAMMA_FACT, GAMMA_ODD
from .correlator import (
    INITIAL_VALUES,
    CorrelatorEngine,
    CorrelatorKey,
    check_dilaton_identity,
    check_string_identity,
    check_transfer_identity,
)
from .hodge import (
    LAMBDA_G,
    LAMBDA_G_GM1,
    FileBaseValues,
    HodgeEngine,
    check_pairing_reduction,
)
from .kmz import KmzOracle
from .multiindex import MultiIndex, indices_of_weight
from .series import shift_check
from .sweeps import (
    closed_volume_indices,
    correlator_signatures,
    hodge_signatures,
    kdv_cases,
    pairing_reduction_cases,
    rshift_cases,
    volume_signatures,
)
from .volumes import VolumeEngine, check_kdv_identity, check_shift_identity

_SUITES = (
    "oracle",
    "transfer",
    "string",
    "dilaton",
    "kdv",
    "rshift",
    "volume",
    "shift",
    "hodge",
    "cache",
)

_DEFAULT_DIMS = {
    "oracle": 7,
    "transfer": 6,
    "string": 6,
    "dilaton": 6,
    "kdv": 6,
    "rshift": 6,
    "volume": 7,
}


def _parse_psi(text: str) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(piece) for piece in text.split(","))
    except ValueError:
        raise ValueError(f"bad psi list {text!r}") from None


def _decimal_text(value: Fraction, places: int) -> str:
    """Exact round-half-even decimal rendering with the given scale."""
    if places < 0:
        raise ValueError(f"decimal places must be >= 0, got {places}")
    scaled = round(value * Fraction(10) ** places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _emit(args: argparse.Namespace, payload: dict, value: Fraction) -> None:
    if args.json:
        if args.decimal is not None:
            payload["decimal"] = _decimal_text(value, args.decimal)
        print(json.dumps(payload, sort_keys=True))
    elif args.decimal is not None:
        print(_decimal_text(value, args.decimal))
    else:
        print(value)


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="emit json")
    parser.add_argument(
        "--decimal",
        type=int,
        default=None,
        metavar="N",
        help="also render the value with N decimal places",
    )


def _resolve_cache(option: str | None) -> str | None:
    """Turn the --cache option into a path; '' means consult WPREC_CACHE."""
    if option is None:
        return None
    if option:
        return option
    path = default_cache_path()
    if path is None:
        raise ValueError("--cache given without a path and WPREC_CACHE unset")
    return path


def _cmd_compute(args: argparse.Namespace) -> int:
    key = CorrelatorKey.make(
        args.genus, MultiIndex.from_text(args.kappa), _parse_psi(args.psi)
    )
    cache_path = _resolve_cache(args.cache)
    engine = CorrelatorEngine()
    if cache_path is not None:
        try:
            seed_engine(engine, load_cache(cache_path))
        except FileNotFoundError:
            pass
    value = engine.correlator(key.genus, key.kappa, key.psi)
    if cache_path is not None:
        save_new_records(cache_path, engine.memo)
    n = len(key.psi)
    in_dimension = (
        2 * key.genus - 2 + n > 0
        and key.kappa.weight + sum(key.psi) == 3 * key.genus - 3 + n
    )
    if args.strict and not in_dimension:
        print(
            "wprec: signature is unstable or off-dimension; the value is 0",
            file=sys.stderr,
        )
        return 1
    payload = {
        "genus": key.genus,
        "kappa": key.kappa.to_text(),
        "psi": list(key.psi),
        "value": str(value),
    }
    _emit(args, payload, value)
    return 0


def _cmd_volume(args: argparse.Namespace) -> int:
    kappa = MultiIndex.from_text(args.kappa)
    value = VolumeEngine().volume(args.genus, args.points, kappa)
    payload = {
        "genus": args.genus,
        "n": args.points,
        "kappa": kappa.to_text(),
        "value": str(value),
    }
    _emit(args, payload, value)
    return 0


def _cmd_hodge(args: argparse.Namespace) -> int:
    kappa = MultiIndex.from_text(args.kappa)
    psi = _parse_psi(args.psi)
    provider = FileBaseValues(args.provider) if args.provider else None
    engine = HodgeEngine(provider)
    if args.route == "direct":
        value = engine.correlator_direct(args.genus, args.tag, kappa, psi)
    else:
        value = engine.correlator(args.genus, args.tag, kappa, psi)
    payload = {
        "genus": args.genus,
        "tag": args.tag,
        "kappa": kappa.to_text(),
        "psi": list(psi),
        "value": str(value),
    }
    _emit(args, payload, value)
    return 0


def _cmd_table(args: argparse.Namespace) -> int:
    if args.constants:
        table = {
            "alpha": ALPHA,
            "gamma_odd": GAMMA_ODD,
            "gamma_fact": GAMMA_FACT,
        }[args.constants]
        header = ("weight", "kappa", "value")
        rows = [
            (w, b.to_text(), str(table.value(b)))
            for w in range(args.max_weight + 1)
            for b in indices_of_weight(w)
        ]
    else:
        volumes = VolumeEngine()
        header = ("genus", "n", "kappa", "value")
        rows = []
        for genus in range(args.max_genus + 1):
            for n in range(args.max_n + 1):
                if n == 0 and genus < 2:
                    continue
                if n >= 1 and 2 * genus - 2 + n <= 0:
                    continue
                dim = 3 * genus - 3 + n
                if dim < 0:
                    continue
                for b in indices_of_weight(dim):
                    value = volumes.volume(genus, n, b)
                    rows.append((genus, n, b.to_text(), str(value)))
    if args.json:
        print(
            json.dumps([dict(zip(header, row)) for row in rows], sort_keys=True)
        )
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return 0


def _signature_text(genus: int, kappa: MultiIndex, psi) -> str:
    return CorrelatorKey.make(genus, kappa, psi).text()


def _run_oracle(args: argparse.Namespace, max_dim: int):
    engine = CorrelatorEngine()
    oracle = KmzOracle()
    count = 0
    for genus, kappa, psi in correlator_signatures(max_dim):
        count += 1
        lhs = engine.correlator(genus, kappa, psi)
        rhs = oracle.kmz_expand(genus, kappa, psi)
        name = _signature_text(genus, kappa, psi)
        if lhs != rhs:
            return False, count, f"{name}: engine {lhs} != expansion {rhs}"
        if lhs <= 0:
            return False, count, f"{name}: expected a positive value, got {lhs}"
    return True, count, None


def _run_transfer(args: argparse.Namespace, max_dim: int):
    engine = CorrelatorEngine()
    count = 0
    for genus, kappa, psi in correlator_signatures(max_dim, min_n=1):
        if CorrelatorKey.make(genus, kappa, psi) in INITIAL_VALUES:
            continue
        count += 1
        report = check_transfer_identity(engine, genus, kappa, psi)
        if not report.equal:
            name = _signature_text(genus, kappa, psi)
            return False, count, f"{name}: {report.lhs} != {report.rhs}"
    return True, count, None


def _run_string(args: argparse.Namespace, max_dim: int):
    engine = CorrelatorEngine()
    count = 0
    for genus, kappa, psi in correlator_signatures(max_dim, min_n=0, shell=1):
        count += 1
        report = check_string_identity(engine, genus, kappa, psi)
        if not report.equal:
            name = _signature_text(genus, kappa, psi)
            return False, count, f"{name}: {report.lhs} != {report.rhs}"
    return True, count, None


def _run_dilaton(args: argparse.Namespace, max_dim: int):
    engine = CorrelatorEngine()
    count = 0
    for genus, kappa, psi in correlator_signatures(max_dim, min_n=0):
        count += 1
        report = check_dilaton_identity(engine, genus, kappa, psi)
        if not report.equal:
            name = _signature_text(genus, kappa, psi)
            return False, count, f"{name}: {report.lhs} != {report.rhs}"
    return True, count, None


def _run_kdv(args: argparse.Namespace, max_dim: int):
    engine = CorrelatorEngine()
    count = 0
    for genus, kappa, psi in kdv_cases(max_dim):
        count += 1
        report = check_kdv_identity(engine, genus, kappa, psi)
        if not report.equal:
            name = _signature_text(genus, kappa, psi)
            return False, count, f"{name}: {report.lhs} != {report.rhs}"
    return True, count, None


def _run_rshift(args: argparse.Namespace, max_dim: int):
    engine = CorrelatorEngine()
    count = 0
    for genus, kappa, psi, r in rshift_cases(max_dim):
        count += 1
        report = check_shift_identity(engine, genus, kappa, psi, r)
        if not report.equal:
            name = _signature_text(genus, kappa, psi)
            return False, count, f"{name} (r={r}): {report.lhs} != {report.rhs}"
    return True, count, None


def _run_volume(args: argparse.Namespace, max_dim: int):
    volumes = VolumeEngine()
    engine = CorrelatorEngine()
    count = 0
    for genus, n, kappa in volume_signatures(max_dim):
        count += 1
        lhs = volumes.volume(genus, n, kappa)
        rhs = engine.correlator(genus, kappa, (0,) * n)
        if lhs != rhs:
            name = f"V_{{{genus},{n}}}({kappa.to_text() or '1'})"
            return False, count, f"{name}: volume {lhs} != correlator {rhs}"
    for genus in range(2, (max_dim + 3) // 3 + 1):
        cap = 4 if genus >= 3 else None
        for kappa in closed_volume_indices(genus, max_length=cap):
            count += 1
            lhs = volumes.volume_closed(genus, kappa)
            rhs = engine.correlator(genus, kappa, ())
            if lhs != rhs:
                name = f"V_{{{genus}}}({kappa.to_text()})"
                return False, count, f"{name}: volume {lhs} != correlator {rhs}"
    return True, count, None


def _run_shift(args: argparse.Namespace, max_dim: int):
    report = shift_check(
        args.cutoff, args.s_vars, args.t_vars, CorrelatorEngine(), KmzOracle()
    )
    if report.equal:
        return True, report.cases, None
    key, mixed, shifted = report.mismatch
    return (
        False,
        report.cases,
        f"monomial {key}: mixed {mixed} != shifted pure {shifted}",
    )


def _run_hodge(args: argparse.Namespace, max_dim: int):
    provider = FileBaseValues(args.provider) if args.provider else None
    engine = HodgeEngine(provider)
    count = 0
    for genus, tag, kappa, psi in hodge_signatures(args.max_genus):
        count += 1
        lhs = engine.correlator(genus, tag, kappa, psi)
        rhs = engine.correlator_direct(genus, tag, kappa, psi)
        if lhs != rhs:
            name = f"{_signature_text(genus, kappa, psi)}|{tag}"
            return False, count, f"{name}: expansion {lhs} != direct {rhs}"
    for genus, tag, d, d0, rest in pairing_reduction_cases(
        min(args.max_genus, 3)
    ):
        count += 1
        report = check_pairing_reduction(engine, genus, tag, d, d0, rest)
        if not report.equal:
            name = f"g={genus} {tag} d={d} d0={d0} rest={rest}"
            return False, count, f"{name}: {report.lhs} != {report.rhs}"
    return True, count, None


def _run_cache(args: argparse.Namespace, max_dim: int):
    path = args.cache or default_cache_path()
    if not path:
        raise ValueError("cache suite needs --cache PATH or WPREC_CACHE")
    return check_cache(path)


_SUITE_RUNNERS = {
    "oracle": _run_oracle,
    "transfer": _run_transfer,
    "string": _run_string,
    "dilaton": _run_dilaton,
    "kdv": _run_kdv,
    "rshift": _run_rshift,
    "volume": _run_volume,
    "shift": _run_shift,
    "hodge": _run_hodge,
    "cache": _run_cache,
}


def _cmd_verify(args: argparse.Namespace) -> int:
    picked = [args.suite] if args.suite else []
    if args.oracle:
        picked.append("oracle")
    if args.shift:
        picked.append("shift")
    names = sorted(set(picked))
    if len(names) != 1:
        raise ValueError("choose exactly one suite (--suite NAME)")
    suite = names[0]
    max_dim = args.max_dim
    if max_dim is None:
        max_dim = _DEFAULT_DIMS.get(suite, 6)
    ok, cases, detail = _SUITE_RUNNERS[suite](args, max_dim)
    if ok:
        print(f"PASS ({cases} cases)")
        return 0
    print(f"FAIL after {cases} cases: {detail}")
    return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wprec",
        description="Exact mixed psi/kappa intersection values on moduli "
        "of stable curves: correlators, volumes, Hodge pairings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser(
        "compute", help="evaluate one mixed correlator exactly"
    )
    compute.add_argument("-g", "--genus", type=int, required=True)
    compute.add_argument(
        "--kappa",
        default="",
        help="kappa index, comma joined 'index:multiplicity' pairs",
    )
    compute.add_argument(
        "--psi", default="", help="comma separated psi exponents"
    )
    _add_output_options(compute)
    compute.add_argument(
        "--cache",
        nargs="?",
        const="",
        default=None,
        metavar="PATH",
        help="read/extend a value cache (WPREC_CACHE when no path given)",
    )
    compute.add_argument(
        "--strict",
        action="store_true",
        help="exit 1 when the gates force the value to zero",
    )
    compute.set_defaults(func=_cmd_compute)

    volume = sub.add_parser(
        "volume", help="one intersection volume V_{g,n}(kappa)"
    )
    volume.add_argument("-g", "--genus", type=int, required=True)
    volume.add_argument(
        "-n", "--points", type=int, required=True, help="0 for the closed space"
    )
    volume.add_argument("--kappa", default="")
    _add_output_options(volume)
    volume.set_defaults(func=_cmd_volume)

    hodge = sub.add_parser(
        "hodge", help="one pairing against a top Hodge weighting"
    )
    hodge.add_argument("-g", "--genus", type=int, required=True)
    hodge.add_argument(
        "--tag", choices=(LAMBDA_G_GM1, LAMBDA_G), required=True
    )
    hodge.add_argument("--kappa", default="")
    hodge.add_argument("--psi", default="")
    hodge.add_argument(
        "--provider",
        metavar="PATH",
        help="file of base pairing values ('genus,tag,num/den' lines)",
    )
    hodge.add_argument(
        "--route", choices=("primary", "direct"), default="primary"
    )
    _add_output_options(hodge)
    hodge.set_defaults(func=_cmd_hodge)

    table = sub.add_parser("table", help="print value tables (csv or json)")
    which = table.add_mutually_exclusive_group(required=True)
    which.add_argument(
        "--constants", choices=("alpha", "gamma_odd", "gamma_fact")
    )
    which.add_argument("--volumes", action="store_true")
    table.add_argument("--max-weight", type=int, default=6)
    table.add_argument("--max-genus", type=int, default=2)
    table.add_argument("--max-n", type=int, default=4)
    form = table.add_mutually_exclusive_group()
    form.add_argument("--csv", action="store_true", help="the default")
    form.add_argument("--json", action="store_true")
    table.set_defaults(func=_cmd_table)

    verify = sub.add_parser("verify", help="run a consistency sweep")
    verify.add_argument("--suite", choices=_SUITES)
    verify.add_argument(
        "--oracle", action="store_true", help="shorthand for --suite oracle"
    )
    verify.add_argument(
        "--shift", action="store_true", help="shorthand for --suite shift"
    )
    verify.add_argument("--max-dim", type=int, default=None)
    verify.add_argument("--cutoff", type=int, default=6)
    verify.add_argument("--s-vars", type=int, default=3)
    verify.add_argument("--t-vars", type=int, default=7)
    verify.add_argument("--max-genus", type=int, default=3)
    verify.add_argument("--provider", metavar="PATH")
    verify.add_argument("--cache", metavar="PATH")
    verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"wprec: {exc}", file=sys.stderr)
        return 2
    except LookupError as exc:
        print(f"wprec: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"wprec: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
