"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 bad input, 3 a verification failed.
JSON arguments (``--form``, ``--fn``, ``--lattice``) accept a file path or an
inline JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import NonIntegralReflection, ThetaError, VerificationFailed
from .examples import EXAMPLES, run_example
from .hecke import HeckeCoset, hecke_to_qf, qf_to_hecke, theta_hecke
from .orbits import gn_orbits, minus_id_in_group, prop_opp_residues
from .periodic import PeriodicFunction
from .qseries import DEFAULT_PRECISION
from .quadform import QuadForm
from .relations import find_linear_relations
from .theta import theta_quadrant, theta_sector

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _load_json(arg: str, what: str):
    text = arg
    source = "<inline>"
    if not arg.lstrip().startswith("{"):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {what} file {arg!r}: {exc.strerror}") from None
        source = arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed {what} JSON in {source}: {exc.msg} at line {exc.lineno}, "
                         f"column {exc.colno}") from None


def _field_error(what, exc):
    return InputError(f"{what} JSON is missing field {exc}" if isinstance(exc, KeyError)
                      else f"invalid {what}: {exc}")


def load_form(arg: str, integral: bool = True) -> QuadForm:
    obj = _load_json(arg, "form")
    try:
        return QuadForm.from_json(obj, integral)
    except NonIntegralReflection:
        if integral:
            raise
        return QuadForm.from_json(obj, False)
    except (KeyError, TypeError) as exc:
        raise _field_error("form", exc) from None


def load_form_any(arg: str) -> QuadForm:
    """The form with integral reflections if possible, otherwise without."""
    try:
        return load_form(arg)
    except NonIntegralReflection:
        return load_form(arg, integral=False)


def load_function(arg: str) -> PeriodicFunction:
    try:
        return PeriodicFunction.from_json(_load_json(arg, "function"))
    except (KeyError, TypeError) as exc:
        raise _field_error("function", exc) from None


def load_coset(arg: str) -> HeckeCoset:
    try:
        return HeckeCoset.from_json(_load_json(arg, "lattice"))
    except (KeyError, TypeError) as exc:
        raise _field_error("lattice", exc) from None


def _emit(args, payload: dict, lines: list[str]):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _period(args) -> int:
    if args.period is not None:
        return args.period
    if getattr(args, "fn", None):
        return load_function(args.fn).period
    raise UsageError("give --period N or --fn to fix the period")


def cmd_orbits(args) -> int:
    Q = load_form(args.form)
    N = _period(args)
    orbits, ctx = gn_orbits(Q, N)
    payload = {
        "form": Q.to_json(),
        "period": N,
        "ab_order": ctx.ab_order,
        "contains_minus_id": ctx.contains_minus_id,
        "orbits": [O.to_json() for O in orbits],
    }
    lines = [f"N = {N}, order of AB = {ctx.ab_order}, -id in G_N: {ctx.contains_minus_id}"]
    for O in orbits:
        kind = "not admissible"
        if O.admissible:
            kind = f"admissible, {O.parity} symmetric" if O.symmetric else "admissible, asymmetric"
        lines.append(f"orbit of {O.representative}: {O.size} points, {kind}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_theta(args) -> int:
    Q = load_form_any(args.form)
    f = load_function(args.fn)
    check = not args.no_check
    out = {}
    if args.method in ("quadrant", "both"):
        out["quadrant"] = theta_quadrant(Q, f, args.prec, check)
    if args.method in ("sector", "both"):
        out["sector"] = theta_sector(Q, f, args.prec, check)
    payload = {k: s.to_json() for k, s in out.items()}
    lines = [f"{k}: {s}" for k, s in out.items()] if args.method == "both" else [str(s) for s in out.values()]
    code = EXIT_OK
    if args.method == "both":
        diff = out["quadrant"].first_difference(out["sector"])
        payload["equal"] = diff is None
        payload["first_difference"] = diff
        lines.append("equal" if diff is None else f"MISMATCH at q^{diff}")
        code = EXIT_OK if diff is None else EXIT_VERIFY
    _emit(args, payload, lines)
    return code


def cmd_hecke(args) -> int:
    C = load_coset(args.lattice)
    s = theta_hecke(C, args.prec)
    _emit(args, s.to_json(), [str(s)])
    return EXIT_OK


def cmd_to_hecke(args) -> int:
    Q = load_form(args.form)
    f = load_function(args.fn)
    dec = qf_to_hecke(Q, f, args.prec, verify=args.verify)
    (al, be), (_, de) = dec.sublattice
    lines = [
        f"Lambda_1 = Z({al},{be}) + Z(0,{de}), {len(dec.shifts)} cosets: "
        + ", ".join(str(x) for x in dec.shifts),
        f"eps = {dec.unit}, d = {dec.multiplier}, [G:G_0] = {dec.index}",
    ]
    code = EXIT_OK
    if args.verify:
        chk = dec.check
        lines.append("[G:G_0] Theta_{Q,f} = sum of coset series: "
                     + ("verified" if chk.ok else f"MISMATCH at q^{chk.first_difference}"))
        code = EXIT_OK if chk.ok else EXIT_VERIFY
    _emit(args, dec.to_json(), lines)
    return code


def cmd_from_hecke(args) -> int:
    C = load_coset(args.lattice)
    rev = hecke_to_qf(C, args.prec, verify=args.verify)
    a, b, c = rev.form_prime
    lines = [
        f"k = {rev.k}, Tr k = Nm k = {rev.trace}",
        f"Q'(m,n) = {a} m^2 + 2*({b}) m n + {c} n^2",
        f"scale M_0 = {rev.scale}, period N' = {rev.period}, "
        f"{len(rev.function.support)} support residues",
        f"Q'': {rev.form}",
    ]
    code = EXIT_OK
    if args.verify:
        lines.append(f"reflection identities on the support: {'ok' if rev.reflections_ok else 'FAIL'}")
        chk = rev.check
        lines.append("Theta_{Q'',f''} = Theta_{Lambda,gamma}: "
                     + ("verified" if chk.ok else f"MISMATCH at q^{chk.first_difference}"))
        code = EXIT_OK if rev.ok else EXIT_VERIFY
    _emit(args, rev.to_json(), lines)
    return code


def cmd_relations(args) -> int:
    Q = load_form(args.form)
    N = _period(args)
    rep = find_linear_relations(Q, N, args.prec)
    lines = [f"series: {', '.join(str(x) for x in rep.labels)} (one per +-pair)"]
    lines += [f"  {r}" for r in rep.symbolic] or ["  no symbolic relations"]
    lines.append(f"kernel dimension {rep.kernel_dimension} below O(q^{rep.precision}), "
                 f"{rep.explained_rank} explained")
    for v in rep.unexplained:
        lines.append("candidate relation (valid to precision only): "
                     + " ".join(str(q) for q in v))
    _emit(args, rep.to_json(), lines)
    return EXIT_OK


def cmd_minus_id(args) -> int:
    N = args.period
    if args.rp is not None:
        has = minus_id_in_group(1, args.rp, N)
        payload = {"period": N, "rp": args.rp, "contains_minus_id": has}
    elif args.form:
        Q = load_form(args.form)
        has = minus_id_in_group(Q.p, Q.r, N)
        payload = {"period": N, "form": Q.to_json(), "contains_minus_id": has}
    else:
        raise UsageError("give --rp k or --form")
    _emit(args, payload, [f"-id in G_{N}: {has}"])
    return EXIT_OK


def cmd_residues(args) -> int:
    rep = prop_opp_residues(args.period)
    payload = {
        "period": rep.N,
        "with_minus_id": sorted(rep.positive),
        "without_minus_id": sorted(rep.complement),
        "count": len(rep.positive),
        "formula": rep.expected_count,
    }
    lines = [
        f"rp mod {rep.N} with -id in G_N: {sorted(rep.positive)}",
        f"rp mod {rep.N} without -id: {sorted(rep.complement)}",
        f"count {len(rep.positive)} = N - (n1 + n2)/2 = {rep.expected_count}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_examples(args) -> int:
    names = list(EXAMPLES) if args.id == "all" else [args.id]
    payload, lines, ok = {}, [], True
    for name in names:
        claims = run_example(name, args.prec)
        payload[name] = [{"claim": c.name, "passed": c.passed, "detail": c.detail} for c in claims]
        lines += [f"[{name}] {c.line()}" for c in claims]
        ok &= all(c.passed for c in claims)
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_VERIFY


def _precision(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"precision must be an integer, got {text!r}") from None
    if val < 1:
        raise argparse.ArgumentTypeError("precision must be at least 1")
    return val


def _positive(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if val < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return val


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="indeftheta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, prec=True):
        if prec:
            p.add_argument("--prec", type=_precision, default=DEFAULT_PRECISION,
                           help="compute modulo q^M (default %(default)s)")
        p.add_argument("--json", action="store_true", help="print JSON instead of text")

    p = sub.add_parser("orbits", help="G_N-orbits on (Z/N)^2 and their classification")
    p.add_argument("--form", required=True)
    p.add_argument("--period", type=_positive)
    p.add_argument("--fn", help="take N from this function's period")
    common(p, prec=False)
    p.set_defaults(run=cmd_orbits)

    p = sub.add_parser("theta", help="the series Theta_{Q,f}")
    p.add_argument("--form", required=True)
    p.add_argument("--fn", required=True)
    p.add_argument("--method", choices=("quadrant", "sector", "both"), default="quadrant")
    p.add_argument("--no-check", action="store_true", help="skip the admissibility test")
    common(p)
    p.set_defaults(run=cmd_theta)

    p = sub.add_parser("hecke", help="Hecke's series of a lattice coset")
    p.add_argument("--lattice", required=True)
    common(p)
    p.set_defaults(run=cmd_hecke)

    p = sub.add_parser("to-hecke", help="decompose (Q, f) into Hecke cosets")
    p.add_argument("--form", required=True)
    p.add_argument("--fn", required=True)
    p.add_argument("--verify", action="store_true")
    common(p)
    p.set_defaults(run=cmd_to_hecke)

    p = sub.add_parser("from-hecke", help="build (Q'', f'') from a Hecke coset")
    p.add_argument("--lattice", required=True)
    p.add_argument("--verify", action="store_true")
    common(p)
    p.set_defaults(run=cmd_from_hecke)

    p = sub.add_parser("relations", help="known and candidate linear relations at fixed Q")
    p.add_argument("--form", required=True)
    p.add_argument("--period", type=_positive)
    p.add_argument("--fn")
    common(p)
    p.set_defaults(run=cmd_relations)

    p = sub.add_parser("minus-id", help="whether -id lies in G_N")
    p.add_argument("--period", type=_positive, required=True)
    p.add_argument("--rp", type=int, help="residue of rp (tested with p = 1, r = rp)")
    p.add_argument("--form")
    common(p, prec=False)
    p.set_defaults(run=cmd_minus_id)

    p = sub.add_parser("residues", help="residues rp mod an odd prime N with -id in G_N")
    p.add_argument("--period", type=_positive, required=True)
    common(p, prec=False)
    p.set_defaults(run=cmd_residues)

    p = sub.add_parser("examples", help="run the canned instances and check their claims")
    p.add_argument("--id", required=True, choices=(*EXAMPLES, "all"))
    common(p)
    p.set_defaults(run=cmd_examples)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.run(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (InputError, ThetaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
