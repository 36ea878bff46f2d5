"""orbit-gate: partition gates, matrix oracles, slice scans and reports.

JSON goes to stdout (sorted keys), a one-line human summary to stderr.
Exit codes: 0 pass, 3 gate failure or violation, 2 invalid input,
1 internal error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Callable, Optional

from . import __version__
from .criteria import (
    derivative_bounds,
    ginzburg_rallis_check,
    klyachko_check,
    parabolic_lr_check,
    rs_bessel_compatible,
    shalika_check,
    theta_match,
    theta_max_match,
    whittaker_closure_check,
)
from .errors import InconclusiveError, InvalidInputError
from .lr import lr_coefficient, lr_support
from .orbits import GroupFamily
from .partitions import Partition, partitions_of, transpose

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_FAIL = 0, 1, 2, 3

CHECK_MODELS = ("rankin-selberg", "bessel", "derivative", "klyachko", "shalika", "ginzburg-rallis",
                "theta-match", "parabolic-lr", "whittaker")
SCAN_MODELS = ("rankin-selberg", "bessel", "klyachko", "shalika", "ginzburg-rallis", "whittaker",
               "parabolic", "pardim", "torus")
DIM_TARGETS = ("pardim", "torus", "theta")


class CliResult:
    def __init__(self, payload: dict, code: int, summary: str):
        self.payload = payload
        self.code = code
        self.summary = summary


# --- argument helpers -------------------------------------------------------

def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except (InvalidInputError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _family(text: str) -> GroupFamily:
    """GL:3, Sp:4, Orth:5 or U:2,1."""
    try:
        kind, _, size = text.partition(":")
        if kind == "U":
            m, n = (int(v) for v in size.split(","))
            return GroupFamily.U(m, n)
        return GroupFamily(kind, int(size))
    except (InvalidInputError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"bad family {text!r} ({exc}); use GL:3, Sp:4, Orth:5 or U:2,1")


def _weights(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"weights must be comma-separated integers, got {text!r}")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


class SchemaAction(argparse.Action):
    """Print the JSON schema of the subcommand's report and exit."""

    def __init__(self, option_strings, dest, command: str = "", **kwargs):
        self.command = command
        super().__init__(option_strings, dest, nargs=0, default=argparse.SUPPRESS, **kwargs)

    def __call__(self, parser, namespace, values, option_string=None):
        from .schemas import schema_for

        print(json.dumps(schema_for(self.command), sort_keys=True, indent=2))
        parser.exit(EXIT_OK)


def _add_schema(p: argparse.ArgumentParser, command: str) -> None:
    p.add_argument("--schema", action=SchemaAction, command=command,
                   help="print the JSON schema of this command's output and exit")


def _resolve(args, plain: str, transposed: str, required: bool = True) -> Optional[Partition]:
    a, b = getattr(args, plain, None), getattr(args, transposed, None)
    if a is not None and b is not None:
        raise InvalidInputError(f"give --{plain.replace('_', '-')} or --{transposed.replace('_', '-')}, not both")
    if a is None and b is None:
        if required:
            raise InvalidInputError(f"missing --{plain.replace('_', '-')} (or --{transposed.replace('_', '-')})")
        return None
    return a if a is not None else transpose(b)


def _both(lam: Partition) -> dict:
    return {"lambda": lam.to_json(), "lambda_t": transpose(lam).to_json()}


# --- handlers -----------------------------------------------------------------

def cmd_check(args) -> CliResult:
    model = args.model
    pi = _resolve(args, "pi", "pi_t", required=model not in ("parabolic-lr",))
    shown = {}
    if model in ("rankin-selberg", "bessel", "derivative", "theta-match"):
        tau = _resolve(args, "tau", "tau_t")
        shown = {"pi": _both(pi), "tau": _both(tau)}
        if model == "derivative":
            verdict = derivative_bounds(pi, tau, args.variant)
        elif model == "theta-match":
            verdict = theta_match(pi, tau)
        else:
            verdict = rs_bessel_compatible(pi, tau, args.family_pi, args.family_tau,
                                           model="RankinSelberg" if model == "rankin-selberg" else "Bessel")
    elif model == "klyachko":
        if args.k is None:
            raise InvalidInputError("klyachko needs --k")
        n = args.n if args.n is not None else (pi.size - args.k) // 2
        verdict = klyachko_check(pi, n, args.k)
        shown = {"pi": _both(pi), "n": n, "k": args.k}
    elif model == "shalika":
        verdict = shalika_check(pi)
        shown = {"pi": _both(pi)}
    elif model == "ginzburg-rallis":
        verdict = ginzburg_rallis_check(pi)
        shown = {"pi": _both(pi)}
    elif model == "parabolic-lr":
        lam = pi if pi is not None else args.lam
        if lam is None or args.mu is None or args.nu is None:
            raise InvalidInputError("parabolic-lr needs --lambda (or --pi), --mu and --nu")
        verdict = parabolic_lr_check(lam, args.mu, args.nu)
        shown = {"lambda": _both(lam), "mu": _both(args.mu), "nu": _both(args.nu)}
    elif model == "whittaker":
        if args.mu_chi is None:
            raise InvalidInputError("whittaker needs --mu-chi")
        verdict = whittaker_closure_check(pi, args.mu_chi)
        shown = {"pi": _both(pi), "mu_chi": _both(args.mu_chi)}
    else:  # pragma: no cover - argparse restricts choices
        raise InvalidInputError(f"unknown model {model}")
    payload = verdict.to_json()
    payload["inputs_transposed"] = shown
    code = EXIT_OK if verdict.passed else EXIT_FAIL
    summary = f"{verdict.model}: {'pass' if verdict.passed else 'FAIL'} ({verdict.detail})"
    return CliResult(payload, code, summary)


def cmd_lr(args) -> CliResult:
    c = lr_coefficient(args.lam, args.mu, args.nu)
    return CliResult({"coefficient": c}, EXIT_OK, f"c^{args.lam}_{{{args.mu},{args.nu}}} = {c}")


def cmd_lr_support(args) -> CliResult:
    sup = lr_support(args.mu, args.nu)
    return CliResult({"support": [lam.to_json() for lam in sup]}, EXIT_OK,
                     f"{len(sup)} partitions in the support of s_{args.mu} s_{args.nu}")


def build_slice(model: str, args, field):
    from .matrixlab import slices as S

    if model == "rankin-selberg":
        if args.n is None or args.k is None or args.T is None:
            raise InvalidInputError("rankin-selberg scan needs --n, --k and --T")
        return S.rs_slice(args.n, args.k, args.T, field)
    if model == "bessel":
        if args.dim_v is None or args.k is None:
            raise InvalidInputError("bessel scan needs --dim-v and --k")
        reps = S.bessel_nilpotent_types(args.dim_v, args.k, field if str(field) != "Q" else 5)
        t_type = args.T if args.T is not None else next(iter(reps))
        if t_type not in reps:
            raise InvalidInputError(f"no nilpotent T of type {t_type} in the Bessel subalgebra; "
                                    f"available: {[str(t) for t in reps]}")
        return S.bessel_slice_orth(args.dim_v, args.k, reps[t_type], field)
    if model == "klyachko":
        if args.n is None or args.k is None:
            raise InvalidInputError("klyachko scan needs --n and --k")
        return S.klyachko_slice(args.n, args.k, field)
    if model == "shalika":
        if args.n is None:
            raise InvalidInputError("shalika scan needs --n")
        return S.shalika_slice(args.n, field)
    if model == "ginzburg-rallis":
        return S.gr_slice(field)
    if model == "whittaker":
        if args.weights is None:
            raise InvalidInputError("whittaker scan needs --weights")
        return S.whittaker_slice(args.weights, None, field)
    if model == "parabolic":
        if args.mu is None or args.nu is None:
            raise InvalidInputError("parabolic scan needs --mu and --nu")
        return S.parabolic_slice(args.mu, args.nu, field)
    if model == "pardim":
        if args.lam is None or args.n is None:
            raise InvalidInputError("pardim scan needs --lambda and --n")
        return S.pardim_slice(args.lam, args.n, field)
    if model == "torus":
        return S.torus_slice(args.n or 2, field)
    raise InvalidInputError(f"unknown scan model {model}")


def scan_status(report) -> str:
    if not report.violations:
        return "pass"
    return "advisory-violation" if report.advisory else "violation"


def cmd_scan(args) -> CliResult:
    from .matrixlab.fields import parse_field
    from .matrixlab.scan import scan_slice

    field = parse_field(args.field)
    spec = build_slice(args.model, args, field)
    report = scan_slice(spec, budget=args.budget, seed=args.seed, workers=args.workers)
    payload = report.to_json()
    payload["seed_used"] = payload.pop("seed")
    payload["status"] = scan_status(report)
    if args.plot:
        from .plotting import plot_histogram

        plot_histogram(payload, args.plot)
    code = EXIT_FAIL if report.authoritative_failure else EXIT_OK
    summary = (f"{report.label} over {report.field}: {report.mode}, {report.points_visited} points, "
               f"{report.nilpotent_count} nilpotent, {len(report.histogram)} types, "
               f"{len(report.violations)} violations ({payload['status']})")
    return CliResult(payload, code, summary)


def quot_fuzz(trials: int, max_size: int, seed: int, field) -> dict:
    """Random (Y, v) with Y nilpotent of random type; checks the quotient bound."""
    from .matrixlab.jordan import cyclic_quotient_type, random_nilpotent
    from .matrixlab.fields import PrimeField

    rng = random.Random(f"quot|{seed}|{field}")
    parts_by_size = {n: list(partitions_of(n)) for n in range(1, max_size + 1)}
    violations, examples = 0, []
    for t in range(trials):
        n = rng.randint(1, max_size)
        lam = rng.choice(parts_by_size[n])
        y = random_nilpotent(lam, field, seed=rng.randrange(1 << 30))
        if isinstance(field, PrimeField):
            v = [rng.randrange(field.p) for _ in range(n)]
        else:
            v = [rng.randint(-3, 3) for _ in range(n)]
        try:
            nu, nu_p = cyclic_quotient_type(y, v)
        except RuntimeError as exc:
            violations += 1
            if len(examples) < 5:
                examples.append({"trial": t, "lambda": lam.to_json(), "v": v, "error": str(exc)})
            continue
        if t < 3:
            examples.append({"trial": t, "nu": nu.to_json(), "nu_prime": nu_p.to_json()})
    return {"trials": trials, "violations": violations, "field": str(field), "max_size": max_size,
            "examples": examples}


def cmd_oracle_quot(args) -> CliResult:
    from .matrixlab.fields import parse_field

    if args.size < 1 or args.size > 10:
        raise InvalidInputError("--size must be between 1 and 10")
    out = quot_fuzz(args.trials, args.size, args.seed, parse_field(args.field))
    code = EXIT_FAIL if out["violations"] else EXIT_OK
    return CliResult(out, code, f"quotient bound: {out['violations']} violations in {args.trials} trials")


def cmd_oracle_interlace(args) -> CliResult:
    from .matrixlab.fields import parse_field
    from .matrixlab.jordan import extended_matrix, interlace_witness, jordan_type
    from .matrixlab.matrix import jordan_matrix

    field = parse_field(args.field)
    a = interlace_witness(args.lam, args.lamp, field)
    kp = extended_matrix(jordan_matrix(args.lam, field), a)
    got = jordan_type(kp)
    ok = got == args.lamp
    payload = {"lambda": args.lam.to_json(), "lambda_prime": args.lamp.to_json(),
               "A": a.to_json()["rows"], "K_prime": kp.to_json()["rows"],
               "jordan_type": got.to_json(), "round_trip": ok}
    return CliResult(payload, EXIT_OK if ok else EXIT_FAIL, f"interlace witness: type {got}, round trip {ok}")


def cmd_theta_witness(args) -> CliResult:
    from .matrixlab.fields import parse_field
    from .matrixlab.jordan import jordan_type, theta_witness

    field = parse_field(args.field)
    x, y = theta_witness(args.l1, args.l2, field)
    t1, t2 = jordan_type(y @ x), jordan_type(x @ y)
    ok = t1 == args.l1 and t2 == args.l2
    payload = {"lambda1": args.l1.to_json(), "lambda2": args.l2.to_json(),
               "X": x.to_json()["rows"], "Y": y.to_json()["rows"],
               "type_YX": t1.to_json(), "type_XY": t2.to_json(), "round_trip": ok}
    return CliResult(payload, EXIT_OK if ok else EXIT_FAIL, f"theta witness: YX {t1}, XY {t2}")


def cmd_theta_max(args) -> CliResult:
    top = theta_max_match(args.l1, args.l1.size, args.dim_w)
    return CliResult({"lambda1": args.l1.to_json(), "dim_w": args.dim_w, "max_match": top.to_json()},
                     EXIT_OK, f"dominance-largest match of {args.l1} in gl_{args.dim_w}: {top}")


def theta_match_set(dim_v: int, dim_w: int) -> set[tuple[Partition, Partition]]:
    return {(a, b) for a in partitions_of(dim_v) for b in partitions_of(dim_w) if theta_match(a, b).passed}


def cmd_theta_scan(args) -> CliResult:
    from .matrixlab.scan import scan_theta_pairs

    report = scan_theta_pairs(args.dim_v, args.dim_w, args.field, budget=args.budget, workers=args.workers)
    expected = theta_match_set(args.dim_v, args.dim_w)
    found = report.pairs
    payload = report.to_json()
    payload["match_set_equal"] = found == expected
    payload["missing_pairs"] = [[a.to_json(), b.to_json()] for a, b in sorted(expected - found, reverse=True)]
    payload["unexpected_pairs"] = [[a.to_json(), b.to_json()] for a, b in sorted(found - expected, reverse=True)]
    code = EXIT_OK if found == expected else EXIT_FAIL
    return CliResult(payload, code, f"theta pairs over {report.field}: {len(found)} found, "
                                    f"{len(expected)} matching, equal={found == expected}")


def dimension_report(target: str, args):
    from .matrixlab import dimension as D

    if target == "pardim":
        if args.lam is None or args.lamp is None:
            raise InvalidInputError("pardim needs --lambda and --lambda-prime")
        return D.estimate_pardim(args.lam, args.lamp, args.q1, args.q2)
    if target == "torus":
        return D.estimate_torus(args.q1, args.q2)
    if args.l1 is None or args.l2 is None:
        raise InvalidInputError("theta needs --l1 and --l2")
    return D.estimate_theta(args.l1, args.l2, args.q1, args.q2)


def cmd_dim(args) -> CliResult:
    try:
        rep = dimension_report(args.target, args)
    except InconclusiveError as exc:
        return CliResult({"target": args.target, "status": "inconclusive", "reason": str(exc)},
                         EXIT_FAIL, f"inconclusive: {exc}")
    payload = rep.to_json()
    payload["status"] = "pass" if rep.agrees else "fail"
    return CliResult(payload, EXIT_OK if rep.agrees else EXIT_FAIL,
                     f"{args.target}: raw {rep.fit.raw:.3f} -> {rep.fit.value}, predicted {rep.predicted}")


def _load_matrix(text: str):
    from .matrixlab.matrix import ExactMatrix

    path = Path(text)
    source = path.read_text() if not text.lstrip().startswith(("[", "{")) and path.exists() else text
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"--matrix is neither a JSON file nor inline JSON: {exc}")
    return ExactMatrix.from_json(data)


def cmd_jordan(args) -> CliResult:
    from .matrixlab.jordan import _int_rows, _power_ranks, jordan_type

    mat = _load_matrix(args.matrix)
    if args.field is not None:
        from .matrixlab.fields import parse_field

        mat = mat.to_field(parse_field(args.field))
    lam = jordan_type(mat)
    rows, p = _int_rows(mat)
    ranks = _power_ranks(rows, p) if rows else [0]
    payload = {"field": str(mat.field), "size": mat.nrows, "jordan_type": lam.to_json(),
               "transpose": transpose(lam).to_json(), "power_ranks": ranks}
    return CliResult(payload, EXIT_OK, f"Jordan type {lam} (transpose {transpose(lam)})")


def cmd_report(args) -> CliResult:
    from .report import run_report

    payload = run_report(Path(args.out), field=args.field, budget=args.budget, seed=args.seed,
                         workers=args.workers)
    code = EXIT_OK if payload["status"] == "pass" else EXIT_FAIL
    return CliResult(payload, code, f"report in {args.out}: {len(payload['rows'])} rows, {payload['status']}")


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from .matrixlab.scan import DEFAULT_SEED

    parser = argparse.ArgumentParser(prog="orbit-gate", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"orbit-gate {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run a partition gate for one model")
    p.add_argument("model", choices=CHECK_MODELS)
    p.add_argument("--pi", type=_partition, help="partition of pi (the larger group)")
    p.add_argument("--pi-t", type=_partition, help="transpose of the partition of pi")
    p.add_argument("--tau", type=_partition, help="partition of tau (the smaller group)")
    p.add_argument("--tau-t", type=_partition, help="transpose of the partition of tau")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--variant", default="B", choices=["B", "E", "b", "e"], help="derivative variant")
    p.add_argument("--family-pi", type=_family, help="validate pi against a family, e.g. Orth:5")
    p.add_argument("--family-tau", type=_family, help="validate tau against a family, e.g. Sp:4")
    p.add_argument("--lambda", dest="lam", type=_partition)
    p.add_argument("--mu", type=_partition)
    p.add_argument("--nu", type=_partition)
    p.add_argument("--mu-chi", type=_partition, help="Jordan type of the Whittaker character")
    _add_schema(p, "check")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("lr", help="Littlewood-Richardson coefficient")
    p.add_argument("--lambda", dest="lam", type=_partition, required=True)
    p.add_argument("--mu", type=_partition, required=True)
    p.add_argument("--nu", type=_partition, required=True)
    _add_schema(p, "lr")
    p.set_defaults(handler=cmd_lr)

    p = sub.add_parser("lr-support", help="all lambda with a positive LR coefficient")
    p.add_argument("--mu", type=_partition, required=True)
    p.add_argument("--nu", type=_partition, required=True)
    _add_schema(p, "lr-support")
    p.set_defaults(handler=cmd_lr_support)

    p = sub.add_parser("scan", help="histogram nilpotent Jordan types on a model slice")
    p.add_argument("model", choices=SCAN_MODELS)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--T", type=_partition, help="Jordan type of T (for bessel: its type on X-perp in U)")
    p.add_argument("--dim-v", type=int)
    p.add_argument("--weights", type=_weights)
    p.add_argument("--lambda", dest="lam", type=_partition)
    p.add_argument("--mu", type=_partition)
    p.add_argument("--nu", type=_partition)
    p.add_argument("--field", default="5", help="Q, or a prime such as 5 or F5 (default 5)")
    p.add_argument("--budget", type=_positive, default=None, help="point budget (env ORBIT_GATE_BUDGET)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=_positive, default=1, help="threads; never changes the output")
    p.add_argument("--plot", help="write a histogram PNG to this path")
    _add_schema(p, "scan")
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("oracle", help="matrix oracles")
    osub = p.add_subparsers(dest="oracle", required=True)
    q = osub.add_parser("quot", help="fuzz the cyclic quotient bound")
    q.add_argument("--trials", type=_positive, default=10000)
    q.add_argument("--size", type=int, default=6, help="maximum matrix size")
    q.add_argument("--seed", type=int, default=DEFAULT_SEED)
    q.add_argument("--field", default="Q")
    _add_schema(q, "oracle quot")
    q.set_defaults(handler=cmd_oracle_quot)
    q = osub.add_parser("interlace", help="build and verify an interlacing witness")
    q.add_argument("--lam", type=_partition, required=True)
    q.add_argument("--lamp", type=_partition, required=True)
    q.add_argument("--field", default="Q")
    _add_schema(q, "oracle interlace")
    q.set_defaults(handler=cmd_oracle_interlace)

    p = sub.add_parser("theta", help="matrix pairs (X, Y) with prescribed YX and XY")
    tsub = p.add_subparsers(dest="theta", required=True)
    q = tsub.add_parser("witness", help="construct (X, Y) for a matching pair")
    q.add_argument("--l1", type=_partition, required=True)
    q.add_argument("--l2", type=_partition, required=True)
    q.add_argument("--field", default="Q")
    _add_schema(q, "theta witness")
    q.set_defaults(handler=cmd_theta_witness)
    q = tsub.add_parser("max-match", help="dominance-largest partition matching l1")
    q.add_argument("--l1", type=_partition, required=True)
    q.add_argument("--dim-w", type=int, required=True)
    _add_schema(q, "theta max-match")
    q.set_defaults(handler=cmd_theta_max)
    q = tsub.add_parser("scan", help="exhaustive scan of all pairs over a small field")
    q.add_argument("--dim-v", type=int, required=True)
    q.add_argument("--dim-w", type=int, required=True)
    q.add_argument("--field", default="2")
    q.add_argument("--budget", type=_positive, default=None)
    q.add_argument("--workers", type=_positive, default=1)
    _add_schema(q, "theta scan")
    q.set_defaults(handler=cmd_theta_scan)

    p = sub.add_parser("dim-estimate", help="dimension from point counts at two primes")
    p.add_argument("target", choices=DIM_TARGETS)
    p.add_argument("--q1", type=int, default=5)
    p.add_argument("--q2", type=int, default=7)
    p.add_argument("--lambda", dest="lam", type=_partition)
    p.add_argument("--lambda-prime", dest="lamp", type=_partition)
    p.add_argument("--l1", type=_partition)
    p.add_argument("--l2", type=_partition)
    _add_schema(p, "dim-estimate")
    p.set_defaults(handler=cmd_dim)

    p = sub.add_parser("jordan", help="Jordan type of a nilpotent matrix")
    p.add_argument("--matrix", required=True, help='JSON file or inline {"rows": [[...]], "field": "Q"}')
    p.add_argument("--field", default=None, help="override the matrix field")
    _add_schema(p, "jordan")
    p.set_defaults(handler=cmd_jordan)

    p = sub.add_parser("report", help="run the standard battery and write CSV, JSON and figures")
    p.add_argument("--out", required=True)
    p.add_argument("--field", default="5")
    p.add_argument("--budget", type=_positive, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--workers", type=_positive, default=1)
    _add_schema(p, "report")
    p.set_defaults(handler=cmd_report)
    return parser


NON_OUTPUT_ARGS = {"handler", "workers", "command", "oracle", "theta"}


def _jsonable(value):
    if isinstance(value, Partition):
        return value.to_json()
    if isinstance(value, GroupFamily):
        return value.to_json()
    return value


def command_name(args) -> str:
    parts = [args.command]
    for extra in ("oracle", "theta", "model", "target"):
        val = getattr(args, extra, None)
        if val is not None:
            parts.append(val)
    return " ".join(parts)


def envelope(args, body: dict) -> dict:
    inputs = {k: _jsonable(v) for k, v in sorted(vars(args).items()) if k not in NON_OUTPUT_ARGS}
    if getattr(args, "command", None) == "scan" and inputs.get("budget") is None:
        from .matrixlab.scan import default_budget

        inputs["budget"] = default_budget()
    out = dict(body)
    # envelope keys win; a scan's own seed (null when exhaustive) moves to seed_used
    out.update({"tool_version": __version__, "command": command_name(args), "inputs": inputs,
                "seed": getattr(args, "seed", None)})
    return out


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    sys.stdout.flush()


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    handler: Callable = args.handler
    try:
        result = handler(args)
    except InvalidInputError as exc:
        _emit(envelope(args, {"error": str(exc), "exit_code": EXIT_INVALID}))
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001 - exit code 1 is the documented catch-all
        _emit(envelope(args, {"error": f"{type(exc).__name__}: {exc}", "exit_code": EXIT_INTERNAL}))
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(envelope(args, result.payload))
    print(result.summary, file=sys.stderr)
    return result.code


def console() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console()
