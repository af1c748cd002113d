"""Command-line surface.

State files are JSON with exactly one variant key:

* ``{"matrix": {"dim": d, "re": rows, "im": rows}}``: explicit density matrix;
* ``{"bloch": [x, y, z]}``: qubit Bloch vector;
* ``{"ket": {"re": [...], "im": [...]}}``: pure-state amplitudes;
* ``{"gaussian": {"beta": b, "q": q, "p": p, "r": r, "phi": phi}}``:
  single-mode Gaussian state (``beta`` may be the string ``"inf"``);
* ``{"probs": [...]}``: classical distribution (for the classical branch of
  the ``chernoff`` subcommand).

Single results go to stdout as JSON with 12-significant-digit numerics;
sweeps go to CSV files ('.' decimal separator, ',' field separator, header
row).  Exit codes: 0 success, 2 validation error, 3 numeric-domain error.
Reruns with identical arguments and seed are byte-identical.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys

import numpy as np

from . import __version__
from .chernoff import (
    bounds_report,
    classical_chernoff,
    helstrom_error,
    quantum_chernoff,
    quantum_chernoff_weighted,
)
from .errors import NumericDomainError, ValidationError
from .gaussian import (
    GaussianState,
    ds2_gaussian,
    gaussian_chernoff,
    jeffreys_qc_gaussian,
    overlap,
)
from .geometry import (
    cd_constant,
    ds2_bures,
    ds2_cc,
    ds2_qc,
    geodesic_qc_qubit,
    sample_density_qc,
)
from .localdisc import d_cc_pure, d_cc_qubit
from .matcore import require_hermitian
from .multicopy import helstrom_ncopy_qubit, pure_ncopy_error, rate_extrapolate
from .states import (
    DiscreteDistribution,
    QubitState,
    _complex_from_parts,
    density_from_spec,
    to_bloch,
)


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from exc


def _parse_state_file(path: str):
    """Returns (kind, value) with kind in {density, gaussian, probs}."""
    spec = _load_json(path)
    if not isinstance(spec, dict):
        raise ValidationError(f"{path}: state spec must be a JSON object")
    if "gaussian" in spec:
        body = spec["gaussian"]
        beta = body.get("beta", "inf")
        if isinstance(beta, str):
            if beta.lower() not in ("inf", "infinity"):
                raise ValidationError(f"{path}: unrecognized beta {beta!r}")
            beta = math.inf
        return "gaussian", GaussianState(
            beta=float(beta),
            displacement=np.array([body.get("q", 0.0), body.get("p", 0.0)]),
            squeeze_r=float(body.get("r", 0.0)),
            squeeze_phi=float(body.get("phi", 0.0)),
        )
    if "probs" in spec:
        return "probs", DiscreteDistribution.from_probs(spec["probs"])
    return "density", density_from_spec(spec)


def _require_qubit(kind: str, value, path: str) -> QubitState:
    if kind != "density" or value.dim != 2:
        raise ValidationError(f"{path}: a qubit state is required here")
    return to_bloch(value)


def _format_number(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "0"
    return format(float(x), ".12g")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if math.isinf(x) or math.isnan(x):
            return _format_number(x)
        return float(_format_number(x))
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    return obj


def _emit(command: str, inputs: dict, results: dict, seed: int | None = None) -> None:
    record = {
        "command": command,
        "inputs": inputs,
        "results": _jsonable(results),
        "version": __version__,
    }
    if seed is not None:
        record["seed"] = int(seed)
    sys.stdout.write(json.dumps(record, sort_keys=True) + "\n")


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_format_number(x) for x in row) + "\n")


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_chernoff(args) -> None:
    kind_a, a = _parse_state_file(args.a)
    kind_b, b = _parse_state_file(args.b)
    if kind_a != kind_b:
        raise ValidationError("both inputs must be of the same kind")
    inputs = {"a": _digest(args.a), "b": _digest(args.b)}
    if kind_a == "probs":
        res = classical_chernoff(a, b)
        family = "classical"
    elif kind_a == "gaussian":
        res = gaussian_chernoff(a, b)
        family = "gaussian"
    else:
        res = quantum_chernoff(a, b)
        family = "quantum"
    results = {
        "family": family,
        "q": res.q,
        "s_star": res.s_star,
        "exponent": res.exponent,
    }
    if args.pi0 is not None and family == "quantum":
        results["weighted_bound"] = quantum_chernoff_weighted(a, b, args.pi0)
    _emit("chernoff", inputs, results)


def _cmd_helstrom(args) -> None:
    _, a = _expect_density(args.a)
    _, b = _expect_density(args.b)
    pe = helstrom_error(a, b, args.pi0)
    _emit(
        "helstrom",
        {"a": _digest(args.a), "b": _digest(args.b)},
        {"pe": pe, "pi0": args.pi0},
    )


def _expect_density(path: str):
    kind, value = _parse_state_file(path)
    if kind != "density":
        raise ValidationError(f"{path}: a density-matrix state is required")
    return kind, value


def _cmd_bounds(args) -> None:
    _, a = _expect_density(args.a)
    _, b = _expect_density(args.b)
    rep = bounds_report(a, b)
    _emit(
        "bounds",
        {"a": _digest(args.a), "b": _digest(args.b)},
        {
            "helstrom_pe": rep.helstrom_pe,
            "p_qc": rep.p_qc,
            "half_overlap_root": rep.half_overlap_root,
            "fidelity": rep.fidelity,
            "fid_upper_pe": rep.fid_upper_pe,
            "fid_lower_pe": rep.fid_lower_pe,
        },
    )


def _cmd_dcc(args) -> None:
    kind_a, a = _parse_state_file(args.a)
    kind_b, b = _parse_state_file(args.b)
    qa = _require_qubit(kind_a, a, args.a)
    qb = _require_qubit(kind_b, b, args.b)
    inputs = {"a": _digest(args.a), "b": _digest(args.b)}
    if qa.is_pure() and qb.is_pure():
        _emit("dcc", inputs, {"d_cc": d_cc_pure(qa, qb), "regime": "unanimity"})
        return
    res = d_cc_qubit(qa, qb)
    _emit(
        "dcc",
        inputs,
        {"d_cc": res.d_cc, "s_star": res.s_star, "regime": res.regime},
    )


def _ncopy_error(qa: QubitState, qb: QubitState, n: int, pi0: float) -> float:
    if qa.is_pure() and qb.is_pure():
        return pure_ncopy_error(qa, qb, n, pi0)
    return helstrom_ncopy_qubit(qa, qb, n, pi0)


def _cmd_multicopy(args) -> None:
    kind_a, a = _parse_state_file(args.a)
    kind_b, b = _parse_state_file(args.b)
    qa = _require_qubit(kind_a, a, args.a)
    qb = _require_qubit(kind_b, b, args.b)
    inputs = {"a": _digest(args.a), "b": _digest(args.b)}
    if args.n is not None:
        pe = _ncopy_error(qa, qb, args.n, args.pi0)
        _emit("multicopy", inputs, {"n": args.n, "pe": pe, "pi0": args.pi0})
        return
    if args.n_min is None or args.n_max is None:
        raise ValidationError("provide either --n or both --n-min and --n-max")
    if args.n_max < args.n_min:
        raise ValidationError("--n-max must not be below --n-min")
    ns = list(range(args.n_min, args.n_max + 1))
    pes = [_ncopy_error(qa, qb, n, args.pi0) for n in ns]
    if args.out:
        _write_csv(args.out, ["n", "pe"], zip(ns, pes))
    results: dict = {"n_min": args.n_min, "n_max": args.n_max, "pi0": args.pi0}
    if not args.out:
        results["pe"] = pes
    if args.extrapolate:
        fit = rate_extrapolate(list(zip(ns, pes)))
        results["slope"] = fit.slope
        results["intercept"] = fit.intercept
        results["residual"] = fit.residual
    _emit("multicopy", inputs, results)


def _cmd_constants(args) -> None:
    _emit("constants", {}, {"d": args.cd, "c_d": cd_constant(args.cd)})


def _cmd_metric(args) -> None:
    _, rho = _expect_density(args.state)
    spec = _load_json(args.direction)
    if not isinstance(spec, dict) or "matrix" not in spec:
        raise ValidationError(
            f"{args.direction}: direction file must hold a 'matrix' spec"
        )
    drho = require_hermitian(
        _complex_from_parts(spec["matrix"], "matrix"), "direction"
    )
    fn = {"qc": ds2_qc, "bures": ds2_bures, "cc": ds2_cc}[args.which]
    _emit(
        "metric",
        {"state": _digest(args.state), "direction": _digest(args.direction)},
        {"which": args.which, "ds2": fn(rho, drho)},
    )


def _cmd_geodesic(args) -> None:
    kind_a, a = _parse_state_file(args.a)
    kind_b, b = _parse_state_file(args.b)
    qa = _require_qubit(kind_a, a, args.a)
    qb = _require_qubit(kind_b, b, args.b)
    _emit(
        "geodesic",
        {"a": _digest(args.a), "b": _digest(args.b)},
        {"distance": geodesic_qc_qubit(qa, qb)},
    )


def _cmd_sample(args) -> None:
    if args.prior != "qc":
        raise ValidationError(f"unknown prior {args.prior!r}")
    rng = np.random.default_rng(args.seed)
    rows = []
    for index in range(args.count):
        rho = sample_density_qc(args.d, rng)
        flat = rho.mat.ravel()
        rows.append([float(index)] + list(flat.real) + list(flat.imag))
    header = (
        ["index"]
        + [f"re_{i}_{j}" for i in range(args.d) for j in range(args.d)]
        + [f"im_{i}_{j}" for i in range(args.d) for j in range(args.d)]
    )
    _write_csv(args.out, header, rows)
    _emit(
        "sample",
        {},
        {"d": args.d, "count": args.count, "prior": args.prior, "out": args.out},
        seed=args.seed,
    )


def _expect_gaussian(path: str) -> GaussianState:
    kind, value = _parse_state_file(path)
    if kind != "gaussian":
        raise ValidationError(f"{path}: a gaussian state is required")
    return value


def _cmd_gaussian(args) -> None:
    if args.mode == "chernoff":
        a = _expect_gaussian(args.a)
        b = _expect_gaussian(args.b)
        res = gaussian_chernoff(a, b)
        _emit(
            "gaussian chernoff",
            {"a": _digest(args.a), "b": _digest(args.b)},
            {"q": res.q, "s_star": res.s_star, "exponent": res.exponent},
        )
    elif args.mode == "overlap":
        a = _expect_gaussian(args.a)
        b = _expect_gaussian(args.b)
        _emit(
            "gaussian overlap",
            {"a": _digest(args.a), "b": _digest(args.b)},
            {"overlap": overlap(a, b)},
        )
    elif args.mode == "metric":
        g = _expect_gaussian(args.state)
        value = ds2_gaussian(
            args.which, g, dbeta=args.dbeta, dq=args.dq, dp=args.dp,
            dr=args.dr, dphi=args.dphi,
        )
        _emit(
            "gaussian metric",
            {"state": _digest(args.state)},
            {"which": args.which, "ds2": value},
        )
    else:  # prior
        _emit(
            "gaussian prior",
            {},
            {"beta": args.beta, "r": args.r,
             "density": jeffreys_qc_gaussian(args.beta, args.r)},
        )


def _cmd_figure1(args) -> None:
    theta = args.theta
    steps = args.steps
    if steps < 2:
        raise ValidationError("need at least two grid points")
    rows = []
    for k in range(steps):
        r = k / steps
        fid = 1.0 - (r * math.sin(theta / 2.0)) ** 2
        fid_lower = -0.5 * math.log(fid)
        fid_upper = -math.log(fid)
        q0 = QubitState.from_vector((0.0, 0.0, r))
        q1 = QubitState.from_vector(
            (r * math.sin(theta), 0.0, r * math.cos(theta))
        )
        d_qc = quantum_chernoff(q0.to_density(), q1.to_density()).exponent
        d_cc = 0.0 if r == 0.0 else d_cc_qubit(q0, q1).d_cc
        rows.append((r, d_qc, d_cc, fid_lower, fid_upper))
    _write_csv(args.out, ["r", "d_qc", "d_cc", "fid_lower", "fid_upper"], rows)
    _emit(
        "figure1",
        {},
        {"theta": theta, "steps": steps, "out": args.out},
    )


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qchernoff",
        description="Distinguishability quantities for quantum states",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def _pair(p):
        p.add_argument("--a", required=True, help="first state file")
        p.add_argument("--b", required=True, help="second state file")

    p = sub.add_parser("chernoff", help="Chernoff bound (kind auto-detected)")
    _pair(p)
    p.add_argument("--pi0", type=float, default=None,
                   help="also report the prior-weighted quantum bound")
    p.set_defaults(func=_cmd_chernoff)

    p = sub.add_parser("helstrom", help="single-shot minimum error probability")
    _pair(p)
    p.add_argument("--pi0", type=float, default=0.5)
    p.set_defaults(func=_cmd_helstrom)

    p = sub.add_parser("bounds", help="full error-probability bound chain")
    _pair(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("dcc", help="local-measurement exponent for qubits")
    _pair(p)
    p.set_defaults(func=_cmd_dcc)

    p = sub.add_parser("multicopy", help="exact N-copy error probabilities")
    _pair(p)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--pi0", type=float, default=0.5)
    p.add_argument("--extrapolate", action="store_true")
    p.add_argument("--out", default=None, help="CSV output for sweeps")
    p.set_defaults(func=_cmd_multicopy)

    p = sub.add_parser("constants", help="eigenvalue-density normalization")
    p.add_argument("--cd", type=int, required=True, metavar="D")
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("metric", help="infinitesimal line element")
    p.add_argument("--which", choices=("qc", "bures", "cc"), required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--direction", required=True,
                   help="JSON file with a traceless Hermitian 'matrix' spec")
    p.set_defaults(func=_cmd_metric)

    p = sub.add_parser("geodesic", help="qubit geodesic distance")
    _pair(p)
    p.set_defaults(func=_cmd_geodesic)

    p = sub.add_parser("sample", help="random density matrices")
    p.add_argument("--prior", choices=("qc",), required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="CSV output file")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("gaussian", help="single-mode Gaussian quantities")
    gsub = p.add_subparsers(dest="mode", required=True)
    for mode in ("chernoff", "overlap"):
        gp = gsub.add_parser(mode)
        _pair(gp)
        gp.set_defaults(func=_cmd_gaussian, mode=mode)
    gp = gsub.add_parser("metric")
    gp.add_argument("--which", choices=("qc", "cc"), required=True)
    gp.add_argument("--state", required=True)
    for name in ("dbeta", "dq", "dp", "dr", "dphi"):
        gp.add_argument(f"--{name}", type=float, default=0.0)
    gp.set_defaults(func=_cmd_gaussian, mode="metric")
    gp = gsub.add_parser("prior")
    gp.add_argument("--beta", type=float, required=True)
    gp.add_argument("--r", type=float, required=True)
    gp.set_defaults(func=_cmd_gaussian, mode="prior")

    p = sub.add_parser("figure1", help="bound-chain sweep over qubit purity")
    p.add_argument("--theta", type=float, default=math.pi / 2.0)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_figure1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
