"""Command-line front end: ``tcompile <subcommand> ...``.

Exit status: 0 on success, 2 when synthesis fails, 3 when verification fails.
"""

from __future__ import annotations

import argparse
import json
import sys

import mpmath

from .bench import bench_mixed, bench_unitary, bench_zrot, mixed_slope, slopes, to_csv
from .chanmetrics import dnorm_unitary_pair
from .circuit import Circuit
from .config import SynthesisConfig
from .errors import SynthesisFailure, VerificationError
from .mpnum import load_matrix, parse_angle, working_digits
from .pipeline import approximate_unitary, qubit_count

EXIT_OK, EXIT_SYNTHESIS, EXIT_VERIFY = 0, 2, 3


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _emit(obj, out=None) -> None:
    print(json.dumps(obj, indent=2), file=out or sys.stdout)


def _config(args) -> SynthesisConfig:
    return SynthesisConfig(seed=getattr(args, "seed", 0), up_to_phase=getattr(args, "up_to_phase", False),
                           factor_budget=getattr(args, "factor_budget", None),
                           absorb=not getattr(args, "no_absorb", False))


# -- subcommands ------------------------------------------------------------------


def cmd_zrot(args) -> int:
    from .zrot import synthesize_rz

    eps = mpmath.mpf(args.epsilon)
    with mpmath.workdps(working_digits(eps)):
        theta = parse_angle(args.theta)
        r = synthesize_rz(theta, eps, up_to_phase=args.up_to_phase, seed=args.seed, factor_budget=args.factor_budget)
        if args.json:
            _emit({"gates": r.word, "t_count": r.tcount, "error": mpmath.nstr(r.error, 6), "k": r.k,
                   "candidates": r.candidates, "theta": mpmath.nstr(theta, 30), "epsilon": args.epsilon})
        else:
            print(r.word)
    return EXIT_OK


def _synth_and_emit(u, n: int, args, partial: bool = False) -> int:
    cfg = _config(args)
    eps = mpmath.mpf(args.epsilon)
    if partial:
        from .twoqubit import approximate_two_qubit

        with mpmath.workdps(working_digits(eps)):
            r = approximate_two_qubit(u, eps, partial=True, backend=cfg.backend())
            bank = r.bank
            out = {"circuit": r.circuit.to_json(),
                   "phase_bank": {"phi_c": mpmath.nstr(bank.phi_c, 40), "phi_d": mpmath.nstr(bank.phi_d, 40),
                                  "psi": mpmath.nstr(bank.psi, 40)},
                   "report": {"n": 2, "epsilon": args.epsilon, "t_count": r.circuit.tcount(),
                              "gate_count": len(r.circuit), "error": mpmath.nstr(r.error, 6)}}
        _emit(out)
        return EXIT_OK
    r = approximate_unitary(u, eps, n=n, backend=cfg.backend(), absorb=cfg.absorb)
    out = {"circuit": r.circuit.to_json(), "report": r.report(cfg.seed)}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(r.circuit.to_json(), fh)
    _emit(out)
    return EXIT_OK


def cmd_su2(args) -> int:
    u = load_matrix(args.matrix)
    if u.rows != 2 or u.cols != 2:
        raise SystemExit("su2 expects a 2x2 matrix")
    return _synth_and_emit(u, 1, args)


def cmd_synth(args) -> int:
    eps = mpmath.mpf(args.epsilon)
    with mpmath.workdps(working_digits(eps)):
        u = load_matrix(args.matrix)
    n = args.qubits if args.qubits is not None else qubit_count(u)
    if args.partial and n != 2:
        raise SystemExit("--partial applies to two-qubit targets only")
    return _synth_and_emit(u, n, args, partial=args.partial)


def cmd_mixed(args) -> int:
    from .mixed import mixed_synthesis

    eps = mpmath.mpf(args.epsilon)
    with mpmath.workdps(working_digits(eps)):
        u = load_matrix(args.matrix)
    n = args.qubits if args.qubits is not None else qubit_count(u)
    r = mixed_synthesis(u, n, eps, m=args.candidates, seed=args.seed, workers=args.workers, sdp=args.sdp or None)
    _emit(r.to_json())
    return EXIT_OK


def cmd_bench_unitary(args) -> int:
    qubits = _ints(args.qubits)
    eps = _floats(args.epsilons)
    zrows = bench_zrot(eps, args.trials, args.seed, args.workers) if args.zrot else []
    urows = bench_unitary(qubits, eps, args.trials, args.seed, args.workers) if qubits else []
    rows = zrows + urows
    summary = {"slopes": {str(k): v for k, v in slopes(urows).items()},
               "violations": sum(not r.ok for r in rows), "points": len(rows)}
    if zrows:
        summary["zrot_slope"] = slopes(zrows).get(1)
    text = to_csv(rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        _emit(summary)
    else:
        sys.stdout.write(text)
        _emit(summary, sys.stderr)
    return EXIT_OK


def cmd_bench_mixed(args) -> int:
    rows = bench_mixed(_ints(args.qubits), _floats(args.epsilons), args.seed, args.candidates, args.workers)
    text = to_csv(rows)
    summary = {"slope": mixed_slope(rows) if len(rows) >= 2 else None}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        _emit(summary)
    else:
        sys.stdout.write(text)
        _emit(summary, sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    eps = mpmath.mpf(args.epsilon)
    with mpmath.workdps(working_digits(eps)):
        u = load_matrix(args.matrix)
        with open(args.circuit) as fh:
            obj = json.load(fh)
        circ = Circuit.from_json(obj.get("circuit", obj))
        if circ.wires != qubit_count(u):
            raise VerificationError(f"circuit has {circ.wires} wires, matrix has {qubit_count(u)} qubits")
        err = dnorm_unitary_pair(circ.unitary(), u)
    _emit({"error": mpmath.nstr(err, 6), "epsilon": args.epsilon, "ok": bool(err <= eps),
           "t_count": circ.tcount(), "gate_count": len(circ)})
    if err > eps:
        raise VerificationError(f"error {mpmath.nstr(err, 6)} exceeds {args.epsilon}")
    return EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tcompile", description="Arbitrary-precision Clifford+T synthesis.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, matrix: bool = True):
        if matrix:
            sp.add_argument("--matrix", required=True, help="JSON matrix file")
        sp.add_argument("--epsilon", required=True, help="diamond-norm tolerance")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--factor-budget", type=int, default=None, help="Pollard rho iteration cap")

    sp = sub.add_parser("zrot", help="approximate R_Z(theta)")
    common(sp, matrix=False)
    sp.add_argument("--theta", required=True, help='angle, e.g. "0.3" or "pi/128"')
    sp.add_argument("--up-to-phase", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_zrot)

    sp = sub.add_parser("su2", help="approximate a single-qubit unitary")
    common(sp)
    sp.add_argument("--out", help="also write the circuit JSON here")
    sp.set_defaults(func=cmd_su2)

    sp = sub.add_parser("synth", help="approximate an n-qubit unitary")
    common(sp)
    sp.add_argument("--qubits", type=int)
    sp.add_argument("--partial", action="store_true", help="two qubits: leave the diagonal bank unsynthesized")
    sp.add_argument("--no-absorb", action="store_true", help="n >= 3: full-mode synthesis at every leaf")
    sp.add_argument("--out", help="also write the circuit JSON here")
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("mixed", help="mixed synthesis: a probabilistic mixture of circuits")
    common(sp)
    sp.add_argument("--qubits", type=int)
    sp.add_argument("--candidates", type=int, default=None, help="M (default 2 * 4^n)")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--sdp", action="store_true", help="force the diamond-norm SDP for n >= 3")
    sp.set_defaults(func=cmd_mixed)

    sp = sub.add_parser("bench-unitary", help="T-count sweep against log2(1/eps)")
    sp.add_argument("--qubits", default="1", help="comma list, e.g. 1,2,3 (empty with --zrot for rotations only)")
    sp.add_argument("--epsilons", default="1e-2,1e-4,1e-6,1e-8,1e-10")
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--zrot", action="store_true", help="include a Z-rotation sweep")
    sp.add_argument("--out", help="CSV path (default stdout)")
    sp.set_defaults(func=cmd_bench_unitary)

    sp = sub.add_parser("bench-mixed", help="pre/post-mix error sweep")
    sp.add_argument("--qubits", default="1")
    sp.add_argument("--epsilons", default="0.0316227766,1e-2,0.00316227766,1e-3")
    sp.add_argument("--candidates", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", help="CSV path (default stdout)")
    sp.set_defaults(func=cmd_bench_mixed)

    sp = sub.add_parser("verify", help="check a circuit JSON against a matrix")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--circuit", required=True)
    sp.add_argument("--epsilon", required=True)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SynthesisFailure as exc:
        print(f"synthesis failed: {exc}", file=sys.stderr)
        return EXIT_SYNTHESIS
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
