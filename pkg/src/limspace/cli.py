"""Command line surface: ratios, synthesis, simulation, bounds, crossover.

One binary with subcommands.  Exit codes: 0 on success, 1 when a
verification gate fails (ASP below tolerance, synthesis residuals), 2
on usage or IO problems.  All output is deterministic for a fixed
--seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import boolfun, classical, qsp, simulate
from .boolfun import BooleanFunction, SymmetricSpec
from .circuits import LimitedSpaceCircuit, compile_qsp, entangling_count
from .circuits import ip_circuit, merge_adjacent, slsb_relative

DEFAULT_SEED = 20240614
DEFAULT_ASP_TOL = 1e-9

_FN_NAMES = ("slsb", "maj", "ip", "parity", "const0", "const1")


class UsageError(Exception):
    """Bad arguments or IO; maps to exit code 2."""


class VerificationFailure(Exception):
    """A correctness gate did not hold; maps to exit code 1."""


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: one command plus its knobs."""

    command: str
    fn: str | None = None
    table: str | None = None
    n: int | None = None
    method: str = "qsp"
    eps: float | None = None
    shots: int | None = None
    seed: int = DEFAULT_SEED
    asp_tol: float = DEFAULT_ASP_TOL
    out: str | None = None
    fmt: str = "text"
    family: str = "ip"
    circuit: str | None = None


def _resolve_function(cfg: RunConfig) -> BooleanFunction:
    if (cfg.fn is None) == (cfg.table is None):
        raise UsageError("give exactly one of --fn and --table")
    if cfg.n is None:
        raise UsageError("--n is required")
    n = cfg.n
    try:
        if cfg.table is not None:
            return BooleanFunction.from_hex(n, cfg.table)
        if cfg.fn == "slsb":
            return boolfun.slsb(n)
        if cfg.fn == "maj":
            return boolfun.maj(n)
        if cfg.fn == "ip":
            return boolfun.ip(n)
        return boolfun.make_symmetric(_named_symmetric_spec(cfg.fn, n))
    except ValueError as err:
        raise UsageError(str(err)) from err


def _named_symmetric_spec(name: str, n: int) -> SymmetricSpec:
    if name == "parity":
        return SymmetricSpec(n, tuple(w & 1 for w in range(n + 1)))
    if name == "const0":
        return SymmetricSpec(n, (0,) * (n + 1))
    if name == "const1":
        return SymmetricSpec(n, (1,) * (n + 1))
    raise UsageError(f"--fn {name} has no symmetric weight profile")


def _symmetric_spec(cfg: RunConfig, f: BooleanFunction) -> SymmetricSpec:
    if not f.is_symmetric():
        raise UsageError("signal-processing synthesis needs a symmetric function")
    values = tuple(int(f.truth[(1 << w) - 1]) for w in range(f.n + 1))
    return SymmetricSpec(f.n, values)


def _emit(cfg: RunConfig, text_lines: list[str], payload: dict) -> None:
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_classical(cfg: RunConfig) -> int:
    f = _resolve_function(cfg)
    if f.n > classical.RATIO_MAX_ARITY:
        raise UsageError(f"exact ratio needs n <= {classical.RATIO_MAX_ARITY}")
    res = classical.approximation_ratio(f)
    member = res.value == 1
    witness_lines = str(res.witness).splitlines()
    if member:
        lines = ["R = 1, member of Omega"]
    else:
        ratio = res.value
        lines = [
            f"R = {ratio.numerator}/{ratio.denominator} (={float(ratio)})",
            "not a member of Omega",
        ]
    lines.append("witness program:")
    lines.extend(f"  {ins}" for ins in witness_lines)
    payload = {
        "command": "classical",
        "n": f.n,
        "truth_hex": f.to_hex(),
        "ratio": f"{res.value.numerator}/{res.value.denominator}",
        "ratio_float": float(res.value),
        "member_of_omega": bool(member),
        "witness": witness_lines,
    }
    _emit(cfg, lines, payload)
    return 0


def _synthesize(cfg: RunConfig, f: BooleanFunction) -> tuple[LimitedSpaceCircuit, dict]:
    if cfg.method == "direct":
        if cfg.fn == "slsb":
            return slsb_relative(f.n), {"method": "direct"}
        if cfg.fn == "ip":
            return ip_circuit(f.n), {"method": "direct"}
        raise UsageError("direct synthesis exists for --fn slsb and --fn ip only")
    spec = _symmetric_spec(cfg, f)
    flipped = spec.complement() if spec.by_weight[0] == 1 else spec
    anti = all(v ^ flipped.by_weight[-1 - w] == 1 for w, v in enumerate(flipped.by_weight))
    params = qsp.signal_params_maj(f.n) if anti else qsp.signal_params_general(f.n)
    try:
        a, b = qsp.solve_ab(spec, params)
        c_poly, d_poly = qsp.complete_cd(a, b)
        quad = qsp.QspQuadruple(a, b, c_poly, d_poly)
        angles = qsp.find_angles(quad)
    except (qsp.SolveError, qsp.CompletionError, qsp.AngleFindingError) as err:
        raise VerificationFailure(f"signal-processing synthesis failed: {err}") from err
    circuit = merge_adjacent(compile_qsp(spec, angles, params))
    return circuit, {"method": "qsp", "degree": params.L}


def cmd_synth(cfg: RunConfig) -> int:
    f = _resolve_function(cfg)
    circuit, meta = _synthesize(cfg, f)
    result = simulate.asp(circuit, f)
    lines = [
        f"entangling gates: {entangling_count(circuit)}",
        f"classification: {result.classification.value}",
        f"ASP = {result.asp!r}",
    ]
    payload = {
        "command": "synth",
        "n": f.n,
        "entangling_gates": entangling_count(circuit),
        "classification": result.classification.value,
        "asp": result.asp,
        **meta,
    }
    if cfg.out:
        try:
            circuit.save(cfg.out)
        except OSError as err:
            raise UsageError(f"cannot write {cfg.out}: {err}") from err
        lines.append(f"circuit written to {cfg.out}")
        payload["out"] = cfg.out
    else:
        lines.append(circuit.to_json())
        payload["circuit"] = circuit.to_json_dict()
    _emit(cfg, lines, payload)
    if result.asp < 1.0 - cfg.asp_tol:
        print(f"verification failed: ASP {result.asp!r} below 1 - {cfg.asp_tol}",
              file=sys.stderr)
        return 1
    return 0


def cmd_simulate(cfg: RunConfig) -> int:
    if cfg.circuit is None:
        raise UsageError("--circuit FILE is required")
    try:
        circuit = LimitedSpaceCircuit.load(cfg.circuit)
    except OSError as err:
        raise UsageError(f"cannot read {cfg.circuit}: {err}") from err
    except (KeyError, ValueError, json.JSONDecodeError) as err:
        raise UsageError(f"bad circuit file {cfg.circuit}: {err}") from err
    f = _resolve_function(cfg)
    if f.n != circuit.n:
        raise UsageError(f"circuit has n={circuit.n} but function has n={f.n}")
    result = simulate.asp(circuit, f)
    rows = ["input_bits,f,target,p_one"]
    for idx in range(1 << circuit.n):
        bits = "".join(str((idx >> k) & 1) for k in range(circuit.n))
        fx = int(result.truth[idx])
        rows.append(f"{bits},{fx},{float(fx)!r},{float(result.p_one[idx])!r}")
    csv_text = "\n".join(rows) + "\n"
    lines = []
    payload = {
        "command": "simulate",
        "n": circuit.n,
        "asp": result.asp,
        "classification": result.classification.value,
    }
    if cfg.out:
        try:
            with open(cfg.out, "w") as fh:
                fh.write(csv_text)
        except OSError as err:
            raise UsageError(f"cannot write {cfg.out}: {err}") from err
        lines.append(f"per-input table written to {cfg.out}")
        payload["out"] = cfg.out
    else:
        lines.append(csv_text.rstrip("\n"))
        payload["rows"] = rows[1:]
    lines.append(f"ASP = {result.asp!r}")
    lines.append(f"classification: {result.classification.value}")
    if cfg.eps is not None:
        ent = entangling_count(circuit)
        analytic = simulate.noisy_asp_analytic(ent, cfg.eps)
        lines.append(f"noisy ASP (analytic, L={ent}, eps={cfg.eps}): {analytic!r}")
        payload["noisy_asp_analytic"] = analytic
        if cfg.shots:
            mc = simulate.noisy_asp_mc(circuit, f, cfg.eps, cfg.shots, cfg.seed)
            lines.append(f"noisy ASP (mc, shots={cfg.shots}, seed={cfg.seed}): {mc!r}")
            payload["noisy_asp_mc"] = mc
    _emit(cfg, lines, payload)
    return 0


def cmd_bounds(cfg: RunConfig) -> int:
    f = _resolve_function(cfg)
    gmax = boolfun.spectral_max(f)
    lower = boolfun.classical_lower_bound(gmax)
    upper = boolfun.classical_upper_bound(gmax)
    exact: Fraction | None = None
    if f.n <= classical.RATIO_MAX_ARITY:
        exact = classical.approximation_ratio(f).value
    exact_text = "n/a" if exact is None else str(float(exact))
    lines = [f"gmax={gmax}, lower={lower}, upper={upper}, exact={exact_text}"]
    payload = {
        "command": "bounds",
        "n": f.n,
        "gmax": gmax,
        "lower": lower,
        "upper": upper,
        "exact": None if exact is None else float(exact),
    }
    _emit(cfg, lines, payload)
    return 0


def cmd_crossover(cfg: RunConfig) -> int:
    if cfg.eps is None:
        raise UsageError("--eps is required")
    try:
        n = simulate.advantage_crossover(cfg.eps, family=cfg.family)
    except ValueError as err:
        raise UsageError(str(err)) from err
    if n is None:
        lines = [f"no crossover for n <= 200 ({cfg.family}, eps={cfg.eps})"]
    else:
        lines = [f"crossover at n = {n} ({cfg.family}, eps={cfg.eps})"]
    payload = {
        "command": "crossover",
        "family": cfg.family,
        "eps": cfg.eps,
        "crossover_n": n,
    }
    _emit(cfg, lines, payload)
    return 0


_HANDLERS = {
    "classical": cmd_classical,
    "synth": cmd_synth,
    "simulate": cmd_simulate,
    "bounds": cmd_bounds,
    "crossover": cmd_crossover,
}


def _add_function_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--fn", choices=_FN_NAMES, help="built-in function family")
    p.add_argument("--table", help="truth table as hex, lowest input index first")
    p.add_argument("--n", type=int, help="input arity")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="limspace",
        description="limited-space circuits: exact ratios, synthesis, simulation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classical", help="exact approximation ratio and membership")
    _add_function_flags(p)

    p = sub.add_parser("synth", help="synthesize a circuit and verify it")
    _add_function_flags(p)
    p.add_argument("--method", choices=("qsp", "direct"), default="qsp")
    p.add_argument("--out", help="write circuit JSON here")
    p.add_argument("--asp-tol", type=float, default=DEFAULT_ASP_TOL)

    p = sub.add_parser("simulate", help="evaluate a circuit file against a function")
    _add_function_flags(p)
    p.add_argument("--circuit", help="circuit JSON file")
    p.add_argument("--eps", type=float, help="per-entangling-gate failure rate")
    p.add_argument("--shots", type=int, help="Monte Carlo shots")
    p.add_argument("--out", help="write the per-input CSV here")

    p = sub.add_parser("bounds", help="spectral bounds and exact ratio when small")
    _add_function_flags(p)

    p = sub.add_parser("crossover", help="smallest arity beating the classical bound")
    p.add_argument("--eps", type=float, help="per-entangling-gate failure rate")
    p.add_argument("--family", choices=("ip", "slsb"), default="ip")

    for p in sub.choices.values():
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--format", choices=("text", "json"), default="text",
                       dest="fmt")
    return parser


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        fn=getattr(ns, "fn", None),
        table=getattr(ns, "table", None),
        n=getattr(ns, "n", None),
        method=getattr(ns, "method", "qsp"),
        eps=getattr(ns, "eps", None),
        shots=getattr(ns, "shots", None),
        seed=ns.seed,
        asp_tol=getattr(ns, "asp_tol", DEFAULT_ASP_TOL),
        out=getattr(ns, "out", None),
        fmt=ns.fmt,
        family=getattr(ns, "family", "ip"),
        circuit=getattr(ns, "circuit", None),
    )


def main(argv=None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    cfg = _config_from_args(ns)
    try:
        return _HANDLERS[cfg.command](cfg)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except VerificationFailure as err:
        print(f"verification failed: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
