"""Command-line front end.

Exit codes: 0 success, 2 input or validation error, 3 verification failure,
4 numerical failure. JSON reports carry ``"schema": 1`` and are
byte-identical for identical seeds and arguments.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import logging
import math
import sys
from typing import Any, Callable, Sequence

import numpy as np

from . import constructions, jsonio, measures, properties, qtypes, tolerances
from .cloning import check_no_cloning_condition, check_no_cloning_partial, run_scenario, CloningScenario
from .errors import InvalidParameter, NumericalFailure, PovmCloneError

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VERIFY = 3
EXIT_NUMERIC = 4

DEFAULT_SEED = 0xB92
FORMATS = ("json", "csv", "text")
COMMANDS = ("check-pair", "b92", "clone-demo", "lemma2", "theorem3", "sweep-channels", "properties")

log = logging.getLogger("povmclone")


class UsageError(PovmCloneError):
    pass


@dataclasses.dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    n: int

    @classmethod
    def parse(cls, text: str) -> "Grid":
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"grid must be start:stop:n, got {text!r}")
        try:
            start, stop, n = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"grid must be start:stop:n, got {text!r}") from None
        if n < 1 or not (math.isfinite(start) and math.isfinite(stop)):
            raise UsageError(f"grid needs finite bounds and n >= 1, got {text!r}")
        return cls(start, stop, n)

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.n)


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str | None = None
    seed: int = DEFAULT_SEED
    tolerances: tuple = ()  # (name, value) pairs
    output_format: str = "text"
    grid: Grid | None = None
    eta: float | None = None
    f: float | str | None = None
    cases: int | None = None


@dataclasses.dataclass
class Report:
    """What a command produced: a JSON document, a table, and text lines."""

    document: dict
    columns: list
    rows: list
    text: list
    exit_code: int = EXIT_OK


# -- argument handling -------------------------------------------------------------


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in an unsigned 64-bit integer, got {text}")
    return value


def _tol(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"tolerance override must be name=value, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance {name!r} needs a numeric value, got {value!r}") from None


def _f_value(text: str) -> float | str:
    if text == "floor":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--f takes a number or 'floor', got {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", dest="input_path", metavar="PATH", help="JSON scenario file")
    common.add_argument("--eta", type=float, help="B92 angle in radians, in (0, pi/4)")
    common.add_argument("--f", type=_f_value, help="target fidelity, or 'floor'")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="RNG seed (default 0xB92)")
    common.add_argument("--grid", type=Grid.parse, help="start:stop:n (inclusive)")
    common.add_argument("--format", dest="output_format", choices=FORMATS, default="text")
    common.add_argument("--cases", type=_positive_int, help="number of random cases")
    common.add_argument(
        "--tol", type=_tol, action="append", default=[], metavar="NAME=VALUE",
        help="override a numerical tolerance (or, for 'properties', a property slack)",
    )

    parser = argparse.ArgumentParser(prog="povmclone", description="Cloning of POVM statistics: checks and constructions.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "check-pair": "no-cloning verdict for {povm, rho, omega} from --input",
        "b92": "intolerance survey of the B92 pairs at --eta or over --grid",
        "clone-demo": "build and verify the perfect cloner at --eta",
        "lemma2": "pure state saturating the fidelity bound ({pvm, psi} from --input, --f)",
        "theorem3": "mixed state saturating the fidelity bound ({pvm, rho} from --input, --f)",
        "sweep-channels": "random channels versus the no-cloning condition",
        "properties": "run the seeded property suite",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        input_path=ns.input_path,
        seed=ns.seed,
        tolerances=tuple(ns.tol),
        output_format=ns.output_format,
        grid=ns.grid,
        eta=ns.eta,
        f=ns.f,
        cases=ns.cases,
    )


# -- helpers -----------------------------------------------------------------------------


def _load_input(cfg: RunConfig, required: Sequence[str], optional: Sequence[str] = ()) -> dict:
    if cfg.input_path is None:
        raise UsageError(f"{cfg.command} needs --input")
    try:
        with open(cfg.input_path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.input_path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{cfg.input_path} is not valid JSON: {exc}") from None
    if isinstance(obj, dict):
        obj = {k: v for k, v in obj.items() if k != "schema"}
    return jsonio.check_keys(obj, required, optional, what="input")


def _require_eta(cfg: RunConfig) -> float:
    if cfg.eta is None:
        raise UsageError(f"{cfg.command} needs --eta")
    return constructions._check_eta(cfg.eta)


def _require_f(cfg: RunConfig) -> float | str:
    if cfg.f is None:
        raise UsageError(f"{cfg.command} needs --f")
    return cfg.f


def _no_extras(cfg: RunConfig, allowed: set) -> None:
    given = {
        "--input": cfg.input_path is not None,
        "--eta": cfg.eta is not None,
        "--f": cfg.f is not None,
        "--grid": cfg.grid is not None,
        "--cases": cfg.cases is not None,
    }
    extra = sorted(flag for flag, used in given.items() if used and flag not in allowed)
    if extra:
        raise UsageError(f"{cfg.command} does not take {', '.join(extra)}")


def _fmt(x: float) -> str:
    return f"{x:.6f}" if math.isfinite(x) else str(x)


def _sci(x: float) -> str:
    return f"{x:.3e}" if math.isfinite(x) else str(x)


def _verdict_label(v) -> str:
    return f"{v.verdict} (degenerate {v.degenerate})" if v.degenerate else v.verdict


def _verdict_doc(v) -> dict:
    doc = {
        "verdict": v.verdict,
        "fidelity": v.fidelity,
        "classical_fidelity": v.classical_fidelity,
        "classical_fidelity_sq": v.classical_fidelity_sq,
        "margin": v.margin,
        "degenerate": v.degenerate,
    }
    if v.exploratory:
        doc.update(exploratory=True, k=v.k, kappa=v.kappa)
    return doc


def _resolve_f(f: float | str, lo: float) -> float:
    return lo if f == "floor" else float(f)


# -- commands ----------------------------------------------------------------------------


def cmd_check_pair(cfg: RunConfig) -> Report:
    _no_extras(cfg, {"--input"})
    obj = _load_input(cfg, ["povm", "rho", "omega"], ["k"])
    povm = jsonio.povm_from_json(obj["povm"])
    rho, omega = jsonio.state_from_json(obj["rho"]), jsonio.state_from_json(obj["omega"])
    k = obj.get("k")
    if k is not None and (isinstance(k, bool) or not isinstance(k, int)):
        raise InvalidParameter(f"k must be an integer, got {k!r}")
    if rho.dim != povm.dim or omega.dim != povm.dim:
        raise InvalidParameter(f"POVM acts on dimension {povm.dim}, states have dimensions {rho.dim} and {omega.dim}")
    if k is not None and not 0 <= k < povm.n:
        raise InvalidParameter(f"k must satisfy 0 <= k < {povm.n}, got {k}")

    v = check_no_cloning_condition(povm, rho, omega)
    doc = {"command": "check-pair", **_verdict_doc(v)}
    text = [
        f"verdict: {_verdict_label(v)}",
        f"F = {_fmt(v.fidelity)}",
        f"Fcl = {_fmt(v.classical_fidelity)}",
        f"Fcl^2 = {_fmt(v.classical_fidelity_sq)}",
        f"margin F - Fcl^2 = {_fmt(v.margin)}",
    ]
    columns = ["verdict", "degenerate", "F", "Fcl", "Fcl2", "margin"]
    rows = [[v.verdict, v.degenerate or "", v.fidelity, v.classical_fidelity, v.classical_fidelity_sq, v.margin]]
    if k is not None:
        pv = check_no_cloning_partial(povm, rho, omega, k)
        doc["partial"] = _verdict_doc(pv)
        text.append(
            f"partial (exploratory) k={k} kappa={pv.kappa}: {_verdict_label(pv)}, "
            f"F_kappa = {_fmt(pv.fidelity)}, Fcl_k^2 = {_fmt(pv.classical_fidelity_sq)}"
        )
    return Report(doc, columns, rows, text)


def cmd_b92(cfg: RunConfig) -> Report:
    _no_extras(cfg, {"--eta", "--grid"})
    if (cfg.eta is None) == (cfg.grid is None):
        raise UsageError("b92 needs exactly one of --eta and --grid")
    etas = [cfg.eta] if cfg.eta is not None else [float(x) for x in cfg.grid.values()]
    for eta in etas:
        constructions._check_eta(eta)

    entries, rows, text = [], [], []
    ok = True
    for eta in etas:
        survey = constructions.intolerance_survey(eta)
        ok &= survey.all_intolerant
        pairs = []
        for r in survey.rows:
            pairs.append({"first": r.first, "second": r.second, **_verdict_doc(r.result)})
            rows.append([eta, r.first, r.second, r.result.verdict, r.result.fidelity, r.result.classical_fidelity, r.result.classical_fidelity_sq, r.result.margin])
        entries.append({"eta": eta, "pairs": pairs, "intolerant": survey.intolerant_count})
        text.append(f"eta = {eta:.6f}: {survey.intolerant_count}/4 intolerant")
        for r in survey.rows:
            text.append(
                f"  {r.first:>6} / {r.second:<6} {_verdict_label(r.result):<12} "
                f"F = {_fmt(r.result.fidelity)}  Fcl = {_fmt(r.result.classical_fidelity)}  Fcl^2 = {_fmt(r.result.classical_fidelity_sq)}"
            )
    doc = {"command": "b92", "rows": entries, "all_intolerant": ok}
    columns = ["eta", "first", "second", "verdict", "F", "Fcl", "Fcl2", "margin"]
    return Report(doc, columns, rows, text, EXIT_OK if ok else EXIT_VERIFY)


def cmd_clone_demo(cfg: RunConfig) -> Report:
    _no_extras(cfg, {"--eta"})
    eta = _require_eta(cfg)
    demo = constructions.clone_demo(eta)
    p = demo.params
    merit = demo.report.merit
    ok = demo.verified and demo.unitarity_residual <= 1e-10
    labels = ["eta", "phi"]
    inputs = []
    rows = []
    text = [
        f"eta = {_fmt(p.eta)}",
        f"phi' = phi'' = {p.phi1:.12f}",
        f"phi = {p.phi:.12f}",
        f"unitarity residual = {_sci(demo.unitarity_residual)}",
        f"U|eta eta> = |eta eta> residual = {_sci(demo.fixed_point_residual)}",
        f"U|phi eta> = |phi' phi''> residual = {_sci(demo.cloning_residual)}",
        f"overlap constraint residual = {_sci(demo.overlap_residual)}",
    ]
    if demo.published_deviation is not None:
        text.append(f"closed-form matrix column deviation = {_sci(demo.published_deviation)}")
    for label, rec in zip(labels, demo.report.records):
        first, second, p_in = rec.q, rec.r, rec.p.probs
        inputs.append({
            "input": label,
            "p": jsonio.real_vector_to_json(p_in),
            "first_wire": jsonio.real_vector_to_json(first),
            "second_wire": jsonio.real_vector_to_json(second),
            "factorization_residual": rec.factorization_residual,
            "relative_entropy": jsonio.encode_float(rec.relent),
        })
        rows.append([label, *p_in, *first, *second, rec.factorization_residual, rec.relent])
        text.append(
            f"input |{label}>: p = {{{', '.join(_fmt(x) for x in p_in)}}}, "
            f"wires = {{{', '.join(_fmt(x) for x in first)}}} / {{{', '.join(_fmt(x) for x in second)}}}, "
            f"factorization residual = {_sci(rec.factorization_residual)}"
        )
    text.append(f"merit = {_sci(merit)}  ({'verified' if ok else 'FAILED'})")
    doc = {
        "command": "clone-demo",
        "eta": p.eta,
        "phi": p.phi,
        "phi1": p.phi1,
        "phi2": p.phi2,
        "unitarity_residual": demo.unitarity_residual,
        "fixed_point_residual": demo.fixed_point_residual,
        "cloning_residual": demo.cloning_residual,
        "overlap_residual": demo.overlap_residual,
        "published_deviation": demo.published_deviation,
        "unitary": jsonio.matrix_to_json(demo.unitary_computational),
        "inputs": inputs,
        "merit": jsonio.encode_float(merit),
        "verified": ok,
    }
    columns = ["input", "p0", "p1", "first0", "first1", "second0", "second1", "factorization_residual", "relative_entropy"]
    return Report(doc, columns, rows, text, EXIT_OK if ok else EXIT_VERIFY)


def cmd_lemma2(cfg: RunConfig) -> Report:
    _no_extras(cfg, {"--input", "--f"})
    obj = _load_input(cfg, ["pvm", "psi"])
    f_req = _require_f(cfg)
    pvm = jsonio.povm_from_json(obj["pvm"], projective=True)
    psi = jsonio.pure_state_from_json(obj["psi"])
    if psi.dim != pvm.dim:
        raise InvalidParameter(f"PVM acts on dimension {pvm.dim}, psi has dimension {psi.dim}")
    lo, hi = constructions.saturation_range(pvm, psi)
    f = _resolve_f(f_req, lo)

    phi = constructions.construct_saturating_pure_state(pvm, psi, f)
    overlap = abs(psi.overlap(phi))
    fcl = measures.classical_fidelity(qtypes.measure(pvm, psi), qtypes.measure(pvm, phi))
    res_overlap, res_fcl = abs(overlap - f), abs(fcl - f)
    ok = max(res_overlap, res_fcl) <= 1e-9
    doc = {
        "command": "lemma2",
        "f": f,
        "range": [lo, hi],
        "phi": jsonio.state_to_json(phi),
        "overlap": overlap,
        "classical_fidelity": fcl,
        "overlap_residual": res_overlap,
        "classical_residual": res_fcl,
        "verified": ok,
    }
    text = [
        f"f = {_fmt(f)} (range [{_fmt(lo)}, {_fmt(hi)}])",
        "phi = [" + ", ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in phi.amplitudes) + "]",
        f"|<psi|phi>| = {_fmt(overlap)}  residual {_sci(res_overlap)}",
        f"Fcl(p, q) = {_fmt(fcl)}  residual {_sci(res_fcl)}",
    ]
    rows = [[i, z.real, z.imag] for i, z in enumerate(phi.amplitudes)]
    return Report(doc, ["index", "re", "im"], rows, text, EXIT_OK if ok else EXIT_VERIFY)


def cmd_theorem3(cfg: RunConfig) -> Report:
    _no_extras(cfg, {"--input", "--f"})
    obj = _load_input(cfg, ["pvm", "rho"])
    f_req = _require_f(cfg)
    pvm = jsonio.povm_from_json(obj["pvm"], projective=True)
    rho = jsonio.state_from_json(obj["rho"])
    if rho.dim != pvm.dim:
        raise InvalidParameter(f"PVM acts on dimension {pvm.dim}, rho has dimension {rho.dim}")
    lo, hi = constructions.saturation_range(pvm, rho)
    f = _resolve_f(f_req, lo)

    omega = constructions.construct_saturating_mixed_state(pvm, rho, f)
    fq = measures.fidelity(rho, omega)
    fcl = measures.classical_fidelity(qtypes.measure(pvm, rho), qtypes.measure(pvm, omega))
    res_q, res_cl = abs(fq - f), abs(fcl - f)
    ok = max(res_q, res_cl) <= 1e-8
    doc = {
        "command": "theorem3",
        "f": f,
        "range": [lo, hi],
        "omega": jsonio.state_to_json(omega),
        "fidelity": fq,
        "classical_fidelity": fcl,
        "fidelity_residual": res_q,
        "classical_residual": res_cl,
        "verified": ok,
    }
    text = [
        f"f = {_fmt(f)} (range [{_fmt(lo)}, {_fmt(hi)}])",
        f"F(rho, omega) = {_fmt(fq)}  residual {_sci(res_q)}",
        f"Fcl(p, q) = {_fmt(fcl)}  residual {_sci(res_cl)}",
    ]
    d = omega.dim
    rows = [[i, j, omega.matrix[i, j].real, omega.matrix[i, j].imag] for i in range(d) for j in range(d)]
    return Report(doc, ["row", "col", "re", "im"], rows, text, EXIT_OK if ok else EXIT_VERIFY)


def cmd_sweep_channels(cfg: RunConfig) -> Report:
    """Seeded random channels (plus known perfect cloners) against the no-cloning bound.

    With --input {povm, rho, omega[, probe]} the measurement and pair are
    fixed and only the channel is random.
    """
    _no_extras(cfg, {"--input", "--cases"})
    cases = cfg.cases or 500
    if cfg.input_path is not None:
        obj = _load_input(cfg, ["povm", "rho", "omega"], ["probe"])
        povm = jsonio.povm_from_json(obj["povm"])
        rho, omega = jsonio.state_from_json(obj["rho"]), jsonio.state_from_json(obj["omega"])
        probe = jsonio.state_from_json(obj["probe"]) if "probe" in obj else None
        d = povm.dim
        for name, s in (("rho", rho), ("omega", omega)) + ((("probe", probe),) if probe else ()):
            if s.dim != d:
                raise InvalidParameter(f"{name} has dimension {s.dim}, POVM acts on {d}")
        rng = np.random.default_rng(cfg.seed)
        gen = (
            properties.ContrapositiveCase(
                "random", povm, qtypes.random_channel(d * d, d * d, int(rng.integers(1, 5)), rng),
                probe or qtypes.DensityOperator.basis(d, 0), rho, omega,
            )
            for _ in range(cases)
        )
    else:
        gen = properties.contrapositive_cases(cases, cfg.seed)

    rows, factorized, worst_violation, worst_chain = [], 0, -math.inf, -math.inf
    for i, case in enumerate(gen):
        report = run_scenario(CloningScenario(case.povm, case.channel, (case.first, case.second), case.probe))
        r1, r2 = report.records
        chain = measures.fidelity(r1.output, r2.output) - measures.classical_fidelity(r1.t, r2.t)
        fact = r1.factorization_residual <= 1e-10 and r2.factorization_residual <= 1e-10
        f = measures.fidelity(case.first, case.second)
        fcl = measures.classical_fidelity(r1.p, r2.p)
        worst_chain = max(worst_chain, chain)
        if fact:
            factorized += 1
            worst_violation = max(worst_violation, f - fcl**2)
        rows.append([i, case.family, r1.factorization_residual, r2.factorization_residual, fact, f, fcl**2, chain, report.merit])

    ok = worst_chain <= 1e-9 and (factorized == 0 or worst_violation <= 1e-8)
    doc = {
        "command": "sweep-channels",
        "seed": cfg.seed,
        "cases": len(rows),
        "factorized": factorized,
        "worst_violation": jsonio.encode_float(worst_violation) if factorized else None,
        "worst_chain_gap": jsonio.encode_float(worst_chain),
        "rows": [
            {
                "index": r[0], "family": r[1], "residual_first": r[2], "residual_second": r[3],
                "factorized": r[4], "fidelity": r[5], "classical_fidelity_sq": r[6],
                "chain_gap": r[7], "merit": jsonio.encode_float(r[8]),
            }
            for r in rows
        ],
        "verified": ok,
    }
    text = [
        f"cases = {len(rows)}, factorized = {factorized}",
        f"worst F - Fcl^2 over factorized cases = {_sci(worst_violation) if factorized else 'n/a'}",
        f"worst F(outputs) - Fcl(t', t'') = {_sci(worst_chain)}",
        "no-cloning bound " + ("holds" if ok else "VIOLATED"),
    ]
    columns = ["index", "family", "residual_first", "residual_second", "factorized", "F", "Fcl2", "chain_gap", "merit"]
    return Report(doc, columns, rows, text, EXIT_OK if ok else EXIT_VERIFY)


def cmd_properties(cfg: RunConfig, slack: dict) -> Report:
    _no_extras(cfg, {"--cases"})
    results = []
    for name, check in properties.CHECKS.items():
        cases = cfg.cases if cfg.cases is not None else check.__defaults__[0]
        results.append(check(cases=cases, seed=cfg.seed, slack=slack.get(name)))
    failed = [r.name for r in results if not r.passed]
    text = [
        f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.cases} cases, {r.failures} failures, "
        f"worst {_sci(r.worst)} (slack {r.slack:.0e})" + (f"; {r.note}" if r.note else "")
        for r in results
    ]
    text.append(f"{len(results) - len(failed)}/{len(results)} properties passed")
    doc = {
        "command": "properties",
        "seed": cfg.seed,
        "results": [
            {
                "name": r.name, "cases": r.cases, "failures": r.failures,
                "worst": jsonio.encode_float(r.worst), "slack": r.slack, "passed": r.passed, "note": r.note,
            }
            for r in results
        ],
        "failed": failed,
    }
    rows = [[r.name, r.cases, r.failures, r.worst, r.slack, r.passed] for r in results]
    return Report(doc, ["name", "cases", "failures", "worst", "slack", "passed"], rows, text, EXIT_VERIFY if failed else EXIT_OK)


HANDLERS: dict[str, Callable[[RunConfig], Report]] = {
    "check-pair": cmd_check_pair,
    "b92": cmd_b92,
    "clone-demo": cmd_clone_demo,
    "lemma2": cmd_lemma2,
    "theorem3": cmd_theorem3,
    "sweep-channels": cmd_sweep_channels,
}


# -- output ------------------------------------------------------------------------------


def _cell(x: Any) -> Any:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return x


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return jsonio.dumps({"schema": jsonio.SCHEMA_VERSION, **_jsonable(report.document)})
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(report.columns)
        writer.writerows([[_cell(x) for x in row] for row in report.rows])
        return buf.getvalue()
    return "\n".join(report.text) + "\n"


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return jsonio.encode_float(x)
    return x


def run(cfg: RunConfig, out=None) -> int:
    """Execute a configuration and write the report; returns the exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr
    try:
        tol_overrides, slack = {}, {}
        known = set(tolerances.names())
        for name, value in cfg.tolerances:
            if name in known:
                tol_overrides[name] = type(getattr(tolerances.DEFAULT, name))(value)
            elif cfg.command == "properties" and name in properties.SLACK:
                slack[name] = value
            else:
                raise UsageError(f"unknown tolerance {name!r}")
        with tolerances.override(**tol_overrides):
            report = cmd_properties(cfg, slack) if cfg.command == "properties" else HANDLERS[cfg.command](cfg)
    except PovmCloneError as exc:
        print(f"povmclone {cfg.command}: error: {exc}", file=err)
        return EXIT_INVALID
    except NumericalFailure as exc:
        print(f"povmclone {cfg.command}: numerical failure: {exc}", file=err)
        return EXIT_NUMERIC
    out.write(render(report, cfg.output_format))
    return report.exit_code


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
