"""``tvcode`` command-line front end.

Exit codes: 0 success, 1 invariant violation (``verify``), 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import checks
from .coding import design
from .core import (
    BallSpec,
    TVCodeError,
    as_probability_vector,
    entropy,
    kl_divergence,
    kraft_sum,
    tv_distance,
    validate_nominal,
)
from .merge import trajectory

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad user input; the message names the offending field."""


@dataclass
class JobConfig:
    input_path: str = "-"
    format: str | None = None
    radius: float = 0.0
    base: int = 2
    steps: int = 10
    trials: int = 100
    seed: int = 0
    precision: int = 12
    reference: str | None = None
    enumerate: bool = True

    def __post_init__(self):
        if not 0.0 <= self.radius <= 2.0:
            raise InputError(f"--radius: must lie in [0, 2], got {self.radius}")
        if self.base < 2:
            raise InputError(f"--base: must be >= 2, got {self.base}")
        if not 1 <= self.precision <= 17:
            raise InputError(f"--precision: must lie in [1, 17], got {self.precision}")
        if self.steps < 0:
            raise InputError(f"--steps: must be >= 0, got {self.steps}")
        if self.trials < 0:
            raise InputError(f"--trials: must be >= 0, got {self.trials}")

    @property
    def spec(self) -> BallSpec:
        return BallSpec(self.radius, self.base)


# -- input -----------------------------------------------------------------


def _read_text(path: str, stdin=None) -> str:
    if path == "-":
        return (stdin or sys.stdin).read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"--input: cannot read {path}: {exc.strerror}") from None


def _guess_format(path: str, fmt: str | None) -> str:
    if fmt:
        return fmt
    return "csv" if path.lower().endswith(".csv") else "json"


def parse_json(text: str) -> tuple[list[float], list[str] | None]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if isinstance(data, list):
        data = {"probabilities": data}
    if not isinstance(data, dict) or "probabilities" not in data:
        raise InputError('probabilities: missing; expected {"probabilities": [...]}')
    probs = data["probabilities"]
    if not isinstance(probs, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in probs
    ):
        raise InputError("probabilities: must be a list of numbers")
    symbols = data.get("symbols")
    if symbols is not None:
        if not isinstance(symbols, list) or len(symbols) != len(probs):
            raise InputError("symbols: must be a list with one label per probability")
        symbols = [str(s) for s in symbols]
    return [float(x) for x in probs], symbols


def parse_csv(text: str) -> tuple[list[float], list[str] | None]:
    """One probability per line; an optional label goes in the first column."""
    probs: list[float] = []
    labels: list[str] = []
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    for lineno, row in enumerate(rows, start=1):
        row = [c.strip() for c in row]
        if row[0].startswith("#"):
            continue
        try:
            value = float(row[-1])
        except ValueError:
            if lineno == 1:
                continue  # header
            raise InputError(f"probabilities: line {lineno}: {row[-1]!r} is not a number") from None
        probs.append(value)
        labels.append(row[0] if len(row) > 1 else "")
    has_labels = any(labels)
    return probs, (labels if has_labels else None)


def load_distribution(path: str, fmt: str | None, stdin=None) -> tuple[list[float], list[str] | None]:
    text = _read_text(path, stdin)
    fmt = _guess_format(path, fmt)
    return parse_csv(text) if fmt == "csv" else parse_json(text)


# -- output ----------------------------------------------------------------


def _round(x: float, precision: int) -> float:
    return float(f"{float(x):.{precision}g}")


def _vec(values, precision: int) -> list[float]:
    return [_round(v, precision) for v in values]


def _emit_json(obj, out) -> None:
    json.dump(obj, out, indent=2)
    out.write("\n")


# -- commands --------------------------------------------------------------


def cmd_design(config: JobConfig, out=sys.stdout, stdin=None) -> int:
    probs, symbols = load_distribution(config.input_path, config.format, stdin)
    mu = validate_nominal(probs)
    d = design(mu, config.spec)
    P = config.precision
    report = {
        "command": "design",
        "radius": config.radius,
        "alpha": config.spec.alpha,
        "base": config.base,
        "alpha_max": _round(d.alpha_max, P),
        "symbols": symbols or [str(i) for i in range(mu.size)],
        "nominal": _vec(mu.caller_probs(), P),
        "weights": _vec(mu.to_caller(d.weights.weights), P),
        "real_lengths": _vec(mu.to_caller(d.real_lengths.lengths), P),
        "integer_lengths": [int(v) for v in mu.to_caller(d.integer_lengths.lengths)],
        "groups": list(mu.to_caller(d.weights.groups())),
        "worst_case_avg_length": _round(d.worst_case_avg_length, P),
        "entropy_of_weights": _round(d.entropy_of_weights, P),
        "integer_avg_length": _round(d.integer_avg_length(), P),
        "kraft_real": _round(kraft_sum(d.real_lengths), P),
        "kraft_integer": _round(kraft_sum(d.integer_lengths), P),
    }
    _emit_json(report, out)
    return EXIT_OK


def cmd_trajectory(config: JobConfig, out=sys.stdout, stdin=None) -> int:
    probs, _ = load_distribution(config.input_path, config.format, stdin)
    mu = validate_nominal(probs)
    P = config.precision
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["alpha", "symbol_index", "weight", "breakpoint"])
    for alpha, weights, is_bp in trajectory(mu, config.steps):
        caller = mu.to_caller(weights)
        for i, w in enumerate(caller):
            writer.writerow([repr(_round(alpha, P)), i, repr(_round(w, P)), int(is_bp)])
    return EXIT_OK


def _verify_instance(mu, alpha, base, do_enumerate, tally, failures):
    suites = {
        "agreement": lambda: checks.check_agreement(mu, alpha),
        "oracle": lambda: checks.check_oracle(mu, alpha, base),
        "kraft": lambda: checks.check_kraft(mu, alpha, base),
        "sandwich": lambda: checks.check_sandwich(mu, alpha, base),
        "monotonicity": lambda: checks.check_monotonicity(mu, checks.monotonicity_grid(mu)),
    }
    for name, run in suites.items():
        if name == "oracle" and (not do_enumerate or mu.size > checks.ENUMERATION_LIMIT):
            tally[name]["skipped"] += 1
            continue
        msg = run()
        if msg is None:
            tally[name]["passed"] += 1
        else:
            tally[name]["failed"] += 1
            failures.append(
                {
                    "check": name,
                    "detail": msg,
                    "probabilities": mu.caller_probs().tolist(),
                    "alpha": alpha,
                    "base": base,
                }
            )


def cmd_verify(config: JobConfig, out=sys.stdout, stdin=None, err=sys.stderr) -> int:
    probs, _ = load_distribution(config.input_path, config.format, stdin)
    mu = validate_nominal(probs)
    names = ("agreement", "oracle", "kraft", "sandwich", "monotonicity")
    tally = {n: {"passed": 0, "failed": 0, "skipped": 0} for n in names}
    failures: list[dict] = []
    if mu.size > checks.ENUMERATION_LIMIT and config.enumerate:
        print(
            f"warning: {mu.size} symbols exceeds the enumeration limit of "
            f"{checks.ENUMERATION_LIMIT}; oracle check skipped for the input",
            file=err,
        )
    _verify_instance(mu, config.spec.alpha, config.base, config.enumerate, tally, failures)

    rng = np.random.default_rng(config.seed)
    for _ in range(config.trials):
        n = int(rng.integers(2, checks.ENUMERATION_LIMIT + 1))
        inst = checks.random_nominal(rng, n, ties=bool(rng.random() < 0.2))
        alpha = float(rng.random())
        _verify_instance(inst, alpha, config.base, config.enumerate, tally, failures)

    ok = not failures
    _emit_json(
        {
            "command": "verify",
            "ok": ok,
            "seed": config.seed,
            "trials": config.trials,
            "checks": tally,
            "failures": failures,
        },
        out,
    )
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_metrics(config: JobConfig, out=sys.stdout, stdin=None) -> int:
    probs, _ = load_distribution(config.input_path, config.format, stdin)
    p = as_probability_vector(probs)
    P = config.precision
    report: dict = {"command": "metrics", "base": config.base, "entropy_p": _round(entropy(p, config.base), P)}
    if config.reference is not None:
        if config.reference == "uniform":
            q = np.full(p.size, 1.0 / p.size)
        else:
            qprobs, _ = load_distribution(config.reference, None)
            q = as_probability_vector(qprobs)
        if q.size != p.size:
            raise InputError(f"--reference: has {q.size} entries, input has {p.size}")
        tv = tv_distance(p, q)
        kl = {}
        for key, (a, b) in {"kl_pq": (p, q), "kl_qp": (q, p)}.items():
            try:
                kl[key] = kl_divergence(a, b)
            except TVCodeError:
                kl[key] = None
        report.update(
            {
                "entropy_q": _round(entropy(q, config.base), P),
                "tv": _round(tv, P),
                "kl_pq": None if kl["kl_pq"] is None else _round(kl["kl_pq"], P),
                "kl_qp": None if kl["kl_qp"] is None else _round(kl["kl_qp"], P),
                # infinite divergence makes the bound hold trivially
                "pinsker_holds": kl["kl_pq"] is None or tv**2 <= 2.0 * kl["kl_pq"] + 1e-12,
            }
        )
    _emit_json(report, out)
    return EXIT_OK


COMMANDS = {
    "design": cmd_design,
    "trajectory": cmd_trajectory,
    "verify": cmd_verify,
    "metrics": cmd_metrics,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tvcode",
        description="Minimax-robust prefix code lengths for a total-variation ball of sources.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--input", default="-", help="distribution file, '-' for stdin (default)")
    parser.add_argument("--format", choices=("json", "csv"), help="input format (default: from extension, else json)")
    ball = parser.add_mutually_exclusive_group()
    ball.add_argument("--radius", type=float, help="ball radius R in [0, 2]")
    ball.add_argument("--alpha", type=float, help="half radius R/2 in [0, 1]")
    parser.add_argument("--base", type=int, default=2, help="code alphabet size D (default 2)")
    parser.add_argument("--steps", type=int, default=10, help="trajectory: evenly spaced samples inside (0, alpha_max)")
    parser.add_argument("--trials", type=int, default=100, help="random instances for verify")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--precision", type=int, default=12, help="significant digits in output")
    parser.add_argument("--reference", help="second distribution for metrics (path or 'uniform')")
    parser.add_argument("--no-enumerate", action="store_true", help="skip the partition-enumeration oracle")
    return parser


def config_from_args(args: argparse.Namespace) -> JobConfig:
    if args.alpha is not None:
        if not 0.0 <= args.alpha <= 1.0:
            raise InputError(f"--alpha: must lie in [0, 1], got {args.alpha}")
        radius = 2.0 * args.alpha
    else:
        radius = 0.0 if args.radius is None else args.radius
    return JobConfig(
        input_path=args.input,
        format=args.format,
        radius=radius,
        base=args.base,
        steps=args.steps,
        trials=args.trials,
        seed=args.seed,
        precision=args.precision,
        reference=args.reference,
        enumerate=not args.no_enumerate,
    )


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        cmd = COMMANDS[args.command]
        if cmd is cmd_verify:
            return cmd(config, out=out, stdin=stdin, err=err)
        return cmd(config, out=out, stdin=stdin)
    except InputError as exc:
        print(f"tvcode: error: {exc}", file=err)
        return EXIT_INPUT
    except TVCodeError as exc:
        print(f"tvcode: error: probabilities: {exc}", file=err)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
