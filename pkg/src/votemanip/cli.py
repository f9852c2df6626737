"""Batch experiment harness: seeded sample -> solve -> recover -> evaluate
pipelines, parameter sweeps, and CSV emission.

Configuration is a flat ``key=value`` text file plus command-line overrides;
the seed is mandatory and (config, seed) fully determines all output bytes.
Wall-clock solve times go to stderr; they appear in the CSV only with
``--timing``, since timing is the one quantity that cannot be reproducible.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .distributions import (
    DistributionSpec,
    EmpiricalPool,
    ImpartialAnonymousCulture,
    ImpartialCulture,
    MallowsMixture,
    MallowsModel,
    PointMass,
    load_ballots,
    sample_profiles,
)
from .matching import recover_votes
from .optimizer import (
    sample_complexity_general,
    sample_complexity_kapproval,
    solve_optimal,
    summarize,
)
from .voting import Profile, ScoringRule, StrategyPSM, as_ranking
from .welfare import expected_regret

SWEEP_COLUMNS = (
    "phi,d,n,predicted_prob,realized_prob,expected_regret,"
    "normalized_regret,bound_general,solve_time,optimal_flag,error"
)
EVAL_COLUMNS = (
    "d,n,trials,realized_prob,p_flip_to_other,expected_regret,"
    "normalized_regret,bound_general,bound_kapproval"
)
EXPECTED_RANK_DRAWS = 10_000


class CliError(ValueError):
    """Configuration or input problem reported to the user."""


@dataclass
class ExperimentConfig:
    rule: str = "borda"
    dist: str = "ic"
    m: int | None = None
    sigma: str | None = None
    n: int | None = None
    c: int | None = None
    d: str = "rank:1"
    tsolve: int = 500
    trials: int = 1000
    seed: int | None = None
    budget_secs: float | None = 60.0
    jobs: int = 1
    timing: bool = False
    ballot_policy: str = "drop"
    sweep_n: list[int] = field(default_factory=list)
    sweep_phi: list[float] = field(default_factory=list)
    sweep_d: list[str] = field(default_factory=list)

    def require(self, *names):
        for name in names:
            if getattr(self, name) is None:
                raise CliError(f"missing required setting '{name}'")


def _parse_bool(text: str, key: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise CliError(f"config key '{key}': cannot parse boolean from {text!r}")


def parse_config_file(path: str) -> dict:
    """Flat key=value lines; '#' comments; later keys override earlier ones."""
    values = {}
    try:
        handle = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}") from None
    with handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise CliError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


def _config_from_mapping(values: dict) -> ExperimentConfig:
    config = ExperimentConfig()
    converters = {
        "rule": str,
        "dist": str,
        "sigma": str,
        "d": str,
        "ballot_policy": str,
        "m": int,
        "n": int,
        "c": int,
        "tsolve": int,
        "trials": int,
        "seed": int,
        "jobs": int,
        "budget_secs": lambda t: None if t.lower() == "none" else float(t),
        "timing": lambda t: _parse_bool(t, "timing"),
        "sweep_n": lambda t: [int(x) for x in t.split(",") if x.strip()],
        "sweep_phi": lambda t: [float(x) for x in t.split(",") if x.strip()],
        "sweep_d": lambda t: [x.strip() for x in t.split(",") if x.strip()],
    }
    for key, text in values.items():
        if key == "out":
            continue  # handled by --out
        if key not in converters:
            raise CliError(f"unknown config key '{key}'")
        try:
            setattr(config, key, converters[key](text))
        except CliError:
            raise
        except ValueError:
            raise CliError(f"config key '{key}': cannot parse {text!r}") from None
    return config


def build_config(args) -> ExperimentConfig:
    values = parse_config_file(args.config) if getattr(args, "config", None) else {}
    config = _config_from_mapping(values)
    overrides = {
        "rule": "rule",
        "dist": "dist",
        "m": "m",
        "sigma": "sigma",
        "n": "n",
        "c": "c",
        "d": "d",
        "tsolve": "tsolve",
        "trials": "trials",
        "seed": "seed",
        "budget_secs": "budget_secs",
        "jobs": "jobs",
        "timing": "timing",
        "ballot_policy": "ballot_policy",
        "sweep_n": "sweep_n",
        "sweep_phi": "sweep_phi",
        "sweep_d": "sweep_d",
    }
    for attr, key in overrides.items():
        value = getattr(args, attr, None)
        if value is not None:
            setattr(config, key, value)
    if config.seed is None:
        raise CliError("a seed is mandatory (--seed or seed= in the config)")
    for key in ("n", "c", "tsolve", "trials"):
        value = getattr(config, key)
        if value is not None and value < 1:
            raise CliError(f"'{key}' must be positive")
    if config.jobs < 1:
        raise CliError("'jobs' must be positive")
    return config


def parse_rule(text: str, m: int) -> ScoringRule:
    if text == "plurality":
        return ScoringRule.plurality(m)
    if text == "borda":
        return ScoringRule.borda(m)
    if text.startswith("kapproval:"):
        return ScoringRule.kapproval(m, int(text.split(":", 1)[1]))
    if text.startswith("alpha:"):
        alpha = [int(x) for x in text.split(":", 1)[1].split(",")]
        if len(alpha) != m:
            raise CliError(f"rule alpha has {len(alpha)} entries but m={m}")
        return ScoringRule(np.asarray(alpha))
    raise CliError(f"unknown rule {text!r}")


def _parse_sigma(text: str | None, m: int) -> np.ndarray:
    if text is None:
        return np.arange(m, dtype=np.int64)
    return as_ranking([int(x) for x in text.split(",")], m=m)


def read_profiles(path: str) -> list[Profile]:
    """Profile file: 'm=<int>' header, 'profile <k>' separators, one
    comma-separated ranking per line."""
    m = None
    blocks: list[list[list[int]]] = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if m is None:
                if not line.startswith("m="):
                    raise CliError(f"{path}:{lineno}: expected header 'm=<int>'")
                m = int(line[2:])
                continue
            if line.startswith("profile"):
                blocks.append([])
                continue
            if not blocks:
                blocks.append([])
            try:
                vote = [int(x) for x in line.split(",")]
            except ValueError:
                raise CliError(f"{path}:{lineno}: malformed vote {line!r}") from None
            blocks[-1].append(vote)
    if m is None or not blocks or not any(blocks):
        raise CliError(f"{path}: no profiles found")
    profiles = []
    for block in blocks:
        if not block:
            continue
        votes = np.asarray(block, dtype=np.int64)
        if votes.shape[1] != m:
            raise CliError(f"{path}: vote length disagrees with m={m}")
        profiles.append(Profile(votes))
    return profiles


def write_profiles(profiles, out) -> None:
    out.write(f"m={profiles[0].m}\n")
    for index, profile in enumerate(profiles):
        out.write(f"profile {index}\n")
        for vote in profile.votes:
            out.write(",".join(str(int(x)) for x in vote) + "\n")


def read_mixture(path: str) -> MallowsMixture:
    """Mixture file: 'm=<int>' header then 'weight: phi: sigma' lines."""
    m = None
    weights, components = [], []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if m is None:
                if not line.startswith("m="):
                    raise CliError(f"{path}:{lineno}: expected header 'm=<int>'")
                m = int(line[2:])
                continue
            parts = line.split(":")
            if len(parts) != 3:
                raise CliError(f"{path}:{lineno}: expected 'weight: phi: sigma'")
            try:
                weight = float(parts[0])
                phi = float(parts[1])
                sigma = as_ranking([int(x) for x in parts[2].split(",")], m=m)
            except ValueError as exc:
                raise CliError(f"{path}:{lineno}: {exc}") from None
            weights.append(weight)
            components.append(MallowsModel(sigma, phi))
    if m is None or not components:
        raise CliError(f"{path}: no mixture components found")
    return MallowsMixture(tuple(components), np.asarray(weights))


def read_psm(path: str) -> np.ndarray:
    try:
        matrix = np.loadtxt(path, dtype=np.int64, ndmin=2)
    except ValueError as exc:
        raise CliError(f"cannot parse strategy matrix {path}: {exc}") from None
    if matrix.shape[0] != matrix.shape[1]:
        raise CliError(f"strategy matrix in {path} is not square")
    return matrix


def strategy_from_matrix(matrix: np.ndarray) -> StrategyPSM:
    c = int(matrix[0].sum())
    top = np.flatnonzero(matrix[:, 0] == c)
    if c < 1 or top.size != 1:
        raise CliError("invalid strategy matrix: no unique candidate tops every ballot")
    try:
        return StrategyPSM(matrix, c=c, d=int(top[0]))
    except ValueError as exc:
        raise CliError(f"invalid strategy matrix: {exc}") from None


def build_distribution(config: ExperimentConfig, rng=None) -> DistributionSpec:
    text = config.dist
    if text == "ic":
        config.require("m")
        return ImpartialCulture(config.m)
    if text == "iac":
        config.require("m")
        return ImpartialAnonymousCulture(config.m)
    if text.startswith("mallows:"):
        config.require("m")
        phi = float(text.split(":", 1)[1])
        return MallowsModel(_parse_sigma(config.sigma, config.m), phi)
    if text.startswith("mixture:"):
        return read_mixture(text.split(":", 1)[1])
    if text.startswith("ballots:"):
        return load_ballots(
            text.split(":", 1)[1], policy=config.ballot_policy, rng=rng
        )
    if text.startswith("point:"):
        profiles = read_profiles(text.split(":", 1)[1])
        if len(profiles) != 1:
            raise CliError("point distribution file must hold exactly one profile")
        return PointMass(profiles[0])
    raise CliError(f"unknown distribution {text!r}")


def mean_ranks(spec: DistributionSpec, rng) -> np.ndarray:
    """Average position of each candidate under the belief.

    Exact for empirical pools and point masses; IAC is exchangeable so all
    candidates tie; sampling-based otherwise.
    """
    if isinstance(spec, EmpiricalPool):
        return np.argsort(spec.ballots, axis=1).mean(axis=0)
    if isinstance(spec, PointMass):
        return np.argsort(spec.profile.votes, axis=1).mean(axis=0)
    if isinstance(spec, ImpartialAnonymousCulture):
        return np.full(spec.m, (spec.m - 1) / 2.0)
    draws = sample_profiles(spec, 1, EXPECTED_RANK_DRAWS, rng)[:, 0, :]
    return np.argsort(draws, axis=1).mean(axis=0)


def resolve_target(d_spec: str, spec: DistributionSpec, rng) -> int:
    """Candidate index, either literal or 'rank:K' (K-th best expected rank)."""
    text = str(d_spec).strip()
    if text.startswith("rank:"):
        k = int(text.split(":", 1)[1])
        if not 1 <= k <= spec.m:
            raise CliError(f"expected rank {k} out of range 1..{spec.m}")
        means = mean_ranks(spec, rng)
        order = np.lexsort((np.arange(spec.m), means))
        return int(order[k - 1])
    try:
        d = int(text)
    except ValueError:
        raise CliError(f"cannot parse target candidate {text!r}") from None
    if not 0 <= d < spec.m:
        raise CliError(f"target candidate {d} out of range 0..{spec.m - 1}")
    return d


def _fmt(value) -> str:
    return format(float(value), ".6g")


def _point_streams(seed: int, index: int):
    base = np.random.SeedSequence(seed, spawn_key=(index,))
    solve_ss, eval_ss, aux_ss = base.spawn(3)
    return (
        np.random.default_rng(solve_ss),
        np.random.default_rng(eval_ss),
        np.random.default_rng(aux_ss),
    )


def run_point(task: dict) -> dict:
    """One sweep grid point: sample, solve, evaluate. Returns a row dict."""
    rng_solve, rng_eval, rng_aux = _point_streams(task["seed"], task["index"])
    spec = task["spec"]
    rule = task["rule"]
    n, c = task["n"], task["c"]
    d = resolve_target(task["d"], spec, rng_aux)
    votes = sample_profiles(spec, n, task["tsolve"], rng_solve)
    samples = summarize(votes, rule)
    solve = solve_optimal(samples, c, d, budget=task["budget"])
    report = expected_regret(spec, n, solve.strategy, rule, task["trials"], rng_eval)
    return {
        "phi": task["phi_label"],
        "d": d,
        "n": n,
        "predicted_prob": solve.manipulation_probability,
        "realized_prob": report.p_flip_to_d,
        "expected_regret": report.expected_regret,
        "normalized_regret": report.normalized_expected_regret,
        "bound_general": report.bound_general,
        "solve_time": solve.solve_time,
        "optimal_flag": solve.optimal,
        "error": "",
    }


def _sweep_tasks(config: ExperimentConfig) -> list[dict]:
    config.require("n", "c")
    phis = config.sweep_phi or [None]
    d_specs = config.sweep_d or [config.d]
    ns = config.sweep_n or [config.n]
    if not (config.sweep_phi or config.sweep_d or config.sweep_n):
        raise CliError("sweep needs at least one of sweep_phi / sweep_d / sweep_n")
    if config.sweep_phi and not config.dist.startswith("mallows"):
        raise CliError("sweep_phi requires a mallows distribution")
    tasks = []
    index = 0
    for phi in phis:
        point = config if phi is None else replace(config, dist=f"mallows:{phi}")
        spec = build_distribution(point)
        if isinstance(spec, MallowsModel):
            phi_label = _fmt(spec.phi)
        elif isinstance(spec, ImpartialCulture):
            phi_label = "1"
        else:
            phi_label = ""
        rule = parse_rule(config.rule, spec.m)
        for d_spec in d_specs:
            for n in ns:
                tasks.append(
                    {
                        "index": index,
                        "seed": config.seed,
                        "spec": spec,
                        "rule": rule,
                        "n": n,
                        "c": config.c,
                        "d": d_spec,
                        "tsolve": config.tsolve,
                        "trials": config.trials,
                        "budget": config.budget_secs,
                        "phi_label": phi_label,
                    }
                )
                index += 1
    return tasks


def _safe_run_point(task: dict) -> dict:
    try:
        return run_point(task)
    except Exception as exc:  # grid keeps going; failure lands in the row
        return {
            "phi": task["phi_label"],
            "d": "",
            "n": task["n"],
            "predicted_prob": "",
            "realized_prob": "",
            "expected_regret": "",
            "normalized_regret": "",
            "bound_general": "",
            "solve_time": "",
            "optimal_flag": "",
            "error": str(exc).replace(",", ";").replace("\n", " "),
        }


def _format_row(row: dict, timing: bool) -> str:
    def num(key):
        value = row[key]
        return _fmt(value) if value != "" else ""

    solve_time = row["solve_time"]
    if solve_time == "":
        time_text = ""
    else:
        time_text = _fmt(solve_time) if timing else _fmt(0.0)
    flag = row["optimal_flag"]
    flag_text = "" if flag == "" else ("true" if flag else "false")
    return ",".join(
        [
            str(row["phi"]),
            str(row["d"]),
            str(row["n"]),
            num("predicted_prob"),
            num("realized_prob"),
            num("expected_regret"),
            num("normalized_regret"),
            num("bound_general"),
            time_text,
            flag_text,
            row["error"],
        ]
    )


def cmd_sweep(config: ExperimentConfig, out) -> int:
    tasks = _sweep_tasks(config)
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            rows = list(pool.map(_safe_run_point, tasks))
    else:
        rows = [_safe_run_point(task) for task in tasks]
    out.write(SWEEP_COLUMNS + "\n")
    failures = 0
    for task, row in zip(tasks, rows):
        out.write(_format_row(row, config.timing) + "\n")
        if row["error"]:
            failures += 1
            print(f"point {task['index']} failed: {row['error']}", file=sys.stderr)
        elif row["solve_time"] != "":
            print(
                f"point {task['index']}: solved in {row['solve_time']:.3f}s "
                f"(optimal={row['optimal_flag']})",
                file=sys.stderr,
            )
    return 1 if failures else 0


def cmd_solve(config: ExperimentConfig, out, psm_out: str | None) -> int:
    config.require("n", "c")
    rng_solve, _, rng_aux = _point_streams(config.seed, 0)
    spec = build_distribution(config, rng=rng_aux)
    rule = parse_rule(config.rule, spec.m)
    d = resolve_target(config.d, spec, rng_aux)
    votes = sample_profiles(spec, config.n, config.tsolve, rng_solve)
    samples = summarize(votes, rule)
    result = solve_optimal(samples, config.c, d, budget=config.budget_secs)
    ballots = recover_votes(result.strategy)
    counts = result.prune_result.counts
    lines = [
        "# votemanip solve",
        f"m={spec.m}",
        f"n={config.n}",
        f"c={config.c}",
        f"d={d}",
        f"rule={config.rule}",
        f"dist={config.dist}",
        f"tsolve={config.tsolve}",
        f"seed={config.seed}",
        f"impossible={counts[0]}",
        f"guaranteed={counts[1]}",
        f"contested={counts[2]}",
        f"objective={result.objective}",
        f"win_probability={_fmt(result.win_probability)}",
        f"manipulation_probability={_fmt(result.manipulation_probability)}",
        f"optimal={'true' if result.optimal else 'false'}",
        f"solve_time={_fmt(result.solve_time) if config.timing else _fmt(0.0)}",
        "psm:",
    ]
    entries = result.strategy.entries
    lines.extend(" ".join(str(int(x)) for x in row) for row in entries)
    lines.append("ballots:")
    unique, tally = np.unique(ballots.votes, axis=0, return_counts=True)
    for vote, count in zip(unique.tolist(), tally.tolist()):
        lines.append(f"{count}: " + ",".join(str(x) for x in vote))
    out.write("\n".join(lines) + "\n")
    print(f"solved in {result.solve_time:.3f}s (optimal={result.optimal})", file=sys.stderr)
    if psm_out:
        with open(psm_out, "w", encoding="utf-8") as handle:
            for row in entries:
                handle.write(" ".join(str(int(x)) for x in row) + "\n")
    return 0


def cmd_evaluate(config: ExperimentConfig, psm_path: str, out) -> int:
    config.require("n")
    strategy = strategy_from_matrix(read_psm(psm_path))
    _, rng_eval, rng_aux = _point_streams(config.seed, 0)
    spec = build_distribution(config, rng=rng_aux)
    if spec.m != strategy.m:
        raise CliError(f"strategy is over m={strategy.m} but belief has m={spec.m}")
    rule = parse_rule(config.rule, spec.m)
    report = expected_regret(spec, config.n, strategy, rule, config.trials, rng_eval)
    out.write(EVAL_COLUMNS + "\n")
    bound_k = "" if report.bound_kapproval is None else _fmt(report.bound_kapproval)
    out.write(
        ",".join(
            [
                str(strategy.d),
                str(config.n),
                str(report.trials),
                _fmt(report.p_flip_to_d),
                _fmt(report.p_flip_to_other),
                _fmt(report.expected_regret),
                _fmt(report.normalized_expected_regret),
                _fmt(report.bound_general),
                bound_k,
            ]
        )
        + "\n"
    )
    return 0


def cmd_recover(psm_path: str, out) -> int:
    matrix = read_psm(psm_path)
    ballots = recover_votes(matrix)
    out.write(f"m={matrix.shape[0]}\n")
    unique, tally = np.unique(ballots.votes, axis=0, return_counts=True)
    for vote, count in zip(unique.tolist(), tally.tolist()):
        out.write(f"{count}: " + ",".join(str(x) for x in vote) + "\n")
    return 0


def cmd_complexity(args, out) -> int:
    if args.C is not None:
        general = sample_complexity_general(args.c, args.m, args.eps, args.delta, args.C)
        out.write(f"general_bound_T={general}\n")
    elif args.k is None:
        raise CliError("the general bound needs an explicit constant via --C")
    if args.k is not None:
        approval = sample_complexity_kapproval(args.c, args.k, args.m, args.eps, args.delta)
        out.write(f"kapproval_bound_T={approval}\n")
    return 0


def cmd_sample(config: ExperimentConfig, count: int, out) -> int:
    config.require("n")
    rng_solve, _, rng_aux = _point_streams(config.seed, 0)
    spec = build_distribution(config, rng=rng_aux)
    votes = sample_profiles(spec, config.n, count, rng_solve)
    write_profiles([Profile(v) for v in votes], out)
    return 0


def _add_config_flags(parser):
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--seed", type=int, help="master seed (mandatory)")
    parser.add_argument("--out", help="output path (default stdout)")
    parser.add_argument("--rule", help="plurality|borda|kapproval:K|alpha:a1,...,am")
    parser.add_argument(
        "--dist", help="ic|iac|mallows:PHI|mixture:FILE|ballots:FILE|point:FILE"
    )
    parser.add_argument("--m", type=int, help="candidate count (ic/iac/mallows)")
    parser.add_argument("--sigma", help="mallows reference ranking i1,...,im")
    parser.add_argument("--n", type=int, help="sincere voters per profile")
    parser.add_argument("--c", type=int, help="coalition size")
    parser.add_argument("--d", help="target candidate index or rank:K")
    parser.add_argument("--tsolve", type=int, help="profiles sampled for solving")
    parser.add_argument("--trials", type=int, help="fresh profiles for evaluation")
    parser.add_argument(
        "--budget-secs", dest="budget_secs", type=float, help="solver time budget"
    )
    parser.add_argument("--jobs", type=int, help="sweep worker processes")
    parser.add_argument(
        "--timing", action="store_const", const=True, help="real solve times in output"
    )
    parser.add_argument(
        "--ballot-policy",
        dest="ballot_policy",
        choices=("drop", "uniform"),
        help="truncated-ballot handling for ballots:FILE",
    )
    parser.add_argument("--sweep-n", dest="sweep_n", type=_int_list, help="n1,n2,...")
    parser.add_argument("--sweep-phi", dest="sweep_phi", type=_float_list, help="p1,p2,...")
    parser.add_argument("--sweep-d", dest="sweep_d", type=_str_list, help="d1,d2,...")


def _int_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _float_list(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _str_list(text):
    return [x.strip() for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="votemanip",
        description="Coalition manipulation planning for positional scoring elections",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="sample, solve, and print strategy + ballots")
    _add_config_flags(solve)
    solve.add_argument("--psm-out", dest="psm_out", help="also write the bare strategy matrix here")

    evaluate = sub.add_parser("evaluate", help="measure a strategy on fresh profiles")
    _add_config_flags(evaluate)
    evaluate.add_argument("--psm", required=True, help="strategy matrix file")

    sweep = sub.add_parser("sweep", help="grid over phi/d/n, one CSV row per point")
    _add_config_flags(sweep)

    recover = sub.add_parser("recover", help="strategy matrix file -> explicit ballots")
    recover.add_argument("--psm", required=True, help="strategy matrix file")
    recover.add_argument("--out", help="output path (default stdout)")

    complexity = sub.add_parser("complexity", help="sample-size bounds")
    complexity.add_argument("--c", type=int, required=True)
    complexity.add_argument("--m", type=int, required=True)
    complexity.add_argument("--k", type=int)
    complexity.add_argument("--eps", type=float, required=True)
    complexity.add_argument("--delta", type=float, required=True)
    complexity.add_argument("--C", type=float, help="leading constant of the general bound")
    complexity.add_argument("--out", help="output path (default stdout)")

    sample = sub.add_parser("sample", help="emit sampled profiles to a file")
    _add_config_flags(sample)
    sample.add_argument("--count", type=int, default=1, help="number of profiles")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out_path = getattr(args, "out", None)
        sink = open(out_path, "w", encoding="utf-8", newline="") if out_path else sys.stdout
        try:
            if args.command == "complexity":
                return cmd_complexity(args, sink)
            if args.command == "recover":
                return cmd_recover(args.psm, sink)
            config = build_config(args)
            if args.command == "solve":
                return cmd_solve(config, sink, args.psm_out)
            if args.command == "evaluate":
                return cmd_evaluate(config, args.psm, sink)
            if args.command == "sweep":
                return cmd_sweep(config, sink)
            if args.command == "sample":
                return cmd_sample(config, args.count, sink)
            raise CliError(f"unknown command {args.command!r}")
        finally:
            if out_path:
                sink.close()
    except (CliError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
