"""Experiment driver: parameter sweeps, Monte Carlo averaging, CSV, CLI.

Every scheme inside one trial consumes the identical scenario, so sweep
curves are paired comparisons. Per-trial seeds are derived from the base
seed, the index of the swept value, and the trial index through a seed
sequence; file-size sweeps reuse the same scenarios at every point (the file
size never enters the sampling), which keeps delivered bits exactly linear
in the file size.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace

import numpy as np

from cranidnc import golden
from cranidnc.baselines import classical_idnc, heu_shd, rlnc
from cranidnc.clique import DEFAULT_EXACT_VERTEX_BUDGET, max_weight_clique_exact
from cranidnc.graph import build_graph, write_dimacs
from cranidnc.scenario import (
    SCENARIO_KEYS,
    Scenario,
    ScenarioConfig,
    config_from_mapping,
    generate_scenario,
    load_key_values,
)
from cranidnc.scheduler import (
    ProblemInstance,
    ThroughputReport,
    format_schedule,
    propose_schedule,
)

__all__ = [
    "SCHEMES",
    "SWEEP_PARAMETERS",
    "SweepSpec",
    "TrialRecord",
    "SweepResult",
    "derive_trial_seed",
    "run_sweep",
    "emit_csv",
    "cli_main",
    "main",
]

SCHEMES = ("proposed_exact", "proposed_greedy", "classical_idnc", "rlnc", "heu_shd")
SWEEP_PARAMETERS = ("num_users", "num_rrbs", "file_size")

_SWEEP_KEYS = frozenset({"sweep_parameter", "sweep_values", "trials_per_point",
                         "schemes", "vertex_budget"})

CSV_HEADER = "scheme,swept_param,value,mean_bits_per_user_hz,stderr,mean_delivered_bits,trials"


@dataclass(frozen=True)
class SweepSpec:
    swept_parameter: str
    values: tuple
    trials_per_point: int
    base_config: ScenarioConfig
    schemes: tuple[str, ...] = SCHEMES
    vertex_budget: int = DEFAULT_EXACT_VERTEX_BUDGET

    def __post_init__(self):
        if self.swept_parameter not in SWEEP_PARAMETERS:
            raise ValueError(f"unknown sweep parameter {self.swept_parameter!r}")
        if not self.values:
            raise ValueError("sweep needs at least one value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        if self.trials_per_point < 1:
            raise ValueError("trials_per_point must be >= 1")
        unknown = set(self.schemes) - set(SCHEMES)
        if not self.schemes or unknown:
            raise ValueError(f"schemes must be a nonempty subset of {SCHEMES}, got {self.schemes}")


@dataclass(frozen=True)
class TrialRecord:
    scheme: str
    swept_parameter: str
    value: float
    trial: int
    seed: int
    sum_rate: float
    bits_per_user_hz: float
    delivered_bits: float
    solver_used: str


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    records: tuple[TrialRecord, ...]

    def summary(self) -> list[tuple]:
        """(scheme, param, value, mean, stderr, mean_delivered, trials) rows."""
        rows = []
        for scheme in sorted(set(self.schemes_run())):
            for value in self.spec.values:
                picked = [r for r in self.records
                          if r.scheme == scheme and r.value == value]
                if not picked:
                    continue
                throughputs = np.array([r.bits_per_user_hz for r in picked])
                delivered = np.array([r.delivered_bits for r in picked])
                stderr = (float(np.std(throughputs, ddof=1)) / np.sqrt(len(picked))
                          if len(picked) > 1 else 0.0)
                rows.append((scheme, self.spec.swept_parameter, value,
                             float(np.mean(throughputs)), float(stderr),
                             float(np.mean(delivered)), len(picked)))
        return rows

    def schemes_run(self) -> list[str]:
        return [r.scheme for r in self.records]


def derive_trial_seed(base_seed: int, value_index: int, trial: int) -> int:
    """Stable per-trial seed so any single trial can be regenerated alone."""
    sequence = np.random.SeedSequence(entropy=int(base_seed),
                                      spawn_key=(int(value_index), int(trial)))
    return int(sequence.generate_state(1, np.uint64)[0])


def _apply_sweep_value(config: ScenarioConfig, parameter: str, value) -> ScenarioConfig:
    if parameter == "num_users":
        return replace(config, dims=replace(config.dims, num_users=int(value)))
    if parameter == "num_rrbs":
        return replace(config, dims=replace(config.dims, num_rrbs_per_rrh=int(value)))
    if parameter == "file_size":
        return replace(config, file_size_bits=float(value))
    raise ValueError(f"unknown sweep parameter {parameter!r}")


def instance_from_scenario(scenario: Scenario) -> ProblemInstance:
    return ProblemInstance(scenario.config.dims, scenario.capacities,
                           scenario.side_info, scenario.config.file_size_bits)


def _run_scheme(scheme: str, instance: ProblemInstance, vertex_budget: int,
                cache: dict) -> tuple[ThroughputReport, str]:
    if scheme in ("proposed_exact", "proposed_greedy"):
        g = cache.get("graph")
        if g is None:
            g = build_graph(instance.capacities, instance.side_info, instance.dims)
            cache["graph"] = g
        if scheme == "proposed_exact":
            method = "exact" if g.num_vertices <= vertex_budget else "greedy"
        else:
            method = "greedy"
        _, report = propose_schedule(instance, method, graph=g)
        return report, method
    if scheme == "classical_idnc":
        # The rate-free graph keeps its own (smaller) unit-weight budget.
        _, report = classical_idnc(instance)
        return report, "auto"
    if scheme == "rlnc":
        _, report = rlnc(instance)
        return report, "direct"
    if scheme == "heu_shd":
        _, report = heu_shd(instance, vertex_budget=vertex_budget)
        return report, "auto"
    raise ValueError(f"unknown scheme {scheme!r}")


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Run every scheme on the same scenarios across the swept values."""
    records: list[TrialRecord] = []
    for value_index, value in enumerate(spec.values):
        config = _apply_sweep_value(spec.base_config, spec.swept_parameter, value)
        seed_index = 0 if spec.swept_parameter == "file_size" else value_index
        for trial in range(spec.trials_per_point):
            seed = derive_trial_seed(spec.base_config.rng_seed, seed_index, trial)
            scenario = generate_scenario(replace(config, rng_seed=seed))
            instance = instance_from_scenario(scenario)
            cache: dict = {}
            for scheme in spec.schemes:
                try:
                    report, solver_used = _run_scheme(scheme, instance,
                                                      spec.vertex_budget, cache)
                except Exception as exc:
                    raise RuntimeError(
                        f"scheme {scheme} failed at {spec.swept_parameter}={value} "
                        f"trial {trial} (seed {seed})") from exc
                records.append(TrialRecord(
                    scheme=scheme,
                    swept_parameter=spec.swept_parameter,
                    value=value,
                    trial=trial,
                    seed=seed,
                    sum_rate=report.sum_rate,
                    bits_per_user_hz=report.sum_rate / config.dims.num_users,
                    delivered_bits=report.delivered_bits,
                    solver_used=solver_used,
                ))
    return SweepResult(spec, tuple(records))


def _format_number(value) -> str:
    if isinstance(value, int):
        return str(value)
    as_float = float(value)
    if as_float.is_integer():
        return str(int(as_float))
    return repr(as_float)


def emit_csv(result: SweepResult, path: str) -> None:
    """Deterministic aggregate table, one row per (scheme, swept value)."""
    lines = [CSV_HEADER]
    for scheme, parameter, value, mean, stderr, delivered, trials in result.summary():
        lines.append(",".join([
            scheme, parameter, _format_number(value),
            repr(mean), repr(stderr), repr(delivered), str(trials),
        ]))
    with open(path, "w", encoding="ascii", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


# --- command line ----------------------------------------------------------


def _load_sweep_file(path: str, args) -> tuple[SweepSpec, ScenarioConfig]:
    mapping = load_key_values(path)
    unknown = set(mapping) - SCENARIO_KEYS - _SWEEP_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    config = config_from_mapping(mapping)
    if getattr(args, "seed", None) is not None:
        config = replace(config, rng_seed=args.seed)
    parameter = mapping.get("sweep_parameter", "num_users")
    if getattr(args, "param", None):
        parameter = args.param
    values_text = mapping.get("sweep_values", "3,6,9,12,15")
    if getattr(args, "values", None):
        values_text = args.values
    values = tuple(_parse_number(tok) for tok in values_text.split(","))
    trials = int(mapping.get("trials_per_point", "100"))
    if getattr(args, "trials", None) is not None:
        trials = args.trials
    schemes = tuple(mapping.get("schemes", ",".join(SCHEMES)).split(","))
    if getattr(args, "schemes", None):
        schemes = tuple(args.schemes.split(","))
    budget = int(mapping.get("vertex_budget", str(DEFAULT_EXACT_VERTEX_BUDGET)))
    if getattr(args, "budget", None) is not None:
        budget = args.budget
    spec = SweepSpec(parameter, values, trials, config, schemes, budget)
    return spec, config


def _parse_number(token: str):
    token = token.strip()
    try:
        return int(token)
    except ValueError:
        return float(token)


def _cmd_selftest(_args) -> int:
    status = 0

    unit = golden.unit_rate_case()
    _, coded = propose_schedule(unit, "exact")
    _, uncoded = heu_shd(unit)
    unit_ok = (coded.sum_rate == golden.UNIT_RATE_CODED_OPTIMUM
               and uncoded.sum_rate == golden.UNIT_RATE_UNCODED_OPTIMUM)
    print(f"fig3: {coded.sum_rate} {'OK' if unit_ok else 'FAIL'}")

    mixed = golden.mixed_rate_case()
    g = build_graph(mixed.capacities, mixed.side_info, mixed.dims)
    wg = g.as_weighted_graph()
    cliques_ok = True
    for keys, expected in zip(golden.MIXED_RATE_CLIQUES, golden.MIXED_RATE_CLIQUE_WEIGHTS):
        ids = [g.find_vertex(*key) for key in keys]
        if any(i is None for i in ids):
            cliques_ok = False
            continue
        from cranidnc.clique import is_clique

        if not is_clique(wg, ids) or sum(float(wg.weights[i]) for i in ids) != expected:
            cliques_ok = False
    best = max_weight_clique_exact(wg)
    mixed_ok = cliques_ok and best.total_weight == golden.MIXED_RATE_OPTIMUM
    print(f"fig4: {best.total_weight} {'OK' if mixed_ok else 'FAIL'}")

    if not (unit_ok and mixed_ok):
        status = 1
    return status


def _cmd_solve(args) -> int:
    mapping = load_key_values(args.config)
    unknown = set(mapping) - SCENARIO_KEYS - _SWEEP_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    config = config_from_mapping(mapping)
    if args.seed is not None:
        config = replace(config, rng_seed=args.seed)
    budget = args.budget if args.budget is not None else int(
        mapping.get("vertex_budget", str(DEFAULT_EXACT_VERTEX_BUDGET)))
    schemes = tuple(args.schemes.split(",")) if args.schemes else SCHEMES
    scenario = generate_scenario(config)
    instance = instance_from_scenario(scenario)
    cache: dict = {}
    for scheme in schemes:
        if scheme in ("proposed_exact", "proposed_greedy"):
            g = cache.get("graph")
            if g is None:
                g = build_graph(instance.capacities, instance.side_info, instance.dims)
                cache["graph"] = g
            method = "greedy" if (scheme == "proposed_greedy"
                                  or g.num_vertices > budget) else "exact"
            schedule, report = propose_schedule(instance, method, graph=g)
            solver_used = method
        elif scheme == "classical_idnc":
            schedule, report = classical_idnc(instance)
            solver_used = "auto"
        elif scheme == "rlnc":
            schedule, report = rlnc(instance)
            solver_used = "direct"
        elif scheme == "heu_shd":
            schedule, report = heu_shd(instance, vertex_budget=budget)
            solver_used = "auto"
        else:
            raise ValueError(f"unknown scheme {scheme!r}")
        per_user = report.sum_rate / config.dims.num_users
        print(f"{scheme} sum_rate={report.sum_rate!r} bits_per_user_hz={per_user!r} "
              f"delivered_bits={report.delivered_bits!r} solver={solver_used}")
        for line in format_schedule(schedule).splitlines():
            print(f"  {line}")
    return 0


def _cmd_sweep(args) -> int:
    spec, _ = _load_sweep_file(args.config, args)
    result = run_sweep(spec)
    emit_csv(result, args.out)
    print(f"wrote {args.out}: {len(result.records)} trial records, "
          f"{len(result.summary())} summary rows")
    return 0


def _cmd_graph_dump(args) -> int:
    mapping = load_key_values(args.config)
    config = config_from_mapping(mapping)
    if args.seed is not None:
        config = replace(config, rng_seed=args.seed)
    scenario = generate_scenario(config)
    g = build_graph(scenario.capacities, scenario.side_info, config.dims)
    write_dimacs(g, args.out)
    print(f"wrote {args.out}: {g.num_vertices} vertices, {g.num_edges} edges")
    return 0


def cli_main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cranidnc",
        description="Coded-scheduling optimizer and benchmark for cloud radio access networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a Monte Carlo parameter sweep")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--seed", type=int)
    p_sweep.add_argument("--trials", type=int)
    p_sweep.add_argument("--schemes")
    p_sweep.add_argument("--param", choices=SWEEP_PARAMETERS)
    p_sweep.add_argument("--values")
    p_sweep.add_argument("--budget", type=int)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_solve = sub.add_parser("solve", help="schedule a single generated instance")
    p_solve.add_argument("--config", required=True)
    p_solve.add_argument("--seed", type=int)
    p_solve.add_argument("--schemes")
    p_solve.add_argument("--budget", type=int)
    p_solve.set_defaults(func=_cmd_solve)

    p_dump = sub.add_parser("graph-dump", help="export the conflict graph as an edge list")
    p_dump.add_argument("--config", required=True)
    p_dump.add_argument("--out", required=True)
    p_dump.add_argument("--seed", type=int)
    p_dump.set_defaults(func=_cmd_graph_dump)

    p_self = sub.add_parser("selftest", help="check the shipped golden cases")
    p_self.set_defaults(func=_cmd_selftest)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    return args.func(args)


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
