import argparse
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from optodecouple.common import ContractViolation, ListableEnum, ScenarioParseError, ScenarioValidationError
from optodecouple.config import Scenario, load_scenario
from optodecouple.ffunctions import write_fset_csv
from optodecouple.linearized import detect_regime, full_model_modulated_populations, linearized_oracle_populations, linearized_resonant_populations, resonance_scan
from optodecouple.observables import ObservableSeries, analytic_f_set, observable_series, write_series_csv, write_series_json
from optodecouple.oracle import compare_series, oracle_series, write_comparison
from optodecouple.special import IdentityReport, identity_suite
from optodecouple.writer import write_csv_file, write_json_file
from scripts.universal.common import PrintOptions, SharedRunParser, configure_warnings, print_any, print_error, print_failure, print_reading, print_wrote


class Pipeline(ListableEnum):
    Analytic = "analytic"
    Oracle = "oracle"
    Linearized = "linearized"
    Scan = "scan"
    Identities = "identities"


class OutputFormat(ListableEnum):
    Csv = "csv"
    Json = "json"


class ExitCode(IntEnum):
    Success = 0
    Failure = 1
    ParseError = 2
    ValidationError = 3


@dataclass
class RunConfig:
    scenario: Optional[str]
    pipelines: List[Pipeline] = field(default_factory=lambda: [Pipeline.Analytic])
    formats: List[OutputFormat] = field(default_factory=lambda: [OutputFormat.Csv])
    out_dir: Path = Path(".")
    compare: bool = False
    jobs: int = 1
    grid_refine: int = 1
    fset: bool = False

    def __post_init__(self) -> None:
        if not self.pipelines:
            raise ContractViolation("run", "at least one pipeline must be selected")
        if self.compare:
            for required in (Pipeline.Analytic, Pipeline.Oracle):
                if required not in self.pipelines:
                    self.pipelines.append(required)
        # Fixed execution order whatever order the flags came in.
        self.pipelines = [p for p in Pipeline if p in self.pipelines]
        self.formats = [f for f in OutputFormat if f in self.formats] or [OutputFormat.Csv]
        if self.jobs < 1:
            raise ContractViolation("run", "--jobs must be at least 1")
        if self.grid_refine < 1:
            raise ContractViolation("run", "--grid-refine must be at least 1")
        if self.needs_scenario and not self.scenario:
            raise ContractViolation("run", "a scenario file is required by every pipeline except identities")

    @property
    def needs_scenario(self) -> bool:
        return any(p != Pipeline.Identities for p in self.pipelines) or self.fset


@dataclass
class PointResult:
    stem: str
    written: List[Path] = field(default_factory=list)
    failure: Optional[Dict[str, Any]] = None


def _runtime_failure(e: BaseException, point: str) -> Dict[str, Any]:
    return {"error": "runtime", "type": type(e).__name__, "message": str(e), "point": point}


def _write_series(config: RunConfig, stem: str, series: ObservableSeries) -> Iterator[Path]:
    for fmt in config.formats:
        path = config.out_dir / f"{stem}.{fmt.value}"
        yield write_series_csv(path, series) if fmt == OutputFormat.Csv else write_series_json(path, series)


def _write_columns(config: RunConfig, stem: str, columns: Dict[str, Any], extra: Dict[str, Any]) -> Iterator[Path]:
    names = list(columns)
    for fmt in config.formats:
        path = config.out_dir / f"{stem}.{fmt.value}"
        if fmt == OutputFormat.Csv:
            yield write_csv_file(path, names, zip(*(columns[n] for n in names)))
        else:
            yield write_json_file(path, {**extra, "columns": {n: np.asarray(columns[n]) for n in names}})


def _run_linearized(scenario: Scenario, config: RunConfig, stem: str) -> Iterator[Path]:
    spec = scenario.linearized
    if spec is None:
        raise ContractViolation("run", "the linearized pipeline needs a [linearized] section")
    regime = scenario.regime or detect_regime(spec)
    t = scenario.grid.t
    rwa_cavity, rwa_mech = linearized_resonant_populations(spec, regime, scenario.state, t)
    full_cavity, full_mech = full_model_modulated_populations(spec.system, scenario.state, t, spec.mode, spec.resonator)
    columns: Dict[str, Any] = {"t": t, "rwa_pop_c": rwa_cavity, "rwa_pop_m": rwa_mech, "full_pop_c": full_cavity, "full_pop_m": full_mech}
    if config.compare and scenario.oracle is not None:
        cavity, mech = linearized_oracle_populations(spec, scenario.state, scenario.grid, scenario.oracle)
        columns["oracle_pop_c"] = cavity[spec.mode]
        columns["oracle_pop_m"] = mech[spec.resonator]
    yield from _write_columns(config, f"{stem}_linearized", columns, {"regime": regime, "omega_d": spec.omega_d})


def _run_scan(scenario: Scenario, config: RunConfig, stem: str) -> Iterator[Path]:
    if scenario.linearized is None or scenario.scan is None:
        raise ContractViolation("run", "the scan pipeline needs [linearized] and [scan] sections")
    scan = scenario.scan
    report = resonance_scan(scenario.linearized, scenario.state, scan.omega_d, scan.horizon, scan.samples_per_period)
    for fmt in config.formats:
        path = config.out_dir / f"{stem}_scan.{fmt.value}"
        yield report.write_csv(path) if fmt == OutputFormat.Csv else write_json_file(path, {"rows": report.rows})


def run_point(scenario: Scenario, config: RunConfig, stem: str) -> List[Path]:
    """Every selected scenario pipeline for one (possibly swept) scenario; returns the files written."""
    written: List[Path] = []
    observables = scenario.observables
    analytic: Optional[ObservableSeries] = None
    oracle: Optional[ObservableSeries] = None
    fset = None

    if config.fset or Pipeline.Analytic in config.pipelines:
        fset = analytic_f_set(scenario.system, scenario.grid)
    if config.fset:
        written.append(write_fset_csv(config.out_dir / f"{stem}_fset.csv", fset))
    for pipeline in config.pipelines:
        if pipeline == Pipeline.Analytic:
            analytic = observable_series(scenario.system, scenario.state, scenario.grid, observables.pairs, observables.entropy, observables.truncation, fset, observables.form)
            written.extend(_write_series(config, f"{stem}_analytic", analytic))
        elif pipeline == Pipeline.Oracle:
            if scenario.oracle is None:
                raise ContractViolation("run", "the oracle pipeline needs an [oracle] section")
            oracle = oracle_series(scenario.system, scenario.state, scenario.grid, scenario.oracle, observables.pairs, observables.entropy)
            written.extend(_write_series(config, f"{stem}_oracle", oracle))
        elif pipeline == Pipeline.Linearized:
            written.extend(_run_linearized(scenario, config, stem))
        elif pipeline == Pipeline.Scan:
            written.extend(_run_scan(scenario, config, stem))
    if config.compare and analytic is not None and oracle is not None:
        report = compare_series(analytic, oracle)
        extra = {"scenario": scenario.name, "grid_refine": config.grid_refine, "samples": len(scenario.grid)}
        written.append(write_comparison(config.out_dir / f"{stem}_compare.json", report, extra))
    return written


def _point_task(task: Tuple[Scenario, RunConfig, str, PrintOptions]) -> PointResult:
    scenario, config, stem, print_opts = task
    try:
        with warnings.catch_warnings():
            configure_warnings(print_opts)
            return PointResult(stem, run_point(scenario, config, stem))
    except KeyboardInterrupt:
        raise
    except (ContractViolation, ArithmeticError, ValueError, UserWarning) as e:
        return PointResult(stem, failure=_runtime_failure(e, stem))


def write_identity_report(config: RunConfig, report: IdentityReport) -> Iterator[Path]:
    for fmt in config.formats:
        path = config.out_dir / f"identities.{fmt.value}"
        if fmt == OutputFormat.Json:
            checks = [{"name": c.name, "params": c.params, "deviation": c.deviation, "tolerance": c.tolerance, "passed": c.passed} for c in report.checks]
            yield write_json_file(path, {**report.summary(), "checks": checks})
        else:
            header = ["name", "params", "deviation", "tolerance", "passed"]
            rows = ([c.name, ";".join(f"{k}={v}" for k, v in c.params.items()), c.deviation, c.tolerance, "yes" if c.passed else "no"] for c in report.checks)
            yield write_csv_file(path, header, rows)


def scenario_points(scenario: Scenario, grid_refine: int) -> List[Tuple[str, Scenario]]:
    stem = Path(scenario.path).stem if scenario.path else scenario.name
    points = [(stem, scenario)] + [(f"{stem}_sweep{point.sweep_index}", point) for point in scenario.sweep_points()]
    if grid_refine > 1:
        points = [(name, point.refined(grid_refine)) for name, point in points]
    return points


def run(config: RunConfig, print_opts: PrintOptions = None) -> int:
    """
    Runs the selected pipelines and writes their artifacts into `config.out_dir`.

    Returns the process exit code; every failure is also reported as one JSON object on stderr.
    """
    print_opts = print_opts or PrintOptions()
    configure_warnings(print_opts)
    code = ExitCode.Success

    if Pipeline.Identities in config.pipelines:
        print_any("Checking special-function identities...", 0, print_opts)
        report = identity_suite()
        for path in write_identity_report(config, report):
            print_wrote(str(path), 1, print_opts)
        if not report.passed:
            print_failure({"error": "identities", "failures": [{"name": c.name, "params": c.params, "deviation": c.deviation} for c in report.failures]})
            code = ExitCode.Failure
            if print_opts.error_fail:
                return code
    if not config.needs_scenario:
        return code

    assert config.scenario is not None
    print_reading(config.scenario, 0, print_opts)
    try:
        points = scenario_points(load_scenario(config.scenario), config.grid_refine)
    except ScenarioParseError as e:
        print_failure(e.as_dict())
        return ExitCode.ParseError
    except ScenarioValidationError as e:
        print_failure(e.as_dict())
        return ExitCode.ValidationError

    tasks = [(point, config, stem, print_opts) for stem, point in points]
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_point_task, tasks))
    else:
        results = []
        for task in tasks:
            results.append(_point_task(task))
            if results[-1].failure and print_opts.error_fail:
                break

    for result in results:
        print_any(f"Point \"{result.stem}\"", 0, print_opts)
        for path in result.written:
            print_wrote(str(path), 1, print_opts)
        if result.failure:
            print_error(RuntimeError(result.failure["message"]), 1, print_opts)
            print_failure(result.failure)
            code = ExitCode.Failure
    if not print_opts.quiet:
        print("\tDone!")
    return code


def add_args(parser: argparse.ArgumentParser):
    parser.add_argument("scenario", nargs="?", type=str, help="The scenario file to run (not needed for the identities pipeline alone).")
    parser.add_argument("-p", "--pipeline", nargs="+", action="extend", type=str.lower, choices=Pipeline.list(), help="Pipelines to run. (analytic by default.)")
    parser.add_argument("-c", "--compare", action="store_true", help="Also run the oracle and write the analytic-vs-oracle deviation report.")
    parser.add_argument("-j", "--jobs", type=int, default=1, help="Sweep points run in parallel in this many processes. (1 by default.)")
    parser.add_argument("-o", "--out", type=str, default=".", help="The directory to write artifacts to.")
    parser.add_argument("-g", "--grid-refine", type=int, default=1, help="Insert K-1 extra samples into every grid step.")
    parser.add_argument("-f", "--format", nargs="+", action="extend", type=str.lower, choices=OutputFormat.list(), help="Artifact formats. (csv by default.)")
    parser.add_argument("--fset", action="store_true", help="Also dump the F-functions of every point as CSV.")


def config_from_args(args: argparse.Namespace) -> RunConfig:
    pipelines = [Pipeline(p) for p in (args.pipeline or [Pipeline.Analytic.value])]
    formats = [OutputFormat(f) for f in (args.format or [OutputFormat.Csv.value])]
    return RunConfig(args.scenario, pipelines, formats, Path(args.out), args.compare, args.jobs, args.grid_refine, args.fset)


def Runner(args: argparse.Namespace) -> int:
    print_opts = PrintOptions(args.strict, args.squelch, args.error, args.verbose)
    try:
        config = config_from_args(args)
    except ContractViolation as e:
        print_failure({"error": "usage", "message": str(e)})
        return ExitCode.ParseError
    return run(config, print_opts)


def add_run(sub_parsers: argparse._SubParsersAction):
    run_parser = sub_parsers.add_parser("run", help="Runs the analytic, oracle, linearized, scan and identities pipelines on a scenario.", parents=[SharedRunParser])
    add_args(run_parser)
    run_parser.set_defaults(func=Runner)
