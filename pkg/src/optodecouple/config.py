from __future__ import annotations

import configparser
import dataclasses
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, TypeVar, Union

from .common import ScenarioParseError, ScenarioValidationError
from .entropy import EntropyForm
from .linearized import LinearizedSpec, Regime
from .model import CouplingKind, CouplingSpec, InitialState, SystemSpec, TimeGrid, validate_spec
from .observables import Pair
from .oracle import OracleSettings, PropagationMethod, PropagationOptions, DEFAULT_BUDGET, THERMAL_TOL

T = TypeVar("T")
Sections = Dict[str, Dict[str, str]]

COUPLING_FAMILIES = ("g_plus", "g_minus", "lambda_plus", "lambda_minus")
_SECTION_RE = re.compile(r"^\s*\[([^\]]+)\]")
_KEY_RE = re.compile(r"^\s*([^=:;#\s][^=:]*?)\s*[=:]")


@dataclass
class ObservablesConfig:
    pairs: Tuple[Pair, ...] = ()
    entropy: bool = True
    truncation: Optional[int] = None
    form: EntropyForm = EntropyForm.Split


@dataclass
class ScanConfig:
    omega_d: Tuple[float, ...]
    horizon: float
    samples_per_period: int = 50


@dataclass
class Scenario:
    """One physical system with everything the pipelines need; optional sections stay None."""
    name: str
    system: SystemSpec
    state: InitialState
    grid: TimeGrid
    observables: ObservablesConfig = field(default_factory=ObservablesConfig)
    oracle: Optional[OracleSettings] = None
    linearized: Optional[LinearizedSpec] = None
    regime: Optional[Regime] = None
    scan: Optional[ScanConfig] = None
    path: Optional[str] = None
    sweeps: Dict[int, Dict[str, str]] = field(default_factory=dict)
    sweep_index: Optional[int] = None
    sections: Sections = field(default_factory=dict, repr=False)

    def refined(self, k: int) -> Scenario:
        return dataclasses.replace(self, grid=self.grid.refine(k))

    def sweep_points(self) -> List[Scenario]:
        """The scenario re-read once per [sweep.<i>] block with its overrides applied, in section-index order."""
        points = []
        for i, overrides in self.sweeps.items():
            sections = {name: dict(values) for name, values in self.sections.items()}
            for dotted, value in overrides.items():
                section, _, key = dotted.rpartition(".")
                if not section:
                    raise ScenarioParseError(self.path, None, f"sweep.{i}", dotted, "override keys look like <section>.<key>")
                sections.setdefault(section, {})[key] = value
            points.append(dataclasses.replace(scenario_from_sections(sections, self.path, {}, sweeps=False), sweep_index=i))
        return points


def _line_index(text: str) -> Dict[Tuple[str, Optional[str]], int]:
    """(section, key) -> 1-based line, with key None for the header itself."""
    index: Dict[Tuple[str, Optional[str]], int] = {}
    section = ""
    for number, line in enumerate(text.splitlines(), start=1):
        header = _SECTION_RE.match(line)
        if header:
            section = header.group(1).strip()
            index.setdefault((section, None), number)
            continue
        key = _KEY_RE.match(line)
        if key and section:
            index.setdefault((section, key.group(1).strip().lower()), number)
    return index


class _Reader:
    """Typed access to one section, raising located parse errors."""

    def __init__(self, sections: Sections, name: str, path: Optional[str], lines: Dict[Tuple[str, Optional[str]], int]):
        self.values = sections.get(name, {})
        self.name = name
        self.path = path
        self.lines = lines

    def fail(self, key: Optional[str], reason: str) -> ScenarioParseError:
        line = self.lines.get((self.name, key)) or self.lines.get((self.name, None))
        return ScenarioParseError(self.path, line, self.name, key, reason)

    def has(self, key: str) -> bool:
        return key in self.values

    def convert(self, key: str, convert: Callable[[str], T], what: str) -> T:
        raw = self.values[key]
        try:
            return convert(raw.strip())
        except (ValueError, TypeError, KeyError):
            raise self.fail(key, f"expected {what}; got {raw!r}") from None

    def required(self, key: str) -> str:
        if key not in self.values:
            raise self.fail(None, f"missing required key '{key}'")
        return self.values[key]

    def text(self, key: str, default: Optional[str] = None) -> Optional[str]:
        return self.values.get(key, default)

    def real(self, key: str, default: Optional[float] = None) -> float:
        if key not in self.values:
            if default is None:
                self.required(key)
            return float(default)  # type: ignore[arg-type]
        return self.convert(key, float, "a number")

    def integer(self, key: str, default: Optional[int] = None) -> int:
        if key not in self.values:
            if default is None:
                self.required(key)
            return int(default)  # type: ignore[arg-type]
        return self.convert(key, int, "an integer")

    def optional_integer(self, key: str) -> Optional[int]:
        return self.convert(key, int, "an integer") if key in self.values else None

    def boolean(self, key: str, default: bool) -> bool:
        if key not in self.values:
            return default
        states = configparser.ConfigParser.BOOLEAN_STATES
        return self.convert(key, lambda s: states[s.lower()], "yes or no")

    def reals(self, key: str) -> Tuple[float, ...]:
        self.required(key)
        return self.convert(key, lambda s: tuple(float(v) for v in _split(s)), "a comma separated list of numbers")

    def integers(self, key: str) -> Tuple[int, ...]:
        self.required(key)
        return self.convert(key, lambda s: tuple(int(v) for v in _split(s)), "a comma separated list of integers")

    def choice(self, key: str, enum: Callable[[str], T], default: T) -> T:
        if key not in self.values:
            return default
        return self.convert(key, lambda s: enum(s.lower()), "one of the documented choices")


def _split(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _complex(text: str) -> complex:
    return complex(text.replace(" ", "").replace("i", "j"))


def _coherent(text: str) -> Dict[int, complex]:
    out: Dict[int, complex] = {}
    for item in _split(text):
        k, _, value = item.partition(":")
        out[int(k)] = _complex(value)
    return out


def _samples(text: str) -> Tuple[List[float], List[float]]:
    t, v = [], []
    for item in _split(text):
        a, _, b = item.partition(":")
        t.append(float(a))
        v.append(float(b))
    return t, v


def _coupling(reader: _Reader) -> CouplingSpec:
    kind = reader.choice("kind", CouplingKind, CouplingKind.Constant)
    if kind == CouplingKind.Tabulated:
        reader.required("samples")
        t, v = reader.convert("samples", _samples, "t:value pairs")
        return CouplingSpec.tabulated(t, v)
    base = reader.real("base")
    if kind == CouplingKind.Constant:
        return CouplingSpec.constant(base)
    kappa, omega_d = reader.real("kappa"), reader.real("omega_d")
    if kind == CouplingKind.ModulatedSin:
        return CouplingSpec.modulated_sin(base, kappa, omega_d)
    return CouplingSpec.modulated_cos(base, kappa, omega_d)


def _system(sections: Sections, path: Optional[str], lines: Dict[Tuple[str, Optional[str]], int]) -> SystemSpec:
    reader = _Reader(sections, "system", path, lines)
    if "system" not in sections:
        raise ScenarioParseError(path, None, "system", None, "missing required section")
    omega_c, omega_m = reader.reals("omega_c"), reader.reals("omega_m")
    n, m = len(omega_c), len(omega_m)
    g: Dict[str, List[List[CouplingSpec]]] = {f: [[CouplingSpec.zero()] * m for _ in range(n)] for f in ("g_plus", "g_minus")}
    lam: Dict[str, List[CouplingSpec]] = {f: [CouplingSpec.zero()] * m for f in ("lambda_plus", "lambda_minus")}
    for name in sections:
        if not name.startswith("coupling."):
            continue
        parts = name.split(".")
        coupling_reader = _Reader(sections, name, path, lines)
        family = parts[1] if len(parts) > 1 else ""
        if family not in COUPLING_FAMILIES:
            raise coupling_reader.fail(None, f"unknown coupling family '{family}'; expected one of {', '.join(COUPLING_FAMILIES)}")
        try:
            index = tuple(int(i) for i in parts[2:])
        except ValueError:
            raise coupling_reader.fail(None, "coupling indices must be integers") from None
        if family in g:
            if len(index) != 2 or not (0 <= index[0] < n and 0 <= index[1] < m):
                raise coupling_reader.fail(None, f"expected [coupling.{family}.<mode>.<resonator>] within {n} x {m}")
            g[family][index[0]][index[1]] = _coupling(coupling_reader)
        else:
            if len(index) != 1 or not 0 <= index[0] < m:
                raise coupling_reader.fail(None, f"expected [coupling.{family}.<resonator>] below {m}")
            lam[family][index[0]] = _coupling(coupling_reader)
    return SystemSpec.build(omega_c, omega_m, g["g_plus"], g["g_minus"], lam["lambda_plus"], lam["lambda_minus"])


def _state(sections: Sections, path: Optional[str], lines: Dict[Tuple[str, Optional[str]], int], system: SystemSpec) -> InitialState:
    reader = _Reader(sections, "initial", path, lines)
    coherent = reader.convert("coherent", _coherent, "k:amplitude pairs") if reader.has("coherent") else {}
    given = [k for k in ("r", "phonons", "temperature") if reader.has(k)]
    if len(given) > 1:
        raise reader.fail(given[1], f"give only one of r, phonons or temperature; found {', '.join(given)}")
    if not given:
        return InitialState.build(coherent, [0.0] * system.n_mech)
    if given[0] == "r":
        return InitialState.build(coherent, reader.reals("r"))
    if given[0] == "phonons":
        phonons = reader.reals("phonons")
        if any(p < 0 for p in phonons):
            raise reader.fail("phonons", "phonon numbers must be non-negative")
        return InitialState.from_phonons(phonons, coherent)
    return InitialState.from_temperature(system.omega_m, reader.real("temperature"), coherent)


def _grid(sections: Sections, path: Optional[str], lines: Dict[Tuple[str, Optional[str]], int], system: SystemSpec) -> TimeGrid:
    reader = _Reader(sections, "grid", path, lines)
    if "grid" not in sections:
        raise ScenarioParseError(path, None, "grid", None, "missing required section")
    if reader.has("t"):
        return TimeGrid.from_times(reader.reals("t"))
    t_end = reader.real("t_end")
    if reader.has("samples"):
        return TimeGrid.uniform(t_end, reader.integer("samples"))
    return TimeGrid.per_period(t_end, system.fastest_frequency, reader.integer("samples_per_period", 200))


def _observables(sections: Sections, path: Optional[str], lines: Dict[Tuple[str, Optional[str]], int]) -> ObservablesConfig:
    reader = _Reader(sections, "observables", path, lines)
    pairs = reader.convert("pairs", lambda s: tuple(Pair.parse(p) for p in _split(s)), "pairs like cm:0:0") if reader.has("pairs") else ()
    return ObservablesConfig(pairs, reader.boolean("entropy", True), reader.optional_integer("truncation"), reader.choice("form", EntropyForm, EntropyForm.Split))


def _oracle(sections: Sections, path: Optional[str], lines: Dict[Tuple[str, Optional[str]], int], system: SystemSpec) -> Optional[OracleSettings]:
    if "oracle" not in sections:
        return None
    reader = _Reader(sections, "oracle", path, lines)
    cutoffs = reader.integers("cutoffs")
    if len(cutoffs) != system.n_cavity + system.n_mech:
        raise reader.fail("cutoffs", f"expected {system.n_cavity + system.n_mech} cutoffs (cavity modes, then resonators); got {len(cutoffs)}")
    options = PropagationOptions(
        atol=reader.real("atol", 1e-10),
        dt_min=reader.real("dt_min", 1e-9),
        method=reader.choice("method", PropagationMethod, PropagationMethod.Auto),
        edge_warn=reader.real("edge_warn", 1e-6),
        edge_abort=reader.real("edge_abort", 1e-3),
    )
    return OracleSettings(cutoffs[:system.n_cavity], cutoffs[system.n_cavity:], reader.integer("budget", DEFAULT_BUDGET), reader.real("thermal_tol", THERMAL_TOL), options)


def _linearized(sections: Sections, path: Optional[str], lines: Dict[Tuple[str, Optional[str]], int], system: SystemSpec) -> Tuple[Optional[LinearizedSpec], Optional[Regime]]:
    if "linearized" not in sections:
        return None, None
    reader = _Reader(sections, "linearized", path, lines)
    alpha = reader.reals("alpha")
    mode, resonator = reader.integer("mode", 0), reader.integer("resonator", 0)
    regime = reader.choice("regime", Regime, None) if reader.has("regime") else None
    if len(alpha) != system.n_cavity:
        raise reader.fail("alpha", f"expected {system.n_cavity} classical amplitudes")
    if not (0 <= mode < system.n_cavity and 0 <= resonator < system.n_mech):
        raise reader.fail("mode", "mode or resonator index out of range")
    if not system.g_plus[mode][resonator].is_modulated:
        raise reader.fail(None, f"the linearised model needs a modulated [coupling.g_plus.{mode}.{resonator}]")
    return LinearizedSpec.build(system, alpha, mode, resonator), regime


def _scan(sections: Sections, path: Optional[str], lines: Dict[Tuple[str, Optional[str]], int]) -> Optional[ScanConfig]:
    if "scan" not in sections:
        return None
    reader = _Reader(sections, "scan", path, lines)
    return ScanConfig(reader.reals("omega_d"), reader.real("horizon"), reader.integer("samples_per_period", 50))


def _sweeps(sections: Sections, path: Optional[str], lines: Dict[Tuple[str, Optional[str]], int]) -> Dict[int, Dict[str, str]]:
    blocks: Dict[int, Dict[str, str]] = {}
    for name, values in sections.items():
        if not name.startswith("sweep."):
            continue
        suffix = name.split(".", 1)[1]
        if not suffix.isdigit():
            raise ScenarioParseError(path, lines.get((name, None)), name, None, "sweep sections are numbered [sweep.<i>]")
        blocks[int(suffix)] = dict(values)
    return dict(sorted(blocks.items()))


def scenario_from_sections(sections: Sections, path: Optional[str] = None, lines: Optional[Dict[Tuple[str, Optional[str]], int]] = None, sweeps: bool = True, validate: bool = True) -> Scenario:
    lines = lines or {}
    system = _system(sections, path, lines)
    state = _state(sections, path, lines, system)
    grid = _grid(sections, path, lines, system)
    linearized, regime = _linearized(sections, path, lines, system)
    name = sections.get("scenario", {}).get("name") or (Path(path).stem if path else "scenario")
    sweep_blocks = _sweeps(sections, path, lines) if sweeps else {}
    scenario = Scenario(name, system, state, grid, _observables(sections, path, lines), _oracle(sections, path, lines, system), linearized, regime, _scan(sections, path, lines), path, sweep_blocks, sections=sections)
    if validate:
        report = validate_spec(system, state, grid)
        if report:
            raise ScenarioValidationError(report)
    return scenario


def parse_scenario(text: str, path: Optional[str] = None, validate: bool = True) -> Scenario:
    """Scenario from INI text; parse problems raise ScenarioParseError, invariant breaks ScenarioValidationError."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"), interpolation=None)
    try:
        parser.read_string(text, source=path or "<scenario>")
    except configparser.MissingSectionHeaderError as e:
        raise ScenarioParseError(path, e.lineno, None, None, "the file must start with a [section] header") from None
    except configparser.ParsingError as e:
        line, content = e.errors[0] if e.errors else (None, "")
        raise ScenarioParseError(path, line, None, None, f"malformed line {content!r}") from None
    except (configparser.DuplicateSectionError, configparser.DuplicateOptionError) as e:
        raise ScenarioParseError(path, e.lineno, e.section, getattr(e, "option", None), "duplicate entry") from None
    sections = {name: dict(parser.items(name)) for name in parser.sections()}
    return scenario_from_sections(sections, path, _line_index(text), validate=validate)


def load_scenario(path: Union[str, Path], validate: bool = True) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioParseError(str(path), None, None, None, f"cannot read file ({e.strerror})") from None
    return parse_scenario(text, str(path), validate)
