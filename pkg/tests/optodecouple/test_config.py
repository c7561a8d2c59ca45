from pathlib import Path
from typing import Callable, Optional

import pytest

from optodecouple import ScenarioParseError, ScenarioValidationError, load_scenario, parse_scenario
from optodecouple.entropy import EntropyForm
from optodecouple.linearized import Regime, detect_regime
from optodecouple.model import CouplingKind
from optodecouple.observables import Pair
from tests.helpers import get_scenario_path

MINIMAL = """\
[system]
omega_c = 3.0
omega_m = 1.0

[coupling.g_plus.0.0]
base = 0.1

[initial]
coherent = 0:1.0

[grid]
t_end = 1.0
samples = 11
"""


class TestCanonicalScenario:
    def test_every_section_is_read(self):
        scenario = load_scenario(get_scenario_path("optomechanics.cfg"))
        assert scenario.name == "optomechanics"
        assert scenario.system.omega_c == (3.0,) and scenario.system.omega_m == (1.0,)
        drive = scenario.system.g_plus[0][0]
        assert drive.kind == CouplingKind.ModulatedSin
        assert (drive.base, drive.kappa, drive.omega_d) == (0.1, 0.5, 2.0)
        assert scenario.state.coherent == {0: 1.0 + 0j}
        assert scenario.state.r == (0.0,)
        # 200 samples per period of the 2.0 drive over one mechanical period
        assert len(scenario.grid) == 401
        assert scenario.observables.pairs == (Pair.mode_res(0, 0),)
        assert scenario.observables.entropy and scenario.observables.form == EntropyForm.Split
        assert scenario.oracle.cavity_cutoffs == (18,) and scenario.oracle.mech_cutoffs == (12,)
        assert scenario.oracle.budget == 4096
        assert detect_regime(scenario.linearized) == Regime.ModeMixing
        assert scenario.scan.omega_d == (1.0, 2.0, 4.0) and scenario.scan.horizon == 200.0

    def test_sweep_points(self):
        scenario = load_scenario(get_scenario_path("optomechanics.cfg"))
        points = scenario.sweep_points()
        assert len(points) == 2
        assert points[0].state.coherent == {0: 0.5 + 0j}
        assert points[0].system.g_plus[0][0].base == 0.1
        assert points[1].state.coherent == {0: 2.0 + 0j}
        assert points[1].system.g_plus[0][0].base == 0.05
        assert points[1].sweeps == {}
        assert [p.sweep_index for p in points] == [0, 1]

    def test_sweeps_run_in_section_order(self):
        blocks = "".join(f"\n[sweep.{i}]\ninitial.coherent = 0:{(i + 1) / 10}\n" for i in range(11))
        points = parse_scenario(MINIMAL + blocks).sweep_points()
        assert [p.sweep_index for p in points] == list(range(11))
        assert [p.state.mu(0).real for p in points] == pytest.approx([(i + 1) / 10 for i in range(11)])

    def test_sweep_errors_name_their_section(self):
        scenario = parse_scenario(MINIMAL + "\n[sweep.2]\ninitial.coherent = 0:0.5\n\n[sweep.12]\ncoherent = 0:0.5\n")
        with pytest.raises(ScenarioParseError) as info:
            scenario.sweep_points()
        assert (info.value.section, info.value.field) == ("sweep.12", "coherent")

    def test_refined(self):
        scenario = parse_scenario(MINIMAL)
        assert len(scenario.refined(3).grid) == 31
        assert len(scenario.grid) == 11


class TestOptionalSections:
    def test_defaults(self):
        scenario = parse_scenario(MINIMAL)
        assert scenario.name == "scenario"
        assert scenario.oracle is None and scenario.linearized is None and scenario.scan is None
        assert scenario.observables.pairs == ()
        assert scenario.state.r == (0.0,)

    @pytest.mark.parametrize(
        ["initial", "expected"],
        [("phonons = 1.0", 1.0),
         ("r = 0.0", 0.0)]
    )
    def test_thermal_alternatives(self, initial: str, expected: float):
        scenario = parse_scenario(MINIMAL.replace("coherent = 0:1.0", f"coherent = 0:1.0\n{initial}"))
        assert scenario.state.thermal_occupation[0] == pytest.approx(expected)

    def test_complex_amplitudes(self):
        scenario = parse_scenario(MINIMAL.replace("coherent = 0:1.0", "coherent = 0: 1+0.5i"))
        assert scenario.state.mu(0) == 1 + 0.5j

    def test_tabulated_coupling(self):
        text = MINIMAL.replace("base = 0.1", "kind = tabulated\nsamples = 0:0.0, 0.5:0.2, 1.0:0.1")
        coupling = parse_scenario(text).system.g_plus[0][0]
        assert coupling.kind == CouplingKind.Tabulated
        assert float(coupling.evaluate(0.25)) == pytest.approx(0.1)

    def test_name_falls_back_to_file_stem(self, scenario_file: Callable[..., Path]):
        path = scenario_file(MINIMAL, "cavity_a.cfg")
        assert load_scenario(path).name == "cavity_a"


class TestParseErrors:
    @pytest.mark.parametrize(
        ["text", "line", "section", "field"],
        [("omega_c = 3.0\n" + MINIMAL, 1, None, None),
         (MINIMAL.replace("omega_m = 1.0", "omega_m = fast"), 3, "system", "omega_m"),
         (MINIMAL.replace("[coupling.g_plus.0.0]", "[coupling.g_sideways.0.0]"), 5, "coupling.g_sideways.0.0", None),
         (MINIMAL.replace("[coupling.g_plus.0.0]", "[coupling.g_plus.0.3]"), 5, "coupling.g_plus.0.3", None),
         (MINIMAL.replace("base = 0.1", "kind = wobbly"), 6, "coupling.g_plus.0.0", "kind"),
         (MINIMAL.replace("coherent = 0:1.0", "coherent = 0:1.0\nr = 0.1\nphonons = 1.0"), 11, "initial", "phonons"),
         (MINIMAL + "\n[observables]\npairs = xy:0:0\n", 16, "observables", "pairs"),
         (MINIMAL + "\n[oracle]\ncutoffs = 10\n", 16, "oracle", "cutoffs")]
    )
    def test_located(self, text: str, line: int, section: Optional[str], field: Optional[str]):
        with pytest.raises(ScenarioParseError) as info:
            parse_scenario(text, "located.cfg")
        error = info.value
        assert (error.line, error.section, error.field) == (line, section, field)
        assert error.as_dict()["error"] == "parse"
        assert error.as_dict()["path"] == "located.cfg"

    def test_sweep_sections_are_numbered(self):
        with pytest.raises(ScenarioParseError) as info:
            parse_scenario(MINIMAL + "\n[sweep.first]\ninitial.coherent = 0:0.5\n", "located.cfg")
        assert (info.value.line, info.value.section) == (15, "sweep.first")

    def test_missing_section(self):
        with pytest.raises(ScenarioParseError) as info:
            parse_scenario(MINIMAL.replace("[grid]", "[grids]"))
        assert info.value.section == "grid"

    def test_unreadable_file(self, tmp_path: Path):
        with pytest.raises(ScenarioParseError) as info:
            load_scenario(tmp_path / "absent.cfg")
        assert info.value.line is None
        assert "cannot read" in str(info.value)

    def test_linearized_needs_modulated_coupling(self):
        with pytest.raises(ScenarioParseError) as info:
            parse_scenario(MINIMAL + "\n[linearized]\nalpha = 1.0\n")
        assert info.value.section == "linearized"


class TestValidationErrors:
    def test_grid_must_start_at_zero(self):
        with pytest.raises(ScenarioValidationError) as info:
            parse_scenario(MINIMAL.replace("t_end = 1.0\nsamples = 11", "t = 0.5, 1.0"))
        assert [v["field"] for v in info.value.as_dict()["violations"]] == ["grid"]

    def test_validation_can_be_deferred(self):
        scenario = parse_scenario(MINIMAL.replace("omega_m = 1.0", "omega_m = -1.0"), validate=False)
        assert scenario.system.omega_m == (-1.0,)
        with pytest.raises(ScenarioValidationError):
            parse_scenario(MINIMAL.replace("omega_m = 1.0", "omega_m = -1.0"))
