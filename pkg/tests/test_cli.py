import io
import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.cli.config_loader import parse_config
from src.cli.main import main
from src.lib.quantities.constants import CODATA, override_constants
from src.models.experiment_model import (
    Body,
    Environment,
    ExperimentConfig,
    Oscillator,
    PairGeometry,
    Protocol,
    frequency_noise,
    position_noise,
)

SWEEP_SPEC = """\
axis1: {unknown: delta_x, min: 1.0e-6, max: 1.0e-5, points: 4}
axis2: {unknown: pressure, min: 1.0e-17, max: 1.0e-12, points: 5}
channels: [gas]
"""

FEASIBLE_SWEEP_SPEC = """\
axis1: {unknown: delta_x, min: 1.0e-5, max: 1.0e-4, points: 2}
axis2: {unknown: pressure, min: 1.0e-20, max: 1.0e-19, points: 2}
"""


def run(*argv: str) -> tuple[int, str]:
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def silica_path(write_config, silica_document):
    return write_config(silica_document)


@pytest.fixture
def gold_path(write_config, gold_document):
    return write_config(gold_document, "gold.json")


class TestReport:
    def test_feasible_config(self, silica_path):
        code, text = run("report", str(silica_path))
        assert code == 0
        assert "binding channel: gas" in text
        assert "feasible:        yes" in text

    def test_no_delocalization_is_infeasible(self, write_config, silica_document):
        silica_document["geometry"]["delta_x_m"] = 0
        code, _ = run("report", str(write_config(silica_document)))
        assert code == 1

    def test_json_output(self, silica_path):
        code, text = run("report", str(silica_path), "--json")
        payload = json.loads(text)
        assert code == 0
        assert payload["feasible"] is True
        assert payload["binding_channel"] == "gas"
        assert len(payload["channels"]) == 4

    def test_json_output_is_deterministic(self, silica_path):
        assert run("report", str(silica_path), "--json") == run("report", str(silica_path), "--json")

    def test_pressure_in_mbar(self, write_config, silica_document):
        pa = json.loads(run("report", str(write_config(silica_document)), "--json")[1])
        del silica_document["environment"]["pressure_Pa"]
        silica_document["environment"]["pressure_mbar"] = "1e-17 mbar"
        mbar = json.loads(run("report", str(write_config(silica_document, "mbar.json")), "--json")[1])
        assert mbar["channels"][0]["rate"] == pytest.approx(pa["channels"][0]["rate"], rel=1e-12)


class TestConfigurationErrors:
    @pytest.mark.parametrize(
        "section, key, value, path",
        [
            ("geometry", "alpha", 0.5, "geometry.alpha"),
            ("environment", "pressure_Pa", "1e-15 Pa", "environment.pressure_Pa"),
            ("environment", "pressure_Pa", "1e-15", "environment.pressure_Pa"),
            ("body", "colour", "grey", "body.colour"),
            ("body", "radius_m", -1.0, "body.radius_m"),
        ],
    )
    def test_bad_values_exit_2(self, write_config, silica_document, capsys, section, key, value, path):
        silica_document[section][key] = value
        code, _ = run("report", str(write_config(silica_document)))
        assert code == 2
        assert path in capsys.readouterr().err

    def test_overlap_reported_at_distance(self, write_config, silica_document, capsys):
        silica_document["geometry"] = {"distance_m": 1e-7, "delta_x_m": 1e-8}
        code, _ = run("report", str(write_config(silica_document)))
        assert code == 2
        err = capsys.readouterr().err
        assert "geometry.distance_m" in err
        assert "overlap" in err

    def test_overlap_path_in_json_payload(self, write_config, silica_document):
        silica_document["geometry"] = {"distance_m": 1.5e-7, "delta_x_m": 1e-8}
        code, text = run("report", str(write_config(silica_document)), "--json")
        assert code == 2
        assert json.loads(text)["payload"]["path"] == "geometry.distance_m"

    def test_both_pressures(self, write_config, silica_document):
        silica_document["environment"]["pressure_mbar"] = "1e-17 mbar"
        assert run("report", str(write_config(silica_document)))[0] == 2

    def test_missing_file(self, tmp_path):
        assert run("report", str(tmp_path / "missing.json"))[0] == 2

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        assert run("report", str(path))[0] == 2

    def test_json_error_payload(self, write_config, silica_document):
        silica_document["geometry"]["alpha"] = 0.5
        code, text = run("report", str(write_config(silica_document)), "--json")
        payload = json.loads(text)
        assert code == 2
        assert payload["type"] == "gravent.error"
        assert payload["payload"]["path"] == "geometry.alpha"

    def test_usage_error(self):
        assert run()[0] == 2


class TestBounds:
    def test_delocalization_for_one_channel(self, silica_path):
        code, text = run("bounds", str(silica_path), "--unknown", "delta_x", "--channel", "gas", "--json")
        payload = json.loads(text)
        assert code == 0
        assert 1e-6 < payload["threshold"] < 4e-6
        assert payload["direction"] == "lower_bound"

    def test_delocalization_table(self, silica_path):
        code, text = run("bounds", str(silica_path), "--unknown", "delta_x")
        assert code == 0
        assert "delta_x_min:" in text

    def test_all_channels(self, silica_path):
        code, text = run("bounds", str(silica_path), "--unknown", "delta_x", "--all-channels")
        assert code == 0
        assert "binding: gas" in text

    def test_gold_pressure(self, gold_path):
        code, text = run("bounds", str(gold_path), "--unknown", "pressure", "--channel", "gas", "--json")
        assert code == 0
        assert 1e-22 / 3 < json.loads(text)["threshold"] < 3e-22

    def test_per_channel_pressure_lists_every_channel(self, silica_path):
        code, text = run("bounds", str(silica_path), "--unknown", "pressure")
        assert code == 0
        assert "pressure <" in text
        assert "bb_scatter: no crossing (feasible everywhere)" in text

    def test_no_crossing_exits_3(self, gold_path, capsys):
        code, _ = run("bounds", str(gold_path), "--unknown", "nbar", "--channel", "gas")
        assert code == 3
        assert "no crossing" in capsys.readouterr().err

    def test_no_crossing_json(self, gold_path):
        code, text = run("bounds", str(gold_path), "--unknown", "nbar", "--channel", "gas", "--json")
        payload = json.loads(text)["payload"]
        assert code == 3
        assert payload["type"] == "bracket_error"
        assert payload["kind"] in {"feasible_everywhere", "infeasible_everywhere"}


class TestSimulate:
    def test_csign_without_decoherence(self, write_config, silica_document, tmp_path):
        silica_document["environment"] = {"pressure_Pa": 0, "temp_K": 0}
        silica_document["body"]["temp_internal_K"] = 0
        out = tmp_path / "trace.csv"
        code, text = run("simulate", str(write_config(silica_document)), "--samples", "11", "--out", str(out))
        assert code == 0
        assert "entanglement onset: none" not in text
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "t_s,delta_phi_rad,negativity,E_N"
        assert len(lines) == 12

    def test_oscillator_without_coupling(self, gold_path, tmp_path):
        out = tmp_path / "osc.csv"
        code, text = run(
            "simulate", str(gold_path), "--coupling", "0", "--samples", "2", "--out", str(out)
        )
        assert code == 0
        assert "entanglement onset: none" in text
        assert len(out.read_text(encoding="utf-8").splitlines()) == 3

    def test_json_summary(self, gold_path, tmp_path):
        code, text = run(
            "simulate", str(gold_path), "--coupling", "0", "--samples", "3", "--out", str(tmp_path / "t.csv"), "--json"
        )
        payload = json.loads(text)
        assert code == 0
        assert payload["onset_s"] is None
        assert payload["measure"] == "E_N"

    def test_too_few_samples(self, silica_path, tmp_path):
        assert run("simulate", str(silica_path), "--samples", "1", "--out", str(tmp_path / "t.csv"))[0] == 2


class TestValidate:
    def test_every_row_passes(self, tmp_path):
        csv_path = tmp_path / "validation.csv"
        code, text = run("validate", "--csv", str(csv_path))
        assert code == 0
        assert "rows pass" in text
        assert csv_path.read_text(encoding="utf-8").startswith("case_id,")

    def test_json(self):
        code, text = run("validate", "--json")
        payload = json.loads(text)
        assert code == 0
        assert len(payload["rows"]) >= 21
        assert all(row["pass"] for row in payload["rows"])

    def test_doctored_constant_fails(self):
        with override_constants(G=10 * CODATA.G):
            assert run("validate")[0] == 1


class TestSweep:
    def test_writes_outputs(self, silica_path, tmp_path):
        spec = tmp_path / "sweep.yaml"
        spec.write_text(SWEEP_SPEC, encoding="utf-8")
        out_dir = tmp_path / "results"
        code, text = run("sweep", str(silica_path), str(spec), "--out", str(out_dir), "--workers", "2")
        assert code == 0
        assert "frontier points: 4" in text
        for name in ("grid.csv", "frontier.csv", "feasibility.svg"):
            assert (out_dir / name).exists()

    def test_grid_without_frontier(self, silica_path, tmp_path):
        spec = tmp_path / "sweep.yaml"
        spec.write_text(FEASIBLE_SWEEP_SPEC, encoding="utf-8")
        out_dir = tmp_path / "results"
        code, text = run("sweep", str(silica_path), str(spec), "--out", str(out_dir))
        assert code == 0
        assert "warning: no feasibility frontier" in text
        assert (out_dir / "frontier.csv").read_bytes() == b"delta_x,pressure\r\n"

    @pytest.mark.parametrize(
        "spec_text, extra",
        [
            (SWEEP_SPEC + "base: {}\n", []),
            (SWEEP_SPEC, ["--workers", "0"]),
            ("axis1: [1, 2]\n", []),
        ],
    )
    def test_bad_specs(self, silica_path, tmp_path, spec_text, extra):
        spec = tmp_path / "sweep.yaml"
        spec.write_text(spec_text, encoding="utf-8")
        assert run("sweep", str(silica_path), str(spec), "--out", str(tmp_path), *extra)[0] == 2


class TestConfigModel:
    def test_noise_sections_load_as_si_spectra(self, silica_document):
        silica_document["environment"]["pos_noise"] = {"asd_m_per_sqrthz": 1e-15, "ref_freq_hz": 1e5}
        silica_document["environment"]["freq_noise"] = {"asd_per_sqrthz": 1e-3, "ref_freq_hz": 2e5}
        env = parse_config(silica_document).environment
        assert env.pos_noise == position_noise(1e-15, 2 * math.pi * 1e5)
        assert env.freq_noise == frequency_noise(1e-3, 2 * math.pi * 2e5)

    def test_environment_section_validates_as_the_model(self, silica_document):
        section = {"gas": "He", "pos_noise": {"asd_m_per_sqrthz": 1e-15, "ref_freq_hz": 1e5}}
        silica_document["environment"].update(section)
        loaded = parse_config(silica_document).environment
        direct = Environment.model_validate({**section, "pressure_Pa": 1e-15, "temp_K": 1.0})
        assert loaded == direct

    @settings(max_examples=50)
    @given(
        radius=st.floats(1e-9, 1e-1),
        density=st.floats(1e2, 3e4),
        alpha=st.floats(1.01, 100.0),
        delta_x=st.floats(0.0, 1e-3),
        pressure=st.floats(0.0, 1e-5),
        temperature=st.floats(0.0, 300.0),
        gas=st.sampled_from(["H2", "He"]),
        asd=st.floats(0.0, 1e-10),
        omega0=st.none() | st.floats(1e-3, 1e7),
    )
    def test_json_round_trip(self, radius, density, alpha, delta_x, pressure, temperature, gas, asd, omega0):
        config = ExperimentConfig(
            body=Body(radius=radius, density=density, temp_internal=temperature),
            geometry=PairGeometry(alpha=alpha, delta_x=delta_x),
            environment=Environment(
                pressure=pressure,
                temperature=temperature,
                gas=gas,
                pos_noise=position_noise(asd, 1.0),
            ),
            oscillator=None if omega0 is None else Oscillator(omega0=omega0, gamma=1e-3, nbar=0.5, eta=2.0),
            protocol=Protocol.CSIGN_PHASE if omega0 is None else Protocol.COUPLED_OSCILLATORS,
        )
        assert ExperimentConfig.model_validate_json(config.model_dump_json(by_alias=True)) == config
