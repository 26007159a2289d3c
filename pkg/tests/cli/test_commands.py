"""End-to-end tests of the cgsp command line."""

import json
from pathlib import Path

import pytest

from src.cli.base import ExitCode, UsageError, exit_code_for
from src.estimation.correlations import EstimationError
from src.main import main
from src.output.formats import FormatError, read_header
from src.output.manifest import RunManifest
from src.spectral.errors import InfeasibleTargetError

GAUSSIAN_TARGET = ["--family", "white", "--coupling", "gaussian", "--sigma", "3"]


@pytest.fixture
def run_dir(tmp_path: Path) -> Path:
    """Directory holding a small generated ensemble."""
    out = tmp_path / "run"
    code = main(
        ["generate", "--length", "64", "--samples", "3", "--seed", "5"]
        + GAUSSIAN_TARGET
        + ["--out", str(out)]
    )
    assert code == ExitCode.OK
    return out


class TestExitCodes:
    """Tests for the exception to exit code mapping."""

    @pytest.mark.parametrize(
        ("exc", "code"),
        [
            (UsageError("x"), ExitCode.USAGE),
            (InfeasibleTargetError("x"), ExitCode.INFEASIBLE),
            (FormatError("x"), ExitCode.IO_ERROR),
            (EstimationError("x"), ExitCode.IO_ERROR),
            (FileNotFoundError("x"), ExitCode.IO_ERROR),
            (RuntimeError("x"), ExitCode.FAILURE),
        ],
    )
    def test_mapping(self, exc: Exception, code: ExitCode):
        """Each error family has a stable code."""
        assert exit_code_for(exc) == code

    def test_version(self, capsys: pytest.CaptureFixture):
        """--version prints and exits cleanly."""
        assert main(["--version"]) == 0
        assert capsys.readouterr().out.startswith("cgsp ")

    def test_unknown_flag(self):
        """Unrecognized flags are usage errors."""
        assert main(["generate", "--length", "64", "--bogus"]) == ExitCode.USAGE

    def test_missing_command(self):
        """A subcommand is required."""
        assert main([]) == ExitCode.USAGE


class TestGenerate:
    """Tests for cgsp generate."""

    def test_writes_data_and_manifest(
        self, run_dir: Path, capsys: pytest.CaptureFixture
    ):
        """Pairs and a manifest land in the output directory."""
        assert read_header(run_dir / "pairs.cgsp").count == 3
        manifest = RunManifest.load(run_dir / "manifest.json")
        assert manifest.config.length == 64
        assert manifest.config.master_seed == 5
        assert manifest.max_coherence == pytest.approx(0.9)
        assert manifest.outputs == ["pairs.cgsp"]
        assert 0 < manifest.cross_amplitude < 1

    def test_missing_length(self, tmp_path: Path, capsys: pytest.CaptureFixture):
        """--length is required for a fresh run."""
        code = main(["generate", "--out", str(tmp_path)])
        assert code == ExitCode.USAGE
        assert "--length is required" in capsys.readouterr().err

    def test_missing_family_parameter(self, tmp_path: Path):
        """Power-law exponents have no defaults."""
        code = main(["generate", "--length", "64", "--family", "power-law"])
        assert code == ExitCode.USAGE

    def test_shape_parameter_defaults(
        self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch
    ):
        """A coupling family named without parameters uses its defaults."""
        monkeypatch.chdir(tmp_path)
        code = main(
            ["generate", "--coupling", "gaussian", "--length", "1024", "--cumulate"]
        )
        assert code == ExitCode.OK
        manifest = RunManifest.load(tmp_path / "runs" / "manifest.json")
        assert manifest.config.models.xy.params == {"sigma": 3.0}
        assert manifest.outputs == ["pairs.cgsp", "trajectories.cgsp"]
        trajectories = read_header(tmp_path / "runs" / "trajectories.cgsp")
        assert trajectories.shape == (1024,)

    def test_invalid_length(self, tmp_path: Path):
        """Non power-of-two lengths fail validation."""
        code = main(["generate", "--length", "100", "--out", str(tmp_path)])
        assert code == ExitCode.USAGE

    def test_infeasible_literal_amplitude(self, tmp_path: Path):
        """An over-coupled literal amplitude cannot be generated."""
        code = main(
            ["generate", "--length", "64", "--cross-amplitude", "1.0"]
            + GAUSSIAN_TARGET
            + ["--out", str(tmp_path)]
        )
        assert code == ExitCode.INFEASIBLE
        assert not (tmp_path / "pairs.cgsp").exists()

    def test_rerun_from_manifest_is_bit_identical(self, run_dir: Path, tmp_path: Path):
        """A manifest rerun reproduces the data file byte for byte."""
        rerun = tmp_path / "rerun"
        code = main(
            [
                "generate",
                "--from-manifest",
                str(run_dir / "manifest.json"),
                "--workers",
                "2",
                "--out",
                str(rerun),
            ]
        )
        assert code == ExitCode.OK
        original = (run_dir / "pairs.cgsp").read_bytes()
        assert (rerun / "pairs.cgsp").read_bytes() == original

    def test_csv_with_trajectories(self, tmp_path: Path):
        """CSV output includes the running sums when asked."""
        out = tmp_path / "csv"
        code = main(
            ["generate", "--length", "32", "--samples", "2", "--format", "csv"]
            + GAUSSIAN_TARGET
            + ["--cumulate", "--out", str(out)]
        )
        assert code == ExitCode.OK
        header = (out / "pairs.csv").read_text().splitlines()[0]
        assert header == "realization,index,x,y"
        manifest = RunManifest.load(out / "manifest.json")
        assert manifest.outputs == [
            "pairs.csv",
            "trajectories_0.csv",
            "trajectories_1.csv",
        ]
        lines = (out / "trajectories_1.csv").read_text().splitlines()
        assert lines[0] == "t,X,Y"
        assert len(lines) == 33
        assert lines[1].startswith("1,")

    def test_surfaces_need_two_dimensions(self, tmp_path: Path):
        """--surface on sequences is a usage error."""
        code = main(["generate", "--length", "32", "--surface", "--out", str(tmp_path)])
        assert code == ExitCode.USAGE

    def test_field_surfaces(self, tmp_path: Path):
        """2-D runs can write surfaces next to the fields."""
        code = main(
            ["generate", "--length", "16", "--dim", "2", "--surface"]
            + ["--family", "exponential", "--decay", "0.5"]
            + ["--out", str(tmp_path)]
        )
        assert code == ExitCode.OK
        assert read_header(tmp_path / "surfaces.cgsp").shape == (16, 16)

    def test_config_file_with_flag_override(self, tmp_path: Path):
        """Config-file values apply unless a flag overrides them."""
        config = tmp_path / "run.env"
        config.write_text(
            "length=32\nsamples=2\nfamily=exponential\ndecay=0.5\nmax-coherence=0.5\n"
        )
        out = tmp_path / "out"
        code = main(
            ["generate", "--config", str(config), "--samples", "4", "--out", str(out)]
        )
        assert code == ExitCode.OK
        manifest = RunManifest.load(out / "manifest.json")
        assert manifest.config.length == 32
        assert manifest.config.n_realizations == 4
        assert manifest.config.models.xx.family.value == "exponential"
        assert manifest.max_coherence == pytest.approx(0.5)

    def test_unknown_config_key(self, tmp_path: Path, capsys: pytest.CaptureFixture):
        """Config files may only hold known options."""
        config = tmp_path / "run.env"
        config.write_text("length=32\ncolour=blue\n")
        code = main(["generate", "--config", str(config)])
        assert code == ExitCode.USAGE
        assert "colour" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path: Path):
        """A missing config file is an I/O error."""
        code = main(["generate", "--config", str(tmp_path / "nope.env")])
        assert code == ExitCode.IO_ERROR


class TestEstimate:
    """Tests for cgsp estimate."""

    def test_estimates_generated_data(
        self, run_dir: Path, tmp_path: Path, capsys: pytest.CaptureFixture
    ):
        """Tables, fits and a text report are written."""
        out = tmp_path / "est"
        assert main(["estimate", str(run_dir / "pairs.cgsp"), "--out", str(out)]) == 0
        for which in ("xx", "yy", "xy"):
            assert (out / f"estimate_{which}.csv").is_file()
        report = json.loads((out / "fits.json").read_text())
        assert report["n_realizations"] == 3
        assert report["side_length"] == 64
        assert len(report["fits"]) + len(report["fit_errors"]) == 3
        assert "Correlation estimate:" in capsys.readouterr().out
        assert (out / "estimate.txt").is_file()

    def test_csv_input(self, tmp_path: Path):
        """CSV pair files are estimated as well."""
        data = tmp_path / "csv"
        main(
            ["generate", "--length", "64", "--format", "csv"]
            + GAUSSIAN_TARGET
            + ["--out", str(data)]
        )
        out = tmp_path / "est"
        assert main(["estimate", str(data / "pairs.csv"), "--out", str(out)]) == 0
        report = json.loads((out / "fits.json").read_text())
        assert report["n_realizations"] == 1
        assert report["warnings"]

    def test_missing_input(self, tmp_path: Path):
        """A missing data file is an I/O error."""
        code = main(["estimate", str(tmp_path / "none.cgsp"), "--out", str(tmp_path)])
        assert code == ExitCode.IO_ERROR

    def test_csv_fields_take_dim_from_manifest(self, tmp_path: Path):
        """CSV field data is estimated on its recorded grid."""
        data = tmp_path / "fields"
        code = main(
            ["generate", "--length", "16", "--dim", "2", "--samples", "2"]
            + ["--format", "csv", "--out", str(data)]
        )
        assert code == ExitCode.OK
        out = tmp_path / "est"
        assert main(["estimate", str(data / "pairs.csv"), "--out", str(out)]) == 0
        report = json.loads((out / "fits.json").read_text())
        assert report["dim"] == 2
        assert report["side_length"] == 16
        assert report["n_realizations"] == 2

    def test_grid_too_short_to_fit(self, tmp_path: Path):
        """Estimates are still written when no fit window exists."""
        data = tmp_path / "short"
        main(["generate", "--length", "8", "--samples", "2", "--out", str(data)])
        out = tmp_path / "est"
        assert main(["estimate", str(data / "pairs.cgsp"), "--out", str(out)]) == 0
        report = json.loads((out / "fits.json").read_text())
        assert report["fits"] == []
        assert set(report["fit_errors"]) == {"xx", "yy", "xy"}
        assert "too short" in report["fit_errors"]["xy"]
        assert (out / "estimate_xy.csv").is_file()

    def test_corrupt_input(self, tmp_path: Path):
        """A corrupt data file is an I/O error."""
        path = tmp_path / "bad.cgsp"
        path.write_bytes(b"garbage")
        code = main(["estimate", str(path), "--out", str(tmp_path)])
        assert code == ExitCode.IO_ERROR

    def test_inverted_fit_range(self, run_dir: Path, tmp_path: Path):
        """--fit-max must exceed --fit-min."""
        code = main(
            ["estimate", str(run_dir / "pairs.cgsp")]
            + ["--fit-min", "6", "--fit-max", "4"]
        )
        assert code == ExitCode.USAGE


class TestValidate:
    """Tests for cgsp validate."""

    def test_feasible_target(self, capsys: pytest.CaptureFixture):
        """Normalized targets pass."""
        code = main(
            ["validate", "--length", "256", "--max-coherence", "0.9"] + GAUSSIAN_TARGET
        )
        assert code == ExitCode.OK
        out = capsys.readouterr().out
        assert "result: feasible" in out
        assert "max coherence: 0.900000" in out

    def test_unit_amplitude_is_checked_as_given(self, capsys: pytest.CaptureFixture):
        """Without --max-coherence the target is not rescaled."""
        code = main(["validate", "--length", "1024"] + GAUSSIAN_TARGET)
        assert code == ExitCode.INFEASIBLE
        out = capsys.readouterr().out
        assert "INFEASIBLE" in out
        assert "cross amplitude: 1\n" in out

    def test_infeasible_literal_amplitude(self, capsys: pytest.CaptureFixture):
        """A unit literal amplitude violates the bound."""
        code = main(
            ["validate", "--length", "256", "--cross-amplitude", "1.0"]
            + GAUSSIAN_TARGET
        )
        assert code == ExitCode.INFEASIBLE
        assert "INFEASIBLE" in capsys.readouterr().out

    def test_field_targets(self, capsys: pytest.CaptureFixture):
        """2-D targets are checked on the shell-averaged spectra."""
        code = main(
            ["validate", "--length", "32", "--dim", "2", "--max-coherence", "0.9"]
            + ["--family", "exponential", "--decay", "0.5"]
        )
        assert code == ExitCode.OK
        assert "32 ^ 2 grid" in capsys.readouterr().out

    def test_indefinite_table(self, tmp_path: Path, capsys: pytest.CaptureFixture):
        """A table whose spectrum goes negative is refused."""
        bad = tmp_path / "bad.txt"
        bad.write_text("0 1 0 0 0\n")
        good = tmp_path / "good.txt"
        good.write_text("1, 0.5, 0.25, 0.1, 0\n")
        code = main(
            ["validate", "--length", "8", "--family", "tabulated"]
            + ["--table-xx", str(bad), "--table-yy", str(good)]
            + ["--table-xy", str(good)]
        )
        assert code == ExitCode.INFEASIBLE
        assert "not positive semidefinite" in capsys.readouterr().err

    def test_missing_length(self):
        """--length is required."""
        assert main(["validate"] + GAUSSIAN_TARGET) == ExitCode.USAGE


class TestReproduce:
    """Tests for cgsp reproduce argument handling."""

    def test_full_scale_needs_override(self, tmp_path: Path):
        """Full-scale runs must be allowed explicitly."""
        code = main(["reproduce", "fig2", "--scale", "full", "--out", str(tmp_path)])
        assert code == ExitCode.USAGE
        assert not (tmp_path / "fig2").exists()

    def test_unknown_figure(self):
        """Only fig1, fig2 and fig3 exist."""
        assert main(["reproduce", "fig9"]) == ExitCode.USAGE
