import csv
import io
import math
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from squeezeforce import AveragingMode, Config, Quadrature
from squeezeforce.cli import (
    CSV_HEADER,
    PARAMS,
    RunConfig,
    UsageError,
    main,
    parse_angle,
    parse_args,
    produce,
    render_args,
)
import squeezeforce.sweep as sweep_mod
from squeezeforce.errors import NumericalError

SMALL_FIG1 = ["fig1", "--beta-count", "21"]
SMALL_FIG2 = ["fig2", "--degree-count", "6", "--phi-count", "8"]


def rows(data: bytes):
    return list(csv.DictReader(io.StringIO(data.decode("utf-8"))))


class TestParse:
    def test_fig1_caption_flags(self):
        cfg = parse_args(["fig1", "--delta", "0", "--phi", "0.8pi", "--degree", "0.75"], env={})
        assert cfg.parameters["delta"] == 0.0
        assert cfg.parameters["phi"] == 0.8 * math.pi
        assert cfg.parameters["degree"] == 0.75

    def test_fig1_defaults(self):
        cfg = parse_args(["fig1"], env={})
        p = cfg.parameters
        assert (p["delta"], p["phi"], p["degree"]) == (0.0, 0.8 * math.pi, 0.75)
        assert (p["beta-min"], p["beta-max"], p["beta-count"]) == (0.0, 20.0, 200)
        assert p["mode"] is AveragingMode.ABS_MEAN
        assert (cfg.output_path, cfg.unit, cfg.workers) == ("-", "half", "auto")

    @pytest.mark.parametrize("argv", [
        ["crossover", "--degree", "1.2"],
        ["fig1", "--bogus", "1"],
        ["fig1", "--beta-count", "many"],
        ["fig1", "--beta-min", "5", "--beta-max", "1"],
        ["fig2", "--mode", "Median"],
        ["opo-spectrum", "--kappa", "1", "--epsilon", "0.5"],
        ["doppler", "--gamma-hz", "-3"],
        ["fig1", "--unit", "quarter"],
        [],
    ])
    def test_usage_errors(self, argv):
        with pytest.raises(UsageError):
            parse_args(argv, env={})

    @pytest.mark.parametrize("text, value", [
        ("0.8pi", 0.8 * math.pi), ("pi", math.pi), ("-pi", -math.pi), ("2*pi", 2 * math.pi),
        ("-0.5pi", -0.5 * math.pi), ("1.25", 1.25), ("1e-1pi", 0.1 * math.pi),
    ])
    def test_angles(self, text, value):
        assert parse_angle(text) == value

    def test_config_file_precedence(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("# fig 1(b)\n\ndelta = 0.1\nphi = 0.5pi   # in-line comment\nbeta_count = 11\nunit = full\n")
        cfg = parse_args(["fig1", "--config", str(path), "--phi", "0.25pi"], env={})
        assert cfg.parameters["delta"] == 0.1
        assert cfg.parameters["phi"] == 0.25 * math.pi
        assert cfg.parameters["beta-count"] == 11
        assert cfg.unit == "full"

    @pytest.mark.parametrize("body", ["colour = red\n", "delta 0.1\n", "degree = 2\n"])
    def test_config_file_errors(self, tmp_path, body):
        path = tmp_path / "bad.cfg"
        path.write_text(body)
        with pytest.raises(UsageError):
            parse_args(["fig1", "--config", str(path)], env={})

    def test_workers_env(self):
        assert parse_args(["fig1"], env={"SQUEEZEFORCE_WORKERS": "3"}).workers == 3
        assert parse_args(["fig1", "--workers", "2"], env={"SQUEEZEFORCE_WORKERS": "3"}).workers == 2
        with pytest.raises(UsageError):
            parse_args(["fig1"], env={"SQUEEZEFORCE_WORKERS": "0"})


def _value(parser, default):
    finite = st.floats(-50, 50, allow_nan=False)
    if isinstance(default, bool):
        return st.booleans()
    if isinstance(default, int):
        return st.integers(1, 500)
    if isinstance(default, AveragingMode):
        return st.sampled_from(list(AveragingMode))
    if isinstance(default, tuple) and isinstance(default[0], Config):
        return st.lists(st.sampled_from(list(Config)), min_size=1, max_size=2, unique=True).map(tuple)
    if isinstance(default, tuple) and isinstance(default[0], Quadrature):
        return st.lists(st.sampled_from(list(Quadrature)), min_size=1, max_size=2, unique=True).map(tuple)
    if isinstance(default, tuple):
        return st.lists(finite, min_size=1, max_size=4).map(tuple)
    return finite


@st.composite
def run_configs(draw):
    sub = draw(st.sampled_from(sorted(PARAMS)))
    params = {}
    for key, (parser, default, _) in PARAMS[sub].items():
        params[key] = draw(_value(parser, default))
    # valid ranges
    for key in params:
        if key in ("degree", "degree-min", "degree-max"):
            params[key] = draw(st.floats(0, 0.99))
        if key in ("beta", "beta-min", "beta-max", "beta-lo", "beta-hi", "epsilon", "gamma-hz", "kappa"):
            params[key] = abs(params[key]) + (1.0 if key in ("gamma-hz", "kappa") else 0.0)
    for lo, hi in (("beta-min", "beta-max"), ("degree-min", "degree-max"), ("phi-min", "phi-max"),
                   ("omega-min", "omega-max"), ("beta-lo", "beta-hi")):
        if lo in params:
            a, b = sorted((params[lo], params[hi]))
            params[lo], params[hi] = a, (b if b > a else a + 0.005)
    if "epsilon" in params:
        params["epsilon"] = params["kappa"] * draw(st.floats(0, 0.49))
    return RunConfig(sub, params, draw(st.sampled_from(["-", "out.csv"])),
                     draw(st.sampled_from(["half", "full"])),
                     draw(st.one_of(st.just("auto"), st.integers(1, 64))))


@settings(max_examples=200, deadline=None)
@given(run_configs())
def test_render_round_trip(cfg):
    assert parse_args(render_args(cfg), env={}) == cfg


class TestOutput:
    def test_header_and_zero_rabi_rows(self):
        data = produce(parse_args(SMALL_FIG1, env={}))
        assert data.splitlines()[0].decode() == CSV_HEADER
        assert b"\r" not in data and data.endswith(b"\n")
        table = rows(data)
        assert [(r["config"], r["quadrature"]) for r in table[:3]] == [("SVSC", "Noisy"), ("SVSC", "Quiet"), ("SC", "Noisy")]
        assert all(float(r["beta"]) == 0 and float(r["force"]) == 0 for r in table[:3])

    def test_repeat_runs_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(SMALL_FIG2 + ["-o", str(a)]) == 0
        assert main(SMALL_FIG2 + ["-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_unit_conversion(self):
        half = rows(produce(parse_args(SMALL_FIG1, env={})))
        full = rows(produce(parse_args(SMALL_FIG1 + ["--unit", "full"], env={})))
        pinned = half[30]  # beta = 10, solid curve
        assert (pinned["beta"], pinned["config"], pinned["quadrature"]) == ("10.0", "SVSC", "Noisy")
        assert float(pinned["force"]) == pytest.approx(4.842522704372519, rel=1e-9)
        for h, f in zip(half, full):
            assert float(f["force"]) == 0.5 * float(h["force"])
            assert f["force_unit"] == "full"

    def test_shortest_round_trip_floats(self):
        for r in rows(produce(parse_args(SMALL_FIG1, env={}))):
            assert repr(float(r["force"])) == r["force"]
            assert repr(float(r["phi"])) == r["phi"]

    def test_fig2_signed_label(self):
        table = rows(produce(parse_args(SMALL_FIG2, env={})))
        assert {r["averaging"] for r in table} == {"signed-AbsMean"}
        assert any(float(r["force"]) < 0 for r in table)

    def test_sweep_subcommand(self):
        cfg = parse_args(["sweep", "--beta-count", "3", "--delta", "0,0.1", "--configs", "SC",
                          "--quadratures", "Noisy,Quiet", "--degree-min", "0.5", "--degree-max", "0.75",
                          "--degree-count", "2"], env={})
        table = rows(produce(cfg))
        assert len(table) == 2 * 2 * 3 * 2
        assert {r["quadrature"] for r in table} == {"Noisy", "Quiet"}

    def test_crossover_output(self):
        (row,) = rows(produce(parse_args(["crossover"], env={})))
        assert 2 <= float(row["beta_star"]) <= 5
        assert float(row["residual"]) < 1e-10

    def test_opo_output(self):
        table = rows(produce(parse_args(["opo-spectrum", "--kappa", "2", "--epsilon", "0.5",
                                         "--omega-min", "-1", "--omega-max", "1", "--omega-count", "3"], env={})))
        assert float(table[1]["N"]) == pytest.approx(16 / 9) and float(table[1]["M"]) == pytest.approx(20 / 9)

    def test_doppler(self, capsys):
        assert main(["doppler", "--gamma-hz", "5.22e6"]) == 0
        (row,) = rows(capsys.readouterr().out.encode())
        assert float(row["temperature_K"]) == pytest.approx(125e-6, rel=0.01)


class TestExitCodes:
    def test_usage(self, capsys):
        assert main(["crossover", "--degree", "1.2"]) == 2
        assert "degree" in capsys.readouterr().err

    def test_io(self, tmp_path, capsys):
        assert main(SMALL_FIG1 + ["-o", str(tmp_path / "missing" / "x.csv")]) == 3
        assert capsys.readouterr().out == ""

    def test_numerical_no_crossover(self, capsys):
        assert main(["crossover", "--beta-lo", "20", "--beta-hi", "30"]) == 4
        assert "one sign" in capsys.readouterr().err

    def test_numerical_mid_sweep(self, monkeypatch, capsys):
        real = sweep_mod.averaged_force_batch

        def flaky(n, m, phi, beta, *args, **kwargs):
            if (abs(__import__("numpy").asarray(beta) - 4.0) < 1e-12).any():
                raise NumericalError("quadrature blew up")
            return real(n, m, phi, beta, *args, **kwargs)

        monkeypatch.setattr(sweep_mod, "averaged_force_batch", flaky)
        assert main(SMALL_FIG1) == 4
        err = capsys.readouterr().err
        assert "beta=4.0" in err and "grid point" in err

    def test_module_entry_point(self, tmp_path):
        out = tmp_path / "fig1.csv"
        done = subprocess.run([sys.executable, "-m", "squeezeforce", *SMALL_FIG1, "-o", str(out)],
                              capture_output=True, text=True)
        assert done.returncode == 0, done.stderr
        assert out.read_text().startswith(CSV_HEADER)
        bad = subprocess.run([sys.executable, "-m", "squeezeforce", "crossover", "--degree", "1.2"],
                             capture_output=True, text=True)
        assert bad.returncode == 2
