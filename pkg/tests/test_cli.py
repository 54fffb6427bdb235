import csv
import io
import json

import pytest

from cocenter.cli import (
    ConfigError,
    RunConfig,
    load_config,
    main,
    render_csv,
    render_json,
    run_saturate,
    run_unipotent,
)


@pytest.fixture(scope="module")
def small_config():
    return RunConfig(ff_cases=((2, 2),), grid_window=(-1, 1)).validate()


def test_config_validation():
    with pytest.raises(ConfigError):
        RunConfig(blocks=(3, 2)).validate()
    with pytest.raises(ConfigError):
        RunConfig(m=0).validate()
    with pytest.raises(ConfigError):
        RunConfig(p=6).validate()


def test_load_config_round_trip(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text(
        "[run]\np = 3\nm = 1\nn = 2\nblocks = 1,1\nguard = 500000\n"
        "[orbital]\ngrid_min = -1\ngrid_max = 1\n"
        "[unipotent]\ncases = 2:2, 2:3\n"
        "[saturate]\ndegree = 1\nheight = 1\n"
    )
    cfg = load_config(str(path))
    assert cfg.p == 3 and cfg.blocks == (1, 1)
    assert cfg.grid_window == (-1, 1)
    assert cfg.ff_cases == ((2, 2), (2, 3))
    assert cfg.sat_degree == 1


def test_load_config_rejects_bad_blocks(tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("[run]\nn = 2\nblocks = 3,2\n")
    with pytest.raises(ConfigError):
        load_config(str(path))


def test_formats_carry_identical_data(small_config):
    rows = run_saturate(small_config)
    js = json.loads(render_json(rows))
    parsed = list(csv.DictReader(io.StringIO(render_csv(rows))))
    assert js["rows"] == parsed


def test_reports_deterministic(small_config):
    rows_a = run_unipotent(small_config)
    rows_b = run_unipotent(small_config)
    assert render_json(rows_a) == render_json(rows_b)
    assert render_csv(rows_a) == render_csv(rows_b)


def test_main_exit_codes(tmp_path):
    out = tmp_path / "report.json"
    code = main(["saturate", "--out", str(out)])
    assert code == 0
    blob = json.loads(out.read_text())
    assert blob["passed"] is True

    bad = tmp_path / "bad.ini"
    bad.write_text("[run]\nn = 2\nblocks = 3,2\n")
    assert main(["saturate", "--config", str(bad)]) == 2

    assert main(["unipotent", "--guard", "5"]) == 3


def test_main_mutation_mode_fails(tmp_path):
    out = tmp_path / "mutated.json"
    code = main(
        ["orbital", "--mutate-normalization", "--out", str(out), "--format", "json"]
    )
    assert code == 1
    blob = json.loads(out.read_text())
    assert blob["passed"] is False
    assert any(r["pass"] == "false" for r in blob["rows"])
