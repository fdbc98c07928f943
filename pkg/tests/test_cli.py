"""End-to-end tests of the command-line surface: report envelope,
value correctness on closed-form commands, CSV shape, determinism,
serialization precision, and exit-code mapping.
"""

import json
import re

import pytest

from bergmult.cli import main


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def _run_json(capsys, argv):
    code, out, err = _run(capsys, argv)
    assert code == 0, err
    return json.loads(out)


# ---------------------------------------------------------------------------
# report envelope on every subcommand (fast parameter choices)
# ---------------------------------------------------------------------------

FAST_INVOCATIONS = [
    ["norm", "--symbol", "one", "--alpha", "0", "--beta", "4", "--trunc", "64"],
    ["mult-norm", "--symbol", "one", "--alpha", "0", "--beta", "4", "--trunc", "16"],
    ["koebe-table", "--alpha", "0,1,2"],
    ["g0-table", "--alpha", "0", "--beta", "4"],
    [
        "test-family", "--symbol", "g0", "--alpha", "0", "--beta", "4",
        "--family", "one_minus_rz_sq", "--lambda-grid", "1.5", "--r-grid", "0.9",
    ],
    ["asymptotics", "--alpha", "0", "--lambda-grid", "1.6", "--r-grid", "0.9"],
    ["schwarzian", "--map", "koebe-map"],
    ["critical-points", "--map", "koebe-map"],
    ["laurent", "--map", "koebe-map", "--point", "-1", "--schwarzian"],
    ["hardy", "--alpha-beta", "0,4"],
    ["laplace-check", "--power", "1", "--rate", "1", "--alpha", "0"],
    ["spectrum", "--map", "koebe-map", "--t", "-2", "--k-min", "6", "--k-max", "8"],
    ["volterra", "--symbol", "g2", "--variant", "j", "--alpha", "0", "--beta", "4"],
    ["claim-probe", "--kind", "T2", "--lambda-grid", "1.2", "--r-grid", "0.9,0.99"],
]


@pytest.mark.parametrize("argv", FAST_INVOCATIONS, ids=lambda a: a[0])
def test_report_envelope(capsys, argv):
    report = _run_json(capsys, argv)
    assert report["command"] == argv[0]
    assert set(report) == {"command", "params", "values", "meta"}
    assert set(report["meta"]) == {"trunc", "residual", "runtime_ms"}
    assert report["params"]["seed"] == 42
    assert report["values"]


# ---------------------------------------------------------------------------
# closed-form values through the CLI
# ---------------------------------------------------------------------------


def test_koebe_table_values(capsys):
    report = _run_json(capsys, ["koebe-table", "--alpha", "0,1,2"])
    rows = report["values"]["rows"]
    expected = {0: 67.5, 1: 57.6, 2: 52.5}
    assert len(rows) == 3
    for row in rows:
        assert row["norm_sq"] == pytest.approx(expected[row["alpha"]], rel=1e-12)


def test_g0_table_value(capsys):
    report = _run_json(capsys, ["g0-table", "--alpha", "0", "--beta", "4"])
    assert report["values"]["rows"][0]["norm_sq"] == pytest.approx(1.875, rel=1e-12)


def test_mult_norm_constant_symbol(capsys):
    report = _run_json(
        capsys,
        ["mult-norm", "--symbol", "one", "--alpha", "0", "--beta", "4", "--trunc", "16"],
    )
    row = report["values"]["rows"][0]
    assert row["kind"] == "lower-bound"
    assert row["value_sq"] == pytest.approx(1.0, rel=1e-9)


def test_seventeen_digit_serialization(capsys):
    code, out, _ = _run(capsys, ["koebe-table", "--alpha", "1"])
    assert code == 0
    # repr-exact float round-trip: 57.6 serializes with 17 significant digits
    assert "57.600000000000001" in out


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------


def test_csv_shape(capsys):
    code, out, _ = _run(capsys, ["koebe-table", "--alpha", "0,1,2", "--output", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "command,alpha,norm_sq,trunc,residual,runtime_ms"
    assert len(lines) == 4
    for line in lines[1:]:
        fields = line.split(",")
        assert fields[0] == "koebe-table"
        float(fields[1])
        float(fields[2])


# ---------------------------------------------------------------------------
# determinism (modulo the runtime_ms field)
# ---------------------------------------------------------------------------


def _normalized(text):
    return re.sub(r'"runtime_ms": [0-9.eE+-]+', '"runtime_ms": 0', text)


@pytest.mark.parametrize(
    "argv",
    [
        ["koebe-table", "--alpha", "0,1,2"],
        [
            "test-family", "--symbol", "g0", "--alpha", "0", "--beta", "4",
            "--family", "one_minus_rz_sq", "--lambda-grid", "1.5", "--r-grid", "0.9",
        ],
        ["claim-probe", "--kind", "T2", "--lambda-grid", "1.2", "--r-grid", "0.9,0.99"],
    ],
    ids=lambda a: a[0],
)
def test_byte_determinism(capsys, argv):
    _, first, _ = _run(capsys, argv)
    _, second, _ = _run(capsys, argv)
    assert _normalized(first) == _normalized(second)


# ---------------------------------------------------------------------------
# exit codes and diagnostics
# ---------------------------------------------------------------------------


def test_exit_two_invalid_alpha(capsys):
    code, out, err = _run(capsys, ["norm", "--symbol", "g0", "--alpha", "-1.5", "--beta", "4"])
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_exit_two_beta_below_alpha(capsys):
    code, _, err = _run(capsys, ["mult-norm", "--symbol", "g0", "--alpha", "2", "--beta", "0"])
    assert code == 2
    assert "error:" in err


def test_exit_two_high_order_pole(capsys):
    code, _, err = _run(
        capsys, ["laurent", "--map", "rat: 1 / 1 -3 3 -1", "--point", "1"]
    )
    assert code == 2
    assert "error:" in err


@pytest.mark.filterwarnings("ignore")
def test_exit_three_numeric_failure(capsys):
    code, out, err = _run(capsys, ["laplace-check", "--power", "-0.45", "--rate", "0.01"])
    assert code == 3
    assert out == ""
    assert err.startswith("numeric error:")


def test_trunc_env_override(capsys, monkeypatch):
    monkeypatch.setenv("BERGMAN_TRUNC", "64")
    report = _run_json(
        capsys, ["norm", "--symbol", "g0", "--alpha", "0", "--beta", "4"]
    )
    assert report["meta"]["trunc"] == 64
