import math

import pytest

from hellmann.config import load_config, parse_config
from hellmann.errors import MalformedConfig
from hellmann.scan import (
    CSV_FIELDS,
    PRESETS,
    ScanSpec,
    evaluate_point,
    gnuplot_script,
    parse_csv,
    parse_sidecar,
    regenerate_row,
    rows_to_csv,
    run_scan,
    sidecar_text,
    spec_from_params,
    trend_report,
)


def test_config_parsing(tmp_path):
    assert parse_config("") == {}
    assert parse_config("# only a comment\n\n") == {}
    params = parse_config("model = sse  # trailing\nl=2\nrho=0.5\nallow-complex-exponent=yes\n")
    assert params == {"model": "sse", "l": 2, "rho": 0.5, "allow_complex_exponent": True}
    path = tmp_path / "c.cfg"
    path.write_text("rho=0.5\na=0.1\n")
    assert load_config(path, {"rho": 0.1, "b": None}) == {"rho": 0.1, "a": 0.1}
    assert load_config(None, {"a": 1.0}) == {"a": 1.0}


@pytest.mark.parametrize("text, line", [("foo=1", 1), ("a=1\nJ=1.5", 2), ("a=1\n\nrho", 3),
                                        ("allow_complex_exponent=maybe", 1), ("rho=abc", 1)])
def test_config_errors(text, line):
    with pytest.raises(MalformedConfig) as info:
        parse_config(text)
    assert info.value.lineno == line


def test_spec_validation():
    with pytest.raises(ValueError):
        ScanSpec("dkp", "E", (2.0, 1.0, 5), {})
    with pytest.raises(ValueError):
        ScanSpec("dkp", "E", (1.0, 2.0, 1), {})
    with pytest.raises(ValueError):
        ScanSpec("sse", "J", (0, 3, 4), {})
    with pytest.raises(ValueError):
        ScanSpec("qed", "E", (1.0, 2.0, 3), {})
    with pytest.raises(ValueError):
        ScanSpec("dkp", "J", (0, 3, 5), {}).values()
    with pytest.raises(ValueError):
        spec_from_params({"preset": "fig9"})
    with pytest.raises(ValueError):
        spec_from_params({"model": "dkp"})


def test_presets():
    assert set(PRESETS) == {"fig1", "fig2a", "fig2b", "fig3", "fig4a", "fig4b"}
    spec = spec_from_params({"preset": "fig2a"})
    assert spec.fixed["mu_override"] == 0.5 and spec.fixed["mass_index_override"] == 0.25
    assert spec.values() == list(range(11))
    unequal = spec_from_params({"preset": "fig2a", "mass_convention": "unequal"})
    assert unequal.fixed["mu_override"] == 0.01 and unequal.fixed["mass_index_override"] == 1.0
    fig1 = spec_from_params({"preset": "fig1"})
    assert len(fig1.series) == 6
    assert spec_from_params({"preset": "fig1", "rho": 0.2}).series == [{}, {"energy": 2.0}]


def test_fig2a_rows():
    rows = run_scan(spec_from_params({"preset": "fig2a"}))
    assert len(rows) == 11
    assert [r["sweep_value"] for r in rows] == list(range(11))
    assert rows[0]["delta_rad"] == pytest.approx(1.478050069959623808628570294706, abs=1e-12)
    assert all(r["evanescent"] and r["k"] is None and r["T"] is None for r in rows[2:])


def test_complex_exponent_row_without_permission():
    p = {"a": 0.2, "b": -1.0, "rho": 0.5, "energy": 1.0, "m1": 1.0, "m2": 1.0,
         "mu_override": 0.5, "mass_index_override": 0.25}
    row = evaluate_point("sse", "l", 0, p, allow_complex_exponent=False)
    assert row["k"] == pytest.approx(1.2083045973594573)
    assert row["delta_rad"] is None and row["evanescent"] is False


def test_csv_round_trip():
    for name in ("fig1", "fig2a", "fig4b"):
        spec = spec_from_params({"preset": name})
        rows = run_scan(spec)
        text = rows_to_csv(rows)
        assert "\r" not in text
        records = parse_csv(text)
        assert list(records[0]) == list(CSV_FIELDS)
        for rec, row in zip(records, rows):
            assert regenerate_row(rec) == row


def test_energy_sweep_and_round_trip():
    spec = spec_from_params({"model": "dkp", "a": 0.3, "b": 0.1, "rho": 0.5, "mass": 1.0, "J": 1,
                             "sweep": "E", "start": 0.5, "stop": 3.0, "count": 6})
    rows = run_scan(spec)
    assert rows[0]["evanescent"] and not rows[-1]["evanescent"]
    assert all(isinstance(r["sweep_value"], float) for r in rows)
    fixed = parse_sidecar(sidecar_text(spec, rows))
    assert fixed["J"] == 1
    for rec, row in zip(parse_csv(rows_to_csv(rows)), rows):
        assert regenerate_row(rec, fixed) == row


def test_parallel_matches_serial():
    spec = spec_from_params({"preset": "fig1"})
    assert rows_to_csv(run_scan(spec, jobs=1)) == rows_to_csv(run_scan(spec, jobs=6))


def test_trend_report_and_sidecar():
    spec = spec_from_params({"preset": "fig2a"})
    rows = run_scan(spec)
    (line,) = trend_report(spec, rows)
    assert "holds" in line and "2 propagating" in line
    meta = sidecar_text(spec, rows)
    assert meta == sidecar_text(spec, run_scan(spec))
    assert "rows=11 gaps=9" in meta
    e_spec = spec_from_params({"model": "dkp", "a": 0, "b": 0, "rho": 0.5, "mass": 1.0, "J": 0,
                               "sweep": "E", "start": 1.5, "stop": 3.0, "count": 3})
    assert trend_report(e_spec, run_scan(e_spec)) == []


def test_gnuplot_script_series_filters():
    spec = spec_from_params({"preset": "fig1"})
    script = gnuplot_script(spec, "fig1.csv")
    assert script.count("'fig1.csv'") == 6
    assert "set datafile separator ','" in script
    assert "energy=2" in script


def test_identity_flag_column():
    p = {"a": -2.8, "b": -3.0, "rho": 0.5, "energy": 1.5, "mass": 1.0}
    row = evaluate_point("dkp", "J", 0, p, False)
    assert row["identity_ok"] is True and math.isfinite(row["delta_rad"])
