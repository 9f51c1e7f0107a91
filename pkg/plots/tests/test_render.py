import pytest

from cascade_plots import (PALETTE, UNKNOWN_COLOR, PlotJob, PlotKind,
                           SchemaError, label_color, render)
from cascade_plots.cli import run

PHASE_SIM = """beta,tau,label,steps,period,agreement
1,0.1,AllActive,2,0,n/a
1,0.5,Frozen,1,0,n/a
2,0.1,AllActive,3,0,n/a
2,0.5,AllInactive,4,0,n/a
"""

PHASE_ANALYTIC = """beta,tau,label,steps,period,agreement
1,0.2,AllActive,-1,0,n/a
1,0.6,Alpha(1),-1,0,n/a
2,0.2,Alpha(2),-1,0,n/a
2,0.6,Boundary,-1,0,n/a
"""

PHASE_BOTH = """beta,tau,label,steps,period,agreement
0.5,0.8,Periodic(2),5,2,match
0.5,0.9,AllInactive,7,0,match
1.5,0.8,SomethingNew,3,0,mismatch
1.5,0.9,Indeterminate(budget),-1,0,n/a
"""

EGO = """beta,tau,mean_active,indeterminate_trials
9,0.1,1,0
9,0.3,0.25,0
12,0.1,0.875,1
12,0.3,0.0625,0
"""

CURVES = """name,beta,value
delta1,9,0.12
delta1,12,0.09
delta2,9,0.16
delta2,12,0.2
"""


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


@pytest.mark.parametrize("text,kind", [
    (PHASE_SIM, PlotKind.REGION_MAP),
    (PHASE_ANALYTIC, PlotKind.REGION_MAP),
    (PHASE_BOTH, PlotKind.REGION_MAP),
    (EGO, PlotKind.FRACTION_MAP),
])
def test_render_all_csv_kinds(tmp_path, text, kind):
    out = tmp_path / "map.png"
    render(PlotJob(csv_path=write(tmp_path, "in.csv", text),
                   out_path=str(out), kind=kind))
    assert out.stat().st_size > 0


def test_render_byte_identical(tmp_path):
    src = write(tmp_path, "in.csv", PHASE_SIM)
    a, b = tmp_path / "a.png", tmp_path / "b.png"
    render(PlotJob(csv_path=src, out_path=str(a), kind=PlotKind.REGION_MAP))
    render(PlotJob(csv_path=src, out_path=str(b), kind=PlotKind.REGION_MAP))
    assert a.read_bytes() == b.read_bytes()


def test_render_header_only(tmp_path):
    src = write(tmp_path, "empty.csv",
                "beta,tau,label,steps,period,agreement\n")
    out = tmp_path / "blank.png"
    render(PlotJob(csv_path=src, out_path=str(out),
                   kind=PlotKind.REGION_MAP))
    assert out.stat().st_size > 0


def test_render_with_curves(tmp_path):
    out = tmp_path / "curves.png"
    render(PlotJob(csv_path=write(tmp_path, "ego.csv", EGO),
                   out_path=str(out), kind=PlotKind.FRACTION_MAP,
                   curves_path=write(tmp_path, "curves.csv", CURVES)))
    assert out.stat().st_size > 0


def test_schema_error_lists_missing_columns(tmp_path):
    src = write(tmp_path, "bad.csv", "beta,tau\n1,0.5\n")
    with pytest.raises(SchemaError, match="label"):
        render(PlotJob(csv_path=src, out_path=str(tmp_path / "x.png"),
                       kind=PlotKind.REGION_MAP))
    with pytest.raises(SchemaError, match="mean_active"):
        render(PlotJob(csv_path=src, out_path=str(tmp_path / "x.png"),
                       kind=PlotKind.FRACTION_MAP))


def test_label_colors():
    assert label_color("AllActive") == PALETTE["AllActive"]
    assert label_color("Alpha(1)") != label_color("Alpha(2)")
    assert label_color("Periodic(2)") == PALETTE["Oscillating2"]
    assert label_color("FixedPattern(11001)") == UNKNOWN_COLOR


def test_cli_round_trip(tmp_path, capsys):
    src = write(tmp_path, "in.csv", PHASE_SIM)
    out = tmp_path / "o.png"
    assert run([src, "--kind", "region-map", "--out", str(out)]) == 0
    assert out.exists()
    assert run([str(tmp_path / "missing.csv"), "--kind", "region-map",
                "--out", str(out)]) == 2
    assert capsys.readouterr().err.startswith("plot:")
