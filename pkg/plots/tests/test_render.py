import subprocess
import sys

import pytest

from stablemanip_plots import PlotError, PlotSpec, build_figure, read_results, render

FIXTURE_CSV = """\
# stablemanip 0.1.0
# rng: numpy PCG64, per-trial stream SeedSequence([seed, trial])
rule,m,n,delta,trials,seed,yes_count,fraction
borda,6,4,0,100,1,100,1.0000
borda,6,4,1,100,1,2,0.0200
borda,6,4,2,100,1,0,0.0000
bucklin,6,4,0,100,1,100,1.0000
bucklin,6,4,1,100,1,31,0.3100
bucklin,6,4,2,100,1,0,0.0000
copeland,6,4,0,100,1,100,1.0000
copeland,6,4,1,100,1,60,0.6000
copeland,6,4,2,100,1,1,0.0100
maximin,6,4,0,100,1,100,1.0000
maximin,6,4,1,100,1,64,0.6400
maximin,6,4,2,100,1,2,0.0200
plurality,6,4,0,100,1,100,1.0000
plurality,6,4,1,100,1,4,0.0400
plurality,6,4,2,100,1,0,0.0000
stv,6,4,0,100,1,100,1.0000
stv,6,4,1,100,1,5,0.0500
stv,6,4,2,100,1,0,0.0000
plurality,20,30,0,100,1,100,1.0000
"""

RULES_M6N4 = ["borda", "bucklin", "copeland", "maximin", "plurality", "stv"]


@pytest.fixture
def csv_path(tmp_path):
    path = tmp_path / "results.csv"
    path.write_text(FIXTURE_CSV)
    return str(path)


def test_read_results_skips_comments(csv_path):
    rows = read_results(FIXTURE_CSV)
    assert len(rows) == 19
    assert rows[0].rule == "borda" and rows[0].fraction == 1.0


def test_read_results_rejects_other_files():
    with pytest.raises(PlotError):
        read_results("time,value\n1,2\n")


def test_figure_has_one_line_per_rule_and_the_expected_title(csv_path):
    spec = PlotSpec(csv_path, m=6, n=4, out_path="unused.png")
    fig = build_figure(spec, read_results(FIXTURE_CSV))
    ax = fig.axes[0]
    assert ax.get_title() == "Results for m = 6, n = 4"
    lines = ax.get_lines()
    assert len(lines) == 6
    assert [t.get_text() for t in ax.get_legend().get_texts()] == RULES_M6N4
    assert ax.get_ylim() == (0.0, 1.0)
    for line in lines:
        ys = line.get_ydata()
        assert all(0.0 <= y <= 1.0 for y in ys)
        assert list(line.get_xdata()) == [0, 1, 2]


def test_filter_picks_the_requested_cell(csv_path):
    spec = PlotSpec(csv_path, m=20, n=30, out_path="unused.png")
    fig = build_figure(spec, read_results(FIXTURE_CSV))
    assert len(fig.axes[0].get_lines()) == 1
    assert fig.axes[0].get_title() == "Results for m = 20, n = 30"


def test_empty_filter_error_names_the_cell(csv_path, tmp_path):
    spec = PlotSpec(csv_path, m=9, n=9, out_path=str(tmp_path / "x.png"))
    with pytest.raises(PlotError, match=r"m=9, n=9"):
        render(spec)


def test_render_writes_png_and_svg(csv_path, tmp_path):
    for ext in ("png", "svg"):
        out = str(tmp_path / f"fig.{ext}")
        assert render(PlotSpec(csv_path, m=6, n=4, out_path=out)) == out
        blob = (tmp_path / f"fig.{ext}").read_bytes()
        assert blob[:4] == b"\x89PNG" if ext == "png" else b"<?xm" in blob[:6]


def test_render_rejects_unknown_extension(csv_path, tmp_path):
    with pytest.raises(PlotError):
        render(PlotSpec(csv_path, m=6, n=4, out_path=str(tmp_path / "fig.pdf")))


def test_repeated_renders_are_byte_identical(csv_path, tmp_path):
    for ext in ("png", "svg"):
        a = str(tmp_path / f"a.{ext}")
        b = str(tmp_path / f"b.{ext}")
        render(PlotSpec(csv_path, m=6, n=4, out_path=a))
        render(PlotSpec(csv_path, m=6, n=4, out_path=b))
        assert (tmp_path / f"a.{ext}").read_bytes() == (tmp_path / f"b.{ext}").read_bytes()


def test_rendering_does_not_mutate_the_csv(csv_path, tmp_path):
    before = open(csv_path, "rb").read()
    render(PlotSpec(csv_path, m=6, n=4, out_path=str(tmp_path / "fig.png")))
    assert open(csv_path, "rb").read() == before


def test_cli_exit_codes(csv_path, tmp_path):
    from stablemanip_plots.render import main

    out = str(tmp_path / "fig.png")
    assert main([csv_path, "--m", "6", "--n", "4", "--out", out]) == 0
    assert main([csv_path, "--m", "9", "--n", "9", "--out", out]) == 2


def test_end_to_end_against_the_primary_harness(tmp_path):
    """Drive the primary CLI (its external interface) and plot its output."""
    csv_out = str(tmp_path / "grid.csv")
    proc = subprocess.run(
        [
            sys.executable, "-m", "stablemanip.cli", "experiment",
            "--rules", "plurality,borda,maximin",
            "--m", "6", "--n", "4",
            "--deltas", "0,1,2",
            "--trials", "20",
            "--seed", "3",
            "--out", csv_out,
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    fig_out = str(tmp_path / "fig.png")
    render(PlotSpec(csv_out, m=6, n=4, out_path=fig_out))
    fig = build_figure(PlotSpec(csv_out, m=6, n=4, out_path=fig_out), read_results(open(csv_out).read()))
    assert len(fig.axes[0].get_lines()) == 3
    assert fig.axes[0].get_title() == "Results for m = 6, n = 4"
