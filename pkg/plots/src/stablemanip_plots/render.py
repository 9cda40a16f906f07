"""Render stable-manipulation experiment CSVs as line charts.

Consumes the results CSV emitted by the ``stablemanip experiment`` command
(header ``rule,m,n,delta,trials,seed,yes_count,fraction``, ``#`` comments)
and draws one fraction-vs-delta line per rule for a chosen (m, n) cell,
titled like the figures in manipulability studies. Output format follows
the file extension (.png or .svg).
"""

import argparse
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

CSV_HEADER = "rule,m,n,delta,trials,seed,yes_count,fraction"


class PlotError(Exception):
    pass


@dataclass(frozen=True)
class PlotSpec:
    csv_path: str
    m: int
    n: int
    out_path: str
    title_template: str = "Results for m = {m}, n = {n}"


@dataclass(frozen=True)
class ResultRow:
    rule: str
    m: int
    n: int
    delta: int
    fraction: float


def read_results(text: str) -> list[ResultRow]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0] != CSV_HEADER:
        raise PlotError(f"input is not a results CSV (expected header {CSV_HEADER!r})")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 8:
            raise PlotError(f"malformed CSV row: {ln!r}")
        rule, m, n, delta, _trials, _seed, _yes, fraction = parts
        rows.append(ResultRow(rule, int(m), int(n), int(delta), float(fraction)))
    return rows


def build_figure(spec: PlotSpec, rows: list[ResultRow]):
    """The chart as a matplotlib figure; one line per rule, y in [0, 1]."""
    selected = [r for r in rows if r.m == spec.m and r.n == spec.n]
    if not selected:
        raise PlotError(f"no rows match the filter (m={spec.m}, n={spec.n})")
    by_rule: dict[str, list[ResultRow]] = {}
    for row in selected:
        by_rule.setdefault(row.rule, []).append(row)

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for rule in sorted(by_rule):
        points = sorted(by_rule[rule], key=lambda r: r.delta)
        ax.plot(
            [p.delta for p in points],
            [p.fraction for p in points],
            marker="o",
            label=rule,
        )
    ax.set_xlabel("delta (Kendall-Tau budget per voter)")
    ax.set_ylabel("fraction of stably manipulable profiles")
    ax.set_ylim(0.0, 1.0)
    ax.set_xticks(sorted({r.delta for r in selected}))
    ax.set_title(spec.title_template.format(m=spec.m, n=spec.n))
    ax.legend()
    fig.tight_layout()
    return fig


def render(spec: PlotSpec) -> str:
    """Write the chart to ``spec.out_path`` (.png or .svg); returns the path."""
    ext = spec.out_path.rsplit(".", 1)[-1].lower() if "." in spec.out_path else ""
    if ext not in ("png", "svg"):
        raise PlotError(f"output extension must be .png or .svg, got {spec.out_path!r}")
    try:
        with open(spec.csv_path, encoding="utf-8") as fh:
            rows = read_results(fh.read())
    except OSError as exc:
        raise PlotError(f"cannot read {spec.csv_path}: {exc}") from None
    fig = build_figure(spec, rows)
    # pinned date and hash salt keep repeated SVG renders byte-identical
    metadata = {"Date": None} if ext == "svg" else None
    try:
        with matplotlib.rc_context({"svg.hashsalt": "stablemanip"}):
            fig.savefig(spec.out_path, metadata=metadata)
    finally:
        plt.close(fig)
    return spec.out_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="stablemanip-plot",
        description="Plot fraction-manipulable vs delta from a results CSV.",
    )
    parser.add_argument("csv", help="results CSV from `stablemanip experiment`")
    parser.add_argument("--m", type=int, required=True, help="alternative count filter")
    parser.add_argument("--n", type=int, required=True, help="voter count filter")
    parser.add_argument("--out", required=True, help="output image path (.png or .svg)")
    args = parser.parse_args(argv)
    spec = PlotSpec(csv_path=args.csv, m=args.m, n=args.n, out_path=args.out)
    try:
        print(render(spec))
    except PlotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
