from __future__ import annotations

import math
from typing import Optional

from humanize import intcomma, precisedelta
from rich.bar import Bar
from rich.console import Console
from rich.table import Table
from rich.text import Text

from .bench import Comparison, RunReport, SweepResult, sweep_frame
from .formats import format_pattern
from .streams import ItemDictionary


def _duration(seconds: float) -> str:
    return precisedelta(seconds, minimum_unit="milliseconds", format="%0.1f")


def _bar_color(share):
    # share of the batch time spent by the incremental miner, lower is better
    thresholds = [0.067, 0.25, 0.5, 0.75, 0.933]
    colors = ["bright_green", "green", "yellow", "orange3", "red", "bright_red"]
    for threshold, color in zip(thresholds, colors):
        if share <= threshold:
            return color
    return colors[-1]


def ratio_cell(ratio: float, width: int = 20, style=None) -> Table:
    """Speedup as text, next to a bar of the incremental share of batch time."""
    grid = Table.grid(padding=(0, 1, 0, 0))
    grid.add_column(justify="right", min_width=6, no_wrap=True)
    grid.add_column(min_width=width)
    if math.isnan(ratio) or ratio <= 0:
        grid.add_row(Text("n/a", style=style), "")
        return grid
    share = min(1.0, 1 / ratio)
    bar = Bar(1.0, 0, share, width=width, color=_bar_color(share), bgcolor="grey23")
    grid.add_row(Text(f"{ratio:.1f}x", style=style), bar)
    return grid


def _report_row(report: RunReport) -> list:
    frame = report.to_frame()
    peak_nodes = int(frame["node_count"].max()) if len(frame) else 0
    peak_occurrences = int(frame["occurrence_count"].max()) if len(frame) else 0
    mean = report.total_time / len(frame) if len(frame) else 0.0
    return [
        report.mode,
        intcomma(len(frame)),
        _duration(report.warmup_time),
        _duration(report.total_time),
        _duration(mean),
        intcomma(peak_nodes),
        intcomma(peak_occurrences),
        Text("yes", style="bold red") if report.timed_out else "no",
    ]


def _report_table(title: str) -> Table:
    table = Table(title=title, show_header=True, header_style="bold magenta")
    table.add_column("Mode", justify="left")
    table.add_column("Slides", justify="right")
    table.add_column("Warm-up", justify="right")
    table.add_column("Slide Time", justify="right")
    table.add_column("Per Slide", justify="right")
    table.add_column("Peak Nodes", justify="right")
    table.add_column("Peak Occurrences", justify="right")
    table.add_column("Timed Out", justify="left")
    return table


def print_report(report: RunReport, console: Optional[Console] = None) -> None:
    console = console or Console(stderr=True)
    table = _report_table(f"ws={report.window_size} sigma={report.sigma}")
    table.add_row(*_report_row(report))
    console.print(table)


def print_comparison(
    comparison: Comparison,
    dictionary: Optional[ItemDictionary] = None,
    console: Optional[Console] = None,
    limit: int = 10,
) -> None:
    console = console or Console(stderr=True)
    report = comparison.incremental
    table = _report_table(f"ws={report.window_size} sigma={report.sigma}")
    table.add_row(*_report_row(comparison.incremental))
    table.add_row(*_report_row(comparison.batch))
    console.print(table)

    summary = Table.grid(padding=(0, 2))
    summary.add_row("Batch / incremental", ratio_cell(comparison.time_ratio))
    summary.add_row(
        "Node parity",
        Text("identical", style="green")
        if comparison.node_parity
        else Text("differs", style="bold red"),
    )
    console.print(summary)

    mismatch = comparison.mismatch
    if mismatch is None:
        console.print(Text("trees identical at every push", style="bold green"))
        return
    console.print(Text(mismatch.describe(), style="bold red"))
    for label, records in (("missing", mismatch.missing), ("extra", mismatch.extra)):
        for pattern, support, _ in records[:limit]:
            rendered = (
                format_pattern(pattern, dictionary) if dictionary is not None else str(pattern)
            )
            console.print(f"  {label}: {rendered} (support {support})")
        if len(records) > limit:
            console.print(f"  ... {len(records) - limit} more {label}")


def print_sweep(results: list[SweepResult], console: Optional[Console] = None) -> None:
    """One row per (window size, sigma), averaged over seeds."""
    console = console or Console()
    frame = sweep_frame(results)
    grouped = (
        frame.groupby(["window_size", "sigma"])
        .agg(
            runs=("seed", "count"),
            incremental_time=("incremental_time", "mean"),
            batch_time=("batch_time", "mean"),
            time_ratio=("time_ratio", "mean"),
            node_count=("node_count", "mean"),
            occurrence_count=("occurrence_count", "mean"),
            matched=("matched", "all"),
            node_parity=("node_parity", "all"),
            timeouts=("timed_out", "sum"),
        )
        .reset_index()
    )
    best_ratio = grouped["time_ratio"].max()

    table = Table(show_header=True, header_style="bold magenta")
    table.add_column("ws", justify="right")
    table.add_column("sigma", justify="right")
    table.add_column("Runs", justify="right")
    table.add_column("Incremental", justify="right")
    table.add_column("Batch", justify="right")
    table.add_column("Speedup ↑", justify="left")
    table.add_column("Nodes", justify="right")
    table.add_column("Occurrences", justify="right")
    table.add_column("Equal", justify="left")
    table.add_column("Timeouts", justify="right")

    prev_ws = None
    for row in grouped.itertuples(index=False):
        if row.window_size != prev_ws:
            table.add_section()
            prev_ws = row.window_size
        style = "bold green" if row.time_ratio == best_ratio else ""
        equal = row.matched and row.node_parity
        table.add_row(
            str(row.window_size),
            str(row.sigma),
            str(row.runs),
            _duration(row.incremental_time),
            _duration(row.batch_time),
            ratio_cell(row.time_ratio, style=style),
            intcomma(round(row.node_count)),
            intcomma(round(row.occurrence_count)),
            Text("yes", style="green") if equal else Text("no", style="bold red"),
            str(int(row.timeouts)),
        )
    console.print(table)
