import logging
import sys
from pathlib import Path

import click
from rich.console import Console
from rich.logging import RichHandler

from . import display
from .bench import (
    MODES,
    compare_miners,
    make_miner,
    run_miner,
    run_sweep,
    sweep_frame,
)
from .formats import PatternDump
from .sax import SaxConfig, sax_discretize
from .streams import (
    StreamParseError,
    read_itemset_stream,
    read_numeric_series,
    write_itemset_stream,
)
from .synthetic import GenConfig, generate_synthetic

logger = logging.getLogger(__name__)

EXIT_MISMATCH = 1
EXIT_TIMEOUT = 3


def _setup_logging(verbose: int) -> None:
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(verbose, 2)]
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


@click.group()
@click.option(
    "--verbose", "-v", count=True, help="Log progress to stderr (-v info, -vv debug)"
)
@click.pass_context
def cli(ctx, verbose):
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    _setup_logging(verbose)


def stream_options(func):
    func = click.option(
        "--timeout",
        default=600.0,
        type=click.FloatRange(min=0),
        help="Stop after this many seconds",
    )(func)
    func = click.option(
        "--report",
        "report_path",
        default=None,
        type=click.Path(dir_okay=False, writable=True, path_type=Path),
        help="Write per-slide timings and tree sizes as CSV",
    )(func)
    func = click.option(
        "--sigma", "-s", default=4, type=click.IntRange(min=1), help="Minimum support"
    )(func)
    func = click.option(
        "--window",
        "-w",
        "window_size",
        default=80,
        type=click.IntRange(min=1),
        help="Window size in itemsets",
    )(func)
    func = click.option(
        "--input",
        "-i",
        "source",
        default="-",
        type=click.File("r"),
        help="Itemset stream, one itemset per line ('-' for stdin)",
    )(func)
    return func


@cli.command()
@click.pass_context
@stream_options
@click.option(
    "--mode",
    default="incremental",
    type=click.Choice(sorted(MODES)),
    help="Maintain the tree incrementally or re-mine every window",
)
@click.option(
    "--emit",
    default="final",
    type=click.Choice(["final", "each-slide"]),
    help="Dump the last window only, or every window after warm-up",
)
@click.option(
    "--output",
    "-o",
    default=None,
    type=click.Path(file_okay=False, writable=True, path_type=Path),
    help="Directory for per-slide dumps (default: stdout)",
)
@click.option("--summary", is_flag=True, help="Print a run summary to stderr")
def mine(ctx, source, window_size, sigma, report_path, timeout, mode, emit, output, summary):
    """Mine frequent patterns over a sliding window of an itemset stream.

    incseq gen --length 2000 | incseq mine -w 80 -s 4
    incseq mine -i stream.txt -w 5 -s 2 --mode batch
    incseq mine -i stream.txt --emit each-slide -o dumps --report run.csv
    """
    stream = read_itemset_stream(source)
    dump = PatternDump()
    out = sys.stdout

    on_slide = None
    if emit == "each-slide":
        if output is not None:
            output.mkdir(parents=True, exist_ok=True)

        def on_slide(record, miner):
            if output is not None:
                return str(dump.write(miner.tree, stream.dictionary, record.slide, output))
            header = f"window {record.start}-{record.end}"
            dump.write_to(miner.tree, stream.dictionary, out, header=header)
            return None

    miner = make_miner(mode, window_size, sigma)
    try:
        report = run_miner(miner, stream, timeout=timeout, on_slide=on_slide)
    except StreamParseError as e:
        raise click.ClickException(str(e)) from e

    if emit == "final":
        dump.write_to(miner.tree, stream.dictionary, out)
    if report_path is not None:
        report.write_csv(report_path)
    if summary:
        display.print_report(report)
    if report.timed_out:
        ctx.exit(EXIT_TIMEOUT)


@cli.command()
@click.pass_context
@stream_options
def compare(ctx, source, window_size, sigma, report_path, timeout):
    """Run both miners in lockstep and check they agree at every push."""
    stream = read_itemset_stream(source)
    try:
        comparison = compare_miners(stream, window_size, sigma, timeout=timeout)
    except StreamParseError as e:
        raise click.ClickException(str(e)) from e

    if report_path is not None:
        comparison.to_frame().to_csv(report_path, index=False)
    display.print_comparison(comparison, stream.dictionary)
    if not comparison.ok:
        ctx.exit(EXIT_MISMATCH)
    if comparison.timed_out:
        ctx.exit(EXIT_TIMEOUT)


@cli.command()
@click.option("--vocab", default=40, type=click.IntRange(min=1), help="Number of items")
@click.option(
    "--prob",
    default=0.03,
    type=click.FloatRange(0, 1),
    help="Probability of each item at each position",
)
@click.option("--length", default=None, type=click.IntRange(min=0), help="Stream length")
@click.option(
    "--window",
    "-w",
    "window_size",
    default=80,
    type=click.IntRange(min=1),
    help="Window size the default length is a multiple of",
)
@click.option(
    "--window-multiple",
    default=1000,
    type=click.IntRange(min=1),
    help="Stream length in windows when --length is not given",
)
@click.option("--seed", default=42, type=int, help="Random seed")
@click.option(
    "--output", "-o", default="-", type=click.File("w"), help="Output file ('-' for stdout)"
)
def gen(vocab, prob, length, window_size, window_multiple, seed, output):
    """Generate a synthetic itemset stream."""
    if length is None:
        length = window_size * window_multiple
    cfg = GenConfig(vocab_size=vocab, item_probability=prob, length=length, seed=seed)
    stream = generate_synthetic(cfg)
    count = write_itemset_stream(stream, stream.dictionary, output)
    logger.info("wrote %d itemsets", count)


@cli.command()
@click.option(
    "--input",
    "-i",
    "source",
    default="-",
    type=click.File("r"),
    help="Numeric series, one value per line ('-' for stdin)",
)
@click.option("--alphabet", default=14, type=click.IntRange(min=2), help="Alphabet size")
@click.option(
    "--paa", default=24, type=click.IntRange(min=1), help="Samples averaged per symbol"
)
@click.option(
    "--output", "-o", default="-", type=click.File("w"), help="Output file ('-' for stdout)"
)
def discretize(source, alphabet, paa, output):
    """Turn a numeric series into a symbol stream."""
    try:
        series = read_numeric_series(source)
        stream = sax_discretize(series, SaxConfig(alphabet_size=alphabet, paa_size=paa))
    except ValueError as e:
        raise click.ClickException(str(e)) from e
    write_itemset_stream(stream, stream.dictionary, output)


@cli.command()
@click.pass_context
@click.option(
    "--window",
    "-w",
    "window_sizes",
    multiple=True,
    default=[20, 40, 80],
    type=click.IntRange(min=1),
    help="Window sizes to sweep (repeatable)",
)
@click.option(
    "--sigma",
    "-s",
    "sigmas",
    multiple=True,
    default=[4],
    type=click.IntRange(min=1),
    help="Minimum supports to sweep (repeatable)",
)
@click.option("--seeds", default=3, type=click.IntRange(min=1), help="Streams per setting")
@click.option("--seed", default=42, type=int, help="First seed")
@click.option("--vocab", default=40, type=click.IntRange(min=1), help="Number of items")
@click.option("--prob", default=0.03, type=click.FloatRange(0, 1), help="Item probability")
@click.option(
    "--window-multiple",
    default=10,
    type=click.IntRange(min=1),
    help="Stream length in windows",
)
@click.option("--timeout", default=600.0, type=click.FloatRange(min=0), help="Per run")
@click.option("--workers", default=None, type=click.IntRange(min=1), help="Worker processes")
@click.option(
    "--report",
    "report_path",
    default=None,
    type=click.Path(dir_okay=False, writable=True, path_type=Path),
    help="Write one CSV row per run",
)
def sweep(
    ctx,
    window_sizes,
    sigmas,
    seeds,
    seed,
    vocab,
    prob,
    window_multiple,
    timeout,
    workers,
    report_path,
):
    """Compare both miners over a grid of window sizes and supports.

    incseq sweep -w 20 -w 40 -w 80 -s 2 -s 4 --seeds 5
    """
    results = run_sweep(
        window_sizes,
        sigmas,
        range(seed, seed + seeds),
        vocab_size=vocab,
        item_probability=prob,
        window_multiple=window_multiple,
        timeout=timeout,
        max_workers=workers,
    )
    if report_path is not None:
        sweep_frame(results).to_csv(report_path, index=False)
    display.print_sweep(results)
    if not all(r.matched for r in results):
        ctx.exit(EXIT_MISMATCH)
