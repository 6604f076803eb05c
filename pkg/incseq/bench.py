from __future__ import annotations

import logging
import resource
import time
from collections.abc import Callable, Iterable
from concurrent.futures import Executor, ProcessPoolExecutor, as_completed
from dataclasses import asdict, dataclass, field, fields
from itertools import product
from pathlib import Path
from typing import Optional, Union

import pandas as pd
from humanize import naturaldelta, naturalsize
from tqdm import tqdm

from .batch import BatchMiner
from .core import Itemset, Occurrence, Pattern
from .incremental import IncrementalMiner
from .synthetic import GenConfig, generate_synthetic

logger = logging.getLogger(__name__)

MODES = {"incremental": IncrementalMiner, "batch": BatchMiner}

Miner = Union[IncrementalMiner, BatchMiner]
Record = tuple[Pattern, int, tuple[Occurrence, ...]]


def make_miner(mode: str, window_size: int, sigma: int) -> Miner:
    try:
        cls = MODES[mode]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}, expected one of {sorted(MODES)}") from None
    return cls(window_size, sigma)


@dataclass
class SlideRecord:
    slide: int
    start: int
    end: int
    wall_time: float
    cumulative_time: float
    node_count: int
    occurrence_count: int
    pattern_count: int
    dump_path: Optional[str] = None


@dataclass
class RunReport:
    """Timings and tree sizes of one miner over one stream, one record per
    slide after warm-up."""

    mode: str
    window_size: int
    sigma: int
    warmup_time: float = 0.0
    slides: list[SlideRecord] = field(default_factory=list)
    timed_out: bool = False

    @property
    def total_time(self) -> float:
        """Time spent in post-warm-up slides."""
        return self.slides[-1].cumulative_time if self.slides else 0.0

    def record(self, wall_time: float, miner: Miner) -> SlideRecord:
        window = miner.window
        tree = miner.tree
        record = SlideRecord(
            slide=len(self.slides) + 1,
            start=window.start,
            end=window.end,
            wall_time=wall_time,
            cumulative_time=self.total_time + wall_time,
            node_count=tree.node_count,
            occurrence_count=tree.occurrence_count,
            pattern_count=len(tree),
        )
        self.slides.append(record)
        return record

    def to_frame(self) -> pd.DataFrame:
        """Slide records, each carrying the run's ``timed_out`` flag."""
        columns = [f.name for f in fields(SlideRecord)]
        frame = pd.DataFrame([asdict(r) for r in self.slides], columns=columns)
        frame["timed_out"] = self.timed_out
        return frame

    def header(self) -> str:
        return (
            f"# mode={self.mode} window_size={self.window_size} sigma={self.sigma} "
            f"warmup_time={self.warmup_time!r} timed_out={str(self.timed_out).lower()}"
        )

    def write_csv(self, path: Union[str, Path]) -> None:
        """CSV of :meth:`to_frame` after a ``#`` line with the run parameters,
        so a run that timed out before its first slide is still recognisable."""
        with open(path, "w", newline="") as f:
            f.write(self.header() + "\n")
            self.to_frame().to_csv(f, index=False)

    @classmethod
    def read_csv(cls, path: Union[str, Path]) -> "RunReport":
        with open(path, newline="") as f:
            meta = dict(pair.split("=", 1) for pair in f.readline().lstrip("#").split())
            frame = pd.read_csv(f)
        report = cls(
            meta["mode"],
            int(meta["window_size"]),
            int(meta["sigma"]),
            float(meta["warmup_time"]),
            timed_out=meta["timed_out"] == "true",
        )
        names = [f.name for f in fields(SlideRecord)]
        for row in frame[names].to_dict("records"):
            if pd.isna(row["dump_path"]):
                row["dump_path"] = None
            report.slides.append(SlideRecord(**row))
        return report


def _log_rss() -> None:
    # ru_maxrss is in KiB on Linux
    rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
    logger.info("peak resident memory %s", naturalsize(rss * 1024, binary=True))


def run_miner(
    miner: Miner,
    itemsets: Iterable[Itemset],
    timeout: Optional[float] = None,
    on_slide: Optional[Callable[[SlideRecord, Miner], Optional[str]]] = None,
) -> RunReport:
    """Push a whole stream through one miner.

    ``on_slide`` is called after every post-warm-up slide and may return a
    dump path to keep in the slide record. The run stops after the first push
    that exceeds ``timeout`` seconds of total time.
    """
    mode = miner.mode
    report = RunReport(mode, miner.window_size, miner.sigma)
    began = time.perf_counter()
    for itemset in itemsets:
        warm = miner.is_warm
        t0 = time.perf_counter()
        miner.push(itemset)
        elapsed = time.perf_counter() - t0
        if not warm:
            report.warmup_time += elapsed
            if miner.is_warm:
                logger.info("%s warm-up done in %s", mode, naturaldelta(report.warmup_time))
        else:
            record = report.record(elapsed, miner)
            if on_slide is not None:
                record.dump_path = on_slide(record, miner)
        if timeout is not None and time.perf_counter() - began > timeout:
            report.timed_out = True
            logger.warning("%s run timed out after %s", mode, naturaldelta(timeout))
            break
    _log_rss()
    return report


@dataclass
class Mismatch:
    push: int
    start: int
    end: int
    missing: list[Record]
    extra: list[Record]

    def describe(self) -> str:
        return (
            f"push {self.push} (window {self.start}-{self.end}): "
            f"{len(self.missing)} missing and {len(self.extra)} extra patterns "
            "in the incremental tree"
        )


@dataclass
class Comparison:
    incremental: RunReport
    batch: RunReport
    mismatch: Optional[Mismatch] = None

    @property
    def ok(self) -> bool:
        return self.mismatch is None

    @property
    def time_ratio(self) -> float:
        """Batch over incremental time, post-warm-up slides only."""
        if self.incremental.total_time == 0:
            return float("nan")
        return self.batch.total_time / self.incremental.total_time

    @property
    def node_parity(self) -> bool:
        return all(
            a.node_count == b.node_count and a.occurrence_count == b.occurrence_count
            for a, b in zip(self.incremental.slides, self.batch.slides)
        )

    @property
    def timed_out(self) -> bool:
        return self.incremental.timed_out or self.batch.timed_out

    def to_frame(self) -> pd.DataFrame:
        """Slide records of both miners, with a leading mode column."""
        frames = []
        for report in (self.incremental, self.batch):
            frame = report.to_frame()
            frame.insert(0, "mode", report.mode)
            frames.append(frame)
        return pd.concat(frames, ignore_index=True)


def _timed_push(miner: Miner, report: RunReport, itemset: Itemset) -> None:
    warm = miner.is_warm
    t0 = time.perf_counter()
    miner.push(itemset)
    elapsed = time.perf_counter() - t0
    if warm:
        report.record(elapsed, miner)
    else:
        report.warmup_time += elapsed


def compare_miners(
    itemsets: Iterable[Itemset],
    window_size: int,
    sigma: int,
    timeout: Optional[float] = None,
) -> Comparison:
    """Run both miners in lockstep and compare their trees after every push.

    Stops at the first push where the (pattern, support, occurrences) records
    differ, or once the combined time exceeds ``timeout``.
    """
    incremental = IncrementalMiner(window_size, sigma)
    batch = BatchMiner(window_size, sigma)
    comparison = Comparison(
        RunReport(incremental.mode, window_size, sigma),
        RunReport(batch.mode, window_size, sigma),
    )
    began = time.perf_counter()
    for push, itemset in enumerate(itemsets, 1):
        _timed_push(incremental, comparison.incremental, itemset)
        _timed_push(batch, comparison.batch, itemset)
        got = set(incremental.tree.enumerate())
        expected = set(batch.tree.enumerate())
        if got != expected:
            window = batch.window
            comparison.mismatch = Mismatch(
                push=push,
                start=window.start,
                end=window.end,
                missing=sorted(expected - got),
                extra=sorted(got - expected),
            )
            logger.error("trees differ: %s", comparison.mismatch.describe())
            break
        if timeout is not None and time.perf_counter() - began > timeout:
            comparison.incremental.timed_out = comparison.batch.timed_out = True
            logger.warning("comparison timed out after %s", naturaldelta(timeout))
            break
    _log_rss()
    return comparison


@dataclass
class SweepResult:
    window_size: int
    sigma: int
    seed: int
    incremental_time: float
    batch_time: float
    time_ratio: float
    node_count: float
    occurrence_count: float
    matched: bool
    node_parity: bool
    timed_out: bool

    @classmethod
    def from_comparison(cls, seed: int, comparison: Comparison) -> "SweepResult":
        slides = comparison.incremental.slides
        frame = comparison.incremental.to_frame()
        return cls(
            window_size=comparison.incremental.window_size,
            sigma=comparison.incremental.sigma,
            seed=seed,
            incremental_time=comparison.incremental.total_time,
            batch_time=comparison.batch.total_time,
            time_ratio=comparison.time_ratio,
            node_count=float(frame["node_count"].mean()) if slides else 0.0,
            occurrence_count=float(frame["occurrence_count"].mean()) if slides else 0.0,
            matched=comparison.ok,
            node_parity=comparison.node_parity,
            timed_out=comparison.timed_out,
        )


def sweep_run(
    window_size: int,
    sigma: int,
    seed: int,
    vocab_size: int,
    item_probability: float,
    window_multiple: int,
    timeout: Optional[float],
) -> SweepResult:
    """One synthetic stream of ``window_multiple`` windows, both miners."""
    cfg = GenConfig(
        vocab_size=vocab_size,
        item_probability=item_probability,
        length=window_multiple * window_size,
        seed=seed,
    )
    comparison = compare_miners(generate_synthetic(cfg), window_size, sigma, timeout)
    return SweepResult.from_comparison(seed, comparison)


def sweep_frame(results: Iterable[SweepResult]) -> pd.DataFrame:
    return pd.DataFrame(
        [asdict(r) for r in results], columns=[f.name for f in fields(SweepResult)]
    )


def run_sweep(
    window_sizes: Iterable[int],
    sigmas: Iterable[int],
    seeds: Iterable[int],
    vocab_size: int = 40,
    item_probability: float = 0.03,
    window_multiple: int = 1000,
    timeout: Optional[float] = 600,
    max_workers: Optional[int] = None,
    executor_class: type[Executor] = ProcessPoolExecutor,
) -> list[SweepResult]:
    """Compare both miners on every (window size, sigma, seed) combination."""
    grid = list(product(window_sizes, sigmas, seeds))
    with executor_class(max_workers=max_workers) as executor:
        futures = [
            executor.submit(
                sweep_run,
                ws,
                sigma,
                seed,
                vocab_size,
                item_probability,
                window_multiple,
                timeout,
            )
            for ws, sigma, seed in grid
        ]
        progress = tqdm(as_completed(futures), total=len(futures), disable=None)
        results = [future.result() for future in progress]
    return sorted(results, key=lambda r: (r.window_size, r.sigma, r.seed))
