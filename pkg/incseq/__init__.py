from pathlib import Path

from .batch import BatchMiner, mine_batch
from .bench import compare_miners, make_miner, run_miner
from .core import Window, make_pattern
from .formats import dump_lines
from .incremental import IncrementalMiner
from .oracle import mine_oracle
from .streams import read_itemset_stream

__all__ = [
    "BatchMiner",
    "IncrementalMiner",
    "Window",
    "compare_miners",
    "make_pattern",
    "mine_batch",
    "mine_file",
    "mine_oracle",
    "run_miner",
]


def mine_file(path, window_size: int, sigma: int, mode: str = "incremental") -> list[str]:
    """Pattern dump of the last window of an itemset stream file."""
    with Path(path).open() as f:
        stream = read_itemset_stream(f)
        miner = make_miner(mode, window_size, sigma)
        run_miner(miner, stream)
    return list(dump_lines(miner.tree, stream.dictionary))
