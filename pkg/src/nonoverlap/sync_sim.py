"""Frame synchronisation with non-overlapping codewords as markers.

Streams are uniform random symbols with codewords written in at random
positions (noiseless channel).  Because no two codewords overlap, two
occurrences of codewords in any stream start at least ``n`` symbols apart,
so a detector never sees ambiguous, interleaved markers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import ParameterError
from .sfree import AhoCorasick
from .words import Code, verify_code


@dataclass(frozen=True)
class StreamConfig:
    code: Code
    stream_length: int
    marker_rate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.stream_length < self.code.n:
            raise ParameterError(f"stream_length must be >= n = {self.code.n}")
        if not 0.0 <= self.marker_rate <= 1.0:
            raise ParameterError("marker_rate must lie in [0, 1]")


@dataclass(frozen=True)
class Stream:
    symbols: list[int]
    embedded: list[int]


@dataclass(frozen=True)
class DetectionReport:
    embedded_positions: list[int]
    detected_positions: list[int]
    min_gap: int | None
    chance_hits: int
    missed: list[int] = field(default_factory=list)


def generate_stream(cfg: StreamConfig) -> Stream:
    """Random stream with markers; positions are 1-based.

    At every position where a marker fits and at least ``n`` symbols follow
    the previous marker's start, a marker starts with probability
    ``marker_rate``; gaps are therefore ``n`` plus a geometric variable.
    """
    code = cfg.code
    if not verify_code(code):
        raise ParameterError("code is not non-overlapping; marker guarantees do not hold")
    n, q, length = code.n, code.q, cfg.stream_length
    rng = np.random.default_rng(cfg.seed)
    symbols = rng.integers(0, q, size=length).tolist()
    embedded = []
    if cfg.marker_rate > 0:
        rows = [w.symbols for w in code.words]
        pos = 0
        while True:
            pos += int(rng.geometric(cfg.marker_rate)) - 1
            if pos + n > length:
                break
            symbols[pos:pos + n] = rows[int(rng.integers(len(rows)))]
            embedded.append(pos + 1)
            pos += n
    return Stream(symbols, embedded)


@lru_cache(maxsize=64)
def _automaton(code: Code) -> AhoCorasick:
    return AhoCorasick((w.symbols for w in code.words), range(code.q))


def detect(code: Code, stream: Stream | Sequence[int],
           embedded: Sequence[int] | None = None) -> DetectionReport:
    """Every 1-based position where a codeword starts, via multi-pattern matching."""
    if isinstance(stream, Stream):
        symbols = stream.symbols
        embedded = stream.embedded if embedded is None else embedded
    else:
        symbols = stream
    embedded = sorted(embedded or [])
    if len(symbols) < code.n:
        raise ParameterError(f"stream shorter than n = {code.n}")
    found = [i + 1 for i in _automaton(code).find_all(symbols)]
    gaps = [b - a for a, b in zip(found, found[1:])]
    found_set = set(found)
    planted = set(embedded)
    return DetectionReport(
        embedded_positions=embedded,
        detected_positions=found,
        min_gap=min(gaps) if gaps else None,
        chance_hits=sum(1 for p in found if p not in planted),
        missed=[p for p in embedded if p not in found_set],
    )


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    delay: float
    chance_hits: int
    min_gap: int | None
    windows: int

    def csv(self) -> str:
        delay = "inf" if math.isinf(self.delay) else str(int(self.delay))
        gap = "inf" if self.min_gap is None else str(self.min_gap)
        return f"{self.trial},{delay},{self.chance_hits},{gap}"


def _nearest_rank(sorted_values: list, pct: float):
    if not sorted_values:
        return math.inf
    idx = max(0, math.ceil(pct / 100 * len(sorted_values)) - 1)
    return sorted_values[idx]


@dataclass(frozen=True)
class TrialStats:
    records: list[TrialRecord]
    mean_delay: float
    p50_delay: float
    p90_delay: float
    unsynchronised: int
    chance_hits: int
    windows: int

    @property
    def chance_rate(self) -> float:
        return self.chance_hits / self.windows if self.windows else 0.0

    def summary(self) -> str:
        return (f"trials={len(self.records)} mean_delay={self.mean_delay:.3f} "
                f"p50_delay={self.p50_delay} p90_delay={self.p90_delay} "
                f"unsynchronised={self.unsynchronised} chance_hits={self.chance_hits} "
                f"windows={self.windows} chance_rate={self.chance_rate:.6g}")


def run_trials(cfg: StreamConfig, trials: int) -> TrialStats:
    """Trial i uses seed ``cfg.seed + i``; delay = symbols read until the first detection."""
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    n = cfg.code.n
    records = []
    for t in range(trials):
        stream = generate_stream(StreamConfig(cfg.code, cfg.stream_length,
                                              cfg.marker_rate, cfg.seed + t))
        rep = detect(cfg.code, stream)
        delay = rep.detected_positions[0] + n - 1 if rep.detected_positions else math.inf
        records.append(TrialRecord(t, delay, rep.chance_hits, rep.min_gap,
                                   cfg.stream_length - n + 1))
    finite = sorted(r.delay for r in records if not math.isinf(r.delay))
    return TrialStats(
        records=records,
        mean_delay=sum(finite) / len(finite) if finite else math.inf,
        p50_delay=_nearest_rank(finite, 50),
        p90_delay=_nearest_rank(finite, 90),
        unsynchronised=len(records) - len(finite),
        chance_hits=sum(r.chance_hits for r in records),
        windows=sum(r.windows for r in records),
    )
