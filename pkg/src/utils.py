"""
Utils
"""
from __future__ import annotations

import random
from datetime import datetime
from itertools import chain, combinations
from typing import Iterable, Iterator, Sequence

import pytz

from config import SAMPLE_PAIRS, SWEEP_CUTOFF


def powerset(items: Iterable[int]) -> Iterator[frozenset[int]]:
    s = sorted(items)
    return (frozenset(c) for c in chain.from_iterable(combinations(s, k) for k in range(len(s) + 1)))


def random_subset(rng: random.Random, items: Sequence[int]) -> frozenset[int]:
    return frozenset(x for x in items if rng.random() < 0.5)


def subset_pairs(points: Sequence[int], seed: int = 0,
                 cutoff: int | None = None, samples: int | None = None):
    """(M, N) pairs over `points` and whether the sweep was exhaustive.

    All pairs when there are at most `cutoff` points, otherwise `samples`
    pairs drawn from a Random seeded with `seed`.
    """
    cutoff = SWEEP_CUTOFF if cutoff is None else cutoff
    samples = SAMPLE_PAIRS if samples is None else samples
    pts = sorted(points)
    if len(pts) <= cutoff:
        subsets = list(powerset(pts))
        return [(m, n) for m in subsets for n in subsets], True
    rng = random.Random(seed)
    return [(random_subset(rng, pts), random_subset(rng, pts)) for _ in range(samples)], False


def fmt_set(s: Iterable[int], labels: Sequence[str] | None = None) -> str:
    ids = sorted(s)
    if labels is None:
        return '{' + ','.join(str(i) for i in ids) + '}'
    return '{' + ','.join(labels[i] for i in ids) + '}'


def utc_now() -> str:
    return datetime.now(pytz.utc).strftime('%Y-%m-%dT%H:%M:%SZ')
