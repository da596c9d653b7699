"""Runtime comparison of selective rule generation against a restricted Apriori run.

For every family size the harness samples itemset families from a mined
pool, then times

* selective generation: build the counting tree, one database pass, rules;
* the baseline: Apriori with the smallest family support as minimum
  support, the longest family itemset as length cap and only the family's
  items, followed by full rule generation.  The baseline's rules are *not*
  filtered down to the family inside the timed region.
"""

from __future__ import annotations

import logging
import math
import os
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import fmean
from typing import IO, NamedTuple, Sequence

import numpy as np

from .corpus import Itemset, TransactionDatabase
from .errors import InsufficientPoolError, ResourceExhaustedError
from .miner import FrequentItemsets, apriori, rules_from_frequent
from .rulegen import RuleSet, generate_rules
from .seltree import build_tree, count_database
from .thresholds import FractionLike, unit_fraction

log = logging.getLogger(__name__)

REPORT_COLUMNS = ("family_size", "t_selective_s", "t_apriori_s", "nodes", "rules")


@dataclass
class BenchConfig:
    pool_minsup: Fraction
    family_sizes: Sequence[int]
    repetitions: int = 1
    minconf: Fraction = Fraction(8, 10)
    seed: int = 0
    baseline: bool = True
    verify: bool = False
    warmup: bool = True

    def __post_init__(self):
        self.pool_minsup = unit_fraction(self.pool_minsup, "pool_minsup", allow_zero=False)
        self.minconf = unit_fraction(self.minconf, "minconf")
        self.family_sizes = tuple(int(s) for s in self.family_sizes)
        if not self.family_sizes:
            raise ValueError("at least one family size is required")
        if any(s < 1 for s in self.family_sizes):
            raise ValueError("family sizes must be positive")
        if any(a >= b for a, b in zip(self.family_sizes, self.family_sizes[1:])):
            raise ValueError("family sizes must be strictly ascending")
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")


class BenchRow(NamedTuple):
    family_size: int
    t_selective_s: float
    t_apriori_s: float | None  # None: baseline not run; nan: exhausted in every repetition
    nodes: float
    rules: float


@dataclass
class BenchReport:
    rows: list[BenchRow]
    families: dict[int, list[list[Itemset]]] = field(default_factory=dict)
    rule_keys: dict[int, list[frozenset]] = field(default_factory=dict)
    mismatches: int = 0
    notes: list[str] = field(default_factory=list)

    def write_csv(self, dest: str | os.PathLike | IO[str] | None = None) -> None:
        if dest is None:
            self._write(sys.stdout)
        elif hasattr(dest, "write"):
            self._write(dest)
        else:
            with open(dest, "w", encoding="utf-8") as fh:
                self._write(fh)

    def _write(self, fh: IO[str]) -> None:
        fh.write(",".join(REPORT_COLUMNS) + "\n")
        for r in self.rows:
            t_apriori = "" if r.t_apriori_s is None else f"{r.t_apriori_s:.6g}"
            fh.write(f"{r.family_size},{r.t_selective_s:.6g},{t_apriori},{r.nodes:g},{r.rules:g}\n")


def sample_pool(pool: FrequentItemsets | Sequence[Itemset], size: int, seed: int) -> list[Itemset]:
    """Uniform sample of ``size`` distinct itemsets, reproducible from ``seed``."""
    items = pool.itemsets if isinstance(pool, FrequentItemsets) else list(pool)
    if size < 0:
        raise ValueError("sample size must be non-negative")
    if size > len(items):
        raise InsufficientPoolError(f"cannot sample {size} itemsets from a pool of {len(items)}")
    return random.Random(seed).sample(items, size)


def synth_db(
    n_items: int,
    n_transactions: int,
    mean_size: float,
    seed: int,
    zipf_exponent: float = 1.0,
) -> TransactionDatabase:
    """Random basket data with skewed item popularity.

    Transaction sizes follow a geometric distribution on {0, 1, ...} with
    the requested mean, clamped to ``n_items``.  Items are then drawn without
    replacement with weights ``1 / rank**zipf_exponent`` (weighted sampling
    via exponential keys, which is exact for sampling without replacement).
    """
    if mean_size <= 0:
        raise ValueError("mean_size must be positive")
    if mean_size >= n_items:
        raise ValueError("mean_size must be smaller than n_items")
    if n_transactions < 0:
        raise ValueError("n_transactions must be non-negative")
    rng = np.random.default_rng(seed)
    sizes = np.minimum(rng.geometric(1.0 / (mean_size + 1.0), n_transactions) - 1, n_items)
    weights = 1.0 / np.arange(1, n_items + 1, dtype=float) ** zipf_exponent
    labels = [f"item{i:04d}" for i in range(n_items)]
    rows: list[list[str]] = []
    chunk = 4096
    for lo in range(0, n_transactions, chunk):
        part = sizes[lo : lo + chunk]
        kmax = int(part.max(initial=0))
        keys = np.log(rng.random((len(part), n_items))) / weights
        if kmax == 0:
            rows.extend([] for _ in part)
            continue
        if kmax < n_items:
            top = np.argpartition(-keys, kmax - 1, axis=1)[:, :kmax]
        else:
            top = np.tile(np.arange(n_items), (len(part), 1))
        top_keys = np.take_along_axis(keys, top, axis=1)
        order = np.take_along_axis(top, np.argsort(-top_keys, axis=1), axis=1)
        for row, k in zip(order, part):
            rows.append([labels[i] for i in row[:k]])
    meta = {
        "generator": "synth_db",
        "n_items": n_items,
        "n_transactions": n_transactions,
        "mean_size": mean_size,
        "seed": seed,
        "zipf_exponent": zipf_exponent,
    }
    return TransactionDatabase.from_label_sets(rows, meta)


def selective_rules(db: TransactionDatabase, family: Sequence[Itemset], minconf: FractionLike) -> tuple[RuleSet, int]:
    """The timed selective path; returns the rules and the tree's node count."""
    tree = build_tree(family, len(db.dictionary))
    count_database(tree, db)
    return generate_rules(family, tree, minconf, db.dictionary), tree.node_count


def baseline_rules(db: TransactionDatabase, family: Sequence[Itemset], pool: FrequentItemsets, minconf: FractionLike) -> RuleSet:
    """Restricted Apriori plus full rule generation, without filtering to ``family``."""
    lowest = min(pool.count(z) for z in family)
    minsup = Fraction(lowest, db.m)
    max_len = max(len(z) for z in family)
    items = sorted({i for z in family for i in z})
    f = apriori(db, minsup, max_len=max_len, item_filter=items)
    return rules_from_frequent(f, minconf)


def run_benchmark(db: TransactionDatabase, cfg: BenchConfig, pool: FrequentItemsets | None = None) -> BenchReport:
    if pool is None:
        pool = apriori(db, cfg.pool_minsup)
    log.info("itemset pool: %d itemsets at minsup %s", len(pool), cfg.pool_minsup)
    rng = random.Random(cfg.seed)
    report = BenchReport([])
    clock = time.perf_counter

    warmed = not cfg.warmup
    for size in cfg.family_sizes:
        t_sel, t_apr, nodes, n_rules = [], [], [], []
        report.families[size] = []
        report.rule_keys[size] = []
        for _ in range(cfg.repetitions):
            family = sample_pool(pool, size, rng.randrange(2**32))
            report.families[size].append(family)
            if not warmed:
                selective_rules(db, family, cfg.minconf)
                warmed = True

            start = clock()
            rules, node_count = selective_rules(db, family, cfg.minconf)
            t_sel.append(clock() - start)
            nodes.append(node_count)
            n_rules.append(len(rules))
            report.rule_keys[size].append(frozenset(rules.keys()))

            if not cfg.baseline:
                continue
            start = clock()
            try:
                base = baseline_rules(db, family, pool, cfg.minconf)
            except ResourceExhaustedError as exc:
                report.notes.append(f"size {size}: baseline aborted: {exc}")
                t_apr.append(math.nan)
                continue
            t_apr.append(clock() - start)
            if cfg.verify:
                wanted = set(family)
                filtered = {r.key() for r in base if r.itemset in wanted}
                if filtered != rules.keys():
                    report.mismatches += 1
                    report.notes.append(f"size {size}: baseline and selective rules differ")
        finite = [t for t in t_apr if not math.isnan(t)]
        t_apriori = None if not cfg.baseline else (fmean(finite) if finite else math.nan)
        report.rows.append(BenchRow(size, fmean(t_sel), t_apriori, fmean(nodes), fmean(n_rules)))
    return report
