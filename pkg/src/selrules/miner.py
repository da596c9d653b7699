"""Level-wise frequent itemset mining, closed-itemset filtering and full rule generation.

This is the conventional route the selective generator is compared with.
Support counting works on vertical tidsets (one Python int bitmask per
itemset) so that a candidate's count is the popcount of its two parents'
intersection.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable, Iterator

import numpy as np

from .corpus import ItemDictionary, Itemset, TransactionDatabase, open_text
from .errors import InconsistentInputError, ResourceExhaustedError
from .rulegen import Rule, RuleSet, sort_rules
from .thresholds import FractionLike, meets, min_count, unit_fraction

DEFAULT_CANDIDATE_CAP = 10**7


@dataclass
class FrequentItemsets:
    counts: dict[Itemset, int]
    minsup: Fraction
    m: int
    max_len: int | None = None
    dictionary: ItemDictionary | None = None

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self) -> Iterator[tuple[Itemset, int]]:
        return iter(self.counts.items())

    def __contains__(self, itemset: object) -> bool:
        return itemset in self.counts

    def count(self, itemset: Itemset) -> int:
        return self.counts[itemset]

    @property
    def itemsets(self) -> list[Itemset]:
        return list(self.counts)


def _tidsets(db: TransactionDatabase, items: Iterable[int]) -> dict[int, int]:
    wanted = set(items)
    tids: dict[int, list[int]] = {i: [] for i in wanted}
    for tid, t in enumerate(db.transactions):
        for i in t:
            if i in wanted:
                tids[i].append(tid)
    out = {}
    for i, rows in tids.items():
        mask = np.zeros(db.m, dtype=bool)
        mask[rows] = True
        out[i] = int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")
    return out


def apriori(
    db: TransactionDatabase,
    minsup: FractionLike,
    max_len: int | None = None,
    item_filter: Iterable[int] | None = None,
    candidate_cap: int = DEFAULT_CANDIDATE_CAP,
) -> FrequentItemsets:
    """Mine all itemsets with ``count / m >= minsup``.

    ``max_len`` caps itemset length, ``item_filter`` restricts mining to the
    given items (as if all other items were removed from the database).
    Raises :class:`ResourceExhaustedError` when a level would produce more
    than ``candidate_cap`` candidates.
    """
    minsup = unit_fraction(minsup, "minsup", allow_zero=False)
    if max_len is not None and max_len < 1:
        raise ValueError("max_len must be at least 1")
    result = FrequentItemsets({}, minsup, db.m, max_len, db.dictionary)
    if db.m == 0:
        return result
    threshold = min_count(minsup, db.m)

    items = range(len(db.dictionary)) if item_filter is None else sorted(set(item_filter))
    tidsets = _tidsets(db, items)
    level: dict[Itemset, int] = {}
    for i in sorted(tidsets):
        tids = tidsets[i]
        c = tids.bit_count()
        if c >= threshold:
            result.counts[(i,)] = c
            level[(i,)] = tids
    del tidsets

    k = 2
    while level and (max_len is None or k <= max_len):
        prev = sorted(level)
        nxt: dict[Itemset, int] = {}
        n_candidates = 0
        start = 0
        while start < len(prev):
            # itemsets sharing the first k-2 items are contiguous in sorted order
            prefix = prev[start][:-1]
            end = start + 1
            while end < len(prev) and prev[end][:-1] == prefix:
                end += 1
            for a in range(start, end):
                left = prev[a]
                left_tids = level[left]
                for b in range(a + 1, end):
                    right = prev[b]
                    cand = left + right[-1:]
                    if k > 2 and not all(cand[:j] + cand[j + 1 :] in level for j in range(k - 2)):
                        continue
                    n_candidates += 1
                    if n_candidates > candidate_cap:
                        raise ResourceExhaustedError(
                            f"more than {candidate_cap} candidates of length {k}; raise minsup or lower max_len"
                        )
                    tids = left_tids & level[right]
                    c = tids.bit_count()
                    if c >= threshold:
                        nxt[cand] = tids
                        result.counts[cand] = c
            start = end
        level = nxt
        k += 1
    return result


def closed_filter(f: FrequentItemsets) -> FrequentItemsets:
    """Keep itemsets without a proper superset of equal count in ``f``.

    Only one-item extensions need checking: if some superset has the same
    count, so does every intermediate set, and all of those are in ``f``.
    """
    not_closed: set[Itemset] = set()
    counts = f.counts
    for z, c in counts.items():
        if len(z) < 2:
            continue
        for j in range(len(z)):
            sub = z[:j] + z[j + 1 :]
            if counts.get(sub) == c:
                not_closed.add(sub)
    kept = {z: c for z, c in counts.items() if z not in not_closed}
    return FrequentItemsets(kept, f.minsup, f.m, f.max_len, f.dictionary)


def rules_from_frequent(f: FrequentItemsets, minconf: FractionLike) -> RuleSet:
    """All single-consequent rules from every itemset in ``f``."""
    minconf = unit_fraction(minconf, "minconf")
    counts = f.counts
    rules = []
    for z, c in counts.items():
        if len(z) < 2:
            continue
        for j, y in enumerate(z):
            lhs = z[:j] + z[j + 1 :]
            try:
                count_lhs = counts[lhs]
                count_rhs = counts[(y,)]
            except KeyError as exc:
                raise InconsistentInputError(f"subset {exc.args[0]} of {z} is missing from the itemsets") from None
            if meets(c, count_lhs, minconf):
                rules.append(Rule(lhs, y, c, count_lhs, count_rhs, f.m))
    return RuleSet(sort_rules(rules, f.dictionary), minconf, f.m, f.dictionary)


def write_itemsets(f: FrequentItemsets, dest: str | os.PathLike | IO[str] | None = None) -> None:
    """One line per itemset: ``{l1,l2,...} count support``."""
    if dest is None:
        _write_itemsets(f, sys.stdout)
    elif hasattr(dest, "write"):
        _write_itemsets(f, dest)
    else:
        with open_text(dest, "w") as fh:
            _write_itemsets(f, fh)


def _write_itemsets(f: FrequentItemsets, fh: IO[str]) -> None:
    fmt = f.dictionary.format_itemset if f.dictionary else (lambda z: "{" + ",".join(map(str, z)) + "}")
    for z, c in f:
        fh.write(f"{fmt(z)} {c} {format(c / f.m, '.6g')}\n")
