"""Selective generation of single-consequent rules from counted itemsets."""

from __future__ import annotations

import csv
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Iterator, NamedTuple, Sequence

from .corpus import ItemDictionary, Itemset, open_text, parse_itemset_labels
from .errors import MalformedInputError
from .seltree import CountingTree, query_count
from .thresholds import FractionLike, meets, unit_fraction

RULE_COLUMNS = ("lhs", "rhs", "support", "confidence", "lift", "count")


@dataclass(frozen=True, slots=True)
class Rule:
    lhs: Itemset
    rhs: int
    count_full: int
    count_lhs: int
    count_rhs: int | None
    m: int

    @property
    def itemset(self) -> Itemset:
        return tuple(sorted(self.lhs + (self.rhs,)))

    @property
    def support(self) -> float:
        return self.count_full / self.m

    @property
    def confidence(self) -> float:
        return self.count_full / self.count_lhs

    @property
    def lift(self) -> float | None:
        if not self.count_rhs:
            return None
        return (self.count_full * self.m) / (self.count_lhs * self.count_rhs)

    def key(self) -> tuple[Itemset, int, int, int]:
        """Identity plus exact counts, for comparing rule sets."""
        return (self.lhs, self.rhs, self.count_full, self.count_lhs)


def measures(rule: Rule) -> tuple[Fraction, Fraction, Fraction | None]:
    """Exact (support, confidence, lift); lift is None if the RHS count is unknown."""
    support = Fraction(rule.count_full, rule.m)
    confidence = Fraction(rule.count_full, rule.count_lhs)
    lift = None
    if rule.count_rhs:
        lift = Fraction(rule.count_full * rule.m, rule.count_lhs * rule.count_rhs)
    return support, confidence, lift


@dataclass
class RuleSet:
    rules: list[Rule]
    minconf: Fraction
    m: int
    dictionary: ItemDictionary | None = None
    notes: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __getitem__(self, i):
        return self.rules[i]

    def keys(self) -> set[tuple]:
        return {r.key() for r in self.rules}

    def labels(self, rule: Rule) -> tuple[tuple[str, ...], str]:
        if self.dictionary is None:
            return tuple(map(str, rule.lhs)), str(rule.rhs)
        return self.dictionary.decode(rule.lhs), self.dictionary.label_of(rule.rhs)


def sort_rules(rules: list[Rule], dictionary: ItemDictionary | None = None) -> list[Rule]:
    """Order by descending confidence, descending count, then LHS and RHS labels.

    Confidence is compared as a float: two distinct ratios of counts below
    2**26 never collide in double precision.
    """
    if dictionary is None:
        return sorted(rules, key=lambda r: (-r.count_full / r.count_lhs, -r.count_full, r.lhs, r.rhs))
    labels = dictionary.labels

    def key(r: Rule):
        return (
            -r.count_full / r.count_lhs,
            -r.count_full,
            tuple(labels[i] for i in r.lhs),
            labels[r.rhs],
        )

    return sorted(rules, key=key)


def generate_rules(
    family: Iterable[Sequence[int]],
    tree: CountingTree,
    minconf: FractionLike,
    dictionary: ItemDictionary | None = None,
) -> RuleSet:
    """Rules ``Z - {y} => {y}`` for each target Z that reach ``minconf``.

    Exactly ``len(Z)`` candidates are checked per itemset.  Itemsets with a
    single item yield no rule and leave a note instead, as does a candidate
    whose antecedent never occurs.
    """
    minconf = unit_fraction(minconf, "minconf")
    m = tree.m
    tree._check_frozen()
    rules: list[Rule] = []
    notes: list[str] = []
    singles = 0
    seen: set[Itemset] = set()
    for z in family:
        z = tuple(z)
        if z in seen:
            continue
        seen.add(z)
        if len(z) < 2:
            singles += 1
            continue
        count_full = query_count(tree, z)
        for i, y in enumerate(z):
            lhs = z[:i] + z[i + 1 :]
            count_lhs = query_count(tree, lhs)
            if count_lhs == 0:
                msg = f"skipped {_fmt(lhs, dictionary)} => {_fmt((y,), dictionary)}: antecedent never occurs"
                notes.append(msg)
                continue
            if meets(count_full, count_lhs, minconf):
                rules.append(Rule(lhs, y, count_full, count_lhs, tree.get((y,)), m))
    if singles:
        notes.insert(0, f"{singles} single-item itemset(s) skipped: a rule needs a non-empty LHS")
    return RuleSet(sort_rules(rules, dictionary), minconf, m, dictionary, notes)


def _fmt(itemset: Itemset, dictionary: ItemDictionary | None) -> str:
    if dictionary is None:
        return "{" + ",".join(map(str, itemset)) + "}"
    return dictionary.format_itemset(itemset)


def _num(x: float | None) -> str:
    return "" if x is None else format(x, ".6g")


def write_rules(rules: RuleSet, dest: str | os.PathLike | IO[str] | None = None) -> None:
    """Write rules as CSV with columns lhs, rhs, support, confidence, lift, count."""
    if dest is None:
        _write_rules(rules, sys.stdout)
    elif hasattr(dest, "write"):
        _write_rules(rules, dest)
    else:
        with open_text(dest, "w") as fh:
            _write_rules(rules, fh)


def _write_rules(rules: RuleSet, fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(RULE_COLUMNS)
    for r in rules:
        lhs, rhs = rules.labels(r)
        writer.writerow(
            ["{" + ",".join(lhs) + "}", "{" + rhs + "}", _num(r.support), _num(r.confidence), _num(r.lift), r.count_full]
        )


class RuleRow(NamedTuple):
    """A rule read back from a rule file; ``fields`` is the raw CSV row."""

    lhs: tuple[str, ...]
    rhs: str
    fields: tuple[str, ...]


def read_rule_rows(path: str | os.PathLike) -> list[RuleRow]:
    with open_text(path) as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != RULE_COLUMNS:
            raise MalformedInputError(f"{path}: expected header {','.join(RULE_COLUMNS)}")
        rows = []
        for row in reader:
            if not row:
                continue
            if len(row) != len(RULE_COLUMNS):
                raise MalformedInputError(f"{path}:{reader.line_num}: expected {len(RULE_COLUMNS)} columns")
            lhs = tuple(parse_itemset_labels(row[0]))
            rhs = parse_itemset_labels(row[1])
            if len(rhs) != 1:
                raise MalformedInputError(f"{path}:{reader.line_num}: RHS must hold exactly one item")
            rows.append(RuleRow(lhs, rhs[0], tuple(row)))
    return rows


def write_rule_rows(rows: Iterable[RuleRow], dest: IO[str]) -> None:
    writer = csv.writer(dest, lineterminator="\n")
    writer.writerow(RULE_COLUMNS)
    for row in rows:
        writer.writerow(row.fields)
