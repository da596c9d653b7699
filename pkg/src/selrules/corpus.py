"""Transaction databases, the item dictionary and their file formats.

Items are identified by dense integer ids.  Ids are handed out in order of
descending occurrence count (ties broken by label), so id order doubles as
the global item order used by the counting tree: frequent items come first.

An itemset is a strictly increasing tuple of item ids.  The empty tuple is
the empty itemset.
"""

from __future__ import annotations

import csv
import gzip
import io
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import DictionaryMismatchError, EmptyDatabaseError, MalformedInputError

Itemset = tuple[int, ...]
Transaction = tuple[int, ...]

DEFAULT_MAX_ITEMS = 2**16
BASKET_SEPARATOR = " "
TABLE_DELIMITER = ","


def open_text(path: str | os.PathLike, mode: str = "r") -> io.TextIOBase:
    """Open a UTF-8 text file, transparently handling ``.gz``."""
    if str(path).endswith(".gz"):
        return gzip.open(path, mode + "t", encoding="utf-8", newline="")
    return open(path, mode, encoding="utf-8", newline="")


def make_itemset(ids: Iterable[int]) -> Itemset:
    """Sorted, duplicate-free itemset from any iterable of ids."""
    return tuple(sorted(set(ids)))


@dataclass(frozen=True)
class ItemDictionary:
    labels: tuple[str, ...]
    order_basis: tuple[int, ...]
    rank: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.labels) != len(self.order_basis):
            raise ValueError("labels and order_basis differ in length")
        rank = {label: i for i, label in enumerate(self.labels)}
        if len(rank) != len(self.labels):
            raise ValueError("duplicate item labels")
        object.__setattr__(self, "rank", rank)

    @classmethod
    def from_counts(cls, counts: Mapping[str, int]) -> "ItemDictionary":
        ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        return cls(tuple(k for k, _ in ordered), tuple(v for _, v in ordered))

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self.rank

    def id_of(self, label: str) -> int:
        try:
            return self.rank[label]
        except KeyError:
            raise DictionaryMismatchError(f"unknown item label {label!r}") from None

    def label_of(self, item: int) -> str:
        return self.labels[item]

    def encode(self, labels: Iterable[str]) -> Itemset:
        return make_itemset(self.id_of(label) for label in labels)

    def decode(self, itemset: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in itemset)

    def format_itemset(self, itemset: Iterable[int]) -> str:
        return "{" + ",".join(self.decode(itemset)) + "}"


@dataclass(frozen=True)
class TransactionDatabase:
    dictionary: ItemDictionary
    transactions: tuple[Transaction, ...]
    metadata: Mapping[str, object] = field(default_factory=dict, compare=False)

    @property
    def m(self) -> int:
        return len(self.transactions)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Transactions as (indptr, indices) int64 arrays, built once and cached."""
        cached = self.__dict__.get("_csr")
        if cached is None:
            lengths = np.fromiter((len(t) for t in self.transactions), dtype=np.int64, count=self.m)
            indptr = np.zeros(self.m + 1, dtype=np.int64)
            np.cumsum(lengths, out=indptr[1:])
            indices = np.fromiter(
                (i for t in self.transactions for i in t), dtype=np.int64, count=int(indptr[-1])
            )
            cached = (indptr, indices)
            object.__setattr__(self, "_csr", cached)
        return cached

    def __len__(self) -> int:
        return len(self.transactions)

    def __iter__(self) -> Iterator[Transaction]:
        return iter(self.transactions)

    @classmethod
    def from_label_sets(
        cls, rows: Sequence[Iterable[str]], metadata: Mapping[str, object] | None = None
    ) -> "TransactionDatabase":
        """Build a database from label collections (duplicates collapse).

        The first pass counts occurrences to fix the item order, the second
        encodes every row as a sorted id tuple.
        """
        sets = [frozenset(row) for row in rows]
        counts: Counter[str] = Counter()
        for s in sets:
            counts.update(s)
        dictionary = ItemDictionary.from_counts(counts)
        rank = dictionary.rank
        transactions = tuple(tuple(sorted(rank[label] for label in s)) for s in sets)
        return cls(dictionary, transactions, dict(metadata or {}))


def load_basket(
    path: str | os.PathLike,
    separator: str = BASKET_SEPARATOR,
    max_items: int = DEFAULT_MAX_ITEMS,
) -> TransactionDatabase:
    """Read a basket file: one transaction per line, ``#`` lines ignored."""
    rows = []
    try:
        with open_text(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\r\n")
                if line.startswith("#"):
                    continue
                labels = [tok.strip() for tok in line.split(separator)]
                labels = [tok for tok in labels if tok]
                if len(labels) > max_items:
                    raise MalformedInputError(
                        f"{path}:{lineno}: {len(labels)} items exceed the limit of {max_items}"
                    )
                rows.append(labels)
    except UnicodeDecodeError as exc:
        raise MalformedInputError(f"{path}: not UTF-8 text") from exc
    return TransactionDatabase.from_label_sets(rows, {"source": str(path)})


def write_basket(db: TransactionDatabase, dest: str | os.PathLike | IO[str], separator: str = BASKET_SEPARATOR) -> None:
    """Write ``db`` as a basket file (or to an open text stream)."""
    if hasattr(dest, "write"):
        _write_basket(db, dest, separator)
    else:
        with open_text(dest, "w") as fh:
            _write_basket(db, fh, separator)


def _write_basket(db: TransactionDatabase, fh: IO[str], separator: str) -> None:
    labels = db.dictionary.labels
    for t in db.transactions:
        fh.write(separator.join(labels[i] for i in t))
        fh.write("\n")


def recode_nominal_table(
    path: str | os.PathLike,
    missing_token: str | None = "?",
    delimiter: str = TABLE_DELIMITER,
) -> TransactionDatabase:
    """Turn a nominal table into transactions of ``attribute=value`` items.

    Every row becomes one transaction.  A cell equal to ``missing_token``
    (or empty) contributes no item; pass ``missing_token=None`` to keep the
    token as an ordinary value.
    """
    rows = []
    with open_text(path) as fh:
        reader = csv.reader(fh, delimiter=delimiter)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise MalformedInputError(f"{path}: missing header row") from None
        for row in reader:
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(header):
                raise MalformedInputError(
                    f"{path}:{reader.line_num}: expected {len(header)} cells, got {len(row)}"
                )
            items = []
            for column, cell in zip(header, row):
                cell = cell.strip()
                if not cell or cell == missing_token:
                    continue
                items.append(f"{column}={cell}")
            rows.append(items)
    return TransactionDatabase.from_label_sets(
        rows, {"source": str(path), "attributes": tuple(header), "missing_token": missing_token}
    )


def item_frequencies(db: TransactionDatabase) -> list[tuple[int, int]]:
    counts = Counter()
    for t in db.transactions:
        counts.update(t)
    return [(item, counts[item]) for item in range(len(db.dictionary)) if counts[item]]


def support(db: TransactionDatabase, x: Iterable[int]) -> tuple[int, int]:
    """Naive support ``(count, m)`` of ``x`` by scanning every transaction.

    Deliberately simple: this is the reference the faster paths are checked
    against.
    """
    if db.m == 0:
        raise EmptyDatabaseError("support is undefined on an empty database")
    xs = set(x)
    count = sum(1 for t in db.transactions if xs.issubset(t))
    return count, db.m


def read_itemsets(
    path: str | os.PathLike, dictionary: ItemDictionary, separator: str = BASKET_SEPARATOR
) -> tuple[list[Itemset], list[str]]:
    """Read an itemset file and resolve labels against ``dictionary``.

    Accepts both ``{a,b,c} [count support]`` lines and plain
    separator-delimited label lists.  Returns the resolved itemsets and a
    list of warnings for lines with unknown labels (those lines are skipped).
    """
    itemsets: list[Itemset] = []
    warnings: list[str] = []
    with open_text(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            labels = parse_itemset_labels(line, separator)
            unknown = [label for label in labels if label not in dictionary]
            if unknown:
                warnings.append(f"{path}:{lineno}: unknown item(s) {', '.join(unknown)}; itemset skipped")
                continue
            if not labels:
                warnings.append(f"{path}:{lineno}: empty itemset skipped")
                continue
            itemsets.append(dictionary.encode(labels))
    return itemsets, warnings


def parse_itemset_labels(text: str, separator: str = BASKET_SEPARATOR) -> list[str]:
    text = text.strip()
    if text.startswith("{"):
        end = text.find("}")
        if end < 0:
            raise MalformedInputError(f"unterminated itemset: {text!r}")
        inner = text[1:end]
        return [tok.strip() for tok in inner.split(",") if tok.strip()]
    return [tok for tok in (t.strip() for t in text.split(separator)) if tok]
