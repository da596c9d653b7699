"""Independent reference counts for the Mushroom pipeline.

Depth-first (Eclat-style) enumeration over Python-int tidsets straight from
the nominal table, sharing no code with selrules.  Prints the six pipeline
counts: frequent itemsets, rules, template-filtered rules, closed itemsets,
rules from closed itemsets, template-filtered closed rules.

Usage: python scripts/mushroom_oracle.py tests/data/mushroom.csv.gz [--keep-missing]
"""

import csv
import gzip
import sys

MINSUP_NUM, MINSUP_DEN = 1, 5  # 0.2
MINCONF_NUM, MINCONF_DEN = 9, 10  # 0.9


def tidsets(path, keep_missing):
    with gzip.open(path, "rt", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        bits = {}
        m = 0
        for tid, row in enumerate(reader):
            m += 1
            for column, value in zip(header, row):
                if value == "?" and not keep_missing:
                    continue
                label = f"{column}={value}"
                bits[label] = bits.get(label, 0) | (1 << tid)
    return bits, m


def mine(bits, min_count):
    freq = {}

    def extend(prefix, candidates):
        for idx, (item, tids) in enumerate(candidates):
            itemset = prefix | {item}
            freq[itemset] = tids.bit_count()
            nxt = [(j, tids & other) for j, other in candidates[idx + 1 :]]
            nxt = [(j, t) for j, t in nxt if t.bit_count() >= min_count]
            if nxt:
                extend(itemset, nxt)

    extend(frozenset(), sorted((i, t) for i, t in bits.items() if t.bit_count() >= min_count))
    return freq


def rules(freq, itemsets):
    total = to_class = 0
    for z in itemsets:
        if len(z) < 2:
            continue
        for y in z:
            if freq[z] * MINCONF_DEN >= MINCONF_NUM * freq[z - {y}]:
                total += 1
                to_class += y.startswith("class=")
    return total, to_class


def main(path, keep_missing=False):
    bits, m = tidsets(path, keep_missing)
    min_count = -((-MINSUP_NUM * m) // MINSUP_DEN)
    freq = mine(bits, min_count)
    closed = [z for z, c in freq.items() if not any(freq.get(z | {i}) == c for i in bits if i not in z)]
    n_rules, n_class = rules(freq, freq)
    c_rules, c_class = rules(freq, closed)
    print(f"items={len(bits)} m={m} min_count={min_count}")
    print(len(freq), n_rules, n_class, len(closed), c_rules, c_class)


if __name__ == "__main__":
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    main(sys.argv[1], "--keep-missing" in sys.argv[2:])
