"""Brute-force reference implementations used by the tests.

Everything here goes through ``corpus.support`` scans or plain
enumeration, never through the tree or the miner.
"""

import random
from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from selrules.corpus import TransactionDatabase, support


def brute_rules(db, family, minconf):
    """Rule keys (lhs, rhs, count_full, count_lhs) by direct support scans."""
    minconf = Fraction(minconf)
    keys = set()
    for z in set(map(tuple, family)):
        if len(z) < 2:
            continue
        full, _ = support(db, z)
        for j, y in enumerate(z):
            lhs = z[:j] + z[j + 1 :]
            count_lhs, _ = support(db, lhs)
            if count_lhs and Fraction(full, count_lhs) >= minconf:
                keys.add((lhs, y, full, count_lhs))
    return keys


def all_itemsets(n_items, max_len=None):
    top = n_items if max_len is None else min(max_len, n_items)
    for k in range(1, top + 1):
        yield from combinations(range(n_items), k)


def brute_frequent(db, minsup, max_len=None):
    minsup = Fraction(minsup)
    out = {}
    for z in all_itemsets(len(db.dictionary), max_len):
        c, m = support(db, z)
        if Fraction(c, m) >= minsup:
            out[z] = c
    return out


def brute_closed(counts):
    """Itemsets of ``counts`` with no proper superset (any size) of equal count."""
    return {
        z: c
        for z, c in counts.items()
        if not any(len(y) > len(z) and set(z) < set(y) and cy == c for y, cy in counts.items())
    }


def random_db(rng: random.Random, max_items=12, max_transactions=200):
    n_items = rng.randint(1, max_items)
    labels = [f"i{k:02d}" for k in range(n_items)]
    density = rng.uniform(0.1, 0.7)
    rows = [[x for x in labels if rng.random() < density] for _ in range(rng.randint(1, max_transactions))]
    rows[0].append(labels[0])  # never an empty dictionary
    return TransactionDatabase.from_label_sets(rows)


def random_family(rng: random.Random, n_items, max_size=30, max_len=6):
    family = []
    for _ in range(rng.randint(1, max_size)):
        k = rng.randint(1, min(max_len, n_items))
        family.append(tuple(sorted(rng.sample(range(n_items), k))))
    return family


@st.composite
def databases(draw, max_items=12, max_transactions=200, min_transactions=1):
    n_items = draw(st.integers(1, max_items))
    labels = [f"i{k:02d}" for k in range(n_items)]
    rows = draw(
        st.lists(st.sets(st.sampled_from(labels)), min_size=min_transactions, max_size=max_transactions)
    )
    return TransactionDatabase.from_label_sets(rows)


@st.composite
def db_and_family(draw, max_items=12, max_transactions=200, max_family=30, max_len=6):
    db = draw(databases(max_items, max_transactions).filter(lambda d: len(d.dictionary) > 0))
    n = len(db.dictionary)
    itemset = st.sets(st.integers(0, n - 1), min_size=1, max_size=min(max_len, n)).map(lambda s: tuple(sorted(s)))
    family = draw(st.lists(itemset, min_size=1, max_size=max_family))
    return db, family
