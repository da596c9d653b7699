"""Selective association rule generation for user-chosen itemset families.

Supports of the needed itemsets are counted in a single database pass over a
prefix tree built just for those itemsets; rules with a single-item RHS are
then generated from the counts.  A level-wise Apriori miner, a closed-itemset
filter, inclusive rule templates and a benchmark harness complete the
toolkit.
"""

__version__ = "0.1.0"

from .corpus import (
    ItemDictionary,
    TransactionDatabase,
    item_frequencies,
    load_basket,
    read_itemsets,
    recode_nominal_table,
    support,
    write_basket,
)
from .errors import SelrulesError
from .miner import FrequentItemsets, apriori, closed_filter, rules_from_frequent, write_itemsets
from .rulegen import Rule, RuleSet, generate_rules, measures, write_rules
from .seltree import CountingTree, build_tree, count_database, count_transaction, query_count, required_subsets
from .templates import RuleTemplate, filter_rules, parse_template

__all__ = [
    "CountingTree",
    "FrequentItemsets",
    "ItemDictionary",
    "Rule",
    "RuleSet",
    "RuleTemplate",
    "SelrulesError",
    "TransactionDatabase",
    "apriori",
    "build_tree",
    "closed_filter",
    "count_database",
    "count_transaction",
    "filter_rules",
    "generate_rules",
    "item_frequencies",
    "load_basket",
    "measures",
    "parse_template",
    "query_count",
    "read_itemsets",
    "recode_nominal_table",
    "required_subsets",
    "rules_from_frequent",
    "support",
    "write_basket",
    "write_itemsets",
    "write_rules",
]
