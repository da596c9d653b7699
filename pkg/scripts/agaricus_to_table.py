"""Rebuild the Mushroom table (tests/data/mushroom.csv.gz) from xgboost's agaricus data.

The agaricus train and test sets together hold all 8124 rows as one-hot
sparse matrices with columns named ``attribute=value``.  This script decodes
them back to one nominal row per example: ``class`` first (label 1 is
poisonous), then the 22 attributes in feature-map order, with the
``stalk-root=missing`` indicator written as ``?``.

Usage: python scripts/agaricus_to_table.py agaricus.train.rda agaricus.test.rda out.csv.gz

The .rda files ship with the xgboost R package (R-package/data/).  Needs the
``rdata`` package, which is not a runtime dependency of selrules.
"""

import csv
import gzip
import sys

import rdata


def decode(path):
    name = path.rsplit("/", 1)[-1].removesuffix(".rda")
    obj = rdata.conversion.convert(rdata.parser.parse_file(path))[name]
    mat = obj["data"]  # dgCMatrix: column-compressed (i, p), Dimnames
    names = list(mat.Dimnames[1])
    n, k = mat.Dim
    rows = [{"class": "poisonous" if label == 1 else "edible"} for label in obj["label"]]
    for j in range(k):
        attribute, value = names[j].split("=", 1)
        for r in mat.i[mat.p[j] : mat.p[j + 1]]:
            rows[r][attribute] = value
    assert len(rows) == n and all(len(r) == 23 for r in rows), "every example has 22 attributes plus class"
    attributes = list(dict.fromkeys(nm.split("=", 1)[0] for nm in names))
    return ["class"] + attributes, rows


def main(train, test, out):
    columns, rows = decode(train)
    columns_test, rows_test = decode(test)
    assert columns == columns_test
    with gzip.open(out, "wt", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows + rows_test:
            writer.writerow(["?" if row[c] == "missing" else row[c] for c in columns])
    print(f"{len(rows) + len(rows_test)} rows, {len(columns)} columns -> {out}")


if __name__ == "__main__":
    if len(sys.argv) != 4:
        sys.exit(__doc__)
    main(*sys.argv[1:])
