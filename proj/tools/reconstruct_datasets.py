#!/usr/bin/env python3
"""Rebuild LIBSVM-format stand-ins for two of the benchmark datasets.

The LIBSVM binary-classification copies of `liver-disorders` and `splice`
are derived from UCI datasets that are also redistributed (as KEEL `.dat`
files) inside the `keel-ds` wheel on PyPI. This script regenerates the
LIBSVM files from that source so the test suite has realistic data when the
public LIBSVM mirror is unreachable.

liver-disorders (BUPA): features are columns 1-5, the label is
`drinks >= 3`, and column 7 (the original selector) splits train (1, 145
rows) from test (2, 200 rows). This follows the LIBSVM preprocessing.

splice (primate splice-junction): rows with ambiguous nucleotides are
dropped (3175 remain, matching 1000 + 2175), nucleotides are coded
A=1 C=2 G=3 T=4, EI/IE boundaries are +1 and N is -1. The original
train/test partition is not recoverable, so a seeded permutation is used.
This file is NOT the LIBSVM `splice` copy; accuracies on it are not
comparable to published numbers.

Usage: pip download --no-deps keel-ds && python3 reconstruct_datasets.py \
           --wheel keel_ds-*.whl --out data/reconstructed
"""

import argparse
import pathlib
import random
import zipfile

SPLICE_CODE = {"A": 1, "C": 2, "G": 3, "T": 4}
SPLICE_SEED = 20200115


def libsvm_line(label, features):
    parts = [label]
    for idx, val in enumerate(features, start=1):
        if val != 0:
            parts.append(f"{idx}:{val:g}")
    return " ".join(parts)


def build_liver(raw, out):
    train, test = [], []
    for line in raw.splitlines():
        if not line.strip():
            continue
        cols = [float(c) for c in line.split(",")]
        label = "1" if cols[5] >= 3 else "0"
        row = libsvm_line(label, cols[:5])
        (train if cols[6] == 1 else test).append(row)
    assert (len(train), len(test)) == (145, 200), (len(train), len(test))
    (out / "liver-disorders").write_text("\n".join(train) + "\n")
    (out / "liver-disorders.t").write_text("\n".join(test) + "\n")


def build_splice(raw, out):
    rows = []
    for line in raw.splitlines():
        cols = [c.strip() for c in line.split(",")]
        if len(cols) != 61 or any(c not in SPLICE_CODE for c in cols[:60]):
            continue
        label = "-1" if cols[60] == "N" else "+1"
        rows.append(libsvm_line(label, [SPLICE_CODE[c] for c in cols[:60]]))
    assert len(rows) == 3175, len(rows)
    random.Random(SPLICE_SEED).shuffle(rows)
    (out / "splice").write_text("\n".join(rows[:1000]) + "\n")
    (out / "splice.t").write_text("\n".join(rows[1000:]) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--wheel", required=True, type=pathlib.Path)
    ap.add_argument("--out", required=True, type=pathlib.Path)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    with zipfile.ZipFile(args.wheel) as z:
        base = "keel_ds/data/balanced/raw/"
        build_liver(z.read(base + "bupa.dat").decode(), args.out)
        build_splice(z.read(base + "splice.dat").decode(), args.out)


if __name__ == "__main__":
    main()
