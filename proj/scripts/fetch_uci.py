#!/usr/bin/env python3
"""Write the four UCI benchmark datasets as CSV files with a trailing `label` column.

    python3 scripts/fetch_uci.py [--out data/uci]

Each dataset is fetched from the UCI repository. When that host is unreachable
the script falls back to copies shipped with Python packages:

    wine, iris       scikit-learn (bundled)
    breast_cancer    the MASS `biopsy` table inside the pydataset 0.2.0 sdist
    ecoli            the `ecoli1` table inside imbalanced-databases 0.1.1

The E-Coli fallback only carries a binary class, so the eight localization
classes are restored from row order, which matches the UCI file. Row counts
and class sizes are checked before anything is written, and a SHA-256 of every
output is printed.
"""

import argparse
import csv
import hashlib
import io
import subprocess
import sys
import tarfile
import tempfile
import urllib.request
import zipfile
from pathlib import Path

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases/"

EXPECTED = {
    "wine": (178, 13, {"1": 59, "2": 71, "3": 48}),
    "breast_cancer": (683, 9, {"benign": 444, "malignant": 239}),
    "iris": (150, 4, {"setosa": 50, "versicolor": 50, "virginica": 50}),
    "ecoli": (336, 7, {"cp": 143, "im": 77, "imS": 2, "imL": 2, "imU": 35, "om": 20, "omL": 5, "pp": 52}),
}

ECOLI_ORDER = ["cp", "im", "imS", "imL", "imU", "om", "omL", "pp"]


def fetch(url, timeout=20):
    with urllib.request.urlopen(url, timeout=timeout) as r:
        return r.read().decode()


def pip_download(spec, dest):
    subprocess.run([sys.executable, "-m", "pip", "download", "--no-deps", "-q", "-d", dest, spec], check=True)
    return next(Path(dest).iterdir())


def wine():
    try:
        rows = [line.split(",") for line in fetch(UCI + "wine/wine.data").split()]
        return [r[1:] for r in rows], [r[0] for r in rows]
    except OSError:
        from sklearn.datasets import load_wine
        d = load_wine()
        return [[repr(float(v)) for v in x] for x in d.data], [str(int(t) + 1) for t in d.target]


def iris():
    try:
        rows = [line.split(",") for line in fetch(UCI + "iris/iris.data").split()]
        return [r[:4] for r in rows], [r[4].replace("Iris-", "") for r in rows]
    except OSError:
        from sklearn.datasets import load_iris
        d = load_iris()
        return [[repr(float(v)) for v in x] for x in d.data], [d.target_names[t] for t in d.target]


def breast_cancer():
    try:
        text = fetch(UCI + "breast-cancer-wisconsin/breast-cancer-wisconsin.data")
        rows = [line.split(",") for line in text.split() if "?" not in line]
        return [r[1:10] for r in rows], ["benign" if r[10] == "2" else "malignant" for r in rows]
    except OSError:
        pass
    with tempfile.TemporaryDirectory() as tmp:
        sdist = pip_download("pydataset==0.2.0", tmp)
        with tarfile.open(sdist) as outer:
            inner = outer.extractfile("pydataset-0.2.0/pydataset/resources.tar.gz").read()
        with tarfile.open(fileobj=io.BytesIO(inner)) as res:
            text = res.extractfile("resources/rdata/csv/MASS/biopsy.csv").read().decode()
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    cols = [header.index(f"V{i}") for i in range(1, 10)]
    klass = header.index("class")
    feats, labels = [], []
    for r in reader:
        x = [r[c] for c in cols]
        if "NA" in x:
            continue
        feats.append(x)
        labels.append(r[klass])
    return feats, labels


def ecoli():
    try:
        rows = [line.split() for line in fetch(UCI + "ecoli/ecoli.data").splitlines() if line.strip()]
        return [r[1:8] for r in rows], [r[8] for r in rows]
    except OSError:
        pass
    with tempfile.TemporaryDirectory() as tmp:
        wheel = pip_download("imbalanced-databases==0.1.1", tmp)
        with zipfile.ZipFile(wheel) as z:
            text = z.read("imbalanced_databases/data/ecoli1/ecoli1.dat").decode()
    body = text.split("@data", 1)[1]
    rows = [[c.strip() for c in line.split(",")] for line in body.splitlines() if line.strip()]
    counts = EXPECTED["ecoli"][2]
    labels = [name for name in ECOLI_ORDER for _ in range(counts[name])]
    # positives of ecoli1 are the `im` class
    if [i for i, r in enumerate(rows) if r[7] == "positive"] != [i for i, l in enumerate(labels) if l == "im"]:
        raise SystemExit("ecoli1 row order does not match the UCI class layout")
    return [r[:7] for r in rows], labels


def check(name, feats, labels):
    n, d, classes = EXPECTED[name]
    got = {c: labels.count(c) for c in set(labels)}
    if len(feats) != n or any(len(x) != d for x in feats) or got != classes:
        raise SystemExit(f"{name}: unexpected shape {len(feats)}x{len(feats[0]) if feats else 0}, classes {got}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "uci"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, loader in [("wine", wine), ("breast_cancer", breast_cancer), ("iris", iris), ("ecoli", ecoli)]:
        feats, labels = loader()
        check(name, feats, labels)
        path = out / f"{name}.csv"
        with open(path, "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow([f"x{i + 1}" for i in range(len(feats[0]))] + ["label"])
            for x, l in zip(feats, labels):
                w.writerow([v.strip() for v in x] + [l])
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        print(f"{path}  {len(feats)} rows  sha256 {digest}")


if __name__ == "__main__":
    main()
