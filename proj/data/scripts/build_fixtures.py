#!/usr/bin/env python3
# Copyright 2026 The anonylat Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Rebuilds the dataset fixtures under data/ from redistributable copies.

The raw tables are taken from Python packages that bundle them:

  adult      mglearn (mglearn/data/adult.data, the UCI census extract)
  cmc        keel-ds (KEEL "contraceptive", the UCI CMC table)
  mgm        keel-ds (KEEL "mammographic", UCI mammographic masses with
             incomplete records already removed)
  cahousing  pytorch-widedeep (1990 California census block groups)

Usage: build_fixtures.py [--cache DIR]   (downloads wheels with pip if needed)
"""

import argparse
import csv
import glob
import io
import json
import math
import os
import subprocess
import sys
import tarfile
import zipfile

HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.dirname(HERE)


def fetch(cache, spec, sdist=False):
    name = spec.split("==")[0].replace("-", "_")
    pattern = os.path.join(cache, name + "*" + (".tar.gz" if sdist else ".whl"))
    hits = glob.glob(pattern)
    if not hits:
        cmd = [sys.executable, "-m", "pip", "download", "--no-deps", "-d", cache, spec]
        if sdist:
            cmd[4:4] = ["--no-binary", ":all:"]
        subprocess.check_call(cmd)
        hits = glob.glob(pattern)
    return hits[0]


def num(x):
    x = float("%.10g" % x)
    if x == int(x):
        return str(int(x))
    return repr(x)


def interval_hierarchy(values, widths, origin):
    """Rows "leaf;[lo-hi);...;*" for every distinct value."""
    rows = []
    for v in sorted(set(values)):
        row = [num(v)]
        for w in widths:
            b = math.floor((v - origin) / w + 1e-9)
            lo = float("%.10g" % (origin + w * b))
            hi = float("%.10g" % (lo + w))
            row.append("[%s-%s)" % (num(lo), num(hi)))
        row.append("*")
        rows.append(row)
    return rows


def write_rows(path, rows, delimiter=";"):
    with open(path, "w", newline="") as f:
        for r in rows:
            f.write(delimiter.join(r) + "\n")


def write_dataset(name, header, rows, schema, hierarchies):
    root = os.path.join(DATA, name)
    os.makedirs(os.path.join(root, "hierarchies"), exist_ok=True)
    with open(os.path.join(root, name + ".csv"), "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    with open(os.path.join(root, "schema.json"), "w") as f:
        json.dump(schema, f, indent=2)
        f.write("\n")
    for attr, hrows in hierarchies.items():
        write_rows(os.path.join(root, "hierarchies", attr + ".csv"), hrows)
    print(name, len(rows), "rows")


def categorical(mapping):
    """mapping: leaf -> list of ancestor labels (without root)."""
    return [[leaf] + list(chain) + ["*"] for leaf, chain in mapping.items()]


def attr(name, kind, role):
    return {"name": name, "kind": kind, "role": role}


def build_adult(cache):
    sdist = fetch(cache, "mglearn==0.2.0", sdist=True)
    with tarfile.open(sdist) as t:
        raw = t.extractfile("mglearn-0.2.0/mglearn/data/adult.data").read().decode()
    cols = ["age", "workclass", "fnlwgt", "education", "education-num",
            "marital-status", "occupation", "relationship", "race", "sex",
            "capital-gain", "capital-loss", "hours-per-week", "native-country",
            "salary-class"]
    keep = ["age", "workclass", "education", "marital-status", "occupation",
            "race", "sex", "native-country", "salary-class"]
    rows = []
    for line in raw.splitlines():
        if not line.strip():
            continue
        cells = [c.strip() for c in line.split(",")]
        rec = dict(zip(cols, cells))
        rows.append([rec[c] for c in keep])
    schema = {
        "attributes": [
            attr("age", "numerical", "qid"),
            attr("workclass", "categorical", "qid"),
            attr("education", "categorical", "qid"),
            attr("marital-status", "categorical", "qid"),
            attr("occupation", "categorical", "qid"),
            attr("race", "categorical", "qid"),
            attr("sex", "categorical", "qid"),
            attr("native-country", "categorical", "qid"),
            attr("salary-class", "categorical", "target"),
        ],
        "missing_marker": "?",
        "drop_missing": True,
        "positive_class": ">50K",
    }
    ages = [float(r[0]) for r in rows]
    h = {"age": interval_hierarchy(ages, [5, 10, 20], 0)}
    h["workclass"] = categorical({
        "Private": ["Non-Government"], "Self-emp-not-inc": ["Non-Government"],
        "Self-emp-inc": ["Non-Government"], "Federal-gov": ["Government"],
        "Local-gov": ["Government"], "State-gov": ["Government"],
        "Without-pay": ["Unemployed"], "Never-worked": ["Unemployed"]})
    h["education"] = categorical({
        "Bachelors": ["Undergraduate", "Higher education"],
        "Some-college": ["Undergraduate", "Higher education"],
        "Prof-school": ["Professional Education", "Higher education"],
        "Assoc-acdm": ["Professional Education", "Higher education"],
        "Assoc-voc": ["Professional Education", "Higher education"],
        "Masters": ["Graduate", "Higher education"],
        "Doctorate": ["Graduate", "Higher education"],
        "HS-grad": ["High School", "Secondary education"],
        "9th": ["High School", "Secondary education"],
        "10th": ["High School", "Secondary education"],
        "11th": ["High School", "Secondary education"],
        "12th": ["High School", "Secondary education"],
        "Preschool": ["Primary School", "Primary education"],
        "1st-4th": ["Primary School", "Primary education"],
        "5th-6th": ["Primary School", "Primary education"],
        "7th-8th": ["Primary School", "Primary education"]})
    h["marital-status"] = categorical({
        "Married-civ-spouse": ["spouse present"],
        "Married-AF-spouse": ["spouse present"],
        "Married-spouse-absent": ["spouse not present"],
        "Divorced": ["spouse not present"], "Never-married": ["spouse not present"],
        "Separated": ["spouse not present"], "Widowed": ["spouse not present"]})
    h["occupation"] = categorical({
        "Tech-support": ["Technical"], "Craft-repair": ["Technical"],
        "Prof-specialty": ["Technical"], "Machine-op-inspct": ["Technical"],
        "Sales": ["Nontechnical"], "Exec-managerial": ["Nontechnical"],
        "Handlers-cleaners": ["Nontechnical"], "Other-service": ["Other"],
        "Adm-clerical": ["Other"], "Farming-fishing": ["Other"],
        "Transport-moving": ["Other"], "Priv-house-serv": ["Other"],
        "Protective-serv": ["Other"], "Armed-Forces": ["Other"]})
    h["race"] = categorical({r: [] for r in [
        "White", "Black", "Asian-Pac-Islander", "Amer-Indian-Eskimo", "Other"]})
    h["sex"] = categorical({"Male": [], "Female": []})
    regions = {
        "North America": ["United-States", "Canada", "Outlying-US(Guam-USVI-etc)",
                          "Puerto-Rico", "Mexico"],
        "Central America": ["Cuba", "Dominican-Republic", "El-Salvador", "Guatemala",
                            "Haiti", "Honduras", "Jamaica", "Nicaragua",
                            "Trinadad&Tobago"],
        "South America": ["Columbia", "Ecuador", "Peru"],
        "Europe": ["England", "France", "Germany", "Greece", "Holand-Netherlands",
                   "Hungary", "Ireland", "Italy", "Poland", "Portugal", "Scotland",
                   "Yugoslavia"],
        "Asia": ["Cambodia", "China", "Hong", "India", "Iran", "Japan", "Laos",
                 "Philippines", "South", "Taiwan", "Thailand", "Vietnam"],
    }
    h["native-country"] = categorical(
        {c: [region] for region, cs in regions.items() for c in cs})
    write_dataset("adult", keep, rows, schema, h)


def build_keel(cache):
    whl = fetch(cache, "keel-ds==0.2.5")
    z = zipfile.ZipFile(whl)

    raw = z.read("keel_ds/data/balanced/raw/contraceptive.dat").decode()
    header = ["wife_age", "wife_edu", "husband_edu", "num_children", "wife_religion",
              "wife_working", "husband_occupation", "standard_of_living",
              "media_exposure", "contraceptive_method"]
    method = {"1": "no_use", "2": "long-term", "3": "short-term"}
    rows = []
    for line in raw.splitlines():
        if line.strip():
            cells = [c.strip() for c in line.split(",")]
            cells[-1] = method[cells[-1]]
            rows.append(cells)
    schema = {
        "attributes": [
            attr("wife_age", "numerical", "qid"),
            attr("wife_edu", "categorical", "qid"),
            attr("husband_edu", "numerical", "insensitive"),
            attr("num_children", "numerical", "qid"),
            attr("wife_religion", "numerical", "insensitive"),
            attr("wife_working", "numerical", "insensitive"),
            attr("husband_occupation", "categorical", "insensitive"),
            attr("standard_of_living", "numerical", "insensitive"),
            attr("media_exposure", "numerical", "insensitive"),
            attr("contraceptive_method", "categorical", "target"),
        ],
        "missing_marker": "?",
        "drop_missing": True,
    }
    h = {
        "wife_age": interval_hierarchy([float(r[0]) for r in rows], [5, 10, 20], 0),
        "num_children": interval_hierarchy([float(r[3]) for r in rows], [2, 4, 8], 0),
        "wife_edu": categorical({"1": ["low"], "2": ["low"], "3": ["high"], "4": ["high"]}),
    }
    write_dataset("cmc", header, rows, schema, h)

    raw = z.read("keel_ds/data/balanced/raw/mammographic.dat").decode()
    header = ["bi_rads_assessment", "age", "shape", "margin", "density", "severity"]
    severity = {"0": "benign", "1": "malignant"}
    rows = []
    for line in raw.splitlines():
        if line.strip():
            cells = [c.strip() for c in line.split(",")]
            cells[-1] = severity[cells[-1]]
            rows.append(cells)
    schema = {
        "attributes": [
            attr("bi_rads_assessment", "categorical", "qid"),
            attr("age", "numerical", "qid"),
            attr("shape", "categorical", "qid"),
            attr("margin", "categorical", "qid"),
            attr("density", "categorical", "qid"),
            attr("severity", "categorical", "target"),
        ],
        "missing_marker": "?",
        "drop_missing": True,
        "positive_class": "malignant",
    }
    h = {
        "age": interval_hierarchy([float(r[1]) for r in rows], [5, 10, 20], 0),
        "bi_rads_assessment": categorical({
            "0": ["0-3"], "2": ["0-3"], "3": ["0-3"],
            "4": ["4-6"], "5": ["4-6"], "6": ["4-6"], "55": ["4-6"]}),
        "shape": categorical({"1": ["round-oval"], "2": ["round-oval"],
                              "3": ["lobular-irregular"], "4": ["lobular-irregular"]}),
        "margin": categorical({"1": ["1-2"], "2": ["1-2"],
                               "3": ["3-5"], "4": ["3-5"], "5": ["3-5"]}),
        "density": categorical({"1": ["1-2"], "2": ["1-2"], "3": ["3-4"], "4": ["3-4"]}),
    }
    write_dataset("mgm", header, rows, schema, h)


def build_cahousing(cache):
    import pandas as pd  # parquet reader

    whl = fetch(cache, "pytorch-widedeep==1.7.0")
    z = zipfile.ZipFile(whl)
    df = pd.read_parquet(io.BytesIO(
        z.read("pytorch_widedeep/datasets/data/california_housing.parquet.brotli")))
    # Target: tertile band of the block group's average room count. The
    # ocean-proximity label of the Kaggle copy is not redistributed with
    # this source, so a three-class target is derived from a non-QID column.
    q1, q2 = df["AveRooms"].quantile([1 / 3, 2 / 3])

    def band(x):
        return "low" if x <= q1 else ("mid" if x <= q2 else "high")

    header = ["longitude", "latitude", "housing_median_age", "median_income",
              "median_house_value", "rooms_band"]
    rows = []
    for r in df.itertuples(index=False):
        rows.append([num(r.Longitude), num(r.Latitude), num(r.HouseAge),
                     num(r.MedInc), num(round(r.MedHouseVal * 100000)),
                     band(r.AveRooms)])
    schema = {
        "attributes": [
            attr("longitude", "numerical", "qid"),
            attr("latitude", "numerical", "qid"),
            attr("housing_median_age", "numerical", "qid"),
            attr("median_income", "numerical", "qid"),
            attr("median_house_value", "numerical", "qid"),
            attr("rooms_band", "categorical", "target"),
        ],
        "missing_marker": "?",
        "drop_missing": True,
    }
    col = lambda i: [float(r[i]) for r in rows]
    h = {
        "longitude": interval_hierarchy(col(0), [0.1, 1, 10], 0),
        "latitude": interval_hierarchy(col(1), [0.1, 1, 10], 0),
        "housing_median_age": interval_hierarchy(col(2), [5, 10, 20], 0),
        "median_income": interval_hierarchy(col(3), [1, 2, 4, 8], 0),
        "median_house_value": interval_hierarchy(col(4), [50000, 100000, 200000], 0),
    }
    write_dataset("cahousing", header, rows, schema, h)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cache", default=os.path.join(HERE, ".cache"))
    args = ap.parse_args()
    os.makedirs(args.cache, exist_ok=True)
    build_adult(args.cache)
    build_keel(args.cache)
    build_cahousing(args.cache)


if __name__ == "__main__":
    main()
