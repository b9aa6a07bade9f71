#!/usr/bin/env python3
"""Regenerates the synthetic fixture CSVs in this directory.

baselines.csv holds the published per-category outcome distributions; the
other files are synthetic stand-ins with fixed seeds, so rerunning this
script reproduces them exactly.
"""
import csv
import math
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent

# name -> (low, medium, high) percentages
BASELINES = {
    "A": (7, 30, 63), "AIL": (8, 27, 65), "AILT": (10, 28, 62), "AIT": (11, 29, 60),
    "AL": (7, 27, 66), "ALT": (11, 29, 60), "AT": (12, 31, 57), "IT": (12, 29, 59),
    "T": (18, 32, 50),
}

LANGUAGES = {  # relative speed factor and spread
    "C": (1.0, 0.3), "Go": (1.6, 0.35), "Haskell": (2.5, 0.5), "Java": (2.0, 0.4),
    "C#": (2.2, 0.4), "F#": (2.8, 0.5), "Python": (30.0, 0.6), "Ruby": (40.0, 0.6),
}


def write(name, header, rows):
    with open(HERE / name, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def baselines():
    rows = []
    for name, pct in BASELINES.items():
        for k, p in enumerate(pct):
            rows.append([name, k, f"{p / 100:.2f}"])
    write("baselines.csv", ["category", "k", "probability"], rows)


def outcomes(rng):
    rows = []
    for i in range(29):
        rows.append([f"agile-{i + 1:02d}", "agile", min(10, max(1, round(rng.gauss(7.2, 1.8))))])
    for i in range(18):
        rows.append([f"structured-{i + 1:02d}", "structured", min(10, max(1, round(rng.gauss(6.5, 2.1))))])
    write("outcomes.csv", ["project_id", "group", "raw_outcome"], rows)


def bench(rng):
    rows = []
    tasks = [f"bench-{i:02d}" for i in range(1, 9)]
    for task in tasks:
        base = rng.uniform(0.5, 3.0)
        for lang, (speed, spread) in LANGUAGES.items():
            variants = rng.randint(1, 3)
            for v in range(1, variants + 1):
                noise = math.exp(rng.gauss(0, spread))
                for size in (1000, 10000, 100000):
                    t = base * speed * noise * size / 1000 * math.exp(rng.gauss(0, 0.05))
                    m = 2.0 * (speed ** 0.5) * noise * (1 + size / 50000) * math.exp(rng.gauss(0, 0.05))
                    rows.append([lang, task, size, f"v{v}", "time", f"{t:.6g}"])
                    rows.append([lang, task, size, f"v{v}", "memory", f"{m:.6g}"])
    write("bench.csv", ["language", "task", "input_size", "variant", "metric", "value"], rows)


def primary(rng):
    rows = []
    for i in range(1, 41):
        task = f"task-{i:03d}"
        base = rng.uniform(0.01, 2.0)
        for lang, (speed, spread) in LANGUAGES.items():
            if rng.random() < 0.2:
                continue  # not every language solves every task
            t = base * speed * math.exp(rng.gauss(0, spread))
            m = 1.5 * (speed ** 0.5) * math.exp(rng.gauss(0, spread))
            rows.append([lang, task, "time", f"{t:.6g}"])
            rows.append([lang, task, "memory", f"{m:.6g}"])
    write("primary.csv", ["language", "task", "metric", "value"], rows)


def bugs(rng):
    rows = []
    alpha, beta = 8.0, 0.9
    for i in range(1, 22):
        strong = math.floor(alpha * (-math.log(1 - rng.random())) ** (1 / beta))
        simple = max(0, strong - rng.randint(0, max(1, strong // 3)))
        methods = rng.randint(8, 80)
        loc = methods * rng.randint(10, 30)
        rows.append([f"C{i:02d}", simple, strong, methods, loc])
    write("bugs.csv", ["class_id", "found_simple", "found_strong", "public_methods", "loc"], rows)


if __name__ == "__main__":
    baselines()
    outcomes(random.Random(2012))
    bench(random.Random(2014))
    primary(random.Random(2015))
    bugs(random.Random(2016))
