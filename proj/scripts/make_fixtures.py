#!/usr/bin/env python3
"""Regenerates tests/data. Iris and wine come from scikit-learn's bundled
copies; the larger tables are seeded Gaussian blobs with realistic shapes, used
where only shape, determinism, and class structure matter."""

import pathlib

import numpy as np
from sklearn.datasets import load_iris, load_wine

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"


def write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n")
    print(f"{path.name}: {len(rows)} rows")


def fmt(value):
    return repr(float(value))


def export_sklearn(bundle, path, feature_names, class_names):
    rows = []
    for x, y in zip(bundle.data, bundle.target):
        rows.append([fmt(v) for v in x] + [class_names[y]])
    write_csv(path, feature_names + ["class"], rows)


def blobs(path, n_per_class, class_names, dim, spread, seed):
    rng = np.random.default_rng(seed)
    feature_scale = rng.uniform(0.5, 20.0, size=dim)
    rows = []
    for name, count in zip(class_names, n_per_class):
        center = rng.normal(0.0, spread, size=dim) * feature_scale
        points = center + rng.normal(0.0, 1.0, size=(count, dim)) * feature_scale
        for point in points:
            rows.append([fmt(v) for v in point] + [name])
    header = [f"f{i}" for i in range(dim)] + ["class"]
    write_csv(path, header, rows)


def grades(path, seed):
    rng = np.random.default_rng(seed)
    plan = [("iris", 28), ("wine", 28), ("vehicle", 24)]
    scales = ["raw", "0.01", "0.1", "0.2", "0.5", "1", "10"]
    rows = []
    for dataset, count in plan:
        for i in range(count):
            m1 = rng.uniform(-0.2, 0.9)
            m2 = rng.uniform(0.2, 1.0)
            m3 = rng.uniform(-1.0, 8.0)
            raw = 1.0 + 2.2 * m1 + 2.6 * m2 + 0.05 * m3 + rng.normal(0.0, 0.5)
            grade = int(np.clip(round(raw), 1, 5))
            rows.append(
                [fmt(m1), fmt(m2), fmt(m3), str(grade), dataset, scales[i % len(scales)],
                 str(i)])
    write_csv(path, ["m1", "m2", "m3", "grade", "dataset", "scale", "seed"], rows)


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    iris = load_iris()
    export_sklearn(
        iris, OUT / "iris.csv",
        ["sepal_length", "sepal_width", "petal_length", "petal_width"],
        ["setosa", "versicolor", "virginica"])

    wine = load_wine()
    export_sklearn(wine, OUT / "wine.csv", [n.replace(" ", "_") for n in wine.feature_names],
                   ["class_0", "class_1", "class_2"])

    blobs(OUT / "vehicle.csv", [240, 240, 218, 148], ["van", "saab", "bus", "opel"], 19,
          spread=2.0, seed=20240811)
    blobs(OUT / "segmentation.csv", [300] * 7,
          ["brickface", "sky", "foliage", "cement", "window", "path", "grass"], 19,
          spread=2.5, seed=20240812)
    blobs(OUT / "fish.csv", [35, 20, 6, 11, 56, 17, 14],
          ["bream", "roach", "whitefish", "parkki", "perch", "pike", "smelt"], 7,
          spread=1.5, seed=20240813)

    grades(OUT / "grades80.csv", seed=20240814)


if __name__ == "__main__":
    main()
