# Apache License, Version 2.0, refer to LICENSE.txt
"""Regenerates the CSV files under data/.

iris and wine are the classic UCI tables as bundled with scikit-learn.
balance is the full UCI balance-scale enumeration, reproduced exactly from
its defining rule (all attribute combinations in {1..5}^4, class decided by
comparing left and right torque). The UCI ecoli and glass tables cannot be
fetched in this environment, so ecoli_synth and glass_synth are seeded
Gaussian-mixture stand-ins that copy each original's shape: instance count,
feature count, class count, and class proportions.
"""
import numpy as np
from sklearn.datasets import load_iris, load_wine


def write_csv(path, X, labels, label_names=None):
    d = X.shape[1]
    with open(path, "w") as f:
        f.write(",".join(f"f{j}" for j in range(d)) + ",label\n")
        for row, lab in zip(X, labels):
            name = label_names[lab] if label_names is not None else str(lab)
            f.write(",".join(f"{v:.17g}" for v in row) + f",{name}\n")


def make_balance():
    rows, labels = [], []
    for lw in range(1, 6):
        for ld in range(1, 6):
            for rw in range(1, 6):
                for rd in range(1, 6):
                    left, right = lw * ld, rw * rd
                    cls = "L" if left > right else ("R" if right > left else "B")
                    rows.append([lw, ld, rw, rd])
                    labels.append(cls)
    return np.array(rows, dtype=float), labels


def make_standin(name, n, d, class_sizes, seed, separation=2.2):
    rng = np.random.default_rng(seed)
    assert sum(class_sizes) == n
    X, labels = [], []
    for c, size in enumerate(class_sizes):
        mean = rng.normal(size=d) * separation
        sd = rng.uniform(0.7, 1.3, size=d)
        X.append(mean + rng.normal(size=(size, d)) * sd)
        labels.extend([c] * size)
    return np.vstack(X), labels


def main():
    iris = load_iris()
    write_csv("data/iris.csv", iris.data, iris.target,
              [str(t) for t in iris.target_names])

    wine = load_wine()
    write_csv("data/wine.csv", wine.data, wine.target,
              [str(t) for t in wine.target_names])

    X, labels = make_balance()
    with open("data/balance.csv", "w") as f:
        f.write("lw,ld,rw,rd,label\n")
        for row, lab in zip(X, labels):
            f.write(",".join(str(int(v)) for v in row) + f",{lab}\n")

    # ecoli: 336 x 7, 8 classes (cp im pp imU om omL imS imL)
    X, labels = make_standin("ecoli", 336, 7,
                             [143, 77, 52, 35, 20, 5, 2, 2], seed=20250809)
    write_csv("data/ecoli_synth.csv", X, labels)

    # glass: 214 x 9, 6 classes
    X, labels = make_standin("glass", 214, 9,
                             [70, 76, 17, 13, 9, 29], seed=20250810)
    write_csv("data/glass_synth.csv", X, labels)


if __name__ == "__main__":
    main()
