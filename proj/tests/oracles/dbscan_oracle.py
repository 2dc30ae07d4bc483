#!/usr/bin/env python3
"""Naive DBSCAN reference over cosine distance; writes tests/data/dbscan_cases.json.

Core points come from a full distance matrix, clusters are connected components
of the core graph numbered by their smallest core index, and a border point
joins the lowest-numbered cluster among its core neighbours.
"""
import json
import random

from common import DATA, cosine

SEED = 7_2024
EPS, MIN_PTS = 0.35, 3


def reference(points):
    n = len(points)
    dist = [[1.0 - cosine(points[i], points[j]) for j in range(n)] for i in range(n)]
    near = [[j for j in range(n) if dist[i][j] <= EPS] for i in range(n)]
    core = [len(near[i]) >= MIN_PTS for i in range(n)]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        if core[i]:
            for j in near[i]:
                if core[j]:
                    parent[max(find(i), find(j))] = min(find(i), find(j))
    roots = sorted({find(i) for i in range(n) if core[i]})
    number = {r: k for k, r in enumerate(roots)}
    label = [-1] * n
    for i in range(n):
        if core[i]:
            label[i] = number[find(i)]
    for i in range(n):
        if not core[i]:
            owners = [label[j] for j in near[i] if core[j]]
            if owners:
                label[i] = min(owners)
    clusters = [[i for i in range(n) if label[i] == k] for k in range(len(roots))]
    noise = [i for i in range(n) if label[i] < 0]
    return dist, clusters, noise


def instance(rng):
    dim = rng.randint(2, 8)
    n = rng.randint(1, 200)
    centers = [[rng.gauss(0, 1) for _ in range(dim)] for _ in range(rng.randint(1, 6))]
    spread = rng.uniform(0.05, 0.6)
    points = []
    for _ in range(n):
        if rng.random() < 0.15:
            p = [rng.gauss(0, 1) for _ in range(dim)]
        else:
            c = rng.choice(centers)
            p = [x + rng.gauss(0, spread) for x in c]
        if all(abs(x) < 1e-6 for x in p):
            p[0] = 1.0
        points.append(p)
    return points


def main(out_dir=DATA):
    rng = random.Random(SEED)
    cases = []
    while len(cases) < 50:
        points = instance(rng)
        dist, clusters, noise = reference(points)
        if any(abs(d - EPS) < 1e-9 for row in dist for d in row):
            continue
        cases.append({"eps": EPS, "min_pts": MIN_PTS, "points": points, "clusters": clusters, "noise": noise})
    (out_dir / "dbscan_cases.json").write_text(json.dumps(cases))
    print(f"{len(cases)} cases, {sum(len(c['points']) for c in cases)} points, "
          f"{sum(len(c['clusters']) for c in cases)} clusters")


if __name__ == "__main__":
    main()
