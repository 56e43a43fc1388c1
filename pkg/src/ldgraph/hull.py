"""Planar convex hull (monotone chain) and farthest pair by rotating calipers."""

import numpy as np


def convex_hull(points) -> np.ndarray:
    """Hull vertices in counter-clockwise order, collinear points dropped."""
    pts = np.unique(np.asarray(points, dtype=float).reshape(-1, 2), axis=0)
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in pts[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def rotating_calipers(hull: np.ndarray):
    """Farthest pair of a convex polygon given in CCW order.

    Returns (distance, p, q).  Walks the antipodal pairs once, O(n).
    """
    n = len(hull)
    if n == 1:
        return 0.0, hull[0], hull[0]
    if n == 2:
        return float(np.linalg.norm(hull[1] - hull[0])), hull[0], hull[1]

    def area2(i, j, k):
        a, b, c = hull[i], hull[j], hull[k]
        return abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    best = (-1.0, 0, 0)
    j = 1
    for i in range(n):
        i2 = (i + 1) % n
        # advance j while the triangle on edge (i, i2) keeps growing
        while area2(i, i2, (j + 1) % n) > area2(i, i2, j):
            j = (j + 1) % n
        for a, b in ((i, j), (i2, j)):
            d = float(np.sum((hull[a] - hull[b]) ** 2))
            if d > best[0]:
                best = (d, a, b)
    d, a, b = best
    return float(np.sqrt(d)), hull[a], hull[b]


def point_set_diameter(points):
    """(diameter, p, q) of a finite planar point set."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise ValueError("diameter of an empty point set")
    return rotating_calipers(convex_hull(pts))
