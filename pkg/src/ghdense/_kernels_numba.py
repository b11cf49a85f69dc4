"""Numba twins of the pure-numpy kernels.

Same contracts as _kernels_numpy: lexicographic enumeration order, first
strict minimum kept, identical tie-breaking.  The scan aborts a candidate
map as soon as its partial score can no longer beat the incumbent; that
never changes the result because updates require a strict improvement.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def fps_indices(dist: np.ndarray, eps: float, seed: int) -> np.ndarray:
    n = dist.shape[0]
    mind = dist[seed].copy()
    selected = np.empty(n, dtype=np.int64)
    selected[0] = seed
    count = 1
    while True:
        far = 0
        farv = mind[0]
        for k in range(1, n):
            if mind[k] > farv:
                farv = mind[k]
                far = k
        if farv <= eps:
            break
        selected[count] = far
        count += 1
        for k in range(n):
            if dist[far, k] < mind[k]:
                mind[k] = dist[far, k]
    return selected[:count].copy()


@njit(cache=True)
def scan_maps(ds, dt, fvals, gvals):
    n = ds.shape[0]
    m = dt.shape[0]
    img = np.zeros(n, dtype=np.int64)
    best = np.inf
    best_img = np.zeros(n, dtype=np.int64)
    total = 1
    for _ in range(n):
        total *= m
    for _it in range(total):
        score = 0.0
        alive = True
        for k in range(n):
            v = abs(gvals[img[k]] - fvals[k])
            if v > score:
                score = v
        if score >= best:
            alive = False
        if alive:
            for k in range(n):
                for l in range(k + 1, n):
                    v = abs(dt[img[k], img[l]] - ds[k, l])
                    if v > score:
                        score = v
                if score >= best:
                    alive = False
                    break
        if alive:
            for y in range(m):
                mind = np.inf
                for k in range(n):
                    d = dt[img[k], y]
                    if d < mind:
                        mind = d
                if mind > score:
                    score = mind
                    if score >= best:
                        alive = False
                        break
        if alive and score < best:
            best = score
            for k in range(n):
                best_img[k] = img[k]
        for pos in range(n - 1, -1, -1):
            img[pos] += 1
            if img[pos] < m:
                break
            img[pos] = 0
    return best, best_img


@njit(cache=True)
def bnb_maps(ds, dt, fvals, gvals, order):
    n = ds.shape[0]
    m = dt.shape[0]
    img = np.full(n, -1, dtype=np.int64)
    choice = np.full(n, -1, dtype=np.int64)
    pscore = np.zeros(n + 1, dtype=np.float64)
    best = np.inf
    best_img = np.zeros(n, dtype=np.int64)
    found = False
    level = 0
    while level >= 0:
        choice[level] += 1
        t = choice[level]
        s = order[level]
        if t >= m:
            img[s] = -1
            choice[level] = -1
            level -= 1
            continue
        sc = pscore[level]
        v = abs(gvals[t] - fvals[s])
        if v > sc:
            sc = v
        for prev in range(level):
            sp = order[prev]
            v = abs(dt[t, img[sp]] - ds[s, sp])
            if v > sc:
                sc = v
        if found and sc > best:
            continue
        img[s] = t
        if level == n - 1:
            score = sc
            for y in range(m):
                mind = np.inf
                for k in range(n):
                    d = dt[img[k], y]
                    if d < mind:
                        mind = d
                if mind > score:
                    score = mind
            if (not found) or score < best:
                best = score
                for k in range(n):
                    best_img[k] = img[k]
                found = True
            elif score == best:
                smaller = False
                for k in range(n):
                    if img[k] != best_img[k]:
                        smaller = img[k] < best_img[k]
                        break
                if smaller:
                    for k in range(n):
                        best_img[k] = img[k]
        else:
            level += 1
            pscore[level] = sc
    return best, best_img
