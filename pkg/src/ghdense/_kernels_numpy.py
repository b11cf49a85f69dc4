"""Pure-numpy kernels: reference semantics for the numba twins.

Both backends must return bit-identical results; tests compare them
directly.  The map scan enumerates images in lexicographic order and keeps
the first strict minimum, so the reported witness is the lexicographically
smallest among minimizers.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 14


def fps_indices(dist: np.ndarray, eps: float, seed: int) -> np.ndarray:
    """Greedy farthest-point selection until cover radius <= eps.

    Ties in the farthest point break toward the lowest index (np.argmax).
    """
    mind = dist[seed].copy()
    selected = [seed]
    while mind.max() > eps:
        nxt = int(np.argmax(mind))
        selected.append(nxt)
        np.minimum(mind, dist[nxt], out=mind)
    return np.array(selected, dtype=np.int64)


def _chunk_scores(ds, dt, fvals, gvals, img):
    """Score per candidate map: max(distortion, codefect, value mismatch)."""
    c = img.shape[0]
    score = np.abs(gvals[img] - fvals[None, :]).max(axis=1)
    pairs = dt[img[:, :, None], img[:, None, :]]
    np.maximum(score, np.abs(pairs - ds[None, :, :]).reshape(c, -1).max(axis=1), out=score)
    np.maximum(score, dt[img].min(axis=1).max(axis=1), out=score)
    return score


def scan_maps(ds, dt, fvals, gvals):
    """Exhaustive scan over all maps source -> target.

    Returns (best score, witness image).  Pass zero value arrays to score
    plain metric quality without a function mismatch term.
    """
    n = ds.shape[0]
    m = dt.shape[0]
    total = m**n
    shape = (m,) * n
    best = np.inf
    best_img = np.zeros(n, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        stop = min(start + _CHUNK, total)
        ranks = np.arange(start, stop, dtype=np.int64)
        img = np.stack(np.unravel_index(ranks, shape), axis=1).astype(np.int64)
        score = _chunk_scores(ds, dt, fvals, gvals, img)
        k = int(np.argmin(score))
        if score[k] < best:
            best = float(score[k])
            best_img = img[k].copy()
    return best, best_img


def _lex_smaller(a, b) -> bool:
    for x, y in zip(a, b):
        if x != y:
            return x < y
    return False


def bnb_maps(ds, dt, fvals, gvals, order):
    """Depth-first assignment with pruning; same result as scan_maps.

    Source points are visited in the given order; partial score > incumbent
    prunes (ties survive, so the lex-smallest witness is still found).
    """
    n = ds.shape[0]
    m = dt.shape[0]
    img = np.full(n, -1, dtype=np.int64)
    best = np.inf
    best_img = np.zeros(n, dtype=np.int64)
    found = False

    def leaf_codefect(base):
        score = base
        for y in range(m):
            mind = dt[img, y].min()
            if mind > score:
                score = mind
        return score

    def descend(level, pscore):
        nonlocal best, best_img, found
        s = order[level]
        for t in range(m):
            sc = pscore
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
                score = leaf_codefect(sc)
                if (not found) or score < best:
                    best = float(score)
                    best_img = img.copy()
                    found = True
                elif score == best and _lex_smaller(img, best_img):
                    best_img = img.copy()
            else:
                descend(level + 1, sc)
        img[s] = -1

    descend(0, 0.0)
    return best, best_img
