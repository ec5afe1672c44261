"""Tensor Gauss–Legendre rules over batches of boxes and faces."""

import itertools
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np

from errors import InputError

MAX_POINTS_PER_CALL = 2 ** 21


@lru_cache(maxsize=64)
def gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, 1]."""
    if order < 1:
        raise InputError("quadrature order must be >= 1", 'order')
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return (nodes + 1.0) / 2.0, weights / 2.0


@lru_cache(maxsize=64)
def tensor_rule(order: int, dims: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = gauss_legendre(order)
    if dims == 0:
        return np.zeros((1, 0)), np.ones(1)
    pts = np.array(list(itertools.product(nodes, repeat=dims)))
    wts = np.array([np.prod(w) for w in itertools.product(weights, repeat=dims)])
    return pts, wts


def integrate_boxes(f: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray,
                    order: int, flat_axis: Optional[int] = None) -> np.ndarray:
    """Integral of f over each box [lo_i, hi_i]; ``flat_axis`` marks faces (lo = hi there)."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if lo.ndim != 2 or lo.shape != hi.shape:
        raise InputError("box bounds must be (m, n) arrays", 'bounds')
    m, n = lo.shape
    if m == 0:
        return np.zeros(0)
    axes = [a for a in range(n) if a != flat_axis]
    ref, weights = tensor_rule(order, len(axes))
    q = len(weights)
    widths = hi - lo
    measure = np.prod(widths[:, axes], axis=1) if axes else np.ones(m)
    out = np.empty(m)
    step = max(1, MAX_POINTS_PER_CALL // q)
    for start in range(0, m, step):
        sl = slice(start, start + step)
        pts = np.repeat(lo[sl, None, :], q, axis=1)
        if axes:
            pts[:, :, axes] += widths[sl, None, :][:, :, axes] * ref[None, :, :]
        values = np.asarray(f(pts.reshape(-1, n)), dtype=float).reshape(-1, q)
        out[sl] = (values @ weights) * measure[sl]
    return out
