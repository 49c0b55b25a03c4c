"""Capacity of the two-channel composite letter channel (k = 2).

A letter sigma in {0, 1, 2} is transmitted as the column (sigma >= 2,
sigma >= 1); each row bit crosses an independent binary symmetric channel
with crossover p.  The received column is read back as a letter, or as an
erasure-like symbol '?' when the bits come back in the invalid order.

Two figures of merit:

* capacity over all three letters, with the symmetric input
  (alpha, 1 - 2*alpha, alpha) -- symmetry of the channel under reversing
  the alphabet makes this family optimal;
* the same physical channels driven by ordinary two-level letters
  {0, 2} only, i.e. one uniform bit observed through both rows, the
  baseline the third letter is measured against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from composite_codec.core import DomainError

OUTPUTS = ("0", "1", "2", "?")

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"crossover probability {p} outside [0, 1]")
    return p


def channel_matrix(p: float) -> np.ndarray:
    """Row i: distribution of the read-back symbol given letter i was sent.

    Columns follow OUTPUTS; '?' collects the invalid bit pattern (1, 0).
    """
    p = _check_p(p)
    q = 1.0 - p
    return np.array([
        [q * q, p * q, p * p, p * q],
        [p * q, q * q, p * q, p * p],
        [p * p, p * q, q * q, p * q],
    ])


def symmetric_input(alpha: float) -> np.ndarray:
    if not 0.0 <= alpha <= 0.5:
        raise DomainError(f"alpha {alpha} outside [0, 1/2]")
    return np.array([alpha, 1.0 - 2.0 * alpha, alpha])


def _entropy(dist) -> float:
    dist = np.asarray(dist, dtype=float)
    nz = dist[dist > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def mutual_information(dist, matrix) -> float:
    """I(X; Y) in bits for input distribution dist over the rows."""
    dist = np.asarray(dist, dtype=float)
    matrix = np.asarray(matrix, dtype=float)
    out = dist @ matrix
    h_given = float(sum(d * _entropy(row) for d, row in zip(dist, matrix)))
    return _entropy(out) - h_given


@dataclass(frozen=True)
class CapacityResult:
    p: float
    alpha: float
    bits: float


def capacity_composite(p: float, tol: float = 1e-10) -> CapacityResult:
    """Maximise I(X; Y) over the symmetric inputs (alpha, 1-2a, alpha)."""
    p = _check_p(p)
    matrix = channel_matrix(p)

    def f(alpha: float) -> float:
        return mutual_information(symmetric_input(alpha), matrix)

    grid = np.linspace(0.0, 0.5, 129)
    best = int(np.argmax([f(a) for a in grid]))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, len(grid) - 1)]
    a = hi - _GOLDEN * (hi - lo)
    b = lo + _GOLDEN * (hi - lo)
    fa, fb = f(a), f(b)
    while hi - lo > tol:
        if fa < fb:
            lo, a, fa = a, b, fb
            b = lo + _GOLDEN * (hi - lo)
            fb = f(b)
        else:
            hi, b, fb = b, a, fa
            a = hi - _GOLDEN * (hi - lo)
            fa = f(a)
    alpha = 0.5 * (lo + hi)
    return CapacityResult(p=p, alpha=alpha, bits=f(alpha))


def capacity_binary_pair(p: float) -> float:
    """One uniform bit sent as letter 0 or 2 and observed through both rows."""
    p = _check_p(p)
    agree = (1.0 - p) ** 2 + p * p
    cross = p * (1.0 - p)
    h_out = _entropy([agree / 2.0, cross, cross, agree / 2.0])
    h_bit = _entropy([p, 1.0 - p])
    return h_out - 2.0 * h_bit


def blahut_arimoto(matrix, tol: float = 1e-12, max_iter: int = 100000):
    """Capacity over all input distributions; returns (distribution, bits).

    Alternating maximisation with the standard upper/lower sandwich as the
    stopping rule.
    """
    matrix = np.asarray(matrix, dtype=float)
    m = matrix.shape[0]
    dist = np.full(m, 1.0 / m)
    with np.errstate(divide="ignore", invalid="ignore"):
        for _ in range(max_iter):
            out = dist @ matrix
            ratio = np.where(matrix > 0.0, matrix / out, 1.0)
            d = (matrix * np.log2(np.where(matrix > 0.0, ratio, 1.0))).sum(axis=1)
            lower = float(dist @ d)
            upper = float(d.max())
            if upper - lower < tol:
                return dist, lower
            dist = dist * np.exp2(d - d.max())
            dist /= dist.sum()
    return dist, float(dist @ d)


def sweep(ps, tol: float = 1e-10):
    """Rows (p, alpha_opt, composite bits, two-level bits) for each p."""
    rows = []
    for p in ps:
        res = capacity_composite(p, tol=tol)
        rows.append((res.p, res.alpha, res.bits, capacity_binary_pair(p)))
    return rows


def render_svg(rows, width: int = 640, height: int = 420) -> str:
    """Minimal standalone SVG: both capacities against p."""
    if not rows:
        raise DomainError("nothing to plot")
    pad = 50
    xs = [r[0] for r in rows]
    x_lo, x_hi = min(xs), max(xs)
    x_span = (x_hi - x_lo) or 1.0
    y_hi = max(max(r[2] for r in rows), max(r[3] for r in rows)) or 1.0

    def sx(p):
        return pad + (p - x_lo) / x_span * (width - 2 * pad)

    def sy(v):
        return height - pad - v / y_hi * (height - 2 * pad)

    def polyline(idx, colour):
        pts = " ".join(f"{sx(r[0]):.2f},{sy(r[idx]):.2f}" for r in rows)
        return (f'<polyline fill="none" stroke="{colour}" '
                f'stroke-width="1.5" points="{pts}"/>')

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" '
        f'y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" '
        'stroke="black"/>',
        polyline(2, "#1f77b4"),
        polyline(3, "#d62728"),
        f'<text x="{width // 2}" y="{height - 12}" text-anchor="middle" '
        'font-size="12">crossover probability p</text>',
        f'<text x="14" y="{height // 2}" font-size="12" '
        f'transform="rotate(-90 14 {height // 2})" '
        'text-anchor="middle">capacity (bits/letter)</text>',
        f'<text x="{width - pad}" y="{pad}" text-anchor="end" '
        'font-size="12" fill="#1f77b4">three-level letters</text>',
        f'<text x="{width - pad}" y="{pad + 16}" text-anchor="end" '
        'font-size="12" fill="#d62728">two-level letters</text>',
        "</svg>",
    ]
    return "\n".join(parts)