"""Precision, recall, F-measure and boundary estimation quality (BEQ)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class QualityPoint:
    radius: float
    tp: int
    fp: int
    fn_: int
    precision: float
    recall: float
    f_measure: float
    beq: float


def precision(tp: int, fp: int) -> float:
    """TP / (TP + FP); an empty circle scores 0."""
    n = tp + fp
    return tp / n if n > 0 else 0.0


def recall(tp: int, fn: int) -> float:
    n = tp + fn
    return tp / n if n > 0 else 0.0


def f_measure(p: float, r: float) -> float:
    """Harmonic mean of precision and recall, 0 when both vanish."""
    s = p + r
    return 2.0 * p * r / s if s > 0 else 0.0


def coverage_factor(radius: float, rbar: float, alpha: float) -> float:
    # 0**0 == 1 in Python, so alpha = 0 reduces BEQ to F exactly
    return (radius / rbar) ** alpha


def beq(radius: float, rbar: float, alpha: float, f: float) -> float:
    """BEQ = (radius / rbar) ** alpha * f."""
    if radius < 0 or radius > rbar:
        raise ValueError(f"radius {radius} outside [0, {rbar}]")
    return coverage_factor(radius, rbar, alpha) * f


def quality_point(radius: float, tp: int, fp: int, total_relevant: int, rbar: float,
                  alpha: float) -> QualityPoint:
    fn = total_relevant - tp
    p = precision(tp, fp)
    r = recall(tp, fn)
    f = f_measure(p, r)
    return QualityPoint(radius, tp, fp, fn, p, r, f, beq(radius, rbar, alpha, f))


def quality_arrays(radii: np.ndarray, tp: np.ndarray, n_all: np.ndarray, total_relevant: int,
                   rbar: float, alpha: float) -> dict[str, np.ndarray]:
    """Vectorized precision/recall/F/BEQ over a radius grid.

    Uses the same zero conventions as the scalar functions above.
    """
    tp = tp.astype(float)
    n_all = n_all.astype(float)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(n_all > 0, tp / n_all, 0.0)
        r = np.where(total_relevant > 0, tp / total_relevant, 0.0) if total_relevant else np.zeros_like(tp)
        s = p + r
        f = np.where(s > 0, 2.0 * p * r / s, 0.0)
    cov = (radii / rbar) ** alpha
    return {"precision": p, "recall": r, "f_measure": f, "beq": cov * f}
